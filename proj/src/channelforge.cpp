#include "zeclab/channelforge.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zeclab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_valid_state(const StinespringIsometry& v, const DensityMatrix& rho) {
  if (rho.dim() != v.d_A)
    throw DimensionError("apply_channel: state dimension != d_A");
}

}  // namespace

EnvVectors EnvVectors::make(std::vector<Vector> vectors) {
  if (vectors.size() != 4)
    throw ValidationError("EnvVectors: exactly 4 vectors required");
  const Eigen::Index m = vectors.front().size();
  for (const Vector& psi : vectors) {
    if (psi.size() != m) throw ValidationError("EnvVectors: mixed dimensions");
    if (std::abs(psi.norm() - 1.0) > tol::construction)
      throw ValidationError("EnvVectors: vectors must be unit norm");
  }
  // Projector independence via the Gram determinant of |psi_i><psi_i|.
  Eigen::Matrix4cd gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex ov = vectors[i].dot(vectors[j]);
      gram(i, j) = std::norm(ov);
    }
  if (std::abs(gram.determinant()) < 1e-6)
    throw ValidationError("EnvVectors: projectors numerically dependent");
  return EnvVectors{m, std::move(vectors)};
}

StinespringIsometry StinespringIsometry::make(Matrix v, Eigen::Index d_B,
                                              Eigen::Index d_E) {
  if (d_B < 1 || d_E < 1 || v.rows() != d_B * d_E || v.cols() < 1)
    throw DimensionError("StinespringIsometry: inconsistent dimensions");
  const Matrix gram = v.adjoint() * v;
  const double dev =
      (gram - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  if (dev > tol::construction)
    throw ValidationError("StinespringIsometry: V^dag V != I, deviation " +
                          std::to_string(dev));
  return StinespringIsometry{std::move(v), gram.rows(), d_B, d_E};
}

ChannelBasis channel_basis(double theta) {
  const double th = normalize_angle(theta);
  const Matrix t = correction_T(th);
  const double beta = std::min(3.0 / 16.0, op_norm(t) / 4.0);
  const double alpha = 1.0 - 3.0 * beta;
  const Matrix s = basis_change_S();

  ChannelBasis cb;
  cb.theta = th;
  cb.alpha = alpha;
  cb.beta = beta;
  for (int i = 0; i < 4; ++i) {
    Matrix tilde = beta * Matrix::Identity(4, 4);
    tilde(i, i) += alpha - beta;
    tilde += ((i < 2 ? -1.0 : 1.0) * (alpha - beta) / 4.0) * t;
    cb.members.push_back(s * tilde * s.transpose());
  }

  // By-construction invariants; failure means the build itself is broken.
  Matrix sum = Matrix::Zero(4, 4);
  for (const Matrix& a : cb.members) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::construction)
      throw InternalError("channel_basis: member not PSD");
    sum += a;
  }
  if ((sum - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() > tol::construction)
    throw InternalError("channel_basis: members do not sum to identity");
  if (subspace_distance(SubspaceBasis{4, cb.members}, subspace_L(th)) >
      tol::geometry)
    throw InternalError("channel_basis: span differs from the deformed subspace");
  return cb;
}

EnvVectors default_env_vectors(Eigen::Index m) {
  std::vector<Vector> vs;
  if (m == 4) {
    for (int i = 0; i < 4; ++i) {
      Vector v = Vector::Zero(4);
      v(i) = 1.0;
      vs.push_back(std::move(v));
    }
  } else if (m == 2) {
    const double c = 1.0 / std::sqrt(3.0);
    const double s = std::sqrt(2.0 / 3.0);
    Vector v0(2), v1(2), v2(2), v3(2);
    v0 << 1.0, 0.0;
    v1 << c, s;
    v2 << c, s * std::polar(1.0, 2.0 * kPi / 3.0);
    v3 << c, s * std::polar(1.0, -2.0 * kPi / 3.0);
    vs = {v0, v1, v2, v3};
  } else {
    throw ValidationError("default_env_vectors: m must be 2 or 4");
  }
  return EnvVectors::make(std::move(vs));
}

StinespringIsometry stinespring(double theta, const EnvVectors& env) {
  const ChannelBasis cb = channel_basis(theta);
  const Eigen::Index m = env.m;
  Matrix v = Matrix::Zero(16 * m, 4);
  for (int i = 0; i < 4; ++i) {
    const Matrix r = psd_sqrt(cb.members[static_cast<size_t>(i)]);
    for (Eigen::Index a = 0; a < 4; ++a)
      for (Eigen::Index e = 0; e < m; ++e)
        v.row((a * 4 + i) * m + e) += r.row(a) * env.vectors[static_cast<size_t>(i)](e);
  }
  return StinespringIsometry::make(std::move(v), 16, m);
}

DensityMatrix apply_channel(const StinespringIsometry& v, const DensityMatrix& rho) {
  require_valid_state(v, rho);
  const Matrix w = v.v * rho.mat() * v.v.adjoint();
  return DensityMatrix::make(partial_trace(w, {v.d_B, v.d_E}, {0}));
}

DensityMatrix apply_complement(const StinespringIsometry& v, const DensityMatrix& rho) {
  require_valid_state(v, rho);
  const Matrix w = v.v * rho.mat() * v.v.adjoint();
  return DensityMatrix::make(partial_trace(w, {v.d_B, v.d_E}, {1}));
}

SubspaceBasis noncommutative_graph(const StinespringIsometry& v) {
  // Environment slice K_e: rows with env index e; the graph is spanned by
  // {K_k^dag K_l}.
  std::vector<Matrix> slices;
  for (Eigen::Index e = 0; e < v.d_E; ++e) {
    Matrix k(v.d_B, v.d_A);
    for (Eigen::Index b = 0; b < v.d_B; ++b) k.row(b) = v.v.row(b * v.d_E + e);
    slices.push_back(std::move(k));
  }
  std::vector<Matrix> all;
  for (Eigen::Index k = 0; k < v.d_E; ++k)
    for (Eigen::Index l = 0; l < v.d_E; ++l)
      all.push_back(slices[static_cast<size_t>(k)].adjoint() *
                    slices[static_cast<size_t>(l)]);

  // Reduce to an independent subset, keeping the first (k, l) candidate of
  // every new direction: Gram-Schmidt with a relative residual threshold.
  std::vector<Vector> frame;
  std::vector<Matrix> basis;
  for (const Matrix& g : all) {
    Vector r = Eigen::Map<const Vector>(g.data(), v.d_A * v.d_A);
    const double scale = r.norm();
    for (const Vector& q : frame) r -= q * q.dot(r);
    if (r.norm() > 1e-8 * std::max(1.0, scale)) {
      frame.push_back(r.normalized());
      basis.push_back(g);
    }
  }
  return SubspaceBasis{v.d_A, std::move(basis)};
}

IsometryDistance isometry_distance(const StinespringIsometry& a,
                                   const StinespringIsometry& b) {
  if (a.d_A != b.d_A || a.d_B != b.d_B || a.d_E != b.d_E)
    throw DimensionError("isometry_distance: dimension mismatch");
  const double d = op_norm(a.v - b.v);
  return IsometryDistance{d, 2.0 * d};
}

CqReport is_classical_quantum(const StinespringIsometry& v,
                              const std::vector<Vector>& basis_vectors) {
  if (static_cast<Eigen::Index>(basis_vectors.size()) != v.d_A)
    throw ValidationError("is_classical_quantum: need d_A basis vectors");
  for (size_t i = 0; i < basis_vectors.size(); ++i) {
    if (basis_vectors[i].size() != v.d_A)
      throw ValidationError("is_classical_quantum: wrong vector dimension");
    for (size_t j = 0; j <= i; ++j) {
      const Complex ov = basis_vectors[i].dot(basis_vectors[j]);
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(ov - Complex(target)) > tol::geometry)
        throw ValidationError("is_classical_quantum: basis not orthonormal");
    }
  }

  CqReport rep;
  for (const Vector& b : basis_vectors) {
    const Matrix proj = b * b.adjoint();
    rep.sigmas.push_back(apply_channel(v, DensityMatrix::make(proj)).mat());
  }

  std::vector<Vector> probes;
  for (size_t k = 0; k < basis_vectors.size(); ++k) {
    probes.push_back(basis_vectors[k]);
    for (size_t l = k + 1; l < basis_vectors.size(); ++l) {
      probes.push_back((basis_vectors[k] + basis_vectors[l]) / std::sqrt(2.0));
      probes.push_back((basis_vectors[k] + Complex(0.0, 1.0) * basis_vectors[l]) /
                       std::sqrt(2.0));
    }
  }
  for (size_t pi = 0; pi < probes.size(); ++pi) {
    const Matrix rho = probes[pi] * probes[pi].adjoint();
    const Matrix lhs = apply_channel(v, DensityMatrix::make(rho)).mat();
    Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
    for (size_t k = 0; k < basis_vectors.size(); ++k)
      rhs += basis_vectors[k].dot(rho * basis_vectors[k]) * rep.sigmas[k];
    const double dev = trace_norm(lhs - rhs);
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_probe = static_cast<int>(pi);
    }
  }
  rep.is_cq = rep.max_deviation <= tol::geometry;
  return rep;
}

}  // namespace zeclab
