#include "zeclab/graphspace.hpp"

#include <cmath>
#include <numbers>

namespace zeclab {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

// Residual of projecting m onto the orthonormal frame (Frobenius).
double span_residual(const std::vector<Matrix>& frame, const Matrix& m) {
  const Eigen::Index d2 = m.size();
  Vector v = Eigen::Map<const Vector>(m.data(), d2);
  Vector r = v;
  for (const Matrix& q : frame) {
    Eigen::Map<const Vector> qv(q.data(), d2);
    r -= qv * qv.dot(v);
  }
  return r.norm();
}

}  // namespace

double normalize_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t > kPi) t -= 2.0 * kPi;
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

GraphParams GraphParams::make(double theta, int p) {
  if (p < 1) throw ValidationError("GraphParams: p must be >= 1");
  GraphParams g;
  g.theta = normalize_angle(theta);
  g.p = p;
  g.gamma = std::polar(1.0, g.theta / 2.0);
  g.tau = g.gamma - 1.0;
  return g;
}

SignMatrix SignMatrix::make(Eigen::MatrixXi s) {
  if (s.rows() != s.cols() || s.rows() < 1)
    throw ValidationError("SignMatrix: must be square and nonempty");
  if (!is_power_of_two(s.rows()))
    throw ValidationError("SignMatrix: size must be a power of two");
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    if (s(i, i) != 0) throw ValidationError("SignMatrix: nonzero diagonal");
    for (Eigen::Index j = i + 1; j < s.cols(); ++j) {
      if (std::abs(s(i, j)) != 1)
        throw ValidationError("SignMatrix: off-diagonal entries must be +/-1");
      if (s(j, i) != -s(i, j))
        throw ValidationError("SignMatrix: not skew-symmetric");
    }
  }
  return SignMatrix{std::move(s)};
}

SignMatrix SignMatrix::lower_ones(Eigen::Index size) {
  Eigen::MatrixXi s = Eigen::MatrixXi::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      s(i, j) = 1;
      s(j, i) = -1;
    }
  return make(std::move(s));
}

Matrix basis_change_S() {
  Matrix s(4, 4);
  s << 1, 1, 1, 1, -1, 1, -1, 1, -1, -1, 1, 1, 1, -1, -1, 1;
  return 0.5 * s;
}

Matrix correction_T(double theta) {
  const double th = normalize_angle(theta);
  const Complex u(1.0 - std::cos(th / 2.0), 0.0);
  const Complex v(0.0, std::sin(th / 2.0));
  Matrix t = Matrix::Zero(4, 4);
  t(0, 0) = u;
  t(0, 3) = v;
  t(1, 1) = u;
  t(1, 2) = v;
  t(2, 1) = -v;
  t(2, 2) = -u;
  t(3, 0) = -v;
  t(3, 3) = -u;
  return t;
}

Matrix skew_diag_W(Eigen::Index dim) {
  if (!is_power_of_two(dim))
    throw ValidationError("skew_diag_W: dimension must be a power of two");
  Matrix w = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) w(i, dim - 1 - i) = 1.0;
  return w;
}

SubspaceBasis subspace_L(double theta) {
  const GraphParams g = GraphParams::make(theta, 2);
  const Matrix x = pauli_x();
  Matrix mc = Matrix::Zero(4, 4);
  mc(0, 2) = g.gamma;
  mc(1, 3) = std::conj(g.gamma);
  mc(2, 0) = std::conj(g.gamma);
  mc(3, 1) = g.gamma;
  std::vector<Matrix> basis;
  basis.push_back(Matrix::Identity(4, 4));
  basis.push_back(kron(Matrix::Identity(2, 2), x));
  basis.push_back(std::move(mc));
  basis.push_back(kron(x, x));
  return SubspaceBasis{4, std::move(basis)};
}

SubspaceBasis subspace_Ls(double theta) {
  const Matrix t = correction_T(theta);
  std::vector<Matrix> basis;
  for (int i = 0; i < 4; ++i) {
    Matrix e = Matrix::Zero(4, 4);
    e(i, i) = 1.0;
    basis.push_back(i < 2 ? Matrix(e - t / 4.0) : Matrix(e + t / 4.0));
  }
  return SubspaceBasis{4, std::move(basis)};
}

Matrix deformation_matrix(const GraphParams& params, const SignMatrix& signs) {
  const Eigen::Index half = signs.size();
  if ((Eigen::Index(1) << (params.p - 1)) != half)
    throw ValidationError("deformation_matrix: signs.size != 2^{p-1}");
  const Complex g = params.gamma;
  const Complex gc = std::conj(g);
  Matrix d(2 * half, 2 * half);
  for (Eigen::Index i = 0; i < half; ++i)
    for (Eigen::Index j = 0; j < half; ++j) {
      Matrix block(2, 2);
      if (i == j)
        block << 1, 1, 1, 1;
      else if (signs.s(i, j) == -1)
        block << g, 1, 1, gc;
      else
        block << gc, 1, 1, g;
      d.block(2 * i, 2 * j, 2, 2) = block;
    }
  return d;
}

SubspaceBasis subspace_Lp(const GraphParams& params, const SignMatrix& signs,
                          Eigen::Index cap) {
  const Eigen::Index dim = Eigen::Index(1) << params.p;
  if (dim > cap) throw ResourceError("subspace_Lp: 2^p exceeds dimension cap");
  const Matrix d = deformation_matrix(params, signs);
  const Matrix x = pauli_x();
  const Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    Matrix m = Matrix::Identity(1, 1);
    for (int f = params.p - 1; f >= 0; --f)
      m = kron(m, ((k >> f) & 1) ? x : id);
    basis.push_back(schur(d, m));
  }
  return SubspaceBasis{dim, std::move(basis)};
}

SubspaceBasis tensor_subspace(const std::vector<SubspaceBasis>& factors,
                              Eigen::Index cap) {
  if (factors.empty()) throw ValidationError("tensor_subspace: no factors");
  Eigen::Index dim = 1;
  for (const SubspaceBasis& f : factors) {
    if (f.basis.empty()) throw ValidationError("tensor_subspace: empty factor");
    dim *= f.dim_ambient;
    if (dim > cap) throw ResourceError("tensor_subspace: dimension cap exceeded");
  }
  std::vector<Matrix> basis{Matrix::Identity(1, 1)};
  for (const SubspaceBasis& f : factors) {
    std::vector<Matrix> next;
    next.reserve(basis.size() * f.basis.size());
    for (const Matrix& a : basis)
      for (const Matrix& b : f.basis) next.push_back(kron(a, b));
    basis.swap(next);
  }
  return SubspaceBasis{dim, std::move(basis)};
}

GraphConditionReport check_graph_conditions(const SubspaceBasis& s) {
  GraphConditionReport rep;
  const std::vector<Matrix> frame = orthonormalize_frame(s.basis);
  const double atol = tol::construction;

  rep.adjoint_closed = true;
  for (const Matrix& m : s.basis) {
    const Matrix adj = m.adjoint();
    if (span_residual(frame, adj) > atol * std::max(1.0, adj.norm())) {
      rep.adjoint_closed = false;
      break;
    }
  }
  const Matrix id = Matrix::Identity(s.dim_ambient, s.dim_ambient);
  rep.identity_in_span = span_residual(frame, id) <= atol * id.norm();

  if (is_power_of_two(s.dim_ambient)) {
    rep.w_checked = true;
    rep.w_invariant = true;
    const Matrix w = skew_diag_W(s.dim_ambient);
    for (const Matrix& m : s.basis) {
      const double dev = (w.adjoint() * m * w - m).cwiseAbs().maxCoeff();
      if (dev > atol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        rep.w_invariant = false;
        break;
      }
    }
  }
  return rep;
}

}  // namespace zeclab
