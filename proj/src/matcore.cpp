#include "zeclab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace zeclab {

namespace {

bool all_finite(const Matrix& m) {
  return m.array().isFinite().all();
}

// Stack vectorized matrices as columns of a (d*d) x k matrix.
Matrix vectorized_stack(const std::vector<Matrix>& basis) {
  const Eigen::Index d2 = basis.front().size();
  Matrix v(d2, static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    v.col(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Vector>(basis[i].data(), d2);
  return v;
}

}  // namespace

DensityMatrix DensityMatrix::make(Matrix m, double atol) {
  if (m.rows() != m.cols())
    throw DimensionError("DensityMatrix: matrix not square");
  if (!all_finite(m)) throw ValidationError("DensityMatrix: non-finite entry");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > atol)
    throw ValidationError("DensityMatrix: not Hermitian to tolerance");
  if (std::abs(m.trace() - Complex(1.0)) > atol)
    throw ValidationError("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0,
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -atol)
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
  return DensityMatrix(std::move(m));
}

SubspaceBasis make_subspace(std::vector<Matrix> basis) {
  if (basis.empty()) throw ValidationError("subspace: empty basis");
  const Eigen::Index d = basis.front().rows();
  for (const Matrix& m : basis) {
    if (m.rows() != d || m.cols() != d)
      throw DimensionError("subspace: members must be square of equal size");
    if (!all_finite(m)) throw ValidationError("subspace: non-finite entry");
  }
  if (static_cast<Eigen::Index>(basis.size()) > d * d)
    throw ValidationError("subspace: more members than ambient dimension^2");
  // Independence via the Gram spectrum of the vectorized stack.
  Matrix v = vectorized_stack(basis);
  Eigen::SelfAdjointEigenSolver<Matrix> es(v.adjoint() * v,
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff()))
    throw DegeneracyError("subspace: spanning list numerically dependent");
  return SubspaceBasis{d, std::move(basis)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

Matrix schur(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("schur: shape mismatch");
  return a.cwiseProduct(b);
}

Matrix psd_sqrt(const Matrix& a, double atol) {
  if (a.rows() != a.cols()) throw DimensionError("psd_sqrt: not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > atol * scale)
    throw DomainError("psd_sqrt: input not Hermitian to tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  Eigen::VectorXd w = es.eigenvalues();
  // Eigenvalues within atol of zero are treated as exact zeros: sqrt turns
  // O(eps) spectral noise on singular input into O(sqrt(eps)) otherwise.
  const double clamp = atol * std::max(1.0, w.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -clamp)
      throw DomainError("psd_sqrt: eigenvalue " + std::to_string(w(i)) +
                        " below -atol");
    w(i) = w(i) <= clamp ? 0.0 : std::sqrt(w(i));
  }
  Matrix r = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return (r + r.adjoint()) / 2.0;
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // Direct SVD of a (not the spectrum of a^dag a): the squared formulation
  // loses half the digits and misses the 1e-10 agreement targets at p=8.
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

Matrix partial_trace(const Matrix& a, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep) {
  if (a.rows() != a.cols()) throw DimensionError("partial_trace: not square");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    if (d <= 0) throw DimensionError("partial_trace: nonpositive factor");
    total *= d;
  }
  if (total != a.rows())
    throw DimensionError("partial_trace: dims product != matrix size");
  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw DimensionError("partial_trace: bad keep index");
    kept[k] = true;
  }
  // Row strides of each factor; factor 0 most significant.
  std::vector<Eigen::Index> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> kf, tf;
  for (int f = 0; f < nf; ++f) (kept[f] ? kf : tf).push_back(f);
  Eigen::Index dk = 1, dt = 1;
  for (int f : kf) dk *= dims[f];
  for (int f : tf) dt *= dims[f];

  // offsets[i] = row offset of the i-th multi-index over the given factors
  auto offsets = [&](const std::vector<int>& fs, Eigen::Index count) {
    std::vector<Eigen::Index> off(count, 0);
    std::vector<Eigen::Index> idx(fs.size(), 0);
    for (Eigen::Index i = 0; i < count; ++i) {
      Eigen::Index o = 0;
      for (size_t j = 0; j < fs.size(); ++j) o += idx[j] * stride[fs[j]];
      off[i] = o;
      for (int j = static_cast<int>(fs.size()) - 1; j >= 0; --j) {
        if (++idx[j] < dims[fs[j]]) break;
        idx[j] = 0;
      }
    }
    return off;
  };
  const auto koff = offsets(kf, dk);
  const auto toff = offsets(tf, dt);

  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t)
        s += a(koff[i] + toff[t], koff[j] + toff[t]);
      out(i, j) = s;
    }
  return out;
}

std::vector<Matrix> orthonormalize_frame(const std::vector<Matrix>& basis) {
  if (basis.empty()) throw ValidationError("orthonormalize: empty basis");
  const Eigen::Index d = basis.front().rows();
  for (const Matrix& m : basis)
    if (m.rows() != d || m.cols() != basis.front().cols())
      throw DimensionError("orthonormalize: inconsistent shapes");
  Matrix v = vectorized_stack(basis);
  {
    Eigen::BDCSVD<Matrix> svd(v);
    if (svd.singularValues().minCoeff() < 1e-8)
      throw DegeneracyError("orthonormalize: dependent basis, sigma_min = " +
                            std::to_string(svd.singularValues().minCoeff()));
  }
  // Non-pivoted QR keeps already-orthonormal input fixed up to phase
  // (an SVD would mix the degenerate unit singular space arbitrarily).
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix q = qr.householderQ() * Matrix::Identity(v.rows(), v.cols());
  std::vector<Matrix> out(basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    out[i] = Eigen::Map<const Matrix>(q.col(static_cast<Eigen::Index>(i)).data(),
                                      d, basis.front().cols());
  return out;
}

SubspaceBasis orthonormalize_subspace(const SubspaceBasis& s) {
  return SubspaceBasis{s.dim_ambient, orthonormalize_frame(s.basis)};
}

double subspace_distance(const SubspaceBasis& s1, const SubspaceBasis& s2) {
  if (s1.dim_ambient != s2.dim_ambient)
    throw DimensionError("subspace_distance: ambient dimension mismatch");
  Matrix q1 = vectorized_stack(orthonormalize_frame(s1.basis));
  Matrix q2 = vectorized_stack(orthonormalize_frame(s2.basis));
  const double r1 = op_norm(q2 - q1 * (q1.adjoint() * q2));
  const double r2 = op_norm(q1 - q2 * (q2.adjoint() * q1));
  return std::asin(std::min(1.0, std::max(r1, r2)));
}

Vector apply_kron_factors(const std::vector<const Matrix*>& factors,
                          const Vector& x) {
  Eigen::Index total = 1;
  for (const Matrix* f : factors) {
    if (f->rows() != f->cols())
      throw DimensionError("apply_kron_factors: factors must be square");
    total *= f->rows();
  }
  if (total != x.size())
    throw DimensionError("apply_kron_factors: dimension mismatch");
  Vector cur = x;
  Eigen::Index left = 1;
  for (const Matrix* f : factors) {
    const Eigen::Index d = f->rows();
    const Eigen::Index right = total / (left * d);
    Vector next(total);
    using RowMajorMap = Eigen::Map<
        const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    using RowMajorOut = Eigen::Map<
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    for (Eigen::Index l = 0; l < left; ++l) {
      RowMajorMap block(cur.data() + l * d * right, d, right);
      RowMajorOut(next.data() + l * d * right, d, right) = (*f) * block;
    }
    cur.swap(next);
    left *= d;
  }
  return cur;
}

}  // namespace zeclab
