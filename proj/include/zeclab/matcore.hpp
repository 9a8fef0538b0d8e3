#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "zeclab/errors.hpp"

namespace zeclab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Centralized tolerances.  All constructions here are exact in exact
// arithmetic, so these absorb floating-point noise only.
namespace tol {
inline constexpr double construction = 1e-10;  // isometry / completeness / hermiticity
inline constexpr double geometry = 1e-8;       // span membership, principal angles
inline constexpr double kl = 1e-9;             // default Knill-Laflamme verification
}  // namespace tol

// Hermitian, unit-trace, positive semidefinite (to tolerance) operator.
class DensityMatrix {
 public:
  static DensityMatrix make(Matrix m, double atol = tol::geometry);
  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

// Operator subspace given by a spanning list of d x d matrices.
// The list produced by the constructors below is linearly independent;
// use make_subspace to validate externally supplied data.
struct SubspaceBasis {
  Eigen::Index dim_ambient = 0;
  std::vector<Matrix> basis;
};

// Validates square shape, matching dimensions, finiteness and linear
// independence of the spanning list.
SubspaceBasis make_subspace(std::vector<Matrix> basis);

Matrix kron(const Matrix& a, const Matrix& b);

// Entrywise (Hadamard) product.
Matrix schur(const Matrix& a, const Matrix& b);

// Hermitian square root with eigenvalues in [-atol, 0) clamped to zero.
Matrix psd_sqrt(const Matrix& a, double atol = tol::construction);

// Largest singular value.
double op_norm(const Matrix& a);

// Sum of singular values.
double trace_norm(const Matrix& a);

// Partial trace over the factors NOT listed in `keep`.  `dims` lists the
// tensor factors with factor 0 most significant (standard Kronecker block
// layout, matching kron); kept factors stay in their original order.
Matrix partial_trace(const Matrix& a, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep);

// Orthonormal frame for span(basis) under <A,B> = Tr(A^dag B).  Input that
// is already orthonormal is returned unchanged up to phase.  Throws
// DegeneracyError when the vectorized stack has a singular value < 1e-8.
std::vector<Matrix> orthonormalize_frame(const std::vector<Matrix>& basis);
SubspaceBasis orthonormalize_subspace(const SubspaceBasis& s);

// Largest principal angle (radians) between the spans of the vectorized
// bases.  Computed through the sine (operator norm of the projected
// residual) so that equal spans give ~1e-15 rather than the ~1e-8 floor of
// an arccos formulation.
double subspace_distance(const SubspaceBasis& s1, const SubspaceBasis& s2);

// y = (F_0 (x) F_1 (x) ... (x) F_{n-1}) x by mode contraction, without
// materializing the product.  Factor 0 is the most significant index.
Vector apply_kron_factors(const std::vector<const Matrix*>& factors,
                          const Vector& x);

}  // namespace zeclab
