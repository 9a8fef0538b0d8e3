#pragma once

#include <vector>

#include "zeclab/matcore.hpp"

namespace zeclab {

inline constexpr Eigen::Index kDefaultDimCap = 4096;

// Angle reduced mod 2pi into (-pi, pi].
double normalize_angle(double theta);

// Deformation parameters.  gamma = exp(i theta / 2) for the normalized
// angle; tau = gamma - 1; p is the block exponent (ambient dim 2^p).
struct GraphParams {
  double theta = 0.0;
  int p = 2;
  Complex gamma{1.0, 0.0};
  Complex tau{0.0, 0.0};
  static GraphParams make(double theta, int p = 2);
};

// Skew-symmetric sign pattern: zero diagonal, off-diagonal entries +/-1.
struct SignMatrix {
  Eigen::MatrixXi s;
  Eigen::Index size() const { return s.rows(); }
  static SignMatrix make(Eigen::MatrixXi s);
  // The default pattern: +1 everywhere strictly below the main diagonal.
  static SignMatrix lower_ones(Eigen::Index size);
};

// The real orthogonal 4x4 basis change S (S^{-1} = S^T) that brings the
// deformed subspace to near-diagonal form.
Matrix basis_change_S();

// T_theta = S^{-1} B S in closed form: u = 1 - cos(theta/2) on the inner
// diagonal, v = i sin(theta/2) on the anti-diagonal corners.
Matrix correction_T(double theta);

// Anti-diagonal permutation (ones on the skew diagonal).
Matrix skew_diag_W(Eigen::Index dim);

// The four generators of the deformed subspace on C^4, basis order
// (a, b, c, d): identity, I (x) X, the gamma-weighted anti-block, X (x) X.
SubspaceBasis subspace_L(double theta);

// Unitarily equivalent near-diagonal picture: diagonal indicators with a
// +/- T_theta / 4 correction.
SubspaceBasis subspace_Ls(double theta);

// Block deformation matrix D(theta, signs): all-ones diagonal blocks,
// [[gamma,1],[1,conj(gamma)]] where s_ij = -1 and the conjugate pattern
// where s_ij = +1.
Matrix deformation_matrix(const GraphParams& params, const SignMatrix& signs);

// Schur deformation of the 2^p-dimensional commutative reference algebra;
// basis ordered lexicographically over {I,X} factor choices (first factor
// most significant).  p = 2 with lower_ones reproduces subspace_L.
SubspaceBasis subspace_Lp(const GraphParams& params, const SignMatrix& signs,
                          Eigen::Index cap = kDefaultDimCap);

// All Kronecker products of the factor bases, lexicographic order (first
// factor most significant).
SubspaceBasis tensor_subspace(const std::vector<SubspaceBasis>& factors,
                              Eigen::Index cap = kDefaultDimCap);

struct GraphConditionReport {
  bool adjoint_closed = false;
  bool identity_in_span = false;
  bool w_checked = false;    // ambient dimension was a power of two
  bool w_invariant = false;  // meaningful only when w_checked
  bool all_hold() const {
    return adjoint_closed && identity_in_span && (!w_checked || w_invariant);
  }
};

GraphConditionReport check_graph_conditions(const SubspaceBasis& s);

}  // namespace zeclab
