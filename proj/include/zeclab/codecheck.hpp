#pragma once

#include <vector>

#include "zeclab/graphspace.hpp"
#include "zeclab/matcore.hpp"

namespace zeclab {

// A candidate error-correcting code: an orthonormal set of unit vectors
// spanning the code subspace.
struct CodeCandidate {
  Eigen::Index dim_ambient = 0;
  std::vector<Vector> vectors;

  // Validates unit norms and pairwise orthogonality to atol.
  static CodeCandidate make(Eigen::Index dim_ambient, std::vector<Vector> vectors,
                            double atol = 1e-10);
};

// A base code together with its images under tensor products of I and W.
// Members are pairwise orthogonal as subspaces.
struct CodeFamily {
  CodeCandidate base;
  std::vector<Matrix> unitaries;
  std::vector<CodeCandidate> members;
};

// Knill-Laflamme residuals of one code against one operator subspace.
// Maxima are taken over the spanning set with each element scaled to unit
// operator norm, so they are comparable across subspaces.
struct KLReport {
  double max_offdiag = 0.0;      // largest |<phi_k|A|phi_l>|, k != l
  double max_diag_spread = 0.0;  // largest |<phi_k|A|phi_k> - <phi_l|A|phi_l>|
  double tol = tol::kl;
  bool pass = false;
};

// Aggregated family verification: worst-member maxima plus the Gram residual
// of all stacked member vectors against the identity.
struct FamilyReport {
  std::vector<KLReport> per_member;
  double max_offdiag = 0.0;
  double max_diag_spread = 0.0;
  double family_gram_residual = 0.0;
  double tol = tol::kl;
  bool pass = false;  // every member passes at tol
};

// Block-scalar (compressed) form: P_m A P_m = lambda(A) P_m for every member
// projector P_m, with lambda independent of the member.  Residuals are
// computed on op-norm-normalized elements; lambda is reported for the raw
// element (lambda_normalized * op_norm).
struct BlockScalarReport {
  std::vector<Complex> lambda;     // per basis element, taken from member 0
  double max_residual = 0.0;       // worst ||P A P - lambda P|| (compressed)
  double max_lambda_spread = 0.0;  // worst |lambda_m - lambda_0|
  Eigen::Index offending_member = -1;
  double tol = tol::kl;
  bool pass = false;
};

// Exact Knill-Laflamme residual scan of c against every element of s.
// Pass at tol certifies c as an error-correcting code for any channel whose
// noncommutative graph is span(s).
KLReport verify_code(const SubspaceBasis& s, const CodeCandidate& c,
                     double tol = tol::kl);

// The explicit 2^{p-1}-vector code in C^{2^{pn}}: vector k has amplitude
// 1/sqrt(2) on the repeated-digit ket with every base-2^p digit equal to
// 2k-2 and amplitude i/sqrt(2) on the one with every digit 2k-1 (1-based
// labels 2k-1, 2k mapped to 0-based digits once, here).
CodeCandidate build_code_vectors(int n, int p, Eigen::Index cap = kDefaultDimCap);

// All 2^n images of the base code under U_{x_1} x ... x U_{x_n} with
// U_0 = identity and U_1 = W_{2^p}; x ranges over bit strings, most
// significant bit = first tensor factor.
CodeFamily build_code_family(int n, int p, Eigen::Index cap = kDefaultDimCap);

// Verifies every family member against the tensor product of the factor
// subspaces.  Equivalent to verify_code against tensor_subspace(s_factors)
// but never materializes the product basis: elements are applied factor by
// factor and normalized by the product of factor operator norms.
FamilyReport verify_family_against_graph(const std::vector<SubspaceBasis>& s_factors,
                                         const CodeFamily& f, double tol = tol::kl);

// Checks the compressed block-scalar form of s on the family's member
// projectors and the member-independence of the scalars.
BlockScalarReport verify_block_scalar(const SubspaceBasis& s, const CodeFamily& f,
                                      double tol = tol::kl);

// Max deviation of the stacked family Gram matrix from the identity,
// computed on the sparse two-entry vectors directly; usable far beyond the
// dense cap (the n=8-copy family lives in dimension 4^8).
double family_gram_residual(int n, int p);

}  // namespace zeclab
