#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zeclab/certbounds.hpp"
#include "zeclab/graphspace.hpp"
#include "zeclab/matcore.hpp"

namespace zeclab {

struct SearchConfig {
  int restarts = 200;
  int max_iters = 2000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double step_shrink = 0.5;
  double step_grow = 1.3;
  std::uint64_t seed = 1;
  double success_tol = 1e-10;  // violation at or below this => code_found
  double report_tol = 1e-4;    // violations above this count as evidence
  int threads = 0;             // 0 = hardware concurrency
  Eigen::Index dim_cap = kDefaultDimCap;
};

enum class SearchStatus { code_found, no_code_evidence };

struct RestartTrace {
  int restart = 0;
  int iters = 0;
  double violation = 0.0;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::no_code_evidence;
  Vector phi;
  Vector psi;
  double best_violation = 0.0;
  int best_restart = 0;
  std::vector<RestartTrace> trace;
};

// Feasibility residual of the pair (phi, psi) as a 2-D code for span(s):
//   F = sum_i |<psi|B_i|phi>|^2 + |<phi|B_i|phi> - <psi|B_i|psi>|^2
// over a Hilbert-Schmidt-orthonormalized basis {B_i} of span(s), which makes
// the value independent of the particular spanning set.  F = 0 iff the pair
// spans an error-correcting code (the identity in the span forces
// <psi|phi> = 0 through the first term).
double violation(const SubspaceBasis& s, const Vector& phi, const Vector& psi);

// Value together with the conjugate-coordinate (Wirtinger) gradients
// g = dF/d(conj phi), so that dF along a complex direction u is 2 Re(g^* u);
// the gradient in real coordinates (Re phi, Im phi) is 2 (Re g, Im g).
struct ViolationGradient {
  double value = 0.0;
  Vector grad_phi;
  Vector grad_psi;
};

// Same orthonormalization contract as violation(); callers doing repeated
// evaluations should orthonormalize once and pass the frame through `onb`.
ViolationGradient violation_gradient(const std::vector<Matrix>& onb,
                                     const Vector& phi, const Vector& psi);

// Minimizes the violation over pairs of unit vectors: projected gradient
// descent with backtracking on the product of two unit spheres, independent
// seeded restarts (deterministic for a fixed seed regardless of thread
// count), and a Gauss-Newton polish of near-feasible endpoints.
SearchOutcome find_code_pair(const SubspaceBasis& s, const SearchConfig& cfg);

// In the diagonalizing basis of a maximal commutative algebra:
//   s1 = sum_i |x_i||y_i|     (sup of |<y|A|x>| over the unit ball)
//   s2 = sum_i ||x_i|^2 - |y_i|^2|   (sup of the diagonal spread)
// Guarantee: 2*s1 + s2 >= 2, hence max(2*s1, s2) >= 1.  Equality needs
// perfectly tuned supports (e.g. x = (1,1,0)/sqrt2, y = (1,0,1)/sqrt2);
// generic pairs satisfy the strict inequality.
std::pair<double, double> commutative_gap(const Vector& x, const Vector& y);

// Zero-capacity certificate for a subspace within deformation distance
// `delta` of a commuting reference: if a code pair existed, every unit-ball
// element of the reference would have off-diagonal element <= delta and
// diagonal spread <= 2*delta against it, contradicting the commutative gap
// once delta <= 1/2.  Returns nullopt (refusal) when delta > 1/2.
std::optional<Certificate> certify_no_code_near_commutative(
    const SubspaceBasis& s, const SubspaceBasis& commutative_reference,
    double delta);

}  // namespace zeclab
