#pragma once

#include <string>
#include <vector>

#include "zeclab/matcore.hpp"

namespace zeclab {

// Every explicit bound value produced for an (n, p) configuration.
struct BoundReport {
  int p = 0;
  int n = 0;
  double delta_p = 0.0;
  double theta_n = 0.0;   // root of the threshold equation for (p, n)
  double theta_star = 0.0;  // pi / m, the per-copy working angle
  std::vector<double> x_bounds;  // per-factor deformation bounds at theta_star
  double Delta_n = 0.0;          // product bound over x_bounds
  long long m = 0;               // copies needed for the positive-capacity leg
  double q0_lower = 0.0;         // capacity lower bound per channel use
  double s_lower = 0.0;          // asymptotic form of q0_lower
  double lambda_p = 0.0;         // amplification factor (p-1)/delta_p
};

struct ChainEntry {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparator = "<=";  // how value relates to threshold when ok
  bool ok = false;
};

enum class CertificateKind { zero_capacity, positive_capacity };

// Machine-checkable audit record: verdict is true exactly when every chain
// entry satisfies its threshold.
struct Certificate {
  CertificateKind kind = CertificateKind::zero_capacity;
  std::vector<double> theta_list;
  int p = 0;
  int n = 0;
  std::vector<ChainEntry> chain;
  bool verdict = false;
  std::string first_violated;  // empty when verdict is true
};

// Normalized trace-norm of the default sign pattern, via the cot sum.
double delta_p(int p);

// Same value through 2^{1-p} * trace_norm(S_*); cross-check of the formula.
double delta_p_tracenorm(int p);

// Upper bound on the deformation-map distance from identity for one copy:
// p = 2 uses the chord refinement min(|1 - e^{i theta/2}|, |theta|/2),
// p >= 3 uses 2(1 - cos(theta/2)) + delta_p |sin(theta/2)|.
double deformation_bound(double theta, int p);

// Delta_n = prod(1 + x_k) - 1.
double product_bound(const std::vector<double>& xs);

// Unique root of 2(1 - cos(t/2)) + delta_p sin(t/2) = ln(3/2)/n on (0, pi],
// certified bisection, absolute tolerance 1e-12 on the bracket width.
double theta_threshold(int p, int n);

BoundReport capacity_lower_bound(int n, int p);

struct Amplification {
  double lambda_p = 0.0;
  double limit = 0.0;  // pi / (2 ln 2)
};
Amplification amplification(int p);

// Zero-capacity certification for n copies with the given per-copy angles.
// p = 2 admits heterogeneous angles (budget sum |theta_k| <= 2 ln(3/2));
// p >= 3 requires identical angles and certifies |theta| <= theta_threshold.
Certificate certify(const std::vector<double>& theta_list, int p);

// Positive-capacity certificate assembled from a passed code verification.
Certificate positive_certificate(const std::vector<double>& theta_list, int p,
                                 double max_offdiag, double max_diag_spread,
                                 double tol);

}  // namespace zeclab
