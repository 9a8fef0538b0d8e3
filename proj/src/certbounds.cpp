#include "zeclab/certbounds.hpp"

#include <cmath>
#include <numbers>

#include "zeclab/graphspace.hpp"

namespace zeclab {

namespace {

constexpr double kPi = std::numbers::pi;

double budget() { return 2.0 * std::log(1.5); }

double threshold_lhs(double t, double dp) {
  return 2.0 * (1.0 - std::cos(t / 2.0)) + dp * std::sin(t / 2.0);
}

void push(std::vector<ChainEntry>& chain, const std::string& name, double value,
          double threshold, const std::string& cmp) {
  bool ok = false;
  if (cmp == "<=")
    ok = value <= threshold;
  else if (cmp == ">=")
    ok = value >= threshold;
  else if (cmp == "<")
    ok = value < threshold;
  else
    ok = value > threshold;
  chain.push_back(ChainEntry{name, value, threshold, cmp, ok});
}

void finish(Certificate& cert) {
  cert.verdict = true;
  for (const ChainEntry& e : cert.chain)
    if (!e.ok) {
      cert.verdict = false;
      cert.first_violated = e.name;
      break;
    }
}

}  // namespace

double delta_p(int p) {
  if (p < 1) throw ValidationError("delta_p: p must be >= 1");
  const long long half = 1ll << (p - 1);
  double sum = 0.0;
  for (long long k = 1; k <= half; ++k) {
    const double x = static_cast<double>(2 * k - 1) * kPi /
                     static_cast<double>(1ll << p);
    sum += std::abs(std::cos(x) / std::sin(x));
  }
  return sum / static_cast<double>(half);
}

double delta_p_tracenorm(int p) {
  if (p < 2) throw ValidationError("delta_p_tracenorm: p must be >= 2");
  const Eigen::Index half = Eigen::Index(1) << (p - 1);
  if (half > 512) throw ResourceError("delta_p_tracenorm: 2^{p-1} > 512");
  const SignMatrix s = SignMatrix::lower_ones(half);
  return std::ldexp(trace_norm(s.s.cast<Complex>()), 1 - p);
}

double deformation_bound(double theta, int p) {
  if (p < 2) throw ValidationError("deformation_bound: p must be >= 2");
  const double t = normalize_angle(theta);
  if (p == 2) {
    const double chord = std::abs(1.0 - std::polar(1.0, t / 2.0));
    return std::min(chord, std::abs(t) / 2.0);
  }
  return 2.0 * (1.0 - std::cos(t / 2.0)) + delta_p(p) * std::abs(std::sin(t / 2.0));
}

double product_bound(const std::vector<double>& xs) {
  double prod = 1.0;
  for (double x : xs) {
    if (x < 0.0 || !std::isfinite(x))
      throw ValidationError("product_bound: factors must be finite and >= 0");
    prod *= 1.0 + x;
  }
  return prod - 1.0;
}

double theta_threshold(int p, int n) {
  if (p < 2) throw ValidationError("theta_threshold: p must be >= 2");
  if (n < 1) throw ValidationError("theta_threshold: n must be >= 1");
  const double dp = delta_p(p);
  const double rhs = std::log(1.5) / n;
  if (threshold_lhs(kPi, dp) < rhs)
    throw NoRootError("theta_threshold: right-hand side above LHS(pi)");
  double lo = 0.0, hi = kPi;  // LHS(0) = 0 < rhs, LHS strictly increasing
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (threshold_lhs(mid, dp) < rhs ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BoundReport capacity_lower_bound(int n, int p) {
  if (p < 2) throw ValidationError("capacity_lower_bound: p must be >= 2");
  if (n < 1) throw ValidationError("capacity_lower_bound: n must be >= 1");
  BoundReport r;
  r.p = p;
  r.n = n;
  r.delta_p = delta_p(p);
  r.theta_n = theta_threshold(p, n);
  r.lambda_p = static_cast<double>(p - 1) / r.delta_p;
  if (p == 2) {
    r.m = static_cast<long long>(std::floor(kPi * n / budget())) + 1;
    r.q0_lower = 1.0 / static_cast<double>(r.m);
  } else {
    r.m = static_cast<long long>(std::floor(kPi / r.theta_n)) + 1;
    r.q0_lower = static_cast<double>(p - 1) / static_cast<double>(r.m);
  }
  r.theta_star = kPi / static_cast<double>(r.m);
  r.x_bounds.assign(static_cast<size_t>(n), deformation_bound(r.theta_star, p));
  r.Delta_n = product_bound(r.x_bounds);
  r.s_lower = r.lambda_p * budget() / (kPi * n);
  return r;
}

Amplification amplification(int p) {
  if (p < 2) throw ValidationError("amplification: p must be >= 2");
  return Amplification{static_cast<double>(p - 1) / delta_p(p),
                       kPi / (2.0 * std::log(2.0))};
}

Certificate certify(const std::vector<double>& theta_list, int p) {
  if (p < 2) throw ValidationError("certify: p must be >= 2");
  if (theta_list.empty()) throw ValidationError("certify: empty theta list");
  Certificate cert;
  cert.kind = CertificateKind::zero_capacity;
  cert.p = p;
  cert.n = static_cast<int>(theta_list.size());
  for (double t : theta_list) cert.theta_list.push_back(normalize_angle(t));

  std::vector<double> xs;
  if (p == 2) {
    double sum = 0.0;
    for (double t : cert.theta_list) sum += std::abs(t);
    push(cert.chain, "sum_abs_theta", sum, budget(), "<=");
    for (size_t k = 0; k < cert.theta_list.size(); ++k) {
      const double x = deformation_bound(cert.theta_list[k], 2);
      xs.push_back(x);
      push(cert.chain, "x_" + std::to_string(k + 1), x,
           std::abs(cert.theta_list[k]) / 2.0, "<=");
    }
  } else {
    const double t0 = cert.theta_list.front();
    for (double t : cert.theta_list)
      if (std::abs(t - t0) > 1e-12)
        throw ValidationError("certify: p >= 3 requires identical angles");
    const double root = theta_threshold(p, cert.n);
    push(cert.chain, "abs_theta", std::abs(t0), root, "<=");
    const double x = deformation_bound(t0, p);
    xs.assign(static_cast<size_t>(cert.n), x);
    push(cert.chain, "x", x, std::log(1.5) / cert.n, "<=");
  }
  const double delta_n = product_bound(xs);
  push(cert.chain, "Delta_n", delta_n, 0.5, "<=");
  // The commutative reference admits no code pair unless the off-diagonal
  // and diagonal-spread suprema (each within 2 Delta_n of the deformed
  // values) can reach the gap floor 1.
  push(cert.chain, "commutative_gap_floor", 1.0, 2.0 * delta_n, ">=");
  finish(cert);
  return cert;
}

Certificate positive_certificate(const std::vector<double>& theta_list, int p,
                                 double max_offdiag, double max_diag_spread,
                                 double tol) {
  Certificate cert;
  cert.kind = CertificateKind::positive_capacity;
  cert.p = p;
  cert.n = static_cast<int>(theta_list.size());
  for (double t : theta_list) cert.theta_list.push_back(normalize_angle(t));
  push(cert.chain, "kl_max_offdiag", max_offdiag, tol, "<=");
  push(cert.chain, "kl_max_diag_spread", max_diag_spread, tol, "<=");
  finish(cert);
  return cert;
}

}  // namespace zeclab
