#include "zeclab/scenarios.hpp"

#include <cmath>
#include <vector>

#include "zeclab/errors.hpp"

namespace zeclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Corollary1Report scenario_corollary1(int n, Eigen::Index cap) {
  if (n < 1) throw ValidationError("scenario needs n >= 1");
  Corollary1Report rep;
  rep.n = n;
  rep.p = 2;

  const BoundReport bounds = capacity_lower_bound(n, 2);
  rep.m = bounds.m;
  rep.theta_star = kPi / static_cast<double>(bounds.m);

  rep.certificate = certify(std::vector<double>(static_cast<size_t>(n),
                                                rep.theta_star), 2);

  const int m = static_cast<int>(rep.m);
  double sum_theta = 0.0;
  for (int k = 0; k < m; ++k) sum_theta += rep.theta_star;
  rep.sum_theta_residual = std::abs(std::cos(sum_theta / 2.0));
  rep.family_gram_residual = family_gram_residual(m, 2);

  const long long dim = 1LL << (2 * m);
  bool family_ok = false;
  if (m <= 6 && dim <= cap) {
    rep.code_leg_full = true;
    const CodeFamily fam = build_code_family(m, 2, cap);
    const std::vector<SubspaceBasis> factors(static_cast<size_t>(m),
                                             subspace_L(rep.theta_star));
    rep.family = verify_family_against_graph(factors, fam);
    family_ok = rep.family.pass &&
                rep.family.family_gram_residual <= 1e-10;
  } else {
    rep.cap_note = "code family not verified numerically (cap); orthogonality "
                   "and the angle-sum condition checked instead";
    family_ok = rep.family_gram_residual <= 1e-10 &&
                rep.sum_theta_residual <= 1e-9;
  }

  rep.continuity = isometry_distance(stinespring(rep.theta_star,
                                                 default_env_vectors(4)),
                                     stinespring(0.0, default_env_vectors(4)));
  rep.verified = rep.certificate.verdict && family_ok;
  return rep;
}

SuperactivationReport scenario_superactivation(double theta,
                                               const SearchConfig& cfg) {
  SuperactivationReport rep;
  rep.theta = theta;
  const SubspaceBasis first = subspace_L(theta);
  const SubspaceBasis second = subspace_L(kPi - theta);
  rep.search_first = find_code_pair(first, cfg);
  rep.search_second = find_code_pair(second, cfg);
  const CodeFamily fam = build_code_family(2, 2);
  rep.joint_family = verify_family_against_graph({first, second}, fam);
  rep.superactivated =
      rep.search_first.status == SearchStatus::no_code_evidence &&
      rep.search_second.status == SearchStatus::no_code_evidence &&
      rep.joint_family.pass;
  return rep;
}

}  // namespace zeclab
