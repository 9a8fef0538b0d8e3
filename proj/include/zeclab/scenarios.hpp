#pragma once

#include <string>

#include "zeclab/certbounds.hpp"
#include "zeclab/channelforge.hpp"
#include "zeclab/codecheck.hpp"
#include "zeclab/codesearch.hpp"
#include "zeclab/graphspace.hpp"

namespace zeclab {

// End-to-end composite: at theta_* = pi/m (m from the capacity bound at n
// copies), n copies carry a zero-capacity certificate while m copies carry a
// fully verified orthogonal code family; also reports how close the m = 2
// channel at theta_* sits to the undeformed one.
struct Corollary1Report {
  int n = 0;
  int p = 2;
  long long m = 0;
  double theta_star = 0.0;
  Certificate certificate;
  bool code_leg_full = false;      // family verified numerically
  FamilyReport family;             // populated only when code_leg_full
  double family_gram_residual = 0.0;
  double sum_theta_residual = 0.0; // |cos(sum theta_k / 2)| at m copies
  IsometryDistance continuity;
  std::string cap_note;            // set when the code leg is symbolic
  bool verified = false;
};

Corollary1Report scenario_corollary1(int n, Eigen::Index cap = kDefaultDimCap);

// Two single-copy searches (theta and pi - theta) plus the joint family:
// each factor alone shows no code, the tensor product carries four.
struct SuperactivationReport {
  double theta = 0.0;
  SearchOutcome search_first;
  SearchOutcome search_second;
  FamilyReport joint_family;
  bool superactivated = false;
};

SuperactivationReport scenario_superactivation(double theta,
                                               const SearchConfig& cfg);

}  // namespace zeclab
