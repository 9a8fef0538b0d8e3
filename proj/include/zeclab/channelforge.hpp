#pragma once

#include <vector>

#include "zeclab/graphspace.hpp"

namespace zeclab {

// The four positive operators with span equal to the deformed subspace;
// they sum to the identity and generate the channel family.
struct ChannelBasis {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<Matrix> members;  // 4 PSD 4x4 matrices
};

// Four unit vectors in C^m whose projectors are linearly independent.
struct EnvVectors {
  Eigen::Index m = 0;
  std::vector<Vector> vectors;
  static EnvVectors make(std::vector<Vector> vectors);
};

// Isometry C^{d_A} -> C^{d_B} (x) C^{d_E}; the environment is the least
// significant (last) tensor factor of the row index.
struct StinespringIsometry {
  Matrix v;
  Eigen::Index d_A = 0;
  Eigen::Index d_B = 0;
  Eigen::Index d_E = 0;
  static StinespringIsometry make(Matrix v, Eigen::Index d_B, Eigen::Index d_E);
};

ChannelBasis channel_basis(double theta);

// m = 4: canonical basis vectors.  m = 2: tetrahedral Bloch states, the
// best-conditioned choice of four independent projectors on C^2.
EnvVectors default_env_vectors(Eigen::Index m);

// V: |phi> -> sum_i sqrt(A_i)|phi> (x) |i> (x) |psi_i>, so d_B = 16, d_E = m.
StinespringIsometry stinespring(double theta, const EnvVectors& env);

// rho -> Tr_E V rho V^dag.
DensityMatrix apply_channel(const StinespringIsometry& v, const DensityMatrix& rho);

// rho -> Tr_B V rho V^dag.
DensityMatrix apply_complement(const StinespringIsometry& v, const DensityMatrix& rho);

// Span of {V^dag (I_B (x) E_kl) V}, reduced to an independent subset.
SubspaceBasis noncommutative_graph(const StinespringIsometry& v);

struct IsometryDistance {
  double op_distance = 0.0;
  double cb_upper_bound = 0.0;  // 2 * op_distance
};
IsometryDistance isometry_distance(const StinespringIsometry& a,
                                   const StinespringIsometry& b);

struct CqReport {
  bool is_cq = false;
  double max_deviation = 0.0;  // worst probe trace distance
  int worst_probe = -1;
  std::vector<Matrix> sigmas;  // channel outputs on the basis states
};

// Probe-based test in the supplied orthonormal basis: the channel is
// classical-quantum there iff it agrees with rho -> sum_k <k|rho|k> sigma_k
// on all basis states and pairwise (real and imaginary) superpositions.
CqReport is_classical_quantum(const StinespringIsometry& v,
                              const std::vector<Vector>& basis_vectors);

}  // namespace zeclab
