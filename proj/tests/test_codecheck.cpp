#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "zeclab/codecheck.hpp"
#include "zeclab/errors.hpp"
#include "zeclab/graphspace.hpp"
#include "zeclab/matcore.hpp"

using namespace zeclab;

namespace {

constexpr double kPi = std::numbers::pi;

CodeCandidate resonant_pair() {
  Vector phi = Vector::Zero(4), psi = Vector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  phi(0) = r;
  phi(1) = Complex(0.0, r);
  psi(2) = r;
  psi(3) = Complex(0.0, r);
  return CodeCandidate::make(4, {phi, psi});
}

Matrix random_unitary(std::mt19937_64& eng, Eigen::Index d) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(eng), g(eng));
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(d, d);
}

}  // namespace

TEST_CASE("CodeCandidate::make validates orthonormality") {
  Vector e0 = Vector::Unit(4, 0), e1 = Vector::Unit(4, 1);
  CHECK_NOTHROW(CodeCandidate::make(4, {e0, e1}));
  CHECK_THROWS_AS(CodeCandidate::make(4, {e0, e0}), ValidationError);
  CHECK_THROWS_AS(CodeCandidate::make(4, {2.0 * e0, e1}), ValidationError);
  CHECK_THROWS_AS(CodeCandidate::make(4, {}), ValidationError);
  CHECK_THROWS_AS(CodeCandidate::make(2, {e0, e1}), DimensionError);
}

TEST_CASE("build_code_vectors places two amplitudes per vector") {
  const CodeCandidate c = build_code_vectors(1, 2);
  REQUIRE(c.dim_ambient == 4);
  REQUIRE(c.vectors.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(c.vectors[0](0) - Complex(r)) < 1e-15);
  CHECK(std::abs(c.vectors[0](1) - Complex(0.0, r)) < 1e-15);
  CHECK(std::abs(c.vectors[1](2) - Complex(r)) < 1e-15);
  CHECK(std::abs(c.vectors[1](3) - Complex(0.0, r)) < 1e-15);
  CHECK(c.vectors[0].cwiseAbs().sum() == doctest::Approx(2.0 * r).epsilon(1e-14));
}

TEST_CASE("build_code_vectors repeats digits across copies") {
  const CodeCandidate c = build_code_vectors(2, 2);
  REQUIRE(c.dim_ambient == 16);
  // Digit d repeated twice in base 4 is index 5 * d.
  CHECK(std::abs(c.vectors[0](0)) > 0.1);
  CHECK(std::abs(c.vectors[0](5)) > 0.1);
  CHECK(std::abs(c.vectors[1](10)) > 0.1);
  CHECK(std::abs(c.vectors[1](15)) > 0.1);
  CHECK(c.vectors[0].norm() == doctest::Approx(1.0).epsilon(1e-14));
  // p = 3 has 4 vectors on digits {0,1},{2,3},{4,5},{6,7}.
  const CodeCandidate c3 = build_code_vectors(1, 3);
  REQUIRE(c3.vectors.size() == 4);
  CHECK(std::abs(c3.vectors[3](6)) > 0.1);
  CHECK(std::abs(c3.vectors[3](7)) > 0.1);
}

TEST_CASE("build_code_vectors enforces the resource cap") {
  CHECK_THROWS_AS(build_code_vectors(7, 2), ResourceError);
  CHECK_THROWS_AS(build_code_vectors(1, 13), ResourceError);
  CHECK_THROWS_AS(build_code_vectors(0, 2), ValidationError);
  CHECK_THROWS_AS(build_code_vectors(1, 1), ValidationError);
}

TEST_CASE("the deformed subspace at theta = pi admits the explicit pair") {
  const KLReport rep = verify_code(subspace_L(kPi), resonant_pair());
  CHECK(rep.pass);
  CHECK(rep.max_offdiag <= 1e-12);
  CHECK(rep.max_diag_spread <= 1e-12);
}

TEST_CASE("away from theta = pi the pair fails with residual cos(theta/2)") {
  for (double theta : {0.0, kPi / 2.0, 3.0}) {
    const KLReport rep = verify_code(subspace_L(theta), resonant_pair());
    CHECK_FALSE(rep.pass);
    CHECK(std::abs(rep.max_offdiag - std::abs(std::cos(theta / 2.0))) < 1e-9);
  }
}

TEST_CASE("verify_code is invariant under re-spanning the subspace") {
  std::mt19937_64 eng(3);
  const SubspaceBasis l = subspace_L(1.2);
  // Random invertible recombination of the spanning set.
  std::normal_distribution<double> g;
  std::vector<Matrix> mixed(4, Matrix::Zero(4, 4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      mixed[size_t(i)] += Complex(g(eng), g(eng)) * l.basis[size_t(j)];
  const KLReport a = verify_code(l, resonant_pair());
  const KLReport b = verify_code(make_subspace(mixed), resonant_pair());
  CHECK(a.pass == b.pass);
  // Maxima are scale-normalized, so they stay within the same decade.
  CHECK(b.max_offdiag > 0.1 * a.max_offdiag);
  CHECK(b.max_offdiag < 10.0 * a.max_offdiag);
}

TEST_CASE("verify_code rejects mismatched ambient dimensions") {
  const CodeCandidate pair = resonant_pair();
  CHECK_THROWS_AS(verify_code(subspace_Lp(GraphParams::make(kPi, 3),
                                          SignMatrix::lower_ones(4)),
                              pair),
                  DimensionError);
}

TEST_CASE("tensor pairs at complementary angles form a code") {
  const double theta = kPi / 3.0;
  const SubspaceBasis joint =
      tensor_subspace({subspace_L(theta), subspace_L(kPi - theta)});
  const CodeCandidate pair = build_code_vectors(2, 2);
  const KLReport rep = verify_code(joint, pair, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.max_offdiag <= 1e-10);
}

TEST_CASE("build_code_family enumerates all skew-diagonal images") {
  const CodeFamily f = build_code_family(1, 2);
  REQUIRE(f.members.size() == 2);
  REQUIRE(f.unitaries.size() == 2);
  CHECK((f.unitaries[0] - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.unitaries[1] - skew_diag_W(4)).cwiseAbs().maxCoeff() == 0.0);
  for (size_t m = 0; m < 2; ++m)
    for (size_t k = 0; k < 2; ++k) {
      const Vector expect = f.unitaries[m] * f.base.vectors[k];
      CHECK((f.members[m].vectors[k] - expect).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("family members are pairwise orthogonal subspaces") {
  for (int n : {1, 2}) {
    for (int p : {2, 3}) {
      const CodeFamily f = build_code_family(n, p);
      REQUIRE(f.members.size() == size_t(1) << n);
      double worst = 0.0;
      for (size_t a = 0; a < f.members.size(); ++a)
        for (size_t b = a + 1; b < f.members.size(); ++b)
          for (const Vector& x : f.members[a].vectors)
            for (const Vector& y : f.members[b].vectors)
              worst = std::max(worst, std::abs(x.dot(y)));
      CHECK(worst <= 1e-12);
      CHECK(family_gram_residual(n, p) <= 1e-12);
    }
  }
}

TEST_CASE("family_gram_residual scales to dimensions beyond the dense cap") {
  // n = 8 copies of the p = 2 block live in dimension 65536; the sparse
  // two-entry representation keeps this immediate.
  CHECK(family_gram_residual(8, 2) <= 1e-10);
  CHECK(family_gram_residual(5, 3) <= 1e-10);
  CHECK_THROWS_AS(family_gram_residual(0, 2), ValidationError);
}

TEST_CASE("angle sums congruent to pi pass the family verification") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(eng() % 2);
    std::vector<double> thetas;
    double sum = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      thetas.push_back(u(eng));
      sum += thetas.back();
    }
    thetas.push_back(kPi - sum);  // close the sum to exactly pi
    std::vector<SubspaceBasis> factors;
    for (double t : thetas) factors.push_back(subspace_L(t));
    const CodeFamily f = build_code_family(n, 2);
    const FamilyReport rep = verify_family_against_graph(factors, f, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_offdiag <= 1e-9);
    CHECK(rep.per_member.size() == f.members.size());
  }
}

TEST_CASE("perturbing one angle off the resonance breaks the family") {
  const std::vector<double> thetas{kPi / 3.0, kPi / 3.0, kPi / 3.0};
  std::vector<SubspaceBasis> factors;
  for (double t : thetas) factors.push_back(subspace_L(t));
  const CodeFamily f = build_code_family(3, 2);
  CHECK(verify_family_against_graph(factors, f).pass);

  factors[1] = subspace_L(kPi / 3.0 + 0.1);
  const FamilyReport rep = verify_family_against_graph(factors, f);
  CHECK_FALSE(rep.pass);
  // The angle-sum law: residual = |cos(sum/2)| = |cos(pi/2 + 0.05)|.
  CHECK(std::abs(rep.max_offdiag - std::abs(std::cos(kPi / 2.0 + 0.05))) <
        1e-9);
}

TEST_CASE("two-factor residual follows the half-angle cosine") {
  const FamilyReport rep = verify_family_against_graph(
      {subspace_L(kPi / 3.0), subspace_L(kPi / 3.0)}, build_code_family(2, 2));
  CHECK_FALSE(rep.pass);
  CHECK(std::abs(rep.max_offdiag - 0.5) < 1e-9);  // |cos(pi/3)| = 1/2
}

TEST_CASE("higher block exponent families pass at the resonant angle") {
  const std::vector<SubspaceBasis> factors(
      2, subspace_Lp(GraphParams::make(kPi / 2.0, 3), SignMatrix::lower_ones(4)));
  const CodeFamily f = build_code_family(2, 3);
  REQUIRE(f.base.vectors.size() == 4);
  REQUIRE(f.base.dim_ambient == 64);
  const FamilyReport rep = verify_family_against_graph(factors, f, 1e-9);
  CHECK(rep.pass);
  CHECK(rep.family_gram_residual <= 1e-10);
}

TEST_CASE("verify_family_against_graph validates factor shapes") {
  const CodeFamily f = build_code_family(2, 2);
  CHECK_THROWS_AS(
      verify_family_against_graph({subspace_L(0.1)}, f),
      DimensionError);
  std::vector<SubspaceBasis> wrong{
      subspace_L(0.1),
      subspace_Lp(GraphParams::make(0.1, 3), SignMatrix::lower_ones(4))};
  CHECK_THROWS_AS(verify_family_against_graph(wrong, f), DimensionError);
}

TEST_CASE("block-scalar compression holds on the resonant family") {
  const SubspaceBasis joint =
      tensor_subspace({subspace_L(kPi / 2.0), subspace_L(kPi / 2.0)});
  const CodeFamily f = build_code_family(2, 2);
  const BlockScalarReport rep = verify_block_scalar(joint, f, 1e-9);
  CHECK(rep.pass);
  CHECK(rep.max_residual <= 1e-9);
  CHECK(rep.max_lambda_spread <= 1e-9);
  CHECK(rep.offending_member == -1);
  REQUIRE(rep.lambda.size() == joint.basis.size());
  // The identity element compresses to lambda = 1.
  CHECK(std::abs(rep.lambda[0] - Complex(1.0)) < 1e-12);
}

TEST_CASE("block-scalar form fails off resonance with a named member") {
  const SubspaceBasis joint =
      tensor_subspace({subspace_L(kPi / 2.0), subspace_L(kPi / 3.0)});
  const CodeFamily f = build_code_family(2, 2);
  const BlockScalarReport rep = verify_block_scalar(joint, f);
  CHECK_FALSE(rep.pass);
  CHECK(rep.offending_member >= 0);
}

TEST_CASE("unitary images of a verified code verify identically") {
  std::mt19937_64 eng(23);
  const SubspaceBasis l = subspace_L(kPi);
  const CodeCandidate pair = resonant_pair();
  const Matrix u = random_unitary(eng, 4);
  std::vector<Matrix> rotated_basis;
  for (const Matrix& m : l.basis) rotated_basis.push_back(u * m * u.adjoint());
  std::vector<Vector> rotated_vecs;
  for (const Vector& v : pair.vectors) rotated_vecs.push_back(u * v);
  const KLReport a = verify_code(l, pair);
  const KLReport b = verify_code(make_subspace(rotated_basis),
                                 CodeCandidate::make(4, rotated_vecs));
  CHECK(a.pass == b.pass);
  CHECK(std::abs(a.max_offdiag - b.max_offdiag) < 1e-10);
}
