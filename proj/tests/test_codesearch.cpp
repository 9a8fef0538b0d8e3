#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "zeclab/codecheck.hpp"
#include "zeclab/codesearch.hpp"
#include "zeclab/errors.hpp"
#include "zeclab/graphspace.hpp"
#include "zeclab/matcore.hpp"

using namespace zeclab;

namespace {

constexpr double kPi = std::numbers::pi;

Vector random_unit(std::mt19937_64& eng, Eigen::Index d) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(g(eng), g(eng));
  v.normalize();
  return v;
}

// Direct evaluation of the residual from its definition, for cross-checks.
double violation_by_hand(const std::vector<Matrix>& onb, const Vector& phi,
                         const Vector& psi) {
  double f = 0.0;
  for (const Matrix& b : onb) {
    f += std::norm(psi.dot(b * phi));
    f += std::norm(phi.dot(b * phi) - psi.dot(b * psi));
  }
  return f;
}

CodeCandidate orthonormalized_pair(const Vector& phi, const Vector& psi) {
  Vector q = psi - phi * phi.dot(psi);
  q.normalize();
  return CodeCandidate::make(phi.size(), {phi, q});
}

}  // namespace

TEST_CASE("violation vanishes on the explicit pair at theta = pi") {
  const CodeCandidate pair = build_code_vectors(1, 2);
  const double f =
      violation(subspace_L(kPi), pair.vectors[0], pair.vectors[1]);
  CHECK(f < 1e-24);
}

TEST_CASE("violation of a coincident pair is at least 1/d") {
  // The identity sits in every span; <psi|I/sqrt(d)|phi> alone contributes
  // 1/d when phi = psi.
  std::mt19937_64 eng(3);
  for (double theta : {0.0, 1.1, kPi}) {
    const Vector v = random_unit(eng, 4);
    CHECK(violation(subspace_L(theta), v, v) >= 0.25 - 1e-12);
  }
}

TEST_CASE("violation matches its definition on an orthonormalized frame") {
  std::mt19937_64 eng(5);
  const SubspaceBasis l = subspace_L(1.7);
  const std::vector<Matrix> onb = orthonormalize_frame(l.basis);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector phi = random_unit(eng, 4);
    const Vector psi = random_unit(eng, 4);
    const double direct = violation_by_hand(onb, phi, psi);
    CHECK(violation(l, phi, psi) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("violation is independent of the spanning set") {
  std::mt19937_64 eng(7);
  std::normal_distribution<double> g;
  const SubspaceBasis l = subspace_L(2.2);
  std::vector<Matrix> mixed(4, Matrix::Zero(4, 4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      mixed[size_t(i)] += Complex(g(eng), g(eng)) * l.basis[size_t(j)];
  const SubspaceBasis remixed = make_subspace(mixed);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector phi = random_unit(eng, 4);
    const Vector psi = random_unit(eng, 4);
    const double a = violation(l, phi, psi);
    const double b = violation(remixed, phi, psi);
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("violation is invariant under a global unitary") {
  std::mt19937_64 eng(11);
  std::normal_distribution<double> g;
  Matrix m(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = Complex(g(eng), g(eng));
  Eigen::HouseholderQR<Matrix> qr(m);
  const Matrix u = qr.householderQ() * Matrix::Identity(4, 4);
  const SubspaceBasis l = subspace_L(0.9);
  std::vector<Matrix> rotated;
  for (const Matrix& b : l.basis) rotated.push_back(u * b * u.adjoint());
  const SubspaceBasis lrot = make_subspace(rotated);
  const Vector phi = random_unit(eng, 4);
  const Vector psi = random_unit(eng, 4);
  CHECK(std::abs(violation(l, phi, psi) - violation(lrot, u * phi, u * psi)) <
        1e-12);
}

TEST_CASE("violation validates unit norms") {
  const SubspaceBasis l = subspace_L(0.3);
  Vector big = 2.0 * Vector::Unit(4, 0);
  CHECK_THROWS_AS(violation(l, big, Vector::Unit(4, 1)), ValidationError);
  CHECK_THROWS_AS(violation(l, Vector::Unit(2, 0), Vector::Unit(2, 1)),
                  DimensionError);
}

TEST_CASE("violation_gradient matches central finite differences") {
  std::mt19937_64 eng(13);
  for (Eigen::Index d : {Eigen::Index(4), Eigen::Index(16)}) {
    const SubspaceBasis s =
        d == 4 ? subspace_L(1.3)
               : tensor_subspace({subspace_L(1.3), subspace_L(0.4)});
    const std::vector<Matrix> onb = orthonormalize_frame(s.basis);
    for (int trial = 0; trial < 5; ++trial) {
      Vector phi = random_unit(eng, d);
      Vector psi = random_unit(eng, d);
      const ViolationGradient vg = violation_gradient(onb, phi, psi);
      const double h = 1e-5;
      double worst = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        for (int part = 0; part < 2; ++part) {
          const Complex dir = part == 0 ? Complex(1.0) : Complex(0.0, 1.0);
          Vector up = phi, dn = phi;
          up(i) += h * dir;
          dn(i) -= h * dir;
          const double num =
              (violation_by_hand(onb, up, psi) -
               violation_by_hand(onb, dn, psi)) /
              (2.0 * h);
          const double ana = part == 0 ? 2.0 * vg.grad_phi(i).real()
                                       : 2.0 * vg.grad_phi(i).imag();
          worst = std::max(worst, std::abs(num - ana));
        }
      }
      CHECK(worst < 1e-5);
      // Spot-check the psi gradient the same way on one coordinate.
      Vector up = psi, dn = psi;
      up(0) += h;
      dn(0) -= h;
      const double num = (violation_by_hand(onb, phi, up) -
                          violation_by_hand(onb, phi, dn)) /
                         (2.0 * h);
      CHECK(std::abs(num - 2.0 * vg.grad_psi(0).real()) < 1e-5);
      CHECK(vg.value == doctest::Approx(violation_by_hand(onb, phi, psi))
                            .epsilon(1e-12));
    }
  }
}

TEST_CASE("find_code_pair succeeds on the resonant subspace") {
  SearchConfig cfg;
  cfg.restarts = 40;
  cfg.seed = 9;
  const SearchOutcome out = find_code_pair(subspace_L(kPi), cfg);
  CHECK(out.status == SearchStatus::code_found);
  CHECK(out.best_violation <= cfg.success_tol);
  // The returned pair, orthonormalized, passes the exact verification.
  const KLReport rep =
      verify_code(subspace_L(kPi), orthonormalized_pair(out.phi, out.psi), 1e-8);
  CHECK(rep.pass);
  CHECK(out.trace.size() == 40);
}

TEST_CASE("find_code_pair reports evidence of absence off resonance") {
  SearchConfig cfg;
  cfg.restarts = 60;
  cfg.seed = 4;
  const SearchOutcome out = find_code_pair(subspace_L(kPi / 2.0), cfg);
  CHECK(out.status == SearchStatus::no_code_evidence);
  CHECK(out.best_violation > cfg.report_tol);
}

TEST_CASE("find_code_pair resolves the two-copy resonance") {
  SearchConfig cfg;
  cfg.restarts = 30;
  cfg.seed = 21;
  const SubspaceBasis joint =
      tensor_subspace({subspace_L(kPi / 3.0), subspace_L(2.0 * kPi / 3.0)});
  const SearchOutcome out = find_code_pair(joint, cfg);
  CHECK(out.status == SearchStatus::code_found);
  const KLReport rep =
      verify_code(joint, orthonormalized_pair(out.phi, out.psi), 1e-8);
  CHECK(rep.pass);
}

TEST_CASE("find_code_pair is deterministic for a fixed seed") {
  SearchConfig cfg;
  cfg.restarts = 12;
  cfg.max_iters = 300;
  cfg.seed = 42;
  const SubspaceBasis l = subspace_L(0.8);
  const SearchOutcome a = find_code_pair(l, cfg);
  const SearchOutcome b = find_code_pair(l, cfg);
  CHECK(a.best_violation == b.best_violation);
  CHECK(a.best_restart == b.best_restart);
  CHECK((a.phi - b.phi).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.psi - b.psi).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("thread count does not change the search result") {
  SearchConfig one;
  one.restarts = 10;
  one.max_iters = 250;
  one.seed = 77;
  one.threads = 1;
  SearchConfig four = one;
  four.threads = 4;
  const SubspaceBasis l = subspace_L(1.9);
  const SearchOutcome a = find_code_pair(l, one);
  const SearchOutcome b = find_code_pair(l, four);
  CHECK(a.best_violation == b.best_violation);
  CHECK(a.best_restart == b.best_restart);
  CHECK((a.phi - b.phi).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(a.trace.size() == b.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i)
    CHECK(a.trace[i].violation == b.trace[i].violation);
}

TEST_CASE("find_code_pair validates its configuration") {
  SearchConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(find_code_pair(subspace_L(0.1), cfg), ValidationError);
  SearchConfig swapped;
  swapped.success_tol = 1e-3;
  swapped.report_tol = 1e-6;
  CHECK_THROWS_AS(find_code_pair(subspace_L(0.1), swapped), ValidationError);
}

TEST_CASE("commutative_gap hand values") {
  Vector x = Vector::Unit(4, 0), y = Vector::Unit(4, 1);
  auto [s1, s2] = commutative_gap(x, y);
  CHECK(s1 == 0.0);
  CHECK(s2 == 2.0);
  auto [t1, t2] = commutative_gap(x, x);
  CHECK(t1 == 1.0);
  CHECK(t2 == 0.0);
}

TEST_CASE("commutative_gap boundary pair attains the floor") {
  Vector x = Vector::Zero(3), y = Vector::Zero(3);
  const double r = 1.0 / std::sqrt(2.0);
  x(0) = r;
  x(1) = r;
  y(0) = r;
  y(2) = r;
  auto [s1, s2] = commutative_gap(x, y);
  CHECK(std::abs(2.0 * s1 - 1.0) < 1e-14);
  CHECK(std::abs(s2 - 1.0) < 1e-14);
  CHECK(std::abs(2.0 * s1 + s2 - 2.0) < 1e-14);
}

TEST_CASE("commutative_gap floor holds on random pairs") {
  std::mt19937_64 eng(19);
  for (Eigen::Index d : {Eigen::Index(4), Eigen::Index(16), Eigen::Index(64)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Vector x = random_unit(eng, d);
      const Vector y = random_unit(eng, d);
      auto [s1, s2] = commutative_gap(x, y);
      CHECK(2.0 * s1 + s2 >= 2.0 - 1e-12);
      CHECK(std::max(2.0 * s1, s2) >= 1.0 - 1e-12);
    }
  }
  Vector bad = 3.0 * Vector::Unit(4, 0);
  CHECK_THROWS_AS(commutative_gap(bad, Vector::Unit(4, 1)), ValidationError);
}

TEST_CASE("gap floor binds the pairs returned by failed searches") {
  // The diagonal algebra of the undeformed subspace is maximal commutative
  // in the Hadamard-rotated frame, so any pair the optimizer lands on must
  // respect the floor there.
  Matrix h2(2, 2);
  h2 << 1, 1, 1, -1;
  h2 /= std::sqrt(2.0);
  const Matrix h4 = kron(h2, h2);
  SearchConfig cfg;
  cfg.restarts = 10;
  cfg.max_iters = 400;
  cfg.seed = 5;
  const SearchOutcome out = find_code_pair(subspace_L(0.0), cfg);
  CHECK(out.status == SearchStatus::no_code_evidence);
  auto [s1, s2] = commutative_gap(h4 * out.phi, h4 * out.psi);
  CHECK(std::max(2.0 * s1, s2) >= 1.0 - 1e-10);
}

TEST_CASE("certify_no_code_near_commutative grants small deformations") {
  const SubspaceBasis ref = subspace_L(0.0);
  const auto cert = certify_no_code_near_commutative(subspace_L(0.3), ref, 0.3);
  REQUIRE(cert.has_value());
  CHECK(cert->verdict);
  CHECK(cert->kind == CertificateKind::zero_capacity);
  CHECK(cert->first_violated.empty());
  bool found_floor = false;
  for (const ChainEntry& e : cert->chain)
    if (e.name == "commutative_gap_floor") found_floor = true;
  CHECK(found_floor);
}

TEST_CASE("certify_no_code_near_commutative refuses past the half barrier") {
  const SubspaceBasis ref = subspace_L(0.0);
  CHECK_FALSE(
      certify_no_code_near_commutative(subspace_L(2.0), ref, 0.7).has_value());
  CHECK_THROWS_AS(
      certify_no_code_near_commutative(subspace_L(0.3), ref, -0.1),
      ValidationError);
}

TEST_CASE("certify_no_code_near_commutative demands a commuting reference") {
  CHECK_THROWS_AS(certify_no_code_near_commutative(subspace_L(0.3),
                                                   subspace_L(kPi), 0.2),
                  ValidationError);
}
