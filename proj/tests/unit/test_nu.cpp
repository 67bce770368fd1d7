#include <algorithm>
#include <cmath>
#include <random>

#include "dirac2d/errors.hpp"
#include "dirac2d/nu.hpp"
#include "doctest.h"

using namespace dirac2d;
using namespace dirac2d::nu;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Radial instance with p2 = 3, q = -3, delta = 2.
HypergeometricProblem worked_instance() { return radial_problem({3.0, -3.0, 2.0, 0.5}); }

bool poly_close(const Poly& got, const Poly& want, double tol) {
  return std::abs(got.c0 - want.c0) <= tol && std::abs(got.c1 - want.c1) <= tol &&
         std::abs(got.c2 - want.c2) <= tol;
}

double poly_scale(const HypergeometricProblem& pb, double k) {
  return std::max({1.0, std::abs(pb.sigma.c0), std::abs(pb.sigma.c1), std::abs(pb.sigma.c2),
                   std::abs(pb.tau_tilde.c0), std::abs(pb.tau_tilde.c1),
                   std::abs(pb.sigma_tilde.c0), std::abs(pb.sigma_tilde.c1),
                   std::abs(pb.sigma_tilde.c2), std::abs(k)});
}

}  // namespace

TEST_CASE("radial_problem has the s = r^2 shape") {
  const auto pb = worked_instance();
  CHECK(pb.sigma.c1 == 2.0);
  CHECK(pb.sigma.c0 == 0.0);
  CHECK(pb.tau_tilde.c0 == 1.0);
  CHECK(pb.sigma_tilde.c2 == -3.0);
  CHECK(pb.sigma_tilde.c1 == 3.0);
  CHECK(pb.sigma_tilde.c0 == -2.0);
}

TEST_CASE("pi_candidates on the worked instance") {
  const auto cands = pi_candidates(worked_instance());
  REQUIRE(cands.size() == 4);
  CHECK(cands[0].k == doctest::Approx(1.5 - 1.5 * kSqrt3));
  CHECK(cands[2].k == doctest::Approx(1.5 + 1.5 * kSqrt3));
  const bool has_branch = std::any_of(cands.begin(), cands.end(), [](const NUSolution& s) {
    return std::abs(s.k - (1.5 - 1.5 * kSqrt3)) < 1e-12 &&
           poly_close(s.pi, {2.0, -kSqrt3, 0.0}, 1e-12);
  });
  CHECK(has_branch);
  for (const auto& s : cands) {
    const Poly d = resubstitution_defect(s, worked_instance());
    CHECK(poly_close(d, {}, 1e-12));
  }
}

TEST_CASE("pi_candidates on sigma_tilde = -s^2") {
  const HypergeometricProblem pb{{0, 2, 0}, {1, 0, 0}, {0, 0, -1}};
  const auto cands = pi_candidates(pb);
  REQUIRE(cands.size() == 4);
  CHECK(cands[0].k == doctest::Approx(-0.5));
  CHECK(cands[2].k == doctest::Approx(0.5));
  const bool has_branch = std::any_of(cands.begin(), cands.end(), [](const NUSolution& s) {
    return std::abs(s.k + 0.5) < 1e-14 && poly_close(s.pi, {1.0, -1.0, 0.0}, 1e-14);
  });
  CHECK(has_branch);
}

TEST_CASE("pi_candidates with zero source term") {
  // k = 0 is a double root; the radicand is the constant 1/4.
  const HypergeometricProblem pb{{0, 2, 0}, {1, 0, 0}, {0, 0, 0}};
  const auto cands = pi_candidates(pb);
  REQUIRE(cands.size() == 2);
  for (const auto& s : cands) {
    CHECK(s.k == doctest::Approx(0.0));
    CHECK(s.pi.c1 == doctest::Approx(0.0));
  }
  std::vector<double> consts{cands[0].pi.c0, cands[1].pi.c0};
  std::sort(consts.begin(), consts.end());
  CHECK(consts[0] == doctest::Approx(0.0));
  CHECK(consts[1] == doctest::Approx(1.0));
}

TEST_CASE("pi_candidates error paths") {
  CHECK_THROWS_AS(pi_candidates({{0, 0, 0}, {1, 0, 0}, {0, 0, -1}}), DegenerateSigma);
  // p2 < 0 with delta + 1/4 > 0: the k-quadratic has no real root.
  CHECK_THROWS_AS(pi_candidates(radial_problem({-1.0, 0.5, 1.0, 0.0})), NoRealK);
}

TEST_CASE("select_solution picks the decaying branch") {
  const auto worked = worked_instance();
  const auto sol = select_solution(pi_candidates(worked));
  CHECK(poly_close(sol.pi, {2.0, -kSqrt3, 0.0}, 1e-12));
  CHECK(poly_close(sol.tau, {5.0, -2.0 * kSqrt3, 0.0}, 1e-12));
  CHECK(sol.tau.c1 < 0.0);

  const HypergeometricProblem pb{{0, 2, 0}, {1, 0, 0}, {0, 0, -1}};
  const auto sol2 = select_solution(pi_candidates(pb));
  CHECK(poly_close(sol2.pi, {1.0, -1.0, 0.0}, 1e-14));
  CHECK(poly_close(sol2.tau, {3.0, -2.0, 0.0}, 1e-14));
}

TEST_CASE("select_solution without a bound branch") {
  NUSolution flat;
  flat.pi = {0.5, 0.0, 0.0};
  flat.tau = {2.0, 0.0, 0.0};
  NUSolution rising = flat;
  rising.pi = {0.5, 1.0, 0.0};
  rising.tau = {2.0, 2.0, 0.0};
  CHECK_THROWS_AS(select_solution({flat, rising}), NoBoundBranch);
  CHECK_THROWS_AS(select_solution({}), NoBoundBranch);
}

TEST_CASE("eigen_condition examples") {
  const auto worked = worked_instance();
  const auto sol = select_solution(pi_candidates(worked));
  CHECK(eigen_condition(sol, worked, 0) == doctest::Approx(1.5 - 2.5 * kSqrt3));
  CHECK(eigen_condition(sol, worked, 0) == doctest::Approx(-2.8301270189));
  CHECK(lambda_n(sol, worked, 0) == 0.0);

  // q = -p (4n + 2 + sqrt(4 delta + 1)) with p = 1, delta = 0, n = 1.
  const auto built = radial_problem({1.0, -7.0, 0.0, 0.5});
  const auto built_sol = select_solution(pi_candidates(built));
  CHECK(std::abs(eigen_condition(built_sol, built, 1)) < 1e-14);
  CHECK(std::abs(eigen_condition(built_sol, built, 0)) > 1.0);
}

TEST_CASE("laguerre_class_parts examples") {
  const auto worked = worked_instance();
  const auto parts = laguerre_class_parts(select_solution(pi_candidates(worked)), worked);
  CHECK(parts.weight_power == doctest::Approx(1.5));
  CHECK(parts.weight_rate == doctest::Approx(kSqrt3));
  CHECK(parts.phi_power == doctest::Approx(1.0));
  CHECK(parts.phi_rate == doctest::Approx(kSqrt3 / 2.0));

  const HypergeometricProblem pb{{0, 2, 0}, {1, 0, 0}, {0, 0, -1}};
  const auto parts2 = laguerre_class_parts(select_solution(pi_candidates(pb)), pb);
  CHECK(parts2.weight_power == doctest::Approx(0.5));
  CHECK(parts2.weight_rate == doctest::Approx(1.0));

  NUSolution half;
  half.pi = {0.5, 0.0, 0.0};
  half.tau = {2.0, 0.0, 0.0};
  const auto parts3 = laguerre_class_parts(half, pb);
  CHECK(parts3.phi_power == doctest::Approx(0.25));
  CHECK(parts3.phi_rate == doctest::Approx(0.0));
}

TEST_CASE("laguerre_class_parts refuses other classes") {
  NUSolution any;
  CHECK_THROWS_AS(laguerre_class_parts(any, {{0, 0, 1}, {1, 0, 0}, {0, 0, 0}}), NotLaguerreClass);
  CHECK_THROWS_AS(laguerre_class_parts(any, {{1, 2, 0}, {1, 0, 0}, {0, 0, 0}}), NotLaguerreClass);
}

TEST_CASE("weight function solves (sigma rho)' = tau rho") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> p2d(0.2, 6.0), qd(-15.0, 5.0), dd(-0.2, 6.0);
  std::uniform_real_distribution<double> sd(0.05, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pb = radial_problem({p2d(rng), qd(rng), dd(rng), 0.0});
    const auto sol = select_solution(pi_candidates(pb));
    const auto parts = laguerre_class_parts(sol, pb);
    auto sigma_rho = [&](double s) {
      return pb.sigma(s) * std::pow(s, parts.weight_power) * std::exp(-parts.weight_rate * s);
    };
    for (int i = 0; i < 50; ++i) {
      const double s = sd(rng);
      const double h = 1e-4 * s;
      // 4th-order central difference.
      const double deriv = (-sigma_rho(s + 2 * h) + 8 * sigma_rho(s + h) - 8 * sigma_rho(s - h) +
                            sigma_rho(s - 2 * h)) /
                           (12 * h);
      const double rhs = sol.tau(s) * sigma_rho(s) / pb.sigma(s);
      // Cancellation in the stencil is relative to sigma rho / s.
      const double scale = std::abs(deriv) + sigma_rho(s) / s;
      CHECK(std::abs(deriv - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("resubstitution identity holds on random problems") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const HypergeometricProblem pb{{u(rng), u(rng), u(rng)}, {u(rng), u(rng), 0.0},
                                   {u(rng), u(rng), u(rng)}};
    std::vector<NUSolution> cands;
    try {
      cands = pi_candidates(pb);
    } catch (const NoRealK&) {
      continue;
    }
    for (const auto& s : cands) {
      const Poly d = resubstitution_defect(s, pb);
      const double tol = 1e-10 * poly_scale(pb, s.k) * poly_scale(pb, s.k);
      CHECK(std::abs(d.c0) <= tol);
      CHECK(std::abs(d.c1) <= tol);
      CHECK(std::abs(d.c2) <= tol);
      ++checked;
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("radial family: engine condition equals the closed energy condition") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p2d(0.01, 20.0), qd(-60.0, 20.0), dd(-0.25, 15.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double p2 = p2d(rng), q = qd(rng), delta = dd(rng);
    const auto pb = radial_problem({p2, q, delta, 0.0});
    const auto sol = select_solution(pi_candidates(pb));
    const double p = std::sqrt(p2);
    CHECK(sol.tau.c1 < 0.0);
    for (int n = 0; n <= 5; ++n) {
      CHECK(lambda_n(sol, pb, n) == doctest::Approx(2.0 * p * n).epsilon(1e-12));
      const double closed = p * (4.0 * n + 2.0 + std::sqrt(4.0 * delta + 1.0)) + q;
      const double scale = std::abs(q) + p * (4.0 * n + 2.0 + std::sqrt(4.0 * delta + 1.0));
      CHECK(std::abs(-2.0 * eigen_condition(sol, pb, n) - closed) <= 1e-12 * scale);
    }
  }
}
