#pragma once

#include <vector>

#include "dirac2d/model.hpp"

namespace dirac2d::nu {

// Polynomial of degree <= 2 with ascending coefficients c0 + c1 s + c2 s^2.
struct Poly {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  constexpr double operator()(double s) const noexcept { return c0 + s * (c1 + s * c2); }
  constexpr Poly derivative() const noexcept { return {c1, 2.0 * c2, 0.0}; }
  constexpr int degree() const noexcept { return c2 != 0.0 ? 2 : (c1 != 0.0 ? 1 : 0); }
};

// psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma^2) psi = 0
struct HypergeometricProblem {
  Poly sigma;
  Poly tau_tilde;  // c2 must be zero
  Poly sigma_tilde;
};

// One (k, +/-) choice for pi(s). branch_id = 2 * k_index + sign_index, with
// k_index 0 for the smaller k and sign_index 0 for the "+" outer sign.
struct NUSolution {
  Poly pi;
  double k = 0.0;
  Poly tau;        // tau_tilde + 2 pi
  double lambda = 0.0;  // k + pi'
  int branch_id = 0;
};

// Parts of the Laguerre-class factorization psi = phi(s) y_n(s):
//   rho(s) = s^weight_power * exp(-weight_rate * s)
//   phi(s) = s^phi_power    * exp(-phi_rate * s)
struct LaguerreParts {
  double weight_rate = 0.0;
  double weight_power = 0.0;
  double phi_rate = 0.0;
  double phi_power = 0.0;
};

// Relative tolerance of the perfect-square test on the radicand of pi(s).
inline constexpr double kSquareTolerance = 1e-10;

// Throws DegenerateSigma or NoRealK. Candidates whose radicand is the
// negative of a square (complex pi) are dropped.
std::vector<NUSolution> pi_candidates(const HypergeometricProblem& problem);

// Throws NoBoundBranch when no candidate has tau' < 0.
NUSolution select_solution(const std::vector<NUSolution>& candidates);

// lambda - lambda_n with lambda_n = -n tau' - n(n-1)/2 sigma''.
double eigen_condition(const NUSolution& solution, const HypergeometricProblem& problem, int n);

double lambda_n(const NUSolution& solution, const HypergeometricProblem& problem, int n);

// Throws NotLaguerreClass unless sigma = c1 s with c1 != 0.
LaguerreParts laguerre_class_parts(const NUSolution& solution,
                                   const HypergeometricProblem& problem);

// sigma = 2s, tau_tilde = 1, sigma_tilde = -(p2 s^2 + q s + delta): the
// radial equation in s = r^2.
HypergeometricProblem radial_problem(const ReducedCoefficients& coeffs);

// pi^2 - pi (sigma' - tau_tilde) + sigma_tilde - k sigma; identically zero
// for an exact branch.
Poly resubstitution_defect(const NUSolution& solution, const HypergeometricProblem& problem);

}  // namespace dirac2d::nu
