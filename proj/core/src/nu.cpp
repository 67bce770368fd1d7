#include "dirac2d/nu.hpp"

#include <algorithm>
#include <cmath>

#include "dirac2d/errors.hpp"

namespace dirac2d::nu {

std::vector<NUSolution> pi_candidates(const HypergeometricProblem& problem) {
  const Poly& sg = problem.sigma;
  const Poly& tt = problem.tau_tilde;
  const Poly& st = problem.sigma_tilde;
  if (sg.c0 == 0.0 && sg.c1 == 0.0 && sg.c2 == 0.0) {
    throw DegenerateSigma("sigma(s) is identically zero");
  }

  // A(s) = (sigma' - tau_tilde) / 2; radicand R(s) = A^2 - sigma_tilde + k sigma.
  const double a0 = 0.5 * (sg.c1 - tt.c0);
  const double a1 = 0.5 * (2.0 * sg.c2 - tt.c1);
  const double b1 = 2.0 * a0 * a1 - st.c1;
  const double r2_base = a1 * a1 - st.c2;
  const double r0_base = a0 * a0 - st.c0;

  // R1^2 - 4 R2 R0 = 0 as a quadratic qa k^2 + qb k + qc = 0.
  const double qa = sg.c1 * sg.c1 - 4.0 * sg.c2 * sg.c0;
  const double qb = 2.0 * b1 * sg.c1 - 4.0 * (r2_base * sg.c0 + r0_base * sg.c2);
  const double qc = b1 * b1 - 4.0 * r2_base * r0_base;
  // Expanded form of qb^2 - 4 qa qc, free of the q^2 - q^2 cancellation.
  const double diff = r2_base * sg.c0 - r0_base * sg.c2;
  const double disc = 16.0 * (b1 * b1 * sg.c0 * sg.c2 -
                              b1 * sg.c1 * (r2_base * sg.c0 + r0_base * sg.c2) + diff * diff +
                              sg.c1 * sg.c1 * r2_base * r0_base);

  std::vector<double> ks;
  const double disc_scale = 16.0 * std::max({b1 * b1 * std::abs(sg.c0 * sg.c2),
                                              diff * diff, std::abs(sg.c1 * sg.c1 * r2_base * r0_base),
                                              std::abs(b1 * sg.c1) * (std::abs(r2_base * sg.c0) +
                                                                      std::abs(r0_base * sg.c2))});
  if (qa != 0.0) {
    if (disc < -kSquareTolerance * disc_scale) throw NoRealK("k-quadratic has no real roots");
    const double root = std::sqrt(std::max(disc, 0.0));
    ks.push_back((-qb - root) / (2.0 * qa));
    if (root > 0.0) ks.push_back((-qb + root) / (2.0 * qa));
  } else if (qb != 0.0) {
    ks.push_back(-qc / qb);
  } else {
    throw NoRealK("k-equation degenerates to a constant");
  }
  std::sort(ks.begin(), ks.end());

  std::vector<NUSolution> out;
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    const double k = ks[ki];
    const double r2 = r2_base + k * sg.c2;
    const double r1 = b1 + k * sg.c1;
    const double r0 = r0_base + k * sg.c0;
    const double scale = std::max({std::abs(r2), std::abs(r1), std::abs(r0), 1e-300});
    if (r2 < -kSquareTolerance * scale || r0 < -kSquareTolerance * scale) continue;
    // sqrt(R) = beta1 s + beta0 up to an overall sign.
    const double beta1 = std::sqrt(std::max(r2, 0.0));
    const double beta0 = std::copysign(std::sqrt(std::max(r0, 0.0)), r1);
    for (int sign_index = 0; sign_index < 2; ++sign_index) {
      const double sign = sign_index == 0 ? 1.0 : -1.0;
      NUSolution sol;
      sol.k = k;
      sol.pi = {a0 + sign * beta0, a1 + sign * beta1, 0.0};
      sol.tau = {tt.c0 + 2.0 * sol.pi.c0, tt.c1 + 2.0 * sol.pi.c1, 0.0};
      sol.lambda = k + sol.pi.c1;
      sol.branch_id = static_cast<int>(2 * ki) + sign_index;
      out.push_back(sol);
    }
  }
  return out;
}

NUSolution select_solution(const std::vector<NUSolution>& candidates) {
  const NUSolution* best = nullptr;
  for (const auto& cand : candidates) {
    if (!(cand.tau.c1 < 0.0)) continue;
    if (best == nullptr) {
      best = &cand;
      continue;
    }
    const double slope_tol = 1e-12 * std::max(std::abs(cand.pi.c1), std::abs(best->pi.c1));
    if (cand.pi.c1 < best->pi.c1 - slope_tol) {
      best = &cand;
    } else if (std::abs(cand.pi.c1 - best->pi.c1) <= slope_tol && cand.pi.c0 > best->pi.c0) {
      best = &cand;
    }
  }
  if (best == nullptr) throw NoBoundBranch("no candidate branch has tau'(s) < 0");
  return *best;
}

double lambda_n(const NUSolution& solution, const HypergeometricProblem& problem, int n) {
  const double nn = static_cast<double>(n);
  const double sigma_dd = 2.0 * problem.sigma.c2;
  return -nn * solution.tau.c1 - 0.5 * nn * (nn - 1.0) * sigma_dd;
}

double eigen_condition(const NUSolution& solution, const HypergeometricProblem& problem, int n) {
  return solution.lambda - lambda_n(solution, problem, n);
}

LaguerreParts laguerre_class_parts(const NUSolution& solution,
                                   const HypergeometricProblem& problem) {
  const Poly& sg = problem.sigma;
  if (sg.c2 != 0.0 || sg.c0 != 0.0 || sg.c1 == 0.0) {
    throw NotLaguerreClass("closed-form factors need sigma(s) = c1 s");
  }
  const double c1 = sg.c1;
  // (sigma rho)' = tau rho  =>  rho'/rho = (tau0 - c1) / (c1 s) + tau1 / c1
  // phi'/phi = pi / sigma   =>  phi'/phi = pi0 / (c1 s) + pi1 / c1
  LaguerreParts parts;
  parts.weight_power = (solution.tau.c0 - c1) / c1;
  parts.weight_rate = -solution.tau.c1 / c1;
  parts.phi_power = solution.pi.c0 / c1;
  parts.phi_rate = -solution.pi.c1 / c1;
  return parts;
}

HypergeometricProblem radial_problem(const ReducedCoefficients& coeffs) {
  return {{0.0, 2.0, 0.0}, {1.0, 0.0, 0.0}, {-coeffs.delta, -coeffs.q, -coeffs.p2}};
}

Poly resubstitution_defect(const NUSolution& solution, const HypergeometricProblem& problem) {
  const Poly& p = solution.pi;
  const Poly dsig = problem.sigma.derivative();
  const Poly two_a{dsig.c0 - problem.tau_tilde.c0, dsig.c1 - problem.tau_tilde.c1, 0.0};
  // pi^2 (pi is linear)
  Poly out{p.c0 * p.c0, 2.0 * p.c0 * p.c1, p.c1 * p.c1};
  out.c0 -= p.c0 * two_a.c0;
  out.c1 -= p.c0 * two_a.c1 + p.c1 * two_a.c0;
  out.c2 -= p.c1 * two_a.c1;
  out.c0 += problem.sigma_tilde.c0 - solution.k * problem.sigma.c0;
  out.c1 += problem.sigma_tilde.c1 - solution.k * problem.sigma.c1;
  out.c2 += problem.sigma_tilde.c2 - solution.k * problem.sigma.c2;
  return out;
}

}  // namespace dirac2d::nu
