#pragma once

#include <functional>

namespace dirac2d::special {

// Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
// Throws DomainError for n < 0 or alpha <= -1.
double laguerre(int n, double alpha, double x);

// Explicit finite sum sum_k (-1)^k C(n+alpha, n-k) x^k / k!, accumulated in
// long double. Independent cross-check of laguerre(); throws Overflow for n > 30.
double laguerre_series(int n, double alpha, double x);

// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

// Integral of f over (0, inf) by globally adaptive 15-point Gauss-Kronrod
// after the map x = t / (1 - t). Stops when the error estimate is below
// max(abs_tol, rel_tol * |I|). Throws NoConvergence when the subdivision
// budget runs out, DomainError if f returns a non-finite value.
double integrate_halfline(const std::function<double(double)>& f, double rel_tol,
                          double abs_tol = 0.0);

}  // namespace dirac2d::special
