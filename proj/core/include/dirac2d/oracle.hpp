#pragma once

#include <optional>
#include <vector>

#include "dirac2d/model.hpp"
#include "dirac2d/spectrum.hpp"

namespace dirac2d::oracle {

// `points` uniform cells of width h = r_max / (points + 1) starting at r = 0;
// the solution vanishes beyond the last cell.
struct RadialGrid {
  double r_max = 12.0;
  int points = 6000;

  double h() const noexcept { return r_max / (points + 1); }
  RadialGrid refined() const noexcept { return {r_max, 2 * points + 1}; }
  void validate() const;  // r_max > 0, points >= 100
};

// r_max = max(8 / sqrt(P), 12).
RadialGrid default_grid(double P, int points = 6000);

// Number of eigenvalues of the discretized -u'' + (P r^2 + D / r^2) u
// strictly below x.
int sturm_count(double P, double D, const RadialGrid& grid, double x);

// (n+1)-th smallest eigenvalue of the discretization on one grid, by Sturm
// bisection.
double fd_eigenvalue_single(double P, double D, const RadialGrid& grid, int n);

struct FdEigenvalue {
  double coarse = 0.0;        // grid h
  double fine = 0.0;          // grid h / 2
  double extrapolated = 0.0;  // (4 fine - coarse) / 3
};

// Throws DomainError for P <= 0 or D < -1/4, GridTooCoarse when the two
// grids do not pair up the same level.
FdEigenvalue fd_eigenvalue_detail(double P, double D, const RadialGrid& grid, int n);
double fd_eigenvalue(double P, double D, const RadialGrid& grid, int n);

struct OracleGridSpec {
  int points = 6000;
  double r_max = 0.0;  // <= 0: max(8 / sqrt(P_min), 12) over the window
};

// Solves mu_n(E) = E^2 - M^2 - gamma by bisection on E, where mu_n(E) is the
// FD eigenvalue with P = p2(E), D = delta(E) and gamma the energy-independent
// part of q. Inadmissible window ends are pulled inward to the admissible
// region. Throws NoSignChange.
double self_consistent_energy(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx,
                              const OracleGridSpec& grid, const SearchWindow& window,
                              double tol = 1e-10);

struct ComparisonReport {
  StateIndex index;
  std::optional<double> analytic_E;
  std::optional<double> oracle_E;
  double abs_diff = 0.0;  // +inf when exactly one side is absent
};

// Runs find_states with `sym` and the oracle with `oracle_sym` (defaults to
// `sym`; a different value is a negative control) on a bracket around each
// analytic root. Reporting only, no threshold is applied.
std::vector<ComparisonReport> compare(const FieldConfiguration& cfg, SymmetryLimit sym,
                                      StateIndex idx, const OracleGridSpec& grid,
                                      const SearchWindow& window,
                                      std::optional<SymmetryLimit> oracle_sym = std::nullopt);

}  // namespace dirac2d::oracle
