#include "dirac2d/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dirac2d/errors.hpp"

namespace dirac2d::oracle {

void RadialGrid::validate() const {
  if (!(r_max > 0.0)) throw InvalidParameter("r_max", "r_max: must be positive");
  if (points < 100) throw InvalidParameter("points", "points: need at least 100 grid points");
}

RadialGrid default_grid(double P, int points) {
  return {std::max(8.0 / std::sqrt(P), 12.0), points};
}

namespace {

void check_operator(double P, double D) {
  if (!(P > 0.0)) throw DomainError("fd_eigenvalue: P must be positive");
  if (!(D >= -0.25)) throw DomainError("fd_eigenvalue: D below -1/4 is supercritical");
}

// With u = r^(alpha + 1/2) w the operator becomes the radial Laplacian in
// dimension 2 alpha + 2 plus P r^2, which has a smooth even solution w for
// every alpha >= 0. Cell-centred finite volumes: cells [(i-1) h, i h], face
// weights (r / r_ref)^(2 alpha + 1), exact cell volumes, zero flux at r = 0
// and w = 0 beyond the last cell. Generalized pencil A - x B, scaled by h^2.
struct ScaledOperator {
  std::vector<double> diag;  // A
  std::vector<double> off;   // A(i, i+1)
  std::vector<double> mass;  // B, diagonal

  ScaledOperator(double P, double D, const RadialGrid& grid) {
    const double h = grid.h();
    const double alpha = std::sqrt(std::max(D + 0.25, 0.0));
    const double k = 2.0 * alpha + 1.0;
    const double r_ref = std::sqrt((alpha + 0.5) / P);
    auto face = [&](double r) { return r > 0.0 ? std::exp(k * std::log(r / r_ref)) : 0.0; };
    const auto n = static_cast<std::size_t>(grid.points);
    diag.resize(n);
    off.resize(n);
    mass.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double left = h * static_cast<double>(i);
      const double right = left + h;
      const double centre = left + 0.5 * h;
      const double volume = (right * face(right) - left * face(left)) / ((k + 1.0) * h);
      diag[i] = face(left) + face(right) + h * h * volume * P * centre * centre;
      off[i] = -face(right);
      mass[i] = h * h * volume;
    }
  }

  int count_below(double x) const {
    constexpr double kTiny = 1e-300;
    int negatives = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      d = diag[i] - x * mass[i] - (i > 0 ? off[i - 1] * off[i - 1] / d : 0.0);
      if (d == 0.0) d = -kTiny;
      if (d < 0.0) ++negatives;
    }
    return negatives;
  }
};

double eigenvalue_by_index(const ScaledOperator& op, int n) {
  double lo = 0.0;  // the pencil is positive definite
  double step = 1.0;
  double hi = lo + step;
  while (op.count_below(hi) < n + 1) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (!std::isfinite(hi)) throw NoConvergence("fd_eigenvalue: upper bracket diverged");
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
    if (op.count_below(mid) >= n + 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int sturm_count(double P, double D, const RadialGrid& grid, double x) {
  check_operator(P, D);
  grid.validate();
  return ScaledOperator(P, D, grid).count_below(x);
}

double fd_eigenvalue_single(double P, double D, const RadialGrid& grid, int n) {
  check_operator(P, D);
  grid.validate();
  if (n < 0) throw DomainError("fd_eigenvalue: n must be >= 0");
  return eigenvalue_by_index(ScaledOperator(P, D, grid), n);
}

FdEigenvalue fd_eigenvalue_detail(double P, double D, const RadialGrid& grid, int n) {
  check_operator(P, D);
  grid.validate();
  if (n < 0) throw DomainError("fd_eigenvalue: n must be >= 0");
  const ScaledOperator coarse_op(P, D, grid);
  const ScaledOperator fine_op(P, D, grid.refined());
  FdEigenvalue out;
  out.coarse = eigenvalue_by_index(coarse_op, n);
  out.fine = eigenvalue_by_index(fine_op, n);
  // Both grids must resolve the same level: each estimate sits between the
  // other grid's levels n-1 and n+1.
  const int fine_at_coarse = fine_op.count_below(out.coarse);
  const int coarse_at_fine = coarse_op.count_below(out.fine);
  if (fine_at_coarse < n || fine_at_coarse > n + 1 || coarse_at_fine < n ||
      coarse_at_fine > n + 1) {
    throw GridTooCoarse("fd_eigenvalue: Sturm counts disagree between h and h/2");
  }
  out.extrapolated = (4.0 * out.fine - out.coarse) / 3.0;
  return out;
}

double fd_eigenvalue(double P, double D, const RadialGrid& grid, int n) {
  return fd_eigenvalue_detail(P, D, grid, n).extrapolated;
}

namespace {

bool admissible_at(const FieldConfiguration& cfg, SymmetryLimit sym, int m, double E) {
  if (E == forbidden_energy(sym, cfg.M)) return false;
  return admissible(reduced_coefficients(cfg, sym, m, E)) == Admissibility::Admissible;
}

// Admissible energies form an interval (p2 and delta are affine in E). Pull
// an inadmissible end toward the admissible one.
double pull_inside(const FieldConfiguration& cfg, SymmetryLimit sym, int m, double bad,
                   double good) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (bad + good);
    if (mid == bad || mid == good) break;
    (admissible_at(cfg, sym, m, mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace

double self_consistent_energy(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx,
                              const OracleGridSpec& grid, const SearchWindow& window,
                              double tol) {
  cfg.validate();
  if (!(window.e_min < window.e_max)) throw InvalidParameter("emin", "emin: need emin < emax");
  double lo = window.e_min;
  double hi = window.e_max;
  const bool lo_ok = admissible_at(cfg, sym, idx.m, lo);
  const bool hi_ok = admissible_at(cfg, sym, idx.m, hi);
  if (!lo_ok && !hi_ok) {
    const double mid = 0.5 * (lo + hi);
    if (!admissible_at(cfg, sym, idx.m, mid)) {
      throw NoSignChange("self_consistent_energy: window is inadmissible");
    }
    lo = pull_inside(cfg, sym, idx.m, lo, mid);
    hi = pull_inside(cfg, sym, idx.m, hi, mid);
  } else if (!lo_ok) {
    lo = pull_inside(cfg, sym, idx.m, lo, hi);
  } else if (!hi_ok) {
    hi = pull_inside(cfg, sym, idx.m, hi, lo);
  }

  RadialGrid rgrid;
  rgrid.points = grid.points;
  if (grid.r_max > 0.0) {
    rgrid.r_max = grid.r_max;
  } else {
    // Sized from the window centre, where the caller puts the expected root;
    // P at a pulled-in edge can be arbitrarily close to zero.
    const double centre = 0.5 * (lo + hi);
    rgrid = default_grid(reduced_coefficients(cfg, sym, idx.m, centre).p2, grid.points);
  }

  const double gamma = field_shift(idx.m, cfg);
  auto defect = [&](double E) {
    const ReducedCoefficients co = reduced_coefficients(cfg, sym, idx.m, E);
    const double mu = fd_eigenvalue(co.p2, co.delta, rgrid, idx.n);
    return mu - ((E - cfg.M) * (E + cfg.M) - gamma);
  };

  double g_lo = defect(lo);
  const double g_hi = defect(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo < 0.0) == (g_hi < 0.0)) {
    throw NoSignChange("self_consistent_energy: defect does not change sign in the window");
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mid == forbidden_energy(sym, cfg.M)) mid = std::nextafter(mid, hi);
    const double g_mid = defect(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ComparisonReport> compare(const FieldConfiguration& cfg, SymmetryLimit sym,
                                      StateIndex idx, const OracleGridSpec& grid,
                                      const SearchWindow& window,
                                      std::optional<SymmetryLimit> oracle_sym) {
  const SymmetryLimit check_sym = oracle_sym.value_or(sym);
  const std::vector<BoundState> states = find_states(cfg, sym, idx, window);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<ComparisonReport> out;

  if (states.empty()) {
    ComparisonReport report;
    report.index = idx;
    try {
      report.oracle_E = self_consistent_energy(cfg, check_sym, idx, grid, window);
      report.abs_diff = kInf;
    } catch (const NoSignChange&) {
      report.abs_diff = 0.0;
    }
    out.push_back(report);
    return out;
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    double half = 0.25;
    if (i > 0) half = std::min(half, 0.5 * (states[i].E - states[i - 1].E));
    if (i + 1 < states.size()) half = std::min(half, 0.5 * (states[i + 1].E - states[i].E));
    // Stay clear of the admissibility edges: half the distance to each edge.
    const double E = states[i].E;
    if (!admissible_at(cfg, check_sym, idx.m, E - half)) {
      half = std::min(half, 0.5 * (E - pull_inside(cfg, check_sym, idx.m, E - half, E)));
    }
    if (!admissible_at(cfg, check_sym, idx.m, E + half)) {
      half = std::min(half, 0.5 * (pull_inside(cfg, check_sym, idx.m, E + half, E) - E));
    }
    SearchWindow bracket = window;
    bracket.e_min = E - half;
    bracket.e_max = E + half;

    ComparisonReport report;
    report.index = idx;
    report.analytic_E = states[i].E;
    try {
      report.oracle_E = self_consistent_energy(cfg, check_sym, idx, grid, bracket);
      report.abs_diff = std::abs(*report.oracle_E - states[i].E);
    } catch (const NoSignChange&) {
      report.abs_diff = kInf;
    }
    out.push_back(report);
  }
  return out;
}

}  // namespace dirac2d::oracle
