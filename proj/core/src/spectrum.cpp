#include "dirac2d/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "dirac2d/wavefunc.hpp"

namespace dirac2d {

namespace {

struct Evaluation {
  Admissibility verdict = Admissibility::Admissible;
  double value = 0.0;
  ReducedCoefficients coeffs;
};

Evaluation evaluate(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx, double E) {
  Evaluation out;
  if (E == forbidden_energy(sym, cfg.M)) {
    out.verdict = Admissibility::ExcludedEnergy;
    return out;
  }
  out.coeffs = reduced_coefficients(cfg, sym, idx.m, E);
  out.verdict = admissible(out.coeffs);
  if (out.verdict != Admissibility::Admissible) return out;
  const double p_tilde = std::sqrt(out.coeffs.p2);
  const double alpha = std::sqrt(out.coeffs.delta + 0.25);
  out.value = 2.0 * p_tilde * (2.0 * idx.n + 1.0 + alpha) + out.coeffs.q;
  return out;
}

// Smallest step that actually moves E.
double probe_step(double E, double tol) {
  const double ulp = std::nextafter(std::abs(E), std::numeric_limits<double>::infinity()) -
                     std::abs(E);
  return std::max(tol, 4.0 * ulp);
}

}  // namespace

void SearchWindow::validate() const {
  if (!(std::isfinite(e_min) && std::isfinite(e_max) && e_min < e_max)) {
    throw InvalidParameter("emin", "emin/emax: need a finite window with emin < emax");
  }
  if (scan_points < 2) throw InvalidParameter("scan", "scan: need at least 2 scan points");
  if (!(tol > 0.0)) throw InvalidParameter("tol", "tol: must be positive");
}

SearchWindow default_window(const FieldConfiguration& cfg) {
  SearchWindow w;
  w.e_min = -(cfg.M + 20.0);
  w.e_max = cfg.M + 20.0;
  return w;
}

double energy_condition(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx,
                        double E) {
  const Evaluation ev = evaluate(cfg, sym, idx, E);
  if (ev.verdict != Admissibility::Admissible) {
    throw InadmissibleEnergy(ev.verdict, "energy E = " + std::to_string(E) +
                                             " is inadmissible: " +
                                             std::string(to_string(ev.verdict)));
  }
  return ev.value;
}

std::optional<double> try_energy_condition(const FieldConfiguration& cfg, SymmetryLimit sym,
                                           StateIndex idx, double E) {
  const Evaluation ev = evaluate(cfg, sym, idx, E);
  if (ev.verdict != Admissibility::Admissible) return std::nullopt;
  return ev.value;
}

BoundState make_bound_state(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx,
                            double E) {
  const Evaluation ev = evaluate(cfg, sym, idx, E);
  if (ev.verdict != Admissibility::Admissible) {
    throw InadmissibleEnergy(ev.verdict, "cannot build a bound state at an inadmissible energy");
  }
  BoundState st;
  st.symmetry = sym;
  st.index = idx;
  st.E = E;
  st.coeffs = ev.coeffs;
  st.p_tilde = std::sqrt(ev.coeffs.p2);
  st.alpha = std::sqrt(ev.coeffs.delta + 0.25);
  st.residual = std::abs(ev.value);
  st.norm_const = radial_norm(idx.n, st.alpha, st.p_tilde);
  return st;
}

std::vector<BoundState> find_states(const FieldConfiguration& cfg, SymmetryLimit sym,
                                    StateIndex idx, const SearchWindow& window) {
  SearchDiagnostics ignored;
  return find_states(cfg, sym, idx, window, ignored);
}

std::vector<BoundState> find_states(const FieldConfiguration& cfg, SymmetryLimit sym,
                                    StateIndex idx, const SearchWindow& window,
                                    SearchDiagnostics& diagnostics) {
  cfg.validate();
  window.validate();
  if (idx.n < 0) throw InvalidParameter("n", "n: radial quantum number must be >= 0");

  const double forbidden = forbidden_energy(sym, cfg.M);
  const double guard = 10.0 * window.tol;
  auto sample = [&](double E) -> std::optional<double> {
    if (std::abs(E - forbidden) <= guard) return std::nullopt;
    return try_energy_condition(cfg, sym, idx, E);
  };

  std::vector<double> roots;
  const int count = window.scan_points;
  const double span = window.e_max - window.e_min;
  std::optional<double> prev_value;
  double prev_E = 0.0;
  for (int i = 0; i < count; ++i) {
    const double E = (i == count - 1) ? window.e_max
                                      : window.e_min + span * static_cast<double>(i) / (count - 1);
    const std::optional<double> value = sample(E);
    if (value && *value == 0.0) {
      roots.push_back(E);
      ++diagnostics.brackets;
    } else if (value && prev_value && (*prev_value < 0.0) != (*value < 0.0) && *prev_value != 0.0) {
      ++diagnostics.brackets;
      double lo = prev_E;
      double hi = E;
      double f_lo = *prev_value;
      double f_hi = *value;
      // Halve down to the last representable split; this meets |dE| < tol
      // for any tol above the local ulp.
      for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const std::optional<double> f_mid = sample(mid);
        if (!f_mid) break;
        if (*f_mid == 0.0) {
          lo = hi = mid;
          f_lo = f_hi = 0.0;
          break;
        }
        if ((*f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = *f_mid;
        } else {
          hi = mid;
          f_hi = *f_mid;
        }
      }
      roots.push_back(std::abs(f_lo) <= std::abs(f_hi) ? lo : hi);
    }
    prev_value = value;
    prev_E = E;
  }

  std::vector<BoundState> out;
  for (double E : roots) {
    const double step = probe_step(E, window.tol);
    if (std::abs(E - forbidden) <= guard || !sample(E - step) || !sample(E + step)) {
      ++diagnostics.boundary_discards;
      continue;
    }
    out.push_back(make_bound_state(cfg, sym, idx, E));
  }
  std::sort(out.begin(), out.end(),
            [](const BoundState& x, const BoundState& y) { return x.E < y.E; });
  return out;
}

std::string_view to_string(SweepParameter parameter) {
  return parameter == SweepParameter::B ? "B" : "flux";
}

SweepParameter parse_sweep_parameter(std::string_view text) {
  if (text == "B") return SweepParameter::B;
  if (text == "flux" || text == "phi_AB") return SweepParameter::Flux;
  throw InvalidParameter("vary", "vary: expected 'B' or 'flux', got '" + std::string(text) + "'");
}

namespace {

std::vector<std::optional<double>> track_state(const FieldConfiguration& base, SymmetryLimit sym,
                                               StateIndex idx, const std::vector<double>& grid,
                                               SweepParameter parameter,
                                               const SearchWindow& window) {
  std::vector<std::optional<double>> column;
  column.reserve(grid.size());
  std::optional<double> previous;
  const double width = window.e_max - window.e_min;
  for (double value : grid) {
    FieldConfiguration cfg = base;
    (parameter == SweepParameter::B ? cfg.B : cfg.phi_AB) = value;
    SearchWindow w = window;
    if (previous) {
      w.e_min = *previous - 0.5 * width;
      w.e_max = *previous + 0.5 * width;
    }
    const std::vector<BoundState> states = find_states(cfg, sym, idx, w);
    if (states.empty()) {
      column.push_back(std::nullopt);
      previous.reset();
      continue;
    }
    double chosen = states.back().E;
    if (previous) {
      auto closest = std::min_element(states.begin(), states.end(),
                                      [&](const BoundState& x, const BoundState& y) {
                                        return std::abs(x.E - *previous) < std::abs(y.E - *previous);
                                      });
      chosen = closest->E;
    }
    column.push_back(chosen);
    previous = chosen;
  }
  return column;
}

}  // namespace

SweepTable sweep(const FieldConfiguration& cfg_template, SymmetryLimit sym,
                 const std::vector<StateIndex>& states, const SweepSpec& spec,
                 const SearchWindow& window) {
  if (spec.steps < 2) throw InvalidParameter("steps", "steps: need at least 2 grid points");
  if (!(std::isfinite(spec.from) && std::isfinite(spec.to))) {
    throw InvalidParameter("from", "from/to: sweep bounds must be finite");
  }
  window.validate();

  SweepTable table;
  table.parameter = spec.parameter;
  table.states = states;
  table.grid.resize(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    table.grid[static_cast<std::size_t>(i)] =
        (i == spec.steps - 1) ? spec.to
                              : spec.from + (spec.to - spec.from) * static_cast<double>(i) /
                                                (spec.steps - 1);
  }

  // Validate every grid configuration up front so failures surface here and
  // not inside a worker.
  for (double value : table.grid) {
    FieldConfiguration cfg = cfg_template;
    (spec.parameter == SweepParameter::B ? cfg.B : cfg.phi_AB) = value;
    cfg.validate();
  }

  std::vector<std::future<std::vector<std::optional<double>>>> jobs;
  jobs.reserve(states.size());
  for (const StateIndex& idx : states) {
    jobs.push_back(std::async(std::launch::async, track_state, cfg_template, sym, idx,
                              std::cref(table.grid), spec.parameter, std::cref(window)));
  }
  std::vector<std::vector<std::optional<double>>> columns;
  columns.reserve(jobs.size());
  for (auto& job : jobs) columns.push_back(job.get());

  table.energies.assign(table.grid.size(), std::vector<std::optional<double>>(states.size()));
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (std::size_t row = 0; row < table.grid.size(); ++row) {
      table.energies[row][col] = columns[col][row];
    }
  }
  return table;
}

}  // namespace dirac2d
