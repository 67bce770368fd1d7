#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "csv.hpp"
#include "dirac2d/errors.hpp"
#include "dirac2d/model.hpp"
#include "dirac2d/nu.hpp"
#include "dirac2d/oracle.hpp"
#include "dirac2d/presets.hpp"
#include "dirac2d/spectrum.hpp"
#include "dirac2d/wavefunc.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace dirac2d::cli {

namespace {

using json = nlohmann::json;

// Bad flag values or combinations; always exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Binding {
  std::string key;
  CLI::Option* option = nullptr;
  std::function<void(const json&)> assign;
};

// One subcommand's flags, with the keys a config file or preset may fill.
class Command {
 public:
  explicit Command(CLI::App* app) : app_(app) {}

  CLI::App* app() const { return app_; }

  template <class T>
  void bind(const std::string& key, T& target, const std::string& help) {
    auto* opt = app_->add_option("--" + key, target, help);
    bindings_.push_back({key, opt, [&target](const json& j) { target = j.get<T>(); }});
  }

  // Flags win; then `config` (checked for unknown keys); then `preset`.
  void fill(const json& preset, const json& config) {
    for (const auto& [key, value] : config.items()) {
      const bool known = std::any_of(bindings_.begin(), bindings_.end(),
                                     [&](const Binding& b) { return b.key == key; });
      if (!known) throw UsageError("--config: unknown key '" + key + "'");
    }
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) {
        provided_.insert(b.key);
        continue;
      }
      const json* layer = config.contains(b.key)   ? &config
                          : preset.contains(b.key) ? &preset
                                                   : nullptr;
      if (!layer) continue;
      try {
        b.assign(layer->at(b.key));
      } catch (const json::exception&) {
        throw UsageError("--" + b.key + ": wrong type in config");
      }
      provided_.insert(b.key);
    }
  }

  void require(std::initializer_list<const char*> keys) const {
    for (const char* key : keys) {
      if (!provided_.count(key)) throw UsageError(std::string("--") + key + ": required");
    }
  }

 private:
  CLI::App* app_;
  std::vector<Binding> bindings_;
  std::set<std::string> provided_;
};

struct Common {
  std::string symmetry;
  FieldConfiguration cfg;
  SearchWindow window;  // [-21, 21], 20000 points, 1e-12
  std::string config_path;
};

void add_common(Command& cmd, Common& c) {
  cmd.bind("symmetry", c.symmetry, "spin or pseudospin");
  cmd.bind("M", c.cfg.M, "rest mass");
  cmd.bind("a", c.cfg.a, "oscillator strength");
  cmd.bind("b", c.cfg.b, "inverse-square strength");
  cmd.bind("B", c.cfg.B, "magnetic field");
  cmd.bind("flux", c.cfg.phi_AB, "Aharonov-Bohm flux");
  cmd.bind("e", c.cfg.e, "charge magnitude");
  cmd.bind("c", c.cfg.c, "speed of light");
  cmd.bind("emin", c.window.e_min, "lower end of the energy window");
  cmd.bind("emax", c.window.e_max, "upper end of the energy window");
  cmd.bind("scan", c.window.scan_points, "scan points across the window");
  cmd.bind("tol", c.window.tol, "root tolerance");
  cmd.app()->add_option("--config", c.config_path, "JSON file with the same keys as the flags");
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("--config: expected a JSON object");
  return j;
}

SymmetryLimit finish_common(const Command& cmd, const Common& c) {
  cmd.require({"symmetry"});
  const SymmetryLimit sym = parse_symmetry(c.symmetry);
  c.cfg.validate();
  c.window.validate();
  return sym;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("--in: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<StateIndex> parse_states(const std::string& text) {
  std::vector<StateIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--states: expected n:m, got '" + item + "'");
    StateIndex idx;
    try {
      std::size_t used = 0;
      const std::string ns = item.substr(0, colon), ms = item.substr(colon + 1);
      idx.n = std::stoi(ns, &used);
      if (used != ns.size()) throw std::invalid_argument("n");
      idx.m = std::stoi(ms, &used);
      if (used != ms.size()) throw std::invalid_argument("m");
    } catch (const std::logic_error&) {
      throw UsageError("--states: expected n:m, got '" + item + "'");
    }
    if (idx.n < 0) throw UsageError("--states: n must be >= 0 in '" + item + "'");
    out.push_back(idx);
  }
  if (out.empty()) throw UsageError("--states: empty list");
  return out;
}

std::string states_text(const std::vector<StateIndex>& states) {
  std::string out;
  for (const auto& s : states) {
    if (!out.empty()) out += ',';
    out += std::to_string(s.n) + ":" + std::to_string(s.m);
  }
  return out;
}

json preset_layer(const SweepPreset& p) {
  return {{"symmetry", std::string(to_string(p.symmetry))},
          {"M", p.cfg.M},
          {"a", p.cfg.a},
          {"b", p.cfg.b},
          {"B", p.cfg.B},
          {"flux", p.cfg.phi_AB},
          {"e", p.cfg.e},
          {"c", p.cfg.c},
          {"vary", std::string(to_string(p.spec.parameter))},
          {"from", p.spec.from},
          {"to", p.spec.to},
          {"steps", p.spec.steps},
          {"states", states_text(p.states)}};
}

std::string poly_text(const nu::Poly& p) {
  std::string out;
  auto term = [&](double coef, const char* var) {
    if (coef == 0.0) return;
    const std::string mag = format_number(std::abs(coef));
    if (out.empty()) {
      out += coef < 0 ? "-" : "";
    } else {
      out += coef < 0 ? " - " : " + ";
    }
    if (*var == '\0') {
      out += mag;
    } else {
      if (std::abs(coef) != 1.0) out += mag + " ";
      out += var;
    }
  };
  term(p.c0, "");
  term(p.c1, "s");
  term(p.c2, "s^2");
  return out.empty() ? "0" : out;
}

int cmd_solve(const Command& cmd, const Common& c, int n, int m, bool verify,
              std::ostream& out, std::ostream& err) {
  const SymmetryLimit sym = finish_common(cmd, c);
  const StateIndex idx{n, m};
  const auto states = find_states(c.cfg, sym, idx, c.window);
  std::vector<oracle::ComparisonReport> reports;
  if (verify && !states.empty()) reports = oracle::compare(c.cfg, sym, idx, {}, c.window);

  CsvTable table;
  table.header = {"symmetry", "n", "m", "M", "a", "b", "B", "flux", "e", "c",
                  "E", "residual", "p_tilde", "alpha", "norm_const"};
  if (verify) {
    table.header.push_back("oracle_E");
    table.header.push_back("oracle_diff");
  }
  for (const auto& st : states) {
    std::vector<std::string> row = {std::string(to_string(sym)),
                                    std::to_string(n),
                                    std::to_string(m),
                                    format_number(c.cfg.M),
                                    format_number(c.cfg.a),
                                    format_number(c.cfg.b),
                                    format_number(c.cfg.B),
                                    format_number(c.cfg.phi_AB),
                                    format_number(c.cfg.e),
                                    format_number(c.cfg.c),
                                    format_number(st.E),
                                    format_number(st.residual),
                                    format_number(st.p_tilde),
                                    format_number(st.alpha),
                                    format_number(st.norm_const)};
    if (verify) {
      const auto it = std::find_if(reports.begin(), reports.end(), [&](const auto& r) {
        return r.analytic_E && *r.analytic_E == st.E;
      });
      if (it != reports.end() && it->oracle_E) {
        row.push_back(format_number(*it->oracle_E));
        row.push_back(format_number(it->abs_diff));
      } else {
        row.push_back("");
        row.push_back("inf");
      }
    }
    table.rows.push_back(std::move(row));
  }
  out << write_csv(table);
  if (states.empty()) {
    err << "no bound state for n=" << n << ", m=" << m << " in [" << format_number(c.window.e_min)
        << ", " << format_number(c.window.e_max) << "]\n";
    return 1;
  }
  return 0;
}

struct SweepArgs {
  std::string vary;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  std::string states;
  std::string out_path;
  std::string plot_path;
  std::string preset;
};

int cmd_sweep(Command& cmd, Common& c, SweepArgs& s, std::ostream& out, std::ostream& err) {
  json layer = json::object();
  std::optional<SweepPreset> preset;
  if (!s.preset.empty()) {
    preset = find_preset(s.preset);
    if (!preset) throw UsageError("--preset: unknown preset '" + s.preset + "'");
    layer = preset_layer(*preset);
  }
  cmd.fill(layer, load_config(c.config_path));
  cmd.require({"vary", "from", "to", "steps", "states"});
  const SymmetryLimit sym = finish_common(cmd, c);
  const auto states = parse_states(s.states);
  const SweepSpec spec{parse_sweep_parameter(s.vary), s.from, s.to, s.steps};
  const SweepTable result = sweep(c.cfg, sym, states, spec, c.window);

  CsvTable table;
  if (preset) {
    table.comments.push_back("preset " + std::string(preset->name) + ": " +
                             std::string(preset->description));
    table.comments.push_back("field values are defaults chosen for this tool");
  }
  table.header.push_back(std::string(to_string(spec.parameter)));
  for (const auto& st : states)
    table.header.push_back("E_" + std::to_string(st.n) + "_" + std::to_string(st.m));
  for (std::size_t row = 0; row < result.grid.size(); ++row) {
    std::vector<std::string> cells{format_number(result.grid[row])};
    for (const auto& e : result.energies[row]) cells.push_back(format_cell(e));
    table.rows.push_back(std::move(cells));
  }
  const std::string text = write_csv(table);
  write_text(s.out_path, text, out);
  if (!s.plot_path.empty()) write_text(s.plot_path, render_svg(chart_from_csv(parse_csv(text))), out);

  int empty = 0;
  for (const auto& row : result.energies)
    empty += static_cast<int>(std::count(row.begin(), row.end(), std::nullopt));
  if (empty > 0) err << empty << " grid cell(s) without a root in the window\n";
  return 0;
}

struct WaveArgs {
  int n = 0;
  int m = 0;
  double rmax = 0.0;
  int samples = 1000;
  std::string out_path;
};

int cmd_wavefunction(const Command& cmd, const Common& c, const WaveArgs& w, std::ostream& out,
                     std::ostream& err) {
  const SymmetryLimit sym = finish_common(cmd, c);
  if (w.samples < 2) throw UsageError("--samples: need at least 2");
  if (!(w.rmax >= 0.0) || !std::isfinite(w.rmax)) throw UsageError("--rmax: must be >= 0 (0 = automatic)");
  const auto states = find_states(c.cfg, sym, {w.n, w.m}, c.window);
  if (states.empty()) {
    err << "no bound state for n=" << w.n << ", m=" << w.m << " in the window\n";
    return 1;
  }
  const BoundState& st = states.back();
  const RadialProfile profile = radial_profile(st, c.cfg, {w.rmax, w.samples});

  CsvTable table;
  table.comments.push_back(std::string(to_string(sym)) + " n=" + std::to_string(w.n) +
                           " m=" + std::to_string(w.m) + " E=" + format_number(st.E) +
                           (states.size() > 1 ? " (highest of " + std::to_string(states.size()) +
                                                    " roots in the window)"
                                              : std::string()));
  table.comments.push_back(
      "g(r) is normalized so that the integral of g^2 dr over r > 0 is 1; full spinor "
      "component = g(r) exp(i m phi) / sqrt(2 pi r)");
  table.comments.push_back(sym == SymmetryLimit::Spin ? "g is the upper spinor component"
                                                      : "g is the lower spinor component");
  table.header = {"r", "g", "g_squared"};
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const double g = profile.g[i];
    table.rows.push_back({format_number(profile.r[i]), format_number(g), format_number(g * g)});
  }
  write_text(w.out_path, write_csv(table), out);
  return 0;
}

int cmd_nu_trace(const Command& cmd, const Common& c, int m, double E, std::ostream& out,
                 std::ostream& err) {
  cmd.require({"E"});
  const SymmetryLimit sym = finish_common(cmd, c);
  ReducedCoefficients k;
  try {
    k = reduced_coefficients(c.cfg, sym, m, E);
  } catch (const ExcludedEnergy& e) {
    err << "error: --E: " << e.what() << "\n";
    return 2;
  }
  const Admissibility verdict = admissible(k);
  if (verdict != Admissibility::Admissible) {
    err << "error: --E: E = " << format_number(E) << " is inadmissible (" << to_string(verdict)
        << "): p2 = " << format_number(k.p2) << ", delta + 1/4 = " << format_number(k.delta + 0.25)
        << "\n";
    return 2;
  }
  const auto pb = nu::radial_problem(k);
  const auto candidates = nu::pi_candidates(pb);
  const auto sel = nu::select_solution(candidates);

  out << "symmetry " << to_string(sym) << ", m = " << m << ", E = " << format_number(E) << "\n";
  out << "g'' = (p2 r^2 + q + delta / r^2) g with p2 = " << format_number(k.p2)
      << ", q = " << format_number(k.q) << ", delta = " << format_number(k.delta)
      << ", m_eff = " << format_number(k.m_eff) << "\n";
  out << "in s = r^2:\n";
  out << "  sigma(s)       = " << poly_text(pb.sigma) << "\n";
  out << "  tau_tilde(s)   = " << poly_text(pb.tau_tilde) << "\n";
  out << "  sigma_tilde(s) = " << poly_text(pb.sigma_tilde) << "\n";
  out << "candidates:\n";
  for (const auto& cand : candidates) {
    out << "  branch " << cand.branch_id << ": k = " << format_number(cand.k)
        << ", pi(s) = " << poly_text(cand.pi) << ", tau(s) = " << poly_text(cand.tau)
        << (cand.tau.c1 < 0.0 ? "" : "  (tau' >= 0)") << "\n";
  }
  out << "selected branch " << sel.branch_id << ": pi(s) = " << poly_text(sel.pi) << "\n";
  out << "  tau(s) = " << poly_text(sel.tau) << "\n";
  out << "  lambda = k + pi' = " << format_number(sel.lambda) << "\n";
  const auto parts = nu::laguerre_class_parts(sel, pb);
  out << "  phi(s) = s^" << format_number(parts.phi_power) << " exp(-" << format_number(parts.phi_rate)
      << " s), rho(s) = s^" << format_number(parts.weight_power) << " exp(-"
      << format_number(parts.weight_rate) << " s)\n";

  CsvTable table;
  table.header = {"n", "lambda_n", "lambda_minus_lambda_n", "energy_condition", "note"};
  for (int n = 0; n <= 5; ++n) {
    const double diff = nu::eigen_condition(sel, pb, n);
    const double F = energy_condition(c.cfg, sym, {n, m}, E);
    const bool hit = std::abs(diff) <= 1e-9 * (1.0 + std::abs(k.q));
    table.rows.push_back({std::to_string(n), format_number(nu::lambda_n(sel, pb, n)),
                          format_number(diff), format_number(F),
                          hit ? "<- bound state at this E" : ""});
  }
  out << write_csv(table);
  return 0;
}

std::string flag_for(const std::string& field) {
  if (field == "phi_AB") return "flux";
  return field;
}

std::string strip_field(const std::string& what, const std::string& field) {
  const std::string prefix = field + ": ";
  return what.compare(0, prefix.size(), prefix) == 0 ? what.substr(prefix.size()) : what;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of a 2D Dirac particle in an anharmonic oscillator with magnetic "
               "and Aharonov-Bohm fields"};
  app.name("dirac2d");
  app.require_subcommand(1);

  Common common;
  common.window = SearchWindow{};

  Command solve(app.add_subcommand("solve", "find bound-state energies for one (n, m)"));
  int n = 0, m = 0;
  bool verify = false;
  add_common(solve, common);
  solve.bind("n", n, "radial quantum number");
  solve.bind("m", m, "angular quantum number");
  solve.app()->add_flag("--verify", verify, "add the finite-difference oracle columns");

  Command sweep_cmd(app.add_subcommand("sweep", "energies on a grid of B or flux values"));
  SweepArgs sweep_args;
  add_common(sweep_cmd, common);
  sweep_cmd.bind("vary", sweep_args.vary, "B or flux");
  sweep_cmd.bind("from", sweep_args.from, "first grid value");
  sweep_cmd.bind("to", sweep_args.to, "last grid value");
  sweep_cmd.bind("steps", sweep_args.steps, "grid points, endpoints included");
  sweep_cmd.bind("states", sweep_args.states, "comma-separated n:m list");
  sweep_cmd.app()->add_option("--out", sweep_args.out_path, "CSV output (default stdout)");
  sweep_cmd.app()->add_option("--plot", sweep_args.plot_path, "SVG line chart output");
  std::string preset_help = "shipped setup:";
  for (const auto& p : sweep_presets()) preset_help += " " + std::string(p.name);
  sweep_cmd.app()->add_option("--preset", sweep_args.preset, preset_help);

  Command wave(app.add_subcommand("wavefunction", "sample the normalized radial function"));
  WaveArgs wave_args;
  add_common(wave, common);
  wave.bind("n", wave_args.n, "radial quantum number");
  wave.bind("m", wave_args.m, "angular quantum number");
  wave.bind("rmax", wave_args.rmax, "outer radius (0 = 8 / sqrt(p_tilde))");
  wave.bind("samples", wave_args.samples, "number of samples");
  wave.app()->add_option("--out", wave_args.out_path, "CSV output (default stdout)");

  Command trace(app.add_subcommand("nu-trace", "show the polynomial reduction at one energy"));
  double probe_E = 0.0;
  int trace_m = 0;
  add_common(trace, common);
  trace.bind("m", trace_m, "angular quantum number");
  trace.bind("E", probe_E, "probe energy");

  auto* plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
  std::string plot_in, plot_out;
  plot->add_option("--in", plot_in, "sweep CSV")->required();
  plot->add_option("--out", plot_out, "SVG output (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const json none = json::object();
    if (*solve.app()) {
      solve.fill(none, load_config(common.config_path));
      return cmd_solve(solve, common, n, m, verify, out, err);
    }
    if (*sweep_cmd.app()) return cmd_sweep(sweep_cmd, common, sweep_args, out, err);
    if (*wave.app()) {
      wave.fill(none, load_config(common.config_path));
      return cmd_wavefunction(wave, common, wave_args, out, err);
    }
    if (*trace.app()) {
      trace.fill(none, load_config(common.config_path));
      return cmd_nu_trace(trace, common, trace_m, probe_E, out, err);
    }
    if (*plot) {
      const CsvTable table = parse_csv(read_text(plot_in));
      write_text(plot_out, render_svg(chart_from_csv(table)), out);
      return 0;
    }
  } catch (const InvalidParameter& e) {
    err << "error: --" << flag_for(e.field()) << ": " << strip_field(e.what(), e.field()) << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace dirac2d::cli
