#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dirac2d/errors.hpp"
#include "dirac2d/model.hpp"

namespace dirac2d {

class InadmissibleEnergy : public Error {
 public:
  InadmissibleEnergy(Admissibility verdict, const std::string& what)
      : Error(what), verdict_(verdict) {}
  Admissibility verdict() const noexcept { return verdict_; }

 private:
  Admissibility verdict_;
};

struct SearchWindow {
  double e_min = -21.0;
  double e_max = 21.0;
  int scan_points = 20000;
  double tol = 1e-12;

  void validate() const;  // throws InvalidParameter
};

// [-(M + 20), M + 20] with the default scan density and tolerance.
SearchWindow default_window(const FieldConfiguration& cfg);

struct BoundState {
  SymmetryLimit symmetry = SymmetryLimit::Spin;
  StateIndex index;
  double E = 0.0;
  double p_tilde = 0.0;  // sqrt(p2) at E, always positive
  double alpha = 0.0;    // sqrt(delta + 1/4) at E
  double residual = 0.0; // |F(E)|
  double norm_const = 0.0;
  ReducedCoefficients coeffs;  // at E
};

struct SearchDiagnostics {
  int brackets = 0;          // sign changes found on the scan grid
  int boundary_discards = 0; // roots too close to an admissibility edge
};

// F(E) = 2 sqrt(p2) (2n + 1 + sqrt(delta + 1/4)) + q. Zero exactly at bound
// states. Throws InadmissibleEnergy when the radicands go negative or E is
// the forbidden mass-shell value.
double energy_condition(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx,
                        double E);

// Non-throwing variant used by scans.
std::optional<double> try_energy_condition(const FieldConfiguration& cfg, SymmetryLimit sym,
                                           StateIndex idx, double E);

// All roots of F inside the window, ascending. Sign changes between adjacent
// admissible scan points are refined by bisection to |dE| < tol.
std::vector<BoundState> find_states(const FieldConfiguration& cfg, SymmetryLimit sym,
                                    StateIndex idx, const SearchWindow& window);
std::vector<BoundState> find_states(const FieldConfiguration& cfg, SymmetryLimit sym,
                                    StateIndex idx, const SearchWindow& window,
                                    SearchDiagnostics& diagnostics);

// Packages a root as a BoundState (coefficients, residual, normalization).
BoundState make_bound_state(const FieldConfiguration& cfg, SymmetryLimit sym, StateIndex idx,
                            double E);

enum class SweepParameter { B, Flux };

std::string_view to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(std::string_view text);  // "B" or "flux"

struct SweepSpec {
  SweepParameter parameter = SweepParameter::B;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;  // grid points, endpoints included
};

struct SweepTable {
  SweepParameter parameter = SweepParameter::B;
  std::vector<StateIndex> states;
  std::vector<double> grid;
  // energies[row][column]; nullopt where the state has no root in the window.
  std::vector<std::vector<std::optional<double>>> energies;
};

// Root-tracking sweep. The first grid point takes the highest root in the
// window; later points recentre the window on the previous root and take the
// closest root. Each state column is an independent task.
SweepTable sweep(const FieldConfiguration& cfg_template, SymmetryLimit sym,
                 const std::vector<StateIndex>& states, const SweepSpec& spec,
                 const SearchWindow& window);

}  // namespace dirac2d
