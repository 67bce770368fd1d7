#pragma once

#include <numbers>
#include <string_view>

namespace dirac2d {

// Physical parameters of the problem in natural units (hbar = 1). The
// speed-of-light parameter c and the charge magnitude e are kept explicit
// so the coefficient formulas can be checked term by term.
struct FieldConfiguration {
  double M = 1.0;       // rest mass, > 0
  double a = 1.0;       // strength of the a*r^2 term, >= 0
  double b = 0.0;       // strength of the b/r^2 term, any sign
  double B = 0.0;       // uniform magnetic field, signed
  double phi_AB = 0.0;  // Aharonov-Bohm flux, signed
  double e = 1.0;       // charge magnitude, > 0
  double c = 1.0;       // > 0

  // Throws InvalidParameter naming the first offending field. Also rejects
  // a == 0 together with B == 0 (nothing confines the particle).
  void validate() const;
};

enum class SymmetryLimit { Pseudospin, Spin };

std::string_view to_string(SymmetryLimit sym);
// Accepts "spin" / "pseudospin" (case-insensitive); throws InvalidParameter.
SymmetryLimit parse_symmetry(std::string_view text);

struct StateIndex {
  int n = 0;  // radial quantum number, >= 0
  int m = 0;  // magnetic quantum number

  friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

// Coefficients of the radial equation after s = r^2:
//   g''(r) = (p2 r^2 + q + delta / r^2) g(r).
// The -1/4 from the 1/sqrt(r) ansatz is already folded into delta.
struct ReducedCoefficients {
  double p2 = 0.0;
  double q = 0.0;
  double delta = 0.0;
  double m_eff = 0.0;
};

enum class Admissibility {
  Admissible,
  NotConfining,                // p2 <= 0
  SupercriticalInverseSquare,  // delta + 1/4 < 0
  ExcludedEnergy,              // E on the forbidden mass shell
};

std::string_view to_string(Admissibility verdict);

// (E - M) for pseudospin, (E + M) for spin.
constexpr double mass_factor(SymmetryLimit sym, double E, double M) noexcept {
  return sym == SymmetryLimit::Pseudospin ? E - M : E + M;
}

// Energy at which the eliminated spinor component is undefined.
constexpr double forbidden_energy(SymmetryLimit sym, double M) noexcept {
  return sym == SymmetryLimit::Pseudospin ? M : -M;
}

// m' = m - e*phi_AB / (2 pi c).
double effective_angular(int m, const FieldConfiguration& cfg);

// Energy-independent part of q: e^2 B phi / (2 pi c^2) - e m B / (2c).
double field_shift(int m, const FieldConfiguration& cfg);

// Throws ExcludedEnergy when E is the forbidden mass-shell value.
ReducedCoefficients reduced_coefficients(const FieldConfiguration& cfg, SymmetryLimit sym,
                                         int m, double E);

Admissibility admissible(const ReducedCoefficients& coeffs);

inline constexpr double kPi = std::numbers::pi;

}  // namespace dirac2d
