#include "dirac2d/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "dirac2d/errors.hpp"

namespace dirac2d {

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw InvalidParameter(field, std::string(field) + ": " + what);
}

}  // namespace

void FieldConfiguration::validate() const {
  require(std::isfinite(M) && M > 0.0, "M", "rest mass must be positive");
  require(std::isfinite(a) && a >= 0.0, "a", "oscillator strength must be non-negative");
  require(std::isfinite(b), "b", "must be finite");
  require(std::isfinite(B), "B", "must be finite");
  require(std::isfinite(phi_AB), "phi_AB", "must be finite");
  require(std::isfinite(e) && e > 0.0, "e", "charge magnitude must be positive");
  require(std::isfinite(c) && c > 0.0, "c", "must be positive");
  require(!(a == 0.0 && B == 0.0), "a", "a = 0 with B = 0 has no bound states");
}

std::string_view to_string(SymmetryLimit sym) {
  return sym == SymmetryLimit::Pseudospin ? "pseudospin" : "spin";
}

SymmetryLimit parse_symmetry(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "spin") return SymmetryLimit::Spin;
  if (lower == "pseudospin") return SymmetryLimit::Pseudospin;
  throw InvalidParameter("symmetry", "symmetry: expected 'spin' or 'pseudospin', got '" +
                                         std::string(text) + "'");
}

std::string_view to_string(Admissibility verdict) {
  switch (verdict) {
    case Admissibility::Admissible:
      return "Admissible";
    case Admissibility::NotConfining:
      return "NotConfining";
    case Admissibility::SupercriticalInverseSquare:
      return "SupercriticalInverseSquare";
    case Admissibility::ExcludedEnergy:
      return "ExcludedEnergy";
  }
  return "?";
}

double effective_angular(int m, const FieldConfiguration& cfg) {
  return static_cast<double>(m) - cfg.e * cfg.phi_AB / (2.0 * kPi * cfg.c);
}

double field_shift(int m, const FieldConfiguration& cfg) {
  const double c2 = cfg.c * cfg.c;
  return cfg.e * cfg.e * cfg.B * cfg.phi_AB / (2.0 * kPi * c2) -
         cfg.e * static_cast<double>(m) * cfg.B / (2.0 * cfg.c);
}

ReducedCoefficients reduced_coefficients(const FieldConfiguration& cfg, SymmetryLimit sym,
                                         int m, double E) {
  if (E == forbidden_energy(sym, cfg.M)) {
    throw ExcludedEnergy("energy E = " + std::to_string(E) + " is excluded for " +
                         std::string(to_string(sym)) + " symmetry");
  }
  const double mu = mass_factor(sym, E, cfg.M);
  const double m_eff = effective_angular(m, cfg);
  const double landau = cfg.e * cfg.e * cfg.B * cfg.B / (4.0 * cfg.c * cfg.c);

  ReducedCoefficients out;
  out.m_eff = m_eff;
  out.p2 = 2.0 * mu * cfg.a + landau;
  out.q = field_shift(m, cfg) - (E - cfg.M) * (E + cfg.M);
  out.delta = m_eff * m_eff - 0.25 + 2.0 * mu * cfg.b;
  return out;
}

Admissibility admissible(const ReducedCoefficients& coeffs) {
  if (!(coeffs.p2 > 0.0)) return Admissibility::NotConfining;
  if (!(coeffs.delta + 0.25 >= 0.0)) return Admissibility::SupercriticalInverseSquare;
  return Admissibility::Admissible;
}

}  // namespace dirac2d
