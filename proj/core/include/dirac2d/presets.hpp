#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dirac2d/model.hpp"
#include "dirac2d/spectrum.hpp"

namespace dirac2d {

// Shipped sweep setups: energy against B or flux for a few low states.
// Field values are defaults picked for this tool.
struct SweepPreset {
  std::string_view name;
  std::string_view description;
  FieldConfiguration cfg;
  SymmetryLimit symmetry;
  std::vector<StateIndex> states;
  SweepSpec spec;
};

inline std::vector<SweepPreset> sweep_presets() {
  const FieldConfiguration b_sweep{1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0};
  const FieldConfiguration flux_sweep{1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0};
  return {
      {"fig1", "pseudospin, n=0, m in {0, 1, -1}, B from 0.5 to 5 at flux 1", b_sweep,
       SymmetryLimit::Pseudospin, {{0, 0}, {0, 1}, {0, -1}}, {SweepParameter::B, 0.5, 5.0, 10}},
      {"fig2", "pseudospin, n=0, m = +1 and -1, flux from 0 to 120 at B = 1", flux_sweep,
       SymmetryLimit::Pseudospin, {{0, 1}, {0, -1}}, {SweepParameter::Flux, 0.0, 120.0, 13}},
      {"fig3", "spin, n=0, m in {0, 1, -1}, B from 0.5 to 5 at flux 1", b_sweep,
       SymmetryLimit::Spin, {{0, 0}, {0, 1}, {0, -1}}, {SweepParameter::B, 0.5, 5.0, 10}},
      {"fig4", "spin, n=0, m = +1 and -1, flux from 0 to 120 at B = 1", flux_sweep,
       SymmetryLimit::Spin, {{0, 1}, {0, -1}}, {SweepParameter::Flux, 0.0, 120.0, 13}},
  };
}

inline std::optional<SweepPreset> find_preset(std::string_view name) {
  for (auto& preset : sweep_presets()) {
    if (preset.name == name) return preset;
  }
  return std::nullopt;
}

}  // namespace dirac2d
