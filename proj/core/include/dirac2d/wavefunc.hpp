#pragma once

#include <vector>

#include "dirac2d/model.hpp"
#include "dirac2d/spectrum.hpp"

namespace dirac2d {

// Radial component g(r) = N exp(-p r^2 / 2) r^(alpha + 1/2) L_n^alpha(p r^2):
// the lower spinor component for pseudospin symmetry, the upper one for spin.
// Angular part is e^{i m phi} / sqrt(2 pi), so the radial norm is
// integral_0^inf g^2 dr = 1.

struct RadialGridSpec {
  double r_max = 0.0;  // <= 0 selects 8 / sqrt(p_tilde)
  int samples = 1000;
};

struct RadialProfile {
  BoundState state;
  std::vector<double> r;
  std::vector<double> g;
};

// N = sqrt(2 p^(alpha+1) n! / Gamma(n + alpha + 1)).
double radial_norm(int n, double alpha, double p_tilde);

double normalization(const BoundState& state, const FieldConfiguration& cfg);

// Normalized g at a single radius.
double radial_value(const BoundState& state, double r);

// Samples r_i = i * r_max / samples, i = 1..samples.
RadialProfile radial_profile(const BoundState& state, const FieldConfiguration& cfg,
                             const RadialGridSpec& grid);

// Strict sign changes, ignoring |g| below 1e-12 max|g|.
int count_nodes(const std::vector<double>& values);
int count_nodes(const RadialProfile& profile);

// max |g'' - (p2 r^2 + q + delta / r^2) g| / max |g''| over interior grid
// points, with g'' from the 5-point stencil. Points with r < 0.05 r_peak are
// skipped. Coefficients are recomputed from cfg at state.E, so a state whose
// E was perturbed shows up as a large residual.
double ode_residual(const BoundState& state, const FieldConfiguration& cfg,
                    const RadialGridSpec& grid);

// Position of the n = 0 maximum, sqrt((alpha + 1/2) / p).
double peak_radius(const BoundState& state);

}  // namespace dirac2d
