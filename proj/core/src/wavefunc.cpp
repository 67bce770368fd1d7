#include "dirac2d/wavefunc.hpp"

#include <algorithm>
#include <cmath>

#include "dirac2d/special.hpp"

namespace dirac2d {

double radial_norm(int n, double alpha, double p_tilde) {
  const double log_n2 = std::log(2.0) + (alpha + 1.0) * std::log(p_tilde) +
                        special::log_gamma(n + 1.0) - special::log_gamma(n + alpha + 1.0);
  return std::exp(0.5 * log_n2);
}

double normalization(const BoundState& state, const FieldConfiguration& /*cfg*/) {
  return radial_norm(state.index.n, state.alpha, state.p_tilde);
}

double peak_radius(const BoundState& state) {
  return std::sqrt((state.alpha + 0.5) / state.p_tilde);
}

namespace {

double resolve_rmax(const BoundState& state, const RadialGridSpec& grid) {
  return grid.r_max > 0.0 ? grid.r_max : 8.0 / std::sqrt(state.p_tilde);
}

}  // namespace

double radial_value(const BoundState& state, double r) {
  if (r <= 0.0) return 0.0;
  const double x = state.p_tilde * r * r;
  // Combine the power and the Gaussian in log space; either alone can
  // under/overflow for large alpha.
  const double envelope = std::exp(std::log(state.norm_const) - 0.5 * x +
                                   (state.alpha + 0.5) * std::log(r));
  return envelope * special::laguerre(state.index.n, state.alpha, x);
}

RadialProfile radial_profile(const BoundState& state, const FieldConfiguration& /*cfg*/,
                             const RadialGridSpec& grid) {
  RadialProfile out;
  out.state = state;
  const double r_max = resolve_rmax(state, grid);
  const int samples = std::max(grid.samples, 1);
  out.r.reserve(static_cast<std::size_t>(samples));
  out.g.reserve(static_cast<std::size_t>(samples));
  for (int i = 1; i <= samples; ++i) {
    const double r = r_max * static_cast<double>(i) / samples;
    out.r.push_back(r);
    out.g.push_back(radial_value(state, r));
  }
  return out;
}

int count_nodes(const std::vector<double>& values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

int count_nodes(const RadialProfile& profile) { return count_nodes(profile.g); }

double ode_residual(const BoundState& state, const FieldConfiguration& cfg,
                    const RadialGridSpec& grid) {
  const ReducedCoefficients coeffs =
      reduced_coefficients(cfg, state.symmetry, state.index.m, state.E);
  const double r_max = resolve_rmax(state, grid);
  const int samples = std::max(grid.samples, 8);
  const double h = r_max / samples;
  const double r_min = 0.05 * peak_radius(state);

  double worst = 0.0;
  double scale = 0.0;
  for (int i = 3; i + 2 <= samples; ++i) {
    const double r = h * i;
    if (r - 2.0 * h < r_min) continue;
    const double gm2 = radial_value(state, r - 2.0 * h);
    const double gm1 = radial_value(state, r - h);
    const double g0 = radial_value(state, r);
    const double gp1 = radial_value(state, r + h);
    const double gp2 = radial_value(state, r + 2.0 * h);
    const double second = (-gm2 + 16.0 * gm1 - 30.0 * g0 + 16.0 * gp1 - gp2) / (12.0 * h * h);
    const double bracket = coeffs.p2 * r * r + coeffs.q + coeffs.delta / (r * r);
    worst = std::max(worst, std::abs(second - bracket * g0));
    scale = std::max(scale, std::abs(second));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace dirac2d
