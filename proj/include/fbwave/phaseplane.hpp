#pragma once

#include <vector>

#include "fbwave/interp.hpp"
#include "fbwave/reaction.hpp"

namespace fbwave {

struct IntegrationOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  // Series start offset from the saddle, relative to (delta - xi).
  double start_offset = 1e-8;
  // Largest step in q, relative to (delta - xi).
  double max_step_fraction = 1.0 / 128;
};

/// Stable branch p = P_c(q) of dq/dz = p, d dp/dz = c p - f(q), sampled from
/// just above the saddle (xi, 0) up to q = delta.
struct PhaseTrajectory {
  double c = 0.0;
  double d = 1.0;
  double delta = 0.0;
  double stable_zero = 1.0;
  double saddle_slope = 0.0;
  double series_curvature = 0.0;  // second Taylor coefficient at the saddle
  double endpoint_slope = 0.0;    // P_c(delta) = q_c'(0)
  std::vector<double> q;
  std::vector<double> p;
  std::vector<double> dp;  // dP/dq at each sample
  MonotoneCubic interpolant;

  /// P_c(q) for q in [xi, delta]; the series is used below the first sample.
  double operator()(double q) const;
};

/// Negative eigen-slope (c - sqrt(c^2 - 4 d f'(xi))) / (2d) at the saddle.
double saddle_slope(double c, double d, const ReactionFunction& f);

/// Integrates P' = c/d - f(q)/(d P) from the saddle to q = delta.
/// Throws ValidationError when delta <= xi and IntegrationError on failure.
PhaseTrajectory integrate_trajectory(double c, double d, const ReactionFunction& f, double delta,
                                     const IntegrationOptions& opts = {});

/// -sqrt((2/d) * integral_q^xi f(s) ds), the exact c = 0 branch.
double closed_form_P0(double q, double d, const ReactionFunction& f);

/// Monotone semi-wave q_c(x) on [0, x_end] with an exponential tail model
/// q - xi ~ exp(tail_rate * x) beyond the last sample.
struct SemiWaveProfile {
  double c = 0.0;
  double d = 1.0;
  double delta = 0.0;
  double stable_zero = 1.0;
  double tail_rate = 0.0;
  double slope_at_zero = 0.0;
  std::vector<double> x;
  std::vector<double> q;
  MonotoneCubic interpolant;

  double operator()(double x) const;
  double x_end() const { return x.back(); }
};

/// Marches dq/dx = P(q), q(0) = delta, until q - xi <= tail_cut or x >= x_max.
/// tail_cut <= 0 selects the default 1e-6 * (delta - xi).
SemiWaveProfile reconstruct_profile(const PhaseTrajectory& traj, double x_max = 200.0,
                                    double tail_cut = 0.0);

}  // namespace fbwave
