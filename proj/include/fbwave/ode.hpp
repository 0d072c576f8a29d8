#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbwave::ode {

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0: pick from the interval length
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 2'000'000;
};

enum class Status { completed, stopped, step_underflow, too_many_steps };

struct Outcome {
  Status status = Status::completed;
  double t = 0.0;
  double y = 0.0;
  long accepted = 0;
  long rejected = 0;
};

/// Scalar Dormand-Prince 5(4) with PI-free standard step control.
///
/// rhs(t, y) may return a non-finite value to signal that y left the
/// admissible set; the step is then rejected and shrunk. observer(t, y, dydt)
/// sees every accepted point including the start. stop(t, y) is checked after
/// each accepted step and ends integration early with Status::stopped.
template <class Rhs, class Observer, class Stop>
Outcome dopri5(Rhs&& rhs, double t0, double y0, double t1, const Options& opt,
               Observer&& observer, Stop&& stop) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Outcome out;
  const double span = t1 - t0;
  const double dir = span >= 0.0 ? 1.0 : -1.0;
  double t = t0;
  double y = y0;
  double k1 = rhs(t, y);
  observer(t, y, k1);
  if (span == 0.0) {
    out.t = t;
    out.y = y;
    return out;
  }

  double h = opt.initial_step > 0.0 ? opt.initial_step : std::abs(span) * 1e-3;
  h = std::min(h, opt.max_step);

  while (true) {
    if (out.accepted + out.rejected >= opt.max_steps) {
      out.status = Status::too_many_steps;
      break;
    }
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      out.status = Status::step_underflow;
      break;
    }
    const double s = dir * h;
    const double k2 = rhs(t + c2 * s, y + s * (a21 * k1));
    const double k3 = rhs(t + c3 * s, y + s * (a31 * k1 + a32 * k2));
    const double k4 = rhs(t + c4 * s, y + s * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = rhs(t + c5 * s, y + s * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 =
        rhs(t + s, y + s * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y_new = y + s * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double t_new = last ? t1 : t + s;
    const double k7 = rhs(t_new, y_new);
    const double err_est =
        s * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = opt.atol + opt.rtol * std::max(std::abs(y), std::abs(y_new));
    const double err = std::abs(err_est) / scale;

    if (!std::isfinite(err) || !std::isfinite(y_new)) {
      ++out.rejected;
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      ++out.accepted;
      t = t_new;
      y = y_new;
      k1 = k7;
      observer(t, y, k1);
      if (last) break;
      if (stop(t, y)) {
        out.status = Status::stopped;
        break;
      }
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h = std::min(h * grow, opt.max_step);
    } else {
      ++out.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  out.t = t;
  out.y = y;
  return out;
}

}  // namespace fbwave::ode
