#include "fbwave/phaseplane.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "fbwave/error.hpp"
#include "fbwave/ode.hpp"

namespace fbwave {

double saddle_slope(double c, double d, const ReactionFunction& f) {
  const double fp = f.derivative(f.stable_zero);
  const double root = std::sqrt(c * c - 4.0 * d * fp);
  // Rationalised branch avoids cancellation for c > 0.
  return c > 0.0 ? 2.0 * fp / (c + root) : (c - root) / (2.0 * d);
}

double PhaseTrajectory::operator()(double qv) const {
  if (qv <= q.front()) {
    const double z = qv - stable_zero;
    return saddle_slope * z + series_curvature * z * z;
  }
  if (qv >= q.back()) return p.back();
  return interpolant(qv);
}

PhaseTrajectory integrate_trajectory(double c, double d, const ReactionFunction& f, double delta,
                                     const IntegrationOptions& opts) {
  if (!(d > 0.0)) throw ValidationError("diffusivity d must be positive");
  const double xi = f.stable_zero;
  if (!(delta > xi)) {
    throw ValidationError("delta must exceed the stable zero " + std::to_string(xi));
  }
  const double fp = f.derivative(xi);
  if (!(fp < 0.0)) throw ValidationError("f'(xi) must be negative at the stable zero");

  PhaseTrajectory tr;
  tr.c = c;
  tr.d = d;
  tr.delta = delta;
  tr.stable_zero = xi;
  tr.saddle_slope = saddle_slope(c, d, f);

  // Matching P = s z + a z^2 in P P' = (c/d) P - f/d at order z^2.
  const double s = tr.saddle_slope;
  const double denom = 2.0 * d * (3.0 * s - c / d);
  tr.series_curvature = -f.second_derivative(xi) / denom;

  const double width = delta - xi;
  const double eta = opts.start_offset * width;
  const double q0 = xi + eta;
  const double p0 = s * eta + tr.series_curvature * eta * eta;

  auto rhs = [&](double qv, double pv) {
    if (!(pv < 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return c / d - f(qv) / (d * pv);
  };
  ode::Options o;
  o.rtol = opts.rtol;
  o.atol = opts.atol;
  o.initial_step = eta;
  o.max_step = opts.max_step_fraction * width;

  auto observer = [&](double qv, double pv, double dpv) {
    tr.q.push_back(qv);
    tr.p.push_back(pv);
    tr.dp.push_back(dpv);
  };
  const auto outcome = ode::dopri5(rhs, q0, p0, delta, o, observer,
                                   [](double, double) { return false; });
  if (outcome.status != ode::Status::completed) {
    throw IntegrationError("phase-plane integration failed for c = " + std::to_string(c),
                           outcome.t);
  }
  tr.endpoint_slope = tr.p.back();
  tr.interpolant = MonotoneCubic(tr.q, tr.p, tr.dp);
  return tr;
}

double closed_form_P0(double q, double d, const ReactionFunction& f) {
  if (!(d > 0.0)) throw ValidationError("diffusivity d must be positive");
  const double xi = f.stable_zero;
  if (q < xi) throw ValidationError("closed_form_P0 requires q >= stable zero");
  if (q == xi) return 0.0;
  double err = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [&](double s) { return f(s); }, q, xi, 15, 1e-12, &err);
  const double radicand = 2.0 / d * integral;
  if (radicand < 0.0) {
    if (radicand > -1e-14) return 0.0;
    throw NumericalError("closed_form_P0: negative radicand; f is not monostable beyond xi");
  }
  return -std::sqrt(radicand);
}

double SemiWaveProfile::operator()(double xv) const {
  if (xv <= 0.0) return q.front();
  if (xv >= x.back()) {
    return stable_zero + (q.back() - stable_zero) * std::exp(tail_rate * (xv - x.back()));
  }
  return interpolant(xv);
}

SemiWaveProfile reconstruct_profile(const PhaseTrajectory& traj, double x_max, double tail_cut) {
  const double xi = traj.stable_zero;
  const double width = traj.delta - xi;
  if (tail_cut <= 0.0) tail_cut = 1e-6 * width;
  if (!(tail_cut < 0.5 * width)) {
    throw ValidationError("tail_cut must lie in (0, (delta - xi)/2)");
  }
  if (!(x_max > 0.0)) throw ValidationError("x_max must be positive");

  SemiWaveProfile prof;
  prof.c = traj.c;
  prof.d = traj.d;
  prof.delta = traj.delta;
  prof.stable_zero = xi;
  prof.tail_rate = traj.saddle_slope;
  prof.slope_at_zero = traj.endpoint_slope;

  std::vector<double> slope;
  auto rhs = [&](double, double qv) {
    if (!(qv > xi)) return std::numeric_limits<double>::quiet_NaN();
    return traj(qv);
  };
  ode::Options o;
  o.rtol = 1e-10;
  o.atol = 1e-13;
  o.initial_step = 1e-3;
  o.max_step = 0.1;
  auto observer = [&](double xv, double qv, double dq) {
    prof.x.push_back(xv);
    prof.q.push_back(qv);
    slope.push_back(dq);
  };
  auto stop = [&](double, double qv) { return qv - xi <= tail_cut; };
  const auto outcome = ode::dopri5(rhs, 0.0, traj.delta, x_max, o, observer, stop);
  if (outcome.status == ode::Status::step_underflow ||
      outcome.status == ode::Status::too_many_steps) {
    throw IntegrationError("profile reconstruction failed", outcome.t);
  }
  prof.q.front() = traj.delta;
  prof.slope_at_zero = traj.endpoint_slope;
  for (std::size_t i = 1; i < prof.q.size(); ++i) {
    if (!(prof.q[i] < prof.q[i - 1]) || !(prof.q[i] > xi)) {
      throw NumericalError("reconstructed profile is not strictly decreasing above xi");
    }
  }
  // Interpolate in increasing x; values decrease, so the limiter keeps them monotone.
  prof.interpolant = MonotoneCubic(prof.x, prof.q, slope);
  return prof;
}

}  // namespace fbwave
