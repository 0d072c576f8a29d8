#include "fbwave/speedfinder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fbwave/error.hpp"
#include "fbwave/kernels.hpp"

namespace fbwave {

namespace {

void require_admissible(double d, const ReactionFunction& f, double delta) {
  if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("diffusivity d must be positive");
  if (!(delta > f.stable_zero + kMinDeltaGap)) {
    std::ostringstream os;
    os << "delta must exceed the stable zero " << f.stable_zero << " by at least "
       << kMinDeltaGap << ", got " << delta;
    throw ValidationError(os.str());
  }
}

}  // namespace

XiEvaluation eval_xi(double c, double d, const ReactionFunction& f, double delta,
                     const IntegrationOptions& opts) {
  const auto tr = integrate_trajectory(c, d, f, delta, opts);
  XiEvaluation ev;
  ev.c = c;
  ev.endpoint_slope = tr.endpoint_slope;
  ev.xi_value = tr.endpoint_slope - delta / d * c;
  return ev;
}

double speed_bracket_low(double d, const ReactionFunction& f, double delta) {
  return d * closed_form_P0(delta, d, f);
}

SpeedResult find_c_star(double d, const ReactionFunction& f, double delta,
                        const RootOptions& opts) {
  require_admissible(d, f, delta);
  auto xi = [&](double c) { return eval_xi(c, d, f, delta).xi_value; };

  SpeedResult res;
  res.d = d;
  res.delta = delta;
  res.reaction = f.label;
  res.bracket_low = speed_bracket_low(d, f, delta);
  res.bracket_high = 0.0;

  double a = res.bracket_low;
  double b = res.bracket_high;
  double fa = xi(a);
  double fb = xi(b);
  if (!(fa > 0.0) || !(fb < 0.0)) {
    std::ostringstream os;
    os << "speed bracket sign check failed: xi(" << a << ") = " << fa << ", xi(0) = " << fb
       << "; f must be monostable and delta > 1";
    throw NumericalError(os.str());
  }

  // Safeguarded secant on a strictly decreasing function.
  double x_prev = a, f_prev = fa;
  double x = b, fx = fb;
  double best = fb, best_x = b;
  double width_before = b - a;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    double cand = x - fx * (x - x_prev) / (fx - f_prev);
    const bool stalled = (b - a) > 0.5 * width_before;
    if (!std::isfinite(cand) || cand <= a || cand >= b || (stalled && it % 3 == 2)) {
      cand = 0.5 * (a + b);
    }
    if (it % 3 == 2) width_before = b - a;
    const double fc = xi(cand);
    x_prev = x;
    f_prev = fx;
    x = cand;
    fx = fc;
    if (std::abs(fc) < std::abs(best)) {
      best = fc;
      best_x = cand;
    }
    if (fc > 0.0) {
      a = cand;
      fa = fc;
    } else if (fc < 0.0) {
      b = cand;
      fb = fc;
    } else {
      a = b = cand;
    }
    const double step = std::abs(x - x_prev);
    if (std::abs(best) <= opts.tol_xi && (step <= opts.tol_c || b - a <= opts.tol_c)) break;
    if (b - a <= opts.tol_c) break;
  }
  res.iterations = it + 1;
  res.c_star = best_x;
  res.residual = std::abs(best);
  res.retreat_speed = -best_x;
  if (!(res.residual <= opts.tol_xi)) {
    std::ostringstream os;
    os << "root finder stopped with |xi| = " << res.residual << " > " << opts.tol_xi;
    throw NumericalError(os.str());
  }

  const auto tr = integrate_trajectory(res.c_star, d, f, delta);
  res.profile = reconstruct_profile(tr, opts.profile_x_max);
  const double mismatch = std::abs(res.profile.slope_at_zero - res.c_star * delta / d);
  if (mismatch > 10.0 * opts.tol_xi) {
    throw NumericalError("semi-wave slope at the front violates q'(0) = c delta / d");
  }
  return res;
}

std::vector<SweepRow> delta_sweep(double d, const ReactionFunction& f,
                                  const std::vector<double>& deltas, const RootOptions& opts) {
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] > deltas[i - 1])) {
      throw ValidationError("sweep deltas must be strictly increasing");
    }
  }
  std::vector<SweepRow> rows(deltas.size());
  const auto errors = kernels::omp::for_each_index(deltas.size(), [&](std::size_t i) {
    rows[i].delta = deltas[i];
    rows[i].result = find_c_star(d, f, deltas[i], opts);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].delta = deltas[i];
    if (errors[i].failed) {
      rows[i].result.reset();
      rows[i].error = errors[i].message;
    }
  }
  return rows;
}

bool sweep_is_monotone(const std::vector<SweepRow>& rows) {
  double last = -1.0;
  bool first = true;
  for (const auto& row : rows) {
    if (!row.result) continue;
    if (!first && !(row.result->retreat_speed > last)) return false;
    last = row.result->retreat_speed;
    first = false;
  }
  return true;
}

PerturbedSpeeds perturbed_speeds(double d, const ReactionFunction& f, double delta, double epsilon,
                                 const RootOptions& opts) {
  const auto pair = make_perturbation_pair(f, epsilon);
  PerturbedSpeeds out;
  out.epsilon = epsilon;
  out.lower = find_c_star(d, pair.lower, delta, opts);
  out.upper = find_c_star(d, pair.upper, delta, opts);
  return out;
}

double SequenceRun::gap(std::size_t n) const { return std::abs(c.at(n) - c_star); }

std::optional<std::size_t> SequenceRun::first_within(double target) const {
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (gap(n) <= target) return n;
  }
  return std::nullopt;
}

namespace {

struct SequenceContext {
  double d;
  const ReactionFunction& f;
  double delta;
  double c_star;
  const std::vector<double>& grid;
  const std::vector<double>& q_star_on_grid;
  double x_max;
};

double slope_at(const SequenceContext& ctx, double c) {
  return integrate_trajectory(c, ctx.d, ctx.f, ctx.delta).endpoint_slope;
}

double next_speed(const SequenceContext& ctx, SequenceDirection dir, int M, std::size_t n,
                  double slope) {
  const double forcing = 1.0 / (static_cast<double>(M) + static_cast<double>(n));
  const double base = ctx.d / ctx.delta * slope;
  return dir == SequenceDirection::upper ? base + forcing : base - forcing;
}

bool ordered(SequenceDirection dir, double c_prev, double c_next, double c_star) {
  return dir == SequenceDirection::upper ? (c_next < c_prev && c_next > c_star)
                                         : (c_next > c_prev && c_next < c_star);
}

SequenceRun run_sequence(const SequenceContext& ctx, SequenceDirection dir, double c0, int M,
                         const SequenceOptions& opts) {
  SequenceRun run;
  run.direction = dir;
  run.M = M;
  run.c_star = ctx.c_star;
  run.c.push_back(c0);
  for (std::size_t n = 0;; ++n) {
    const double cn = run.c[n];
    const auto tr = integrate_trajectory(cn, ctx.d, ctx.f, ctx.delta);
    const auto prof = reconstruct_profile(tr, ctx.x_max);
    double sup = 0.0;
    for (std::size_t k = 0; k < ctx.grid.size(); ++k) {
      sup = std::max(sup, std::abs(prof(ctx.grid[k]) - ctx.q_star_on_grid[k]));
    }
    run.slope.push_back(tr.endpoint_slope);
    run.sup_dist.push_back(sup);
    if (run.profiles.size() < opts.keep_profiles) run.profiles.push_back(prof);

    if (run.converged_at || n >= static_cast<std::size_t>(opts.n_max)) break;

    const double next = next_speed(ctx, dir, M, n, tr.endpoint_slope);
    if (!ordered(dir, cn, next, ctx.c_star)) {
      std::ostringstream os;
      os << (dir == SequenceDirection::upper ? "upper" : "lower")
         << " sequence lost its ordering at n = " << n + 1 << ": c_n = " << cn
         << ", c_{n+1} = " << next << ", c* = " << ctx.c_star << ", M = " << M;
      throw NumericalError(os.str());
    }
    run.c.push_back(next);
    const double mn = static_cast<double>(M) + static_cast<double>(n);
    if (std::abs(next - cn) < 1.0 / (mn * mn)) run.converged_at = n + 1;
  }
  return run;
}

}  // namespace

SequencePair iterate_sequences(double d, const ReactionFunction& f, double delta, double c_upper_0,
                               double c_lower_0, int M, const SequenceOptions& opts) {
  if (M < 1) throw ValidationError("sequence offset M must be a positive integer");
  if (opts.n_max < 1) throw ValidationError("n_max must be positive");

  SequencePair out;
  const auto star = find_c_star(d, f, delta, opts.root);
  out.c_star = star.c_star;
  out.q_star = star.profile;
  if (!(c_upper_0 > star.c_star)) {
    throw ValidationError("upper sequence must start above c* = " + std::to_string(star.c_star));
  }
  if (!(c_lower_0 < star.c_star)) {
    throw ValidationError("lower sequence must start below c* = " + std::to_string(star.c_star));
  }

  std::vector<double> grid;
  const auto n_grid = static_cast<std::size_t>(std::llround(opts.grid_end / opts.grid_step));
  for (std::size_t k = 0; k <= n_grid; ++k) grid.push_back(static_cast<double>(k) * opts.grid_step);
  std::vector<double> q_star_on_grid;
  for (double x : grid) q_star_on_grid.push_back(star.profile(x));

  SequenceContext ctx{d, f, delta, star.c_star, grid, q_star_on_grid, opts.root.profile_x_max};

  // Escalate M until the first step keeps both sequences ordered.
  const double s_up = slope_at(ctx, c_upper_0);
  const double s_lo = slope_at(ctx, c_lower_0);
  int m = M;
  while (!(ordered(SequenceDirection::upper, c_upper_0,
                   next_speed(ctx, SequenceDirection::upper, m, 0, s_up), star.c_star) &&
           ordered(SequenceDirection::lower, c_lower_0,
                   next_speed(ctx, SequenceDirection::lower, m, 0, s_lo), star.c_star))) {
    if (m >= opts.M_max) {
      std::ostringstream os;
      os << "no M <= " << opts.M_max << " keeps the first sequence step ordered (c* = "
         << star.c_star << ", c_upper_0 = " << c_upper_0 << ", c_lower_0 = " << c_lower_0 << ")";
      throw NumericalError(os.str());
    }
    m = std::min(2 * m, opts.M_max);
  }
  out.M = m;
  out.upper = run_sequence(ctx, SequenceDirection::upper, c_upper_0, m, opts);
  out.lower = run_sequence(ctx, SequenceDirection::lower, c_lower_0, m, opts);
  return out;
}

}  // namespace fbwave
