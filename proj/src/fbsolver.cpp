#include "fbwave/fbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fbwave/error.hpp"
#include "fbwave/tridiag.hpp"

namespace fbwave {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Failure raised inside a step; reason is "bound_violation" or "instability".
struct StepFailure {
  std::string reason;
  std::string message;
};

class Stepper {
 public:
  explicit Stepper(const StepContext& ctx) : ctx_(ctx) {
    const std::size_t n = ctx.grid.nodes() - 1;
    sub_.resize(n);
    diag_.resize(n);
    sup_.resize(n);
    rhs_.resize(n);
    scratch_.resize(n);
    trial_.resize(n + 1);
  }

  FrontFixedState advance(const FrontFixedState& s, double dt) {
    const double h = ctx_.grid.h();
    FrontFixedState next;
    next.U.resize(s.U.size());
    if (ctx_.predictor_corrector) {
      implicit_update(s, s.g_prime, dt, trial_);
      FrontFixedState probe;
      probe.U = trial_;
      const double gp_star = front_speed_from_state(probe, h, ctx_.d, ctx_.delta);
      implicit_update(s, 0.5 * (s.g_prime + gp_star), dt, next.U);
    } else {
      implicit_update(s, s.g_prime, dt, next.U);
    }
    next.t = s.t + dt;
    next.g_prime = front_speed_from_state(next, h, ctx_.d, ctx_.delta);
    next.g = s.g + 0.5 * dt * (s.g_prime + next.g_prime);
    check(next);
    return next;
  }

 private:
  void implicit_update(const FrontFixedState& s, double g_prime, double dt,
                       std::vector<double>& out) {
    const double h = ctx_.grid.h();
    const double r = ctx_.d * dt / (h * h);
    const std::size_t n = rhs_.size();

    kernels::StepRhsInputs in;
    in.u = s.U;
    in.h = h;
    in.d = ctx_.d;
    in.dt = dt;
    in.g_prime = g_prime;
    in.t = s.t;
    in.reaction = ctx_.reaction;
    in.source = ctx_.source;
    kernels::omp::assemble_step_rhs(in, rhs_);
    rhs_[0] += 0.5 * r * ctx_.delta;

    std::fill(sub_.begin(), sub_.end(), -0.5 * r);
    std::fill(sup_.begin(), sup_.end(), -0.5 * r);
    std::fill(diag_.begin(), diag_.end(), 1.0 + r);
    sub_[n - 1] = -r;  // Neumann mirror at y = L
    if (!solve_tridiagonal(sub_, diag_, sup_, rhs_, scratch_)) {
      throw StepFailure{"instability", "zero pivot in the implicit diffusion solve"};
    }
    out[0] = ctx_.delta;
    std::copy(rhs_.begin(), rhs_.end(), out.begin() + 1);
  }

  void check(const FrontFixedState& s) const {
    for (std::size_t j = 0; j < s.U.size(); ++j) {
      const double v = s.U[j];
      if (!std::isfinite(v)) {
        throw StepFailure{"instability", "non-finite density at t = " + num(s.t) + ", y = " +
                                             num(ctx_.grid.node(static_cast<int>(j)))};
      }
      if (!(v > 0.0) || v > ctx_.upper_bound + 1e-8) {
        throw StepFailure{"bound_violation",
                          "density " + num(v) + " outside (0, " + num(ctx_.upper_bound) +
                              "] at t = " + num(s.t) + ", y = " +
                              num(ctx_.grid.node(static_cast<int>(j)))};
      }
    }
    if (!std::isfinite(s.g_prime)) {
      throw StepFailure{"instability", "non-finite front speed at t = " + num(s.t)};
    }
    if (std::abs(s.g_prime) > ctx_.speed_cap) {
      throw StepFailure{"bound_violation", "front speed " + num(s.g_prime) + " exceeds cap " +
                                               num(ctx_.speed_cap) + " at t = " + num(s.t)};
    }
  }

  const StepContext& ctx_;
  std::vector<double> sub_, diag_, sup_, rhs_, scratch_, trial_;
};

}  // namespace

Grid1D::Grid1D(double length_, int cells_) : length(length_), cells(cells_) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("grid length must be positive");
  }
  if (cells < 2) throw ValidationError("grid needs at least 2 cells");
}

InitialData make_initial_data(const Grid1D& grid, double delta, double g0,
                              const std::function<double(double)>& u0, std::string preset) {
  InitialData init;
  init.g0 = g0;
  init.preset = std::move(preset);
  init.u0.resize(grid.nodes());
  for (std::size_t j = 0; j < grid.nodes(); ++j) init.u0[j] = u0(grid.node(static_cast<int>(j)));
  if (std::abs(init.u0[0] - delta) > 1e-12 * std::max(1.0, delta)) {
    throw ValidationError("initial data must equal delta at the front, got u0(0) = " +
                          num(init.u0[0]));
  }
  init.u0[0] = delta;
  const auto [lo, hi] = std::minmax_element(init.u0.begin(), init.u0.end());
  init.inf_value = *lo;
  init.sup_norm = *hi;
  if (!(init.inf_value > 0.0)) throw ValidationError("initial data must be positive");
  for (double v : init.u0) {
    if (!std::isfinite(v)) throw ValidationError("initial data must be finite");
  }
  return init;
}

InitialData initial_semiwave(const Grid1D& grid, const SemiWaveProfile& profile, double g0) {
  return make_initial_data(grid, profile.delta, g0, [&](double y) { return profile(y); },
                           "semiwave");
}

InitialData initial_exp_approach(const Grid1D& grid, double delta, double stable_zero,
                                 double g0) {
  return make_initial_data(
      grid, delta, g0,
      [=](double y) { return stable_zero + (delta - stable_zero) * std::exp(-y); },
      "exp_approach");
}

InitialData initial_constant(const Grid1D& grid, double delta, double g0) {
  return make_initial_data(grid, delta, g0, [=](double) { return delta; }, "constant_delta");
}

InitialData initial_table(const Grid1D& grid, double delta, const std::vector<double>& y,
                          const std::vector<double>& u, double g0) {
  if (y.size() != u.size() || y.size() < 2) {
    throw ValidationError("u0 table needs at least two (y, u) rows");
  }
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (!(y[i] > y[i - 1])) throw ValidationError("u0 table y column must be increasing");
  }
  if (y.front() != 0.0) throw ValidationError("u0 table must start at y = 0");
  auto interp = [&](double yy) {
    if (yy >= y.back()) return u.back();
    const auto it = std::upper_bound(y.begin(), y.end(), yy);
    const std::size_t i = static_cast<std::size_t>(it - y.begin()) - 1;
    const double w = (yy - y[i]) / (y[i + 1] - y[i]);
    return (1.0 - w) * u[i] + w * u[i + 1];
  };
  return make_initial_data(grid, delta, g0, interp, "custom_table");
}

double front_speed_from_state(const FrontFixedState& state, double h, double d, double delta) {
  const auto& U = state.U;
  const double uy = (-3.0 * U[0] + 4.0 * U[1] - U[2]) / (2.0 * h);
  return -(d / delta) * uy;
}

FrontFixedState step(const FrontFixedState& state, const StepContext& ctx, double dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (state.U.size() != ctx.grid.nodes()) throw ValidationError("state does not match grid");
  Stepper stepper(ctx);
  try {
    return stepper.advance(state, dt);
  } catch (const StepFailure& f) {
    throw BoundViolation(f.reason + ": " + f.message);
  }
}

double default_time_step(const SolverConfig& cfg, double d) {
  const double h = cfg.grid.h();
  double dt = cfg.dt > 0.0 ? cfg.dt : 0.25 * h * h / d;
  return std::min(dt, 0.5 * h / cfg.speed_cap);
}

RunRecord run(const InitialData& initial, double d, double delta, const ReactionFunction& f,
              const SolverConfig& cfg, const SemiWaveProfile* reference,
              const OutputObserver& observer) {
  if (!(d > 0.0)) throw ValidationError("diffusivity d must be positive");
  if (!(delta > f.stable_zero)) throw ValidationError("delta must exceed the stable zero");
  if (cfg.grid.cells < 200) throw ValidationError("grid needs N >= 200 cells");
  if (initial.u0.size() != cfg.grid.nodes()) {
    throw ValidationError("initial data was sampled on a different grid");
  }
  if (!(cfg.t_end >= 0.0)) throw ValidationError("T_end must be nonnegative");
  if (!(cfg.speed_cap > 0.0)) throw ValidationError("speed cap must be positive");

  RunRecord rec;
  const double h = cfg.grid.h();
  const double dt_max = default_time_step(cfg, d);
  rec.dt = dt_max;
  rec.upper_bound = initial.sup_norm + 1.0;
  rec.config = {
      {"d", num(d)},
      {"delta", num(delta)},
      {"reaction", f.label},
      {"g0", num(initial.g0)},
      {"u0", initial.preset},
      {"L_y", num(cfg.grid.length)},
      {"N", std::to_string(cfg.grid.cells)},
      {"dt", num(dt_max)},
      {"T_end", num(cfg.t_end)},
      {"output_every", num(cfg.output_every)},
      {"predictor_corrector", cfg.predictor_corrector ? "true" : "false"},
  };

  StepContext ctx;
  ctx.d = d;
  ctx.delta = delta;
  ctx.reaction = &f;
  ctx.grid = cfg.grid;
  ctx.upper_bound = rec.upper_bound;
  ctx.speed_cap = cfg.speed_cap;
  ctx.predictor_corrector = cfg.predictor_corrector;

  std::vector<double> q_ref;
  if (reference) {
    q_ref.resize(cfg.grid.nodes());
    for (std::size_t j = 0; j < q_ref.size(); ++j) {
      q_ref[j] = (*reference)(cfg.grid.node(static_cast<int>(j)));
    }
  }

  FrontFixedState state;
  state.t = 0.0;
  state.U = initial.u0;
  state.g = initial.g0;
  state.g_prime = front_speed_from_state(state, h, d, delta);

  std::vector<double> pending_snapshots = cfg.snapshot_times;
  std::sort(pending_snapshots.begin(), pending_snapshots.end());
  bool far_field_warned = false;

  auto record = [&](const FrontFixedState& s) {
    RunRow row;
    row.t = s.t;
    row.g = s.g;
    row.g_prime = s.g_prime;
    const std::span<const double> interior(s.U.data() + 1, s.U.size() - 1);
    const auto mm = kernels::omp::min_max(interior);
    row.min_U = mm.min;
    row.max_U = mm.max;
    row.sup_profile_error = reference ? kernels::omp::max_abs_diff(s.U, q_ref)
                                      : std::numeric_limits<double>::quiet_NaN();
    rec.rows.push_back(row);
    while (!pending_snapshots.empty() && pending_snapshots.front() <= s.t + 1e-12) {
      rec.snapshots.push_back({s.t, s.U});
      pending_snapshots.erase(pending_snapshots.begin());
    }
    if (!far_field_warned && std::abs(s.U.back() - f.stable_zero) > cfg.far_field_warn &&
        s.t > 0.0) {
      far_field_warned = true;
      rec.warnings.push_back("far-field value deviates from the stable zero by " +
                             num(std::abs(s.U.back() - f.stable_zero)) + " at t = " + num(s.t) +
                             "; consider a longer domain");
    }
    if (observer) observer(s);
  };

  if (std::abs(state.g_prime) > cfg.speed_cap) {
    rec.termination = "bound_violation";
    rec.diagnostic = "initial front speed " + num(state.g_prime) + " exceeds cap";
    rec.final_state = state;
    return rec;
  }
  record(state);

  const double every = cfg.output_every > 0.0 ? cfg.output_every : cfg.t_end;
  const long n_out =
      cfg.t_end > 0.0 ? static_cast<long>(std::ceil(cfg.t_end / every - 1e-9)) : 0;
  Stepper stepper(ctx);
  try {
    for (long k = 1; k <= n_out; ++k) {
      const double t_target = std::min(cfg.t_end, static_cast<double>(k) * every);
      const double span = t_target - state.t;
      const long m = std::max(1L, static_cast<long>(std::ceil(span / dt_max - 1e-9)));
      const double dt = span / static_cast<double>(m);
      for (long i = 0; i < m; ++i) state = stepper.advance(state, dt);
      state.t = t_target;
      record(state);
    }
  } catch (const StepFailure& failure) {
    rec.termination = failure.reason;
    rec.diagnostic = failure.message;
  }
  rec.final_state = state;
  return rec;
}

}  // namespace fbwave
