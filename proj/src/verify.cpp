#include "fbwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fbwave/error.hpp"
#include "fbwave/kernels.hpp"
#include "fbwave/speedfinder.hpp"

namespace fbwave {

ProfileError profile_error(const FrontFixedState& state, const Grid1D& grid,
                           const SemiWaveProfile& qstar) {
  ProfileError err;
  const std::size_t n = std::min(state.U.size(), grid.nodes());
  for (std::size_t j = 0; j < n; ++j) {
    err.grid_sup =
        std::max(err.grid_sup, std::abs(state.U[j] - qstar(grid.node(static_cast<int>(j)))));
  }
  err.tail_correction = std::abs(state.U[n - 1] - qstar.stable_zero) +
                        std::abs(qstar(grid.length) - qstar.stable_zero);
  return err;
}

SandwichReport sandwich_check(const FrontFixedState& state, const Grid1D& grid,
                              const std::vector<SemiWaveProfile>& lower,
                              const std::vector<SemiWaveProfile>& upper, double tol) {
  SandwichReport rep;
  rep.tol = tol < 0.0 ? 2.0 * grid.h() : tol;
  const std::size_t count = std::min(lower.size(), upper.size());
  for (std::size_t k = 0; k < count; ++k) {
    double worst = 0.0;
    for (std::size_t j = 0; j < state.U.size(); ++j) {
      const double y = grid.node(static_cast<int>(j));
      const double u = state.U[j];
      worst = std::max(worst, lower[k](y) - rep.tol - u);
      worst = std::max(worst, u - upper[k](y) - rep.tol);
    }
    rep.worst_violation.push_back(worst);
    rep.passed.push_back(worst <= 0.0);
    if (worst > 0.0 && !rep.first_failing) rep.first_failing = k;
  }
  return rep;
}

bool quartile_tail_nonincreasing(const std::vector<SeriesPoint>& series) {
  if (series.size() < 8) return false;
  const std::size_t start = series.size() - series.size() / 4;
  const std::size_t mid = start + (series.size() - start) / 2;
  auto mean = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = a; i < b; ++i) s += series[i].value;
    return s / static_cast<double>(b - a);
  };
  const double early = mean(start, mid);
  const double late = mean(mid, series.size());
  return late <= early + kTailSlack * std::max(early, std::numeric_limits<double>::min());
}

ConvergenceReport speed_trend(const RunRecord& record, double c_target) {
  ConvergenceReport rep;
  bool have_profile = !record.rows.empty();
  for (const auto& row : record.rows) {
    rep.speed_error_series.push_back({row.t, std::abs(row.g_prime - c_target)});
    if (std::isnan(row.sup_profile_error)) have_profile = false;
  }
  if (have_profile) {
    for (const auto& row : record.rows) {
      rep.profile_error_series.push_back({row.t, row.sup_profile_error});
    }
  }
  if (!rep.speed_error_series.empty()) {
    rep.final_speed_error = rep.speed_error_series.back().value;
  }
  rep.final_profile_error = have_profile ? rep.profile_error_series.back().value
                                         : std::numeric_limits<double>::quiet_NaN();
  rep.monotone_tail = quartile_tail_nonincreasing(rep.speed_error_series) &&
                      (!have_profile || quartile_tail_nonincreasing(rep.profile_error_series));
  return rep;
}

bool XiAudit::cell_contains(double c_star) const {
  return flip_cell && c[*flip_cell] <= c_star && c_star <= c[*flip_cell + 1];
}

XiAudit xi_monotonicity_audit(double d, const ReactionFunction& f, double delta, int n_grid) {
  if (n_grid < 10) throw ValidationError("xi audit needs n_grid >= 10");
  XiAudit audit;
  const double lo = speed_bracket_low(d, f, delta);
  audit.c.resize(static_cast<std::size_t>(n_grid));
  audit.xi.resize(audit.c.size());
  for (int k = 0; k < n_grid; ++k) {
    audit.c[static_cast<std::size_t>(k)] = lo + (0.0 - lo) * k / (n_grid - 1);
  }
  audit.c.back() = 0.0;
  const auto errors = kernels::omp::for_each_index(audit.c.size(), [&](std::size_t k) {
    audit.xi[k] = eval_xi(audit.c[k], d, f, delta).xi_value;
  });
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k].failed) {
      throw NumericalError("xi evaluation failed at c = " + std::to_string(audit.c[k]) + ": " +
                           errors[k].message);
    }
  }

  audit.strictly_decreasing = true;
  for (std::size_t k = 0; k + 1 < audit.xi.size(); ++k) {
    if (!(audit.xi[k + 1] < audit.xi[k])) audit.strictly_decreasing = false;
    if ((audit.xi[k] > 0.0) != (audit.xi[k + 1] > 0.0)) {
      ++audit.sign_changes;
      if (!audit.flip_cell) audit.flip_cell = k;
    }
  }
  audit.endpoints_bracket = audit.xi.front() > 0.0 && audit.xi.back() < 0.0;
  if (!audit.strictly_decreasing) audit.failures.push_back("xi is not strictly decreasing");
  if (audit.sign_changes != 1) {
    audit.failures.push_back("xi changes sign " + std::to_string(audit.sign_changes) +
                             " times");
  }
  if (!audit.endpoints_bracket) audit.failures.push_back("bracket endpoints do not change sign");
  return audit;
}

RunMonitor::RunMonitor(RunAuditConfig cfg) : cfg_(std::move(cfg)) {}

void RunMonitor::operator()(const FrontFixedState& s) {
  ++audit_.states;
  const std::size_t n = s.U.size();

  for (double u : s.U) {
    if (!(u > 0.0) || u > cfg_.upper_bound + 1e-8) audit_.bounds_ok = false;
  }

  double interior_max = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < n; ++j) interior_max = std::max(interior_max, s.U[j]);
  const bool settled = s.g_prime > 0.0 && interior_max < cfg_.delta;
  if (!settled) {
    audit_.burn_in.reset();
  } else if (!audit_.burn_in) {
    audit_.burn_in = s.t;
  }

  if (s.t >= cfg_.far_field_t0) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg_.grid.node(static_cast<int>(j)) < cfg_.far_field_x0) continue;
      const double dev = std::abs(s.U[j] - cfg_.stable_zero);
      audit_.far_field_worst = std::max(audit_.far_field_worst, dev);
      if (dev > cfg_.far_field_eps) audit_.far_field_ok = false;
    }
  }

  if (!cfg_.lower.empty() && s.t >= cfg_.sandwich_from) {
    ++audit_.sandwich_states;
    const auto rep = sandwich_check(s, cfg_.grid, cfg_.lower, cfg_.upper);
    if (rep.all_passed()) {
      if (!audit_.sandwich_first_pass) audit_.sandwich_first_pass = s.t;
    } else {
      audit_.sandwich_ok = false;
      audit_.sandwich_first_pass.reset();
      audit_.sandwich_first_failing_j = *rep.first_failing + 1;
      std::ostringstream os;
      os << "sandwich fails at t = " << s.t << " for j = " << *rep.first_failing + 1
         << " by " << rep.worst_violation[*rep.first_failing];
      if (audit_.notes.size() < 16) audit_.notes.push_back(os.str());
    }
  }
}

}  // namespace fbwave
