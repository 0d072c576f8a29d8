#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbwave/fbsolver.hpp"
#include "fbwave/phaseplane.hpp"
#include "fbwave/reaction.hpp"

namespace fbwave {

struct ProfileError {
  double grid_sup = 0.0;  // max_j |U_j - q*(y_j)|
  // |U(L) - xi| + |q*(L) - xi|: what the truncated grid cannot see.
  double tail_correction = 0.0;
};

ProfileError profile_error(const FrontFixedState& state, const Grid1D& grid,
                           const SemiWaveProfile& qstar);

struct SandwichReport {
  std::vector<bool> passed;             // one entry per profile index j (1-based in messages)
  std::vector<double> worst_violation;  // largest amount outside the band, 0 when inside
  std::optional<std::size_t> first_failing;
  double tol = 0.0;

  bool all_passed() const { return !first_failing.has_value(); }
};

/// Nodewise lower[j] - tol <= U <= upper[j] + tol. tol < 0 selects 2h.
SandwichReport sandwich_check(const FrontFixedState& state, const Grid1D& grid,
                              const std::vector<SemiWaveProfile>& lower,
                              const std::vector<SemiWaveProfile>& upper, double tol = -1.0);

struct SeriesPoint {
  double t = 0.0;
  double value = 0.0;
};

struct ConvergenceReport {
  std::vector<SeriesPoint> speed_error_series;
  std::vector<SeriesPoint> profile_error_series;  // empty when the record has no reference
  double final_speed_error = 0.0;
  double final_profile_error = 0.0;
  bool monotone_tail = false;
};

/// Relative slack used when comparing quartile means in monotone_tail.
inline constexpr double kTailSlack = 1e-9;

/// True when the mean over the second half of the last quartile does not
/// exceed the mean over its first half (up to kTailSlack relative).
bool quartile_tail_nonincreasing(const std::vector<SeriesPoint>& series);

/// c_target is the retreat speed c(delta) > 0.
ConvergenceReport speed_trend(const RunRecord& record, double c_target);

struct XiAudit {
  std::vector<double> c;
  std::vector<double> xi;
  bool strictly_decreasing = false;
  int sign_changes = 0;
  std::optional<std::size_t> flip_cell;  // index k with xi[k] > 0 >= xi[k+1]
  bool endpoints_bracket = false;        // xi(c_0) > 0 > xi(c_n)
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  bool cell_contains(double c_star) const;
};

/// Evaluates xi on n_grid uniform points of [d P_0(delta), 0].
XiAudit xi_monotonicity_audit(double d, const ReactionFunction& f, double delta, int n_grid);

/// Late-time properties of one run, gathered as an OutputObserver.
struct RunAuditConfig {
  double d = 1.0;
  double delta = 2.0;
  double stable_zero = 1.0;
  double upper_bound = 0.0;  // C1
  Grid1D grid;
  double far_field_t0 = 50.0;  // T0
  double far_field_x0 = 20.0;  // X0
  double far_field_eps = 0.05;
  double sandwich_from = 0.0;  // check the sandwich for t >= this time
  std::vector<SemiWaveProfile> lower;
  std::vector<SemiWaveProfile> upper;
};

struct RunAudit {
  std::size_t states = 0;
  bool bounds_ok = true;
  // Earliest recorded time after which every recorded state had g' > 0 and
  // interior max U < delta; unset if the last state fails.
  std::optional<double> burn_in;
  bool far_field_ok = true;
  double far_field_worst = 0.0;  // max |U - xi| for t >= T0, y >= X0
  std::size_t sandwich_states = 0;
  bool sandwich_ok = true;
  std::optional<double> sandwich_first_pass;  // earliest t after which all checks passed
  std::optional<std::size_t> sandwich_first_failing_j;
  std::vector<std::string> notes;
};

class RunMonitor {
 public:
  explicit RunMonitor(RunAuditConfig cfg);
  void operator()(const FrontFixedState& state);
  const RunAudit& audit() const { return audit_; }

 private:
  RunAuditConfig cfg_;
  RunAudit audit_;
};

}  // namespace fbwave
