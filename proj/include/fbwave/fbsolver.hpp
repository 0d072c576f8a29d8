#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbwave/kernels.hpp"
#include "fbwave/phaseplane.hpp"
#include "fbwave/reaction.hpp"

namespace fbwave {

/// Uniform nodes y_j = j h, j = 0..N, on [0, length].
struct Grid1D {
  double length = 100.0;
  int cells = 2000;

  Grid1D() = default;
  Grid1D(double length, int cells);

  double h() const { return length / cells; }
  double node(int j) const { return j * h(); }
  std::size_t nodes() const { return static_cast<std::size_t>(cells) + 1; }
};

/// Solution in the moving frame y = x - g(t).
struct FrontFixedState {
  double t = 0.0;
  std::vector<double> U;  // nodes 0..N, U[0] == delta
  double g = 0.0;
  double g_prime = 0.0;
};

/// Initial density u0(y) = u(0, y + g0) sampled on the grid.
struct InitialData {
  double g0 = 0.0;
  std::vector<double> u0;
  double sup_norm = 0.0;
  double inf_value = 0.0;
  std::string preset;
};

/// Samples u0 on the grid and checks discrete membership of the admissible
/// class: u0(0) = delta, inf > 0, finite first and second differences.
InitialData make_initial_data(const Grid1D& grid, double delta, double g0,
                              const std::function<double(double)>& u0, std::string preset = {});

InitialData initial_semiwave(const Grid1D& grid, const SemiWaveProfile& profile, double g0 = 0.0);
/// u0(y) = xi + (delta - xi) exp(-y).
InitialData initial_exp_approach(const Grid1D& grid, double delta, double stable_zero = 1.0,
                                 double g0 = 0.0);
InitialData initial_constant(const Grid1D& grid, double delta, double g0 = 0.0);
/// Piecewise-linear interpolation of (y, u) pairs, held constant past the last y.
InitialData initial_table(const Grid1D& grid, double delta, const std::vector<double>& y,
                          const std::vector<double>& u, double g0 = 0.0);

/// g' = -(d/delta) U_y(0) with the one-sided stencil (-3U0 + 4U1 - U2)/(2h).
double front_speed_from_state(const FrontFixedState& state, double h, double d, double delta);

struct SolverConfig {
  Grid1D grid;
  double dt = 0.0;  // 0: 0.25 h^2 / d, capped by the advection limit
  double t_end = 100.0;
  double output_every = 0.1;
  bool predictor_corrector = false;
  double speed_cap = 10.0;  // C2
  double far_field_warn = 1e-3;
  std::vector<double> snapshot_times;
};

/// Fixed physical parameters of one simulation.
struct StepContext {
  double d = 1.0;
  double delta = 2.0;
  const ReactionFunction* reaction = nullptr;
  Grid1D grid;
  double upper_bound = 0.0;  // C1
  double speed_cap = 10.0;   // C2
  const kernels::SourceFn* source = nullptr;
  bool predictor_corrector = false;
};

/// Thrown by step() when a bound check or the linear solve fails.
class BoundViolation : public std::runtime_error {
 public:
  explicit BoundViolation(const std::string& what) : std::runtime_error(what) {}
};

/// One IMEX step: Crank-Nicolson diffusion, explicit upwind-biased advection
/// with g' frozen at the start of the step, explicit reaction. Node 0 is
/// pinned to delta and a Neumann mirror closes y = L.
FrontFixedState step(const FrontFixedState& state, const StepContext& ctx, double dt);

/// Largest stable default step for a configuration.
double default_time_step(const SolverConfig& cfg, double d);

struct RunRow {
  double t = 0.0;
  double g = 0.0;
  double g_prime = 0.0;
  double sup_profile_error = 0.0;  // NaN without a reference profile
  double min_U = 0.0;              // over nodes 1..N
  double max_U = 0.0;              // over nodes 1..N
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> U;
};

struct RunRecord {
  std::vector<RunRow> rows;
  std::map<std::string, std::string> config;
  std::string termination = "completed";  // completed | bound_violation | instability
  std::string diagnostic;
  std::vector<std::string> warnings;
  std::vector<Snapshot> snapshots;
  FrontFixedState final_state;
  double dt = 0.0;
  double upper_bound = 0.0;

  bool completed() const { return termination == "completed"; }
};

/// Called with every recorded state (after its row is appended).
using OutputObserver = std::function<void(const FrontFixedState&)>;

RunRecord run(const InitialData& initial, double d, double delta, const ReactionFunction& f,
              const SolverConfig& cfg, const SemiWaveProfile* reference = nullptr,
              const OutputObserver& observer = {});

}  // namespace fbwave
