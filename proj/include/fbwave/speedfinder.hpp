#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbwave/phaseplane.hpp"
#include "fbwave/reaction.hpp"

namespace fbwave {

struct XiEvaluation {
  double c = 0.0;
  double xi_value = 0.0;        // q_c'(0) - (delta/d) c
  double endpoint_slope = 0.0;  // q_c'(0)
};

/// Speed functional q_c'(0) - (delta/d) c; strictly decreasing in c.
XiEvaluation eval_xi(double c, double d, const ReactionFunction& f, double delta,
                     const IntegrationOptions& opts = {});

/// d * P_0(delta) = -sqrt(2 d * integral_delta^xi f), the left end of the bracket.
double speed_bracket_low(double d, const ReactionFunction& f, double delta);

struct RootOptions {
  double tol_xi = 1e-10;
  double tol_c = 1e-11;
  int max_iterations = 200;
  double profile_x_max = 200.0;
};

struct SpeedResult {
  double d = 1.0;
  double delta = 0.0;
  double c_star = 0.0;
  double retreat_speed = 0.0;  // -c_star
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  double residual = 0.0;  // |xi(c_star)|
  int iterations = 0;
  std::string reaction;
  SemiWaveProfile profile;  // q* at c_star
};

/// Smallest admissible delta - xi for speed computations.
inline constexpr double kMinDeltaGap = 1e-6;

/// Unique root of xi on (d P_0(delta), 0) by safeguarded secant.
SpeedResult find_c_star(double d, const ReactionFunction& f, double delta,
                        const RootOptions& opts = {});

struct SweepRow {
  double delta = 0.0;
  std::optional<SpeedResult> result;
  std::string error;
};

/// Independent find_c_star per delta, fanned out across threads; rows come
/// back in input order. Failing rows carry their message and do not stop the
/// sweep. Throws ValidationError if deltas are not strictly increasing.
std::vector<SweepRow> delta_sweep(double d, const ReactionFunction& f,
                                  const std::vector<double>& deltas, const RootOptions& opts = {});

/// True if every successful row has a larger retreat speed than the previous one.
bool sweep_is_monotone(const std::vector<SweepRow>& rows);

struct PerturbedSpeeds {
  double epsilon = 0.0;
  SpeedResult lower;  // with the reaction below f
  SpeedResult upper;  // with the reaction above f
};

PerturbedSpeeds perturbed_speeds(double d, const ReactionFunction& f, double delta, double epsilon,
                                 const RootOptions& opts = {});

enum class SequenceDirection { upper, lower };

/// One of the monotone speed sequences
///   c_{n+1} = (d/delta) q_{c_n}'(0) +/- 1/(M + n).
struct SequenceRun {
  SequenceDirection direction = SequenceDirection::upper;
  int M = 0;
  std::vector<double> c;         // c_0, c_1, ...
  std::vector<double> slope;     // q_{c_n}'(0)
  std::vector<double> sup_dist;  // sup over the shared grid of |q_{c_n} - q*|
  std::optional<std::size_t> converged_at;  // step-size stop fired at this index
  std::vector<SemiWaveProfile> profiles;    // q_{c_n} for the first few n

  double gap(std::size_t n) const;  // |c_n - c*|
  double c_star = 0.0;
  /// First n with gap(n) <= target.
  std::optional<std::size_t> first_within(double target) const;
};

struct SequenceOptions {
  int n_max = 2000;
  int M_max = 100000;
  std::size_t keep_profiles = 4;
  double grid_end = 40.0;  // shared grid [0, grid_end] for sup distances
  double grid_step = 0.05;
  RootOptions root;
};

struct SequencePair {
  double c_star = 0.0;
  int M = 0;  // after escalation
  SequenceRun upper;
  SequenceRun lower;
  SemiWaveProfile q_star;
};

SequencePair iterate_sequences(double d, const ReactionFunction& f, double delta, double c_upper_0,
                               double c_lower_0, int M, const SequenceOptions& opts = {});

}  // namespace fbwave
