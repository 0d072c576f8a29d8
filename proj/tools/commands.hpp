#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbwave::cli {

/// A check requested by the user did not pass (exit status 3).
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::optional<std::string> f;
  std::optional<double> d;
  std::optional<double> delta;
  double tol = 1e-10;
  std::string out = ".";
  std::string config;
};

struct SemiwaveOptions {
  CommonOptions common;
  std::string c = "auto";
  double x_max = 200.0;
};

struct SpeedOptions {
  CommonOptions common;
};

struct SweepOptions {
  CommonOptions common;
  std::string deltas;
};

struct SimulateOptions {
  CommonOptions common;
  std::optional<std::string> u0;
  std::string u0_table;  // CSV with columns y,u
  std::optional<double> g0;
  std::optional<double> L;
  std::optional<int> N;
  std::optional<double> dt;
  std::optional<double> T;
  std::optional<double> output_every;
  std::optional<bool> predictor_corrector;
  double speed_cap = 10.0;
  std::string snapshots;  // comma list of times
  bool verify = false;
  std::optional<double> speed_tol;  // relative; preset-dependent default
  double profile_tol = 0.05;
  double far_t0 = 50.0;
  double far_x0 = 20.0;
  int sandwich_profiles = 3;
};

struct SequencesOptions {
  CommonOptions common;
  double c_upper = 0.0;
  std::optional<double> c_lower;  // default c* - 1
  int M = 10;
  int n_max = 2000;
};

struct VerifyOptions {
  CommonOptions common;
  std::string run_csv;
  std::string sweep_csv;
  std::string speed_json;
  double speed_tol = 0.02;
  double profile_tol = 0.05;
  bool require_monotone_tail = true;
};

int cmd_semiwave(const SemiwaveOptions& opts);
int cmd_speed(const SpeedOptions& opts);
int cmd_sweep(const SweepOptions& opts);
int cmd_simulate(const SimulateOptions& opts);
int cmd_sequences(const SequencesOptions& opts);
int cmd_verify(const VerifyOptions& opts);

/// "a:b:s" (inclusive, tolerant to rounding) or "a,b,c".
std::vector<double> parse_delta_list(const std::string& text);

}  // namespace fbwave::cli
