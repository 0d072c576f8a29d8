#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "config_file.hpp"
#include "fbwave/error.hpp"
#include "fbwave/fbsolver.hpp"
#include "fbwave/io.hpp"
#include "fbwave/phaseplane.hpp"
#include "fbwave/reaction.hpp"
#include "fbwave/speedfinder.hpp"
#include "fbwave/verify.hpp"

namespace fs = std::filesystem;

namespace fbwave::cli {

namespace {

using io::fmt;
using nlohmann::json;

struct Resolved {
  ReactionFunction f;
  double d = 1.0;
  double delta = 2.0;
  double tol = 1e-10;
  fs::path out;
  ConfigMap file;

  RootOptions root() const {
    RootOptions r;
    r.tol_xi = tol;
    r.tol_c = 0.1 * tol;
    return r;
  }
};

std::string short_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

template <class T, class Parse>
T pick(const std::optional<T>& cli, const ConfigMap& file, const std::string& key, T fallback,
       Parse parse) {
  if (cli) return *cli;
  if (file.count(key)) return parse(file, key);
  return fallback;
}

Resolved resolve(const CommonOptions& c) {
  Resolved r;
  if (!c.config.empty()) r.file = read_config_file(c.config);
  const std::string spec = pick<std::string>(
      c.f, r.file, "reaction", "logistic", [](const ConfigMap& m, const std::string& k) {
        return m.at(k);
      });
  r.f = parse_reaction(spec);
  r.d = pick(c.d, r.file, "d", 1.0, config_number);
  r.delta = pick(c.delta, r.file, "delta", 2.0, config_number);
  r.tol = c.tol;
  r.out = c.out;
  if (!(r.d > 0.0) || !std::isfinite(r.d)) throw ValidationError("d must be positive");
  if (!(r.tol > 0.0)) throw ValidationError("tol must be positive");
  if (!(r.delta > r.f.stable_zero) || !std::isfinite(r.delta)) {
    throw ValidationError("delta must exceed " + short_num(r.f.stable_zero));
  }
  return r;
}

void write(const Resolved& r, const std::string& name, const std::string& text) {
  io::write_text(r.out / name, text);
}

json base_json(const Resolved& r) {
  return {{"reaction", r.f.label}, {"d", r.d}, {"delta", r.delta}};
}

}  // namespace

std::vector<double> parse_delta_list(const std::string& text) {
  auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw ValidationError("cannot parse delta list '" + text + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ValidationError("delta range must be start:stop:step");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double s = number(parts[2]);
    if (!(s > 0.0) || !(b >= a)) throw ValidationError("delta range needs step > 0, stop >= start");
    const auto n = static_cast<long>(std::floor((b - a) / s + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * s);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item));
  }
  if (out.empty()) throw ValidationError("delta list is empty");
  return out;
}

int cmd_semiwave(const SemiwaveOptions& opts) {
  const auto r = resolve(opts.common);
  PhaseTrajectory traj;
  SemiWaveProfile profile;
  json meta = base_json(r);
  if (opts.c == "auto") {
    const auto res = find_c_star(r.d, r.f, r.delta, r.root());
    traj = integrate_trajectory(res.c_star, r.d, r.f, r.delta);
    profile = res.profile;
    meta["speed_law_mismatch"] = std::abs(profile.slope_at_zero - res.c_star * r.delta / r.d);
  } else {
    char* end = nullptr;
    const double c = std::strtod(opts.c.c_str(), &end);
    if (opts.c.empty() || end != opts.c.c_str() + opts.c.size() || !std::isfinite(c)) {
      throw ValidationError("--c expects a number or 'auto', got '" + opts.c + "'");
    }
    traj = integrate_trajectory(c, r.d, r.f, r.delta);
    profile = reconstruct_profile(traj, opts.x_max);
  }
  meta["c"] = traj.c;
  meta["endpoint_slope"] = traj.endpoint_slope;
  meta["saddle_slope"] = traj.saddle_slope;
  meta["tail_rate"] = profile.tail_rate;
  meta["profile_x_end"] = profile.x_end();
  write(r, "trajectory.csv", io::trajectory_csv(traj));
  write(r, "profile.csv", io::profile_csv(profile));
  io::write_json(r.out / "semiwave.json", meta);
  std::cout << "c = " << fmt(traj.c) << "\nq'(0) = " << fmt(traj.endpoint_slope)
            << "\ntail_rate = " << fmt(profile.tail_rate) << "\n";
  return 0;
}

int cmd_speed(const SpeedOptions& opts) {
  const auto r = resolve(opts.common);
  const auto res = find_c_star(r.d, r.f, r.delta, r.root());
  io::write_json(r.out / "speed.json", io::speed_json(res));
  std::cout << "c* = " << fmt(res.c_star) << "\nretreat speed = " << fmt(res.retreat_speed)
            << "\n|xi(c*)| = " << fmt(res.residual) << "\n";
  return 0;
}

int cmd_sweep(const SweepOptions& opts) {
  const auto r = resolve(opts.common);
  const auto deltas = parse_delta_list(opts.deltas);
  for (double dl : deltas) {
    if (!(dl > r.f.stable_zero)) {
      throw ValidationError("delta must exceed " + short_num(r.f.stable_zero) + ", got " +
                            short_num(dl));
    }
  }
  const auto rows = delta_sweep(r.d, r.f, deltas, r.root());
  write(r, "sweep.csv", io::sweep_csv(rows));
  int failures = 0;
  for (const auto& row : rows) {
    if (row.result) {
      std::printf("%-10s %.12f\n", short_num(row.delta).c_str(), row.result->retreat_speed);
    } else {
      ++failures;
      std::fprintf(stderr, "delta = %s: %s\n", short_num(row.delta).c_str(), row.error.c_str());
    }
  }
  if (failures) throw NumericalError(std::to_string(failures) + " sweep rows failed");
  if (!sweep_is_monotone(rows)) throw VerificationFailure("retreat speed is not increasing in delta");
  return 0;
}

int cmd_simulate(const SimulateOptions& opts) {
  const auto r = resolve(opts.common);
  const auto& file = r.file;
  SolverConfig cfg;
  const double L = pick(opts.L, file, "L_y", 100.0 * std::max(1.0, std::sqrt(r.d)), config_number);
  const int N = pick(opts.N, file, "N", 2000, config_int);
  cfg.grid = Grid1D(L, N);
  cfg.dt = pick(opts.dt, file, "dt", 0.0, config_number);
  cfg.t_end = pick(opts.T, file, "T_end", 100.0, config_number);
  cfg.output_every = pick(opts.output_every, file, "output_every", 0.1, config_number);
  cfg.predictor_corrector =
      pick(opts.predictor_corrector, file, "predictor_corrector", false, config_bool);
  cfg.speed_cap = opts.speed_cap;
  if (cfg.dt < 0.0) throw ValidationError("dt must be nonnegative");
  if (!(cfg.output_every > 0.0)) throw ValidationError("output_every must be positive");
  if (!opts.snapshots.empty()) {
    std::stringstream ss(opts.snapshots);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.snapshot_times.push_back(std::stod(item));
  }
  const double g0 = pick(opts.g0, file, "g0", 0.0, config_number);
  const std::string preset = pick<std::string>(
      opts.u0, file, "u0", "exp_approach",
      [](const ConfigMap& m, const std::string& k) { return m.at(k); });

  const auto star = find_c_star(r.d, r.f, r.delta, r.root());
  const double c_target = star.retreat_speed;

  InitialData init;
  if (preset == "semiwave") {
    init = initial_semiwave(cfg.grid, star.profile, g0);
  } else if (preset == "exp_approach") {
    init = initial_exp_approach(cfg.grid, r.delta, r.f.stable_zero, g0);
  } else if (preset == "constant_delta") {
    init = initial_constant(cfg.grid, r.delta, g0);
  } else if (preset == "custom_table") {
    if (opts.u0_table.empty()) throw ValidationError("u0 = custom_table needs --u0-table FILE");
    const auto table = io::read_csv(opts.u0_table);
    std::vector<double> y, u;
    for (const auto& row : table.rows) {
      y.push_back(row[table.column("y")]);
      u.push_back(row[table.column("u")]);
    }
    init = initial_table(cfg.grid, r.delta, y, u, g0);
  } else {
    throw ValidationError("unknown u0 preset '" + preset +
                          "' (expected semiwave, exp_approach, constant_delta, custom_table)");
  }

  std::optional<RunMonitor> monitor;
  if (opts.verify) {
    RunAuditConfig ac;
    ac.d = r.d;
    ac.delta = r.delta;
    ac.stable_zero = r.f.stable_zero;
    ac.upper_bound = init.sup_norm + 1.0;
    ac.grid = cfg.grid;
    ac.far_field_t0 = std::min(opts.far_t0, 0.5 * cfg.t_end);
    ac.far_field_x0 = opts.far_x0;
    ac.sandwich_from = 0.8 * cfg.t_end;
    if (opts.sandwich_profiles > 0) {
      SequenceOptions so;
      so.n_max = opts.sandwich_profiles;
      so.keep_profiles = static_cast<std::size_t>(opts.sandwich_profiles) + 1;
      so.root = r.root();
      const auto seq = iterate_sequences(r.d, r.f, r.delta, 0.0, star.c_star - 1.0, 10, so);
      ac.lower.assign(seq.lower.profiles.begin() + 1, seq.lower.profiles.end());
      ac.upper.assign(seq.upper.profiles.begin() + 1, seq.upper.profiles.end());
    }
    monitor.emplace(std::move(ac));
  }
  OutputObserver observer;
  if (monitor) observer = [&](const FrontFixedState& s) { (*monitor)(s); };

  const auto rec = run(init, r.d, r.delta, r.f, cfg, &star.profile, observer);

  write(r, "run.csv", io::run_record_csv(rec));
  for (const auto& snap : rec.snapshots) {
    write(r, "snapshot_t" + short_num(snap.t) + ".csv", io::snapshot_csv(cfg.grid, snap));
  }
  json meta = base_json(r);
  for (const auto& [k, v] : rec.config) meta["config." + k] = v;
  meta["termination"] = rec.termination;
  meta["diagnostic"] = rec.diagnostic;
  meta["dt"] = rec.dt;
  meta["upper_bound"] = rec.upper_bound;
  meta["c_target"] = c_target;
  meta["warnings"] = static_cast<int>(rec.warnings.size());
  io::write_json(r.out / "run.json", meta);
  for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";

  if (!rec.completed()) {
    throw NumericalError(rec.termination + ": " + rec.diagnostic);
  }
  const auto& last = rec.rows.back();
  std::cout << "t = " << fmt(last.t) << "\ng = " << fmt(last.g) << "\ng' = " << fmt(last.g_prime)
            << "\nc(delta) = " << fmt(c_target) << "\n";
  if (!opts.verify) return 0;

  const auto trend = speed_trend(rec, c_target);
  const auto& audit = monitor->audit();
  double worst_rel = 0.0;
  for (const auto& p : trend.speed_error_series) worst_rel = std::max(worst_rel, p.value / c_target);
  const double final_rel = trend.final_speed_error / c_target;

  json rep = base_json(r);
  rep["u0"] = preset;
  rep["c_target"] = c_target;
  rep["final_relative_speed_error"] = final_rel;
  rep["max_relative_speed_error"] = worst_rel;
  rep["final_profile_error"] = trend.final_profile_error;
  rep["tail_correction"] = profile_error(rec.final_state, cfg.grid, star.profile).tail_correction;
  rep["monotone_tail"] = trend.monotone_tail;
  rep["bounds_ok"] = audit.bounds_ok;
  rep["burn_in"] = audit.burn_in ? json(*audit.burn_in) : json(nullptr);
  rep["far_field_ok"] = audit.far_field_ok;
  rep["far_field_worst"] = audit.far_field_worst;
  rep["sandwich_ok"] = audit.sandwich_ok;
  rep["sandwich_first_pass"] =
      audit.sandwich_first_pass ? json(*audit.sandwich_first_pass) : json(nullptr);

  std::vector<std::string> failures;
  if (preset == "semiwave") {
    const double tol = opts.speed_tol.value_or(0.01);
    rep["speed_tol"] = tol;
    if (!(worst_rel <= tol)) failures.push_back("speed error exceeds " + short_num(tol) + " relative");
  } else {
    const double tol = opts.speed_tol.value_or(0.02);
    rep["speed_tol"] = tol;
    if (!(final_rel <= tol)) failures.push_back("final speed error exceeds " + short_num(tol) + " relative");
    if (!(trend.final_profile_error <= opts.profile_tol)) failures.push_back("final profile error too large");
    if (!trend.monotone_tail) failures.push_back("error series grow over the last quartile");
    if (!audit.burn_in) failures.push_back("g' > 0 and max U < delta do not hold at the end");
    if (!audit.far_field_ok) failures.push_back("far-field band violated");
    if (!audit.sandwich_ok) failures.push_back("sandwich check failed");
  }
  if (!audit.bounds_ok) failures.push_back("a priori bounds violated");
  rep["passed"] = failures.empty();
  rep["failures"] = failures;
  io::write_json(r.out / "verify_report.json", rep);
  write(r, "convergence.csv", io::convergence_csv(trend));
  std::cout << "relative speed error (final) = " << fmt(final_rel)
            << "\nprofile error (final) = " << fmt(trend.final_profile_error) << "\n";
  if (!failures.empty()) throw VerificationFailure(failures.front());
  std::cout << "verify: pass\n";
  return 0;
}

int cmd_sequences(const SequencesOptions& opts) {
  const auto r = resolve(opts.common);
  SequenceOptions so;
  so.n_max = opts.n_max;
  so.root = r.root();
  double c_lower = 0.0;
  if (opts.c_lower) {
    c_lower = *opts.c_lower;
  } else {
    c_lower = find_c_star(r.d, r.f, r.delta, r.root()).c_star - 1.0;
  }
  const auto pair = iterate_sequences(r.d, r.f, r.delta, opts.c_upper, c_lower, opts.M, so);
  write(r, "sequences.csv", io::sequences_csv(pair));
  json meta = base_json(r);
  meta["c_star"] = pair.c_star;
  meta["M"] = pair.M;
  meta["upper_steps"] = static_cast<int>(pair.upper.c.size()) - 1;
  meta["lower_steps"] = static_cast<int>(pair.lower.c.size()) - 1;
  meta["upper_final_gap"] = pair.upper.gap(pair.upper.c.size() - 1);
  meta["lower_final_gap"] = pair.lower.gap(pair.lower.c.size() - 1);
  const auto up = pair.upper.first_within(1e-2);
  const auto lo = pair.lower.first_within(1e-2);
  meta["upper_first_within_1e-2"] = up ? json(*up) : json(nullptr);
  meta["lower_first_within_1e-2"] = lo ? json(*lo) : json(nullptr);
  io::write_json(r.out / "sequences.json", meta);
  std::cout << "c* = " << fmt(pair.c_star) << "\nM = " << pair.M
            << "\nupper final gap = " << fmt(meta["upper_final_gap"].get<double>())
            << "\nlower final gap = " << fmt(meta["lower_final_gap"].get<double>()) << "\n";
  return 0;
}

int cmd_verify(const VerifyOptions& opts) {
  if (opts.run_csv.empty() && opts.sweep_csv.empty() && opts.speed_json.empty()) {
    throw ValidationError("verify needs --run, --sweep or --speed-json");
  }
  const auto r = resolve(opts.common);
  json rep = base_json(r);
  std::vector<std::string> failures;

  if (!opts.run_csv.empty()) {
    const auto star = find_c_star(r.d, r.f, r.delta, r.root());
    RunRecord rec;
    rec.rows = io::run_rows_from_csv(io::read_csv(opts.run_csv));
    if (rec.rows.empty()) throw ValidationError("run record has no rows");
    const auto trend = speed_trend(rec, star.retreat_speed);
    const double rel = trend.final_speed_error / star.retreat_speed;
    rep["run.final_relative_speed_error"] = rel;
    rep["run.final_profile_error"] = trend.final_profile_error;
    rep["run.monotone_tail"] = trend.monotone_tail;
    if (!(rel <= opts.speed_tol)) failures.push_back("run: final speed error too large");
    if (!std::isnan(trend.final_profile_error) && !(trend.final_profile_error <= opts.profile_tol)) {
      failures.push_back("run: final profile error too large");
    }
    if (opts.require_monotone_tail && !trend.monotone_tail) {
      failures.push_back("run: error series grow over the last quartile");
    }
    for (const auto& row : rec.rows) {
      if (!(row.min_U > 0.0)) {
        failures.push_back("run: nonpositive density recorded");
        break;
      }
    }
    write(r, "convergence.csv", io::convergence_csv(trend));
  }

  if (!opts.sweep_csv.empty()) {
    const auto table = io::read_csv(opts.sweep_csv);
    const auto id = table.column("delta");
    const auto is = table.column("retreat_speed");
    const auto ir = table.column("residual");
    std::vector<SweepRow> rows;
    for (const auto& row : table.rows) {
      SweepRow s;
      s.delta = row[id];
      if (std::isfinite(row[is])) {
        SpeedResult res;
        res.retreat_speed = row[is];
        res.residual = row[ir];
        s.result = res;
        if (!(res.residual <= r.tol)) failures.push_back("sweep: residual above tol");
      } else {
        failures.push_back("sweep: row at delta " + short_num(s.delta) + " failed");
      }
      rows.push_back(std::move(s));
    }
    const bool mono = sweep_is_monotone(rows);
    rep["sweep.rows"] = static_cast<int>(rows.size());
    rep["sweep.monotone"] = mono;
    if (!mono) failures.push_back("sweep: retreat speed not increasing in delta");
  }

  if (!opts.speed_json.empty()) {
    const auto j = io::read_json(opts.speed_json);
    try {
      const auto f = parse_reaction(j.at("reaction").get<std::string>());
      const double d = j.at("d").get<double>();
      const double delta = j.at("delta").get<double>();
      const auto res = find_c_star(d, f, delta, r.root());
      const double diff = std::abs(res.c_star - j.at("c_star").get<double>());
      rep["speed.recomputed_c_star"] = res.c_star;
      rep["speed.difference"] = diff;
      if (!(diff <= 1e-8)) failures.push_back("speed: stored c* does not reproduce");
    } catch (const json::exception& e) {
      throw ValidationError(std::string("speed JSON is missing fields: ") + e.what());
    }
  }

  rep["passed"] = failures.empty();
  rep["failures"] = failures;
  io::write_json(r.out / "verify_report.json", rep);
  for (const auto& f : failures) std::cerr << f << "\n";
  if (!failures.empty()) throw VerificationFailure(failures.front());
  std::cout << "verify: pass\n";
  return 0;
}

}  // namespace fbwave::cli
