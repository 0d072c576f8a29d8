#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "fbwave/error.hpp"

using namespace fbwave::cli;

namespace {

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--f", c.f, "reaction: logistic, logistic:r=R or custom:c0,c1,...");
  sub->add_option("--d", c.d, "diffusivity (default 1)");
  sub->add_option("--delta", c.delta, "preferred density at the front (default 2)");
  sub->add_option("--tol", c.tol, "root-finding tolerance on |xi(c)|")->capture_default_str();
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--config", c.config, "key = value file (CLI flags take precedence)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retreating semi-waves of a monostable free-boundary problem", "fbwave"};
  app.require_subcommand(1);

  SemiwaveOptions semi;
  auto* s_semi = app.add_subcommand("semiwave", "phase-plane trajectory and semi-wave profile");
  add_common(s_semi, semi.common);
  s_semi->add_option("--c", semi.c, "wave speed, or 'auto' for c*")->capture_default_str();
  s_semi->add_option("--x-max", semi.x_max, "profile reconstruction length")->capture_default_str();

  SpeedOptions speed;
  auto* s_speed = app.add_subcommand("speed", "compute c* for one delta");
  add_common(s_speed, speed.common);

  SweepOptions sweep;
  auto* s_sweep = app.add_subcommand("sweep", "retreat speed over a list of delta values");
  add_common(s_sweep, sweep.common);
  s_sweep->add_option("--deltas", sweep.deltas, "start:stop:step or a,b,c")->required();

  SimulateOptions sim;
  auto* s_sim = app.add_subcommand("simulate", "integrate the front-fixed PDE");
  add_common(s_sim, sim.common);
  s_sim->add_option("--u0", sim.u0, "semiwave | exp_approach | constant_delta | custom_table");
  s_sim->add_option("--u0-table", sim.u0_table, "CSV with columns y,u for custom_table");
  s_sim->add_option("--g0", sim.g0, "initial front position");
  s_sim->add_option("--L", sim.L, "truncation length L_y");
  s_sim->add_option("--N", sim.N, "number of cells");
  s_sim->add_option("--dt", sim.dt, "time step (0 = automatic)");
  s_sim->add_option("--T", sim.T, "final time");
  s_sim->add_option("--output-every", sim.output_every, "output cadence");
  s_sim->add_flag("--predictor-corrector,!--no-predictor-corrector", sim.predictor_corrector,
                  "recompute g' at the end of the step and average");
  s_sim->add_option("--speed-cap", sim.speed_cap, "bound on |g'|")->capture_default_str();
  s_sim->add_option("--snapshots", sim.snapshots, "comma list of snapshot times");
  s_sim->add_flag("--verify", sim.verify, "write a convergence report and check it");
  s_sim->add_option("--speed-tol", sim.speed_tol, "relative speed tolerance for --verify");
  s_sim->add_option("--profile-tol", sim.profile_tol)->capture_default_str();
  s_sim->add_option("--far-t0", sim.far_t0, "far-field band checked after this time")
      ->capture_default_str();
  s_sim->add_option("--far-x0", sim.far_x0, "far-field band checked beyond this y")
      ->capture_default_str();
  s_sim->add_option("--sandwich", sim.sandwich_profiles, "number of sequence profiles to check")
      ->capture_default_str();

  SequencesOptions seq;
  auto* s_seq = app.add_subcommand("sequences", "monotone speed sequences converging to c*");
  add_common(s_seq, seq.common);
  s_seq->add_option("--c-upper", seq.c_upper, "upper start")->capture_default_str();
  s_seq->add_option("--c-lower", seq.c_lower, "lower start (default c* - 1)");
  s_seq->add_option("--M", seq.M, "initial offset M")->capture_default_str();
  s_seq->add_option("--n-max", seq.n_max, "maximum number of steps")->capture_default_str();

  VerifyOptions ver;
  auto* s_ver = app.add_subcommand("verify", "check written run, sweep or speed outputs");
  add_common(s_ver, ver.common);
  s_ver->add_option("--run", ver.run_csv, "run record CSV");
  s_ver->add_option("--sweep", ver.sweep_csv, "sweep CSV");
  s_ver->add_option("--speed-json", ver.speed_json, "speed JSON");
  s_ver->add_option("--speed-tol", ver.speed_tol)->capture_default_str();
  s_ver->add_option("--profile-tol", ver.profile_tol)->capture_default_str();
  s_ver->add_flag("!--no-monotone-tail", ver.require_monotone_tail);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*s_semi) return cmd_semiwave(semi);
    if (*s_speed) return cmd_speed(speed);
    if (*s_sweep) return cmd_sweep(sweep);
    if (*s_sim) return cmd_simulate(sim);
    if (*s_seq) return cmd_sequences(seq);
    if (*s_ver) return cmd_verify(ver);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 3;
  } catch (const fbwave::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
