#include <doctest.h>

#include <cmath>

#include "fbwave/error.hpp"
#include "fbwave/fbsolver.hpp"
#include "fbwave/speedfinder.hpp"
#include "mms.hpp"
#include "oracle_values.hpp"

using namespace fbwave;

namespace {

const SpeedResult& star() {
  static const SpeedResult res = find_c_star(1.0, make_logistic(1.0), 2.0);
  return res;
}

FrontFixedState sampled(const Grid1D& grid, const std::function<double(double)>& u) {
  FrontFixedState s;
  s.U.resize(grid.nodes());
  for (std::size_t j = 0; j < s.U.size(); ++j) s.U[j] = u(grid.node(static_cast<int>(j)));
  return s;
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid1D g(100.0, 2000);
  CHECK(g.h() == doctest::Approx(0.05));
  CHECK(g.nodes() == 2001);
  CHECK(g.node(2000) == doctest::Approx(100.0));
  CHECK_THROWS_AS(Grid1D(0.0, 10), ValidationError);
  CHECK_THROWS_AS(Grid1D(1.0, 1), ValidationError);
}

TEST_CASE("front speed from the boundary derivative") {
  const Grid1D g(10.0, 1000);
  CHECK(front_speed_from_state(sampled(g, [](double) { return 2.0; }), g.h(), 1.0, 2.0) == 0.0);
  const auto e = sampled(g, [](double y) { return 2.0 * std::exp(-y); });
  CHECK(std::abs(front_speed_from_state(e, g.h(), 1.0, 2.0) - 1.0) <= 1e-4);
}

TEST_CASE("front speed of the sampled semi-wave converges at second order") {
  const double c = star().retreat_speed;
  double prev = 0.0;
  for (int cells : {1000, 2000, 4000}) {
    const Grid1D g(100.0, cells);
    const auto s = sampled(g, [](double y) { return star().profile(y); });
    const double err = std::abs(front_speed_from_state(s, g.h(), 1.0, 2.0) - c);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("constant state with zero reaction is a fixed point") {
  ReactionFunction zero;
  zero.eval = [](double) { return 0.0; };
  zero.deriv = [](double) { return 0.0; };
  zero.stable_zero = 1.0;
  StepContext ctx;
  ctx.reaction = &zero;
  ctx.grid = Grid1D(10.0, 200);
  ctx.upper_bound = 3.0;
  auto s = sampled(ctx.grid, [](double) { return 2.0; });
  for (int k = 0; k < 10; ++k) s = step(s, ctx, 1e-3);
  for (double u : s.U) CHECK(u == 2.0);
  CHECK(s.g_prime == 0.0);
  CHECK(s.t == doctest::Approx(1e-2));
}

TEST_CASE("step reports bound violations") {
  const auto f = make_logistic(1.0);
  StepContext ctx;
  ctx.reaction = &f;
  ctx.grid = Grid1D(10.0, 200);
  ctx.upper_bound = 1.5;  // below delta
  auto s = sampled(ctx.grid, [](double y) { return 1.0 + std::exp(-y); });
  CHECK_THROWS_AS(step(s, ctx, 1e-3), BoundViolation);

  ctx.upper_bound = 3.0;
  ctx.speed_cap = 0.1;
  s.g_prime = 0.0;
  CHECK_THROWS_AS(step(s, ctx, 1e-3), BoundViolation);
  CHECK_THROWS_AS(step(s, ctx, 0.0), ValidationError);
}

TEST_CASE("initial data must meet the front value") {
  const Grid1D g(100.0, 400);
  CHECK_THROWS_AS(make_initial_data(g, 2.0, 0.0, [](double) { return 1.5; }), ValidationError);
  CHECK_THROWS_AS(make_initial_data(g, 2.0, 0.0, [](double y) { return 2.0 - y; }),
                  ValidationError);
  const auto t = initial_table(g, 2.0, {0.0, 1.0, 5.0}, {2.0, 1.2, 1.0});
  CHECK(t.u0[0] == 2.0);
  CHECK(t.u0.back() == 1.0);
  CHECK(t.sup_norm == 2.0);
  CHECK(t.inf_value == 1.0);
  CHECK_THROWS_AS(initial_table(g, 2.0, {0.0, 1.0}, {1.9, 1.0}), ValidationError);
  CHECK_THROWS_AS(initial_table(g, 2.0, {0.5, 1.0}, {2.0, 1.0}), ValidationError);
}

TEST_CASE("zero horizon gives one row") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.t_end = 0.0;
  const auto init = initial_exp_approach(cfg.grid, 2.0, 1.0, 3.5);
  const auto rec = run(init, 1.0, 2.0, f, cfg);
  REQUIRE(rec.rows.size() == 1);
  CHECK(rec.rows[0].g == 3.5);
  CHECK(rec.rows[0].t == 0.0);
  CHECK(rec.completed());
  CHECK(std::isnan(rec.rows[0].sup_profile_error));
}

TEST_CASE("run validates its configuration") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.grid = Grid1D(100.0, 100);
  const auto init = initial_exp_approach(cfg.grid, 2.0);
  CHECK_THROWS_AS(run(init, 1.0, 2.0, f, cfg), ValidationError);
  SolverConfig ok;
  CHECK_THROWS_AS(run(init, 1.0, 2.0, f, ok), ValidationError);  // grid mismatch
  CHECK_THROWS_AS(run(initial_exp_approach(ok.grid, 0.9), 1.0, 0.9, f, ok), ValidationError);
}

TEST_CASE("semi-wave data travels at c(delta)") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.t_end = 2.0;
  cfg.output_every = 0.25;
  const auto init = initial_semiwave(cfg.grid, star().profile);
  const auto rec = run(init, 1.0, 2.0, f, cfg, &star().profile);
  REQUIRE(rec.completed());
  REQUIRE(rec.rows.size() == 9);
  const double c = star().retreat_speed;
  for (const auto& row : rec.rows) {
    CHECK(std::abs(row.g_prime - c) <= 0.01 * c);
    CHECK(row.sup_profile_error < 0.01);
  }
  CHECK(rec.rows.back().g == doctest::Approx(2.0 * c).epsilon(0.01));
  for (std::size_t i = 1; i < rec.rows.size(); ++i) CHECK(rec.rows[i].t > rec.rows[i - 1].t);
}

TEST_CASE("predictor-corrector coupling agrees with the frozen coupling") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.t_end = 2.0;
  cfg.output_every = 1.0;
  const auto init = initial_exp_approach(cfg.grid, 2.0);
  const auto a = run(init, 1.0, 2.0, f, cfg);
  cfg.predictor_corrector = true;
  const auto b = run(init, 1.0, 2.0, f, cfg);
  REQUIRE(b.completed());
  CHECK(b.rows.back().g_prime == doctest::Approx(a.rows.back().g_prime).epsilon(1e-3));
  CHECK(b.config.at("predictor_corrector") == "true");
}

TEST_CASE("constant data starts at rest and begins to retreat") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.t_end = 3.0;
  cfg.output_every = 0.5;
  const auto rec = run(initial_constant(cfg.grid, 2.0), 1.0, 2.0, f, cfg);
  REQUIRE(rec.completed());
  CHECK(rec.rows.front().g_prime == 0.0);
  CHECK(rec.rows.back().g_prime > 0.0);
  CHECK(rec.rows.back().max_U < 2.0);
}

TEST_CASE("ordered initial data stay ordered") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.grid = Grid1D(50.0, 1000);
  cfg.t_end = 4.0;
  cfg.output_every = 1.0;
  cfg.snapshot_times = {1.0, 2.0, 3.0, 4.0};
  const auto lo = run(initial_exp_approach(cfg.grid, 2.0), 1.0, 2.0, f, cfg);
  const auto hi = run(initial_constant(cfg.grid, 2.0), 1.0, 2.0, f, cfg);
  REQUIRE(lo.snapshots.size() == 4);
  REQUIRE(hi.snapshots.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < lo.snapshots[k].U.size(); ++j) {
      CHECK(lo.snapshots[k].U[j] <= hi.snapshots[k].U[j] + 1e-12);
    }
  }
}

TEST_CASE("short domains raise the far-field warning") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.grid = Grid1D(1.0, 200);
  cfg.t_end = 0.5;
  cfg.output_every = 0.5;
  const auto rec = run(initial_exp_approach(cfg.grid, 2.0), 1.0, 2.0, f, cfg);
  REQUIRE(rec.warnings.size() == 1);
  CHECK(rec.warnings[0].find("far-field") != std::string::npos);
}

TEST_CASE("speed cap violations end the run with a diagnostic") {
  const auto f = make_logistic(1.0);
  SolverConfig cfg;
  cfg.t_end = 1.0;
  cfg.speed_cap = 0.6;
  const auto rec = run(initial_exp_approach(cfg.grid, 2.0), 1.0, 2.0, f, cfg);
  CHECK(rec.termination == "bound_violation");
  CHECK(rec.diagnostic.find("exceeds cap") != std::string::npos);
  for (const auto& row : rec.rows) CHECK(std::abs(row.g_prime) <= 0.6);
}

TEST_CASE("manufactured solution converges") {
  mms::Problem p;
  const double e1 = mms::error(p, 200, p.t_end / 1000);
  const double e2 = mms::error(p, 400, p.t_end / 4000);
  CHECK(std::log2(e1 / e2) > 1.9);
  const double t1 = mms::error(p, 1000, 0.02);
  const double t2 = mms::error(p, 1000, 0.01);
  CHECK(std::log2(t1 / t2) > 0.9);
}
