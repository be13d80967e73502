#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pcsrk/errors.hpp"
#include "pcsrk/model.hpp"
#include "pcsrk/stepper.hpp"
#include "pcsrk/tableau.hpp"

using namespace pcsrk;

namespace {

Vec lv_state() {
  Vec y(3);
  y << 1.0, 1.9, 0.5;
  return y;
}

StepConfig base_config(double h) {
  StepConfig cfg;
  cfg.h = h;
  return cfg;
}

PoissonSystem small_quadratic() {
  Mat S(2, 2), A(2, 2);
  S << 0.0, 1.0, -1.0, 0.0;
  A << 2.0, 0.3, 0.3, 1.0;
  Vec b(2);
  b << 0.5, -0.2;
  return constant_s_quadratic(S, A, b);
}

}  // namespace

TEST_CASE("config checking") {
  StepConfig cfg = base_config(0.05);
  CHECK_NOTHROW(cfg.check());
  cfg.newton_tol = 0.0;
  CHECK_THROWS_AS(cfg.check(), ConfigError);
  cfg = base_config(0.05);
  cfg.max_newton_iters = 0;
  CHECK_THROWS_AS(cfg.check(), ConfigError);
  cfg = base_config(0.05);
  cfg.quad_max_nodes = 200;
  CHECK_THROWS_AS(cfg.check(), ConfigError);
  cfg = base_config(0.05);
  cfg.threads = 0;
  CHECK_THROWS_AS(cfg.check(), ConfigError);
  cfg = base_config(std::nan(""));
  CHECK_THROWS_AS(cfg.check(), ConfigError);
}

TEST_CASE("stage polynomial evaluation is cardinal") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  auto [st, rep] = newton_solve(sys, tab, lv_state(), base_config(0.05));
  REQUIRE(st.stage_values.size() == 3);
  CHECK((dense_eval(st, 0.0) - st.base).cwiseAbs().maxCoeff() <= 1e-12);
  for (int i = 0; i < 3; ++i)
    CHECK((dense_eval(st, tab.c(i)) - st.stage_values[i]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("converged residual is small; zero step size solves trivially") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepConfig cfg = base_config(0.05);
  auto [st, rep] = newton_solve(sys, tab, lv_state(), cfg);
  CHECK(rep.iterations > 0);
  Vec phi = residual(sys, tab, st, cfg);
  CHECK(phi.cwiseAbs().maxCoeff() <= 1e-11);

  auto [st0, rep0] = newton_solve(sys, tab, lv_state(), base_config(0.0));
  CHECK(rep0.iterations == 0);
  for (const Vec& sv : st0.stage_values) CHECK((sv - lv_state()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a single step preserves energy to rounding") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepResult r = step(sys, tab, lv_state(), base_config(0.05));
  const double h0 = sys.energy(lv_state());
  CHECK(std::fabs(sys.energy(r.y1) - h0) <= 1e-12 * std::fabs(h0));
  CHECK(r.report.solver_mode_used == SolverMode::block);  // auto picks block at -234
  CHECK(r.report.iterations > 0);
  CHECK(r.report.wall_time >= 0.0);
}

TEST_CASE("the method is symmetric: stepping back returns the start") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  Vec y0 = lv_state();
  StepResult fwd = step(sys, tab, y0, base_config(0.05));
  StepResult back = step(sys, tab, fwd.y1, base_config(-0.05));
  CHECK((back.y1 - y0).cwiseAbs().maxCoeff() <= 1e-11 * std::max(1.0, y0.cwiseAbs().maxCoeff()));
}

TEST_CASE("block and full solvers produce the same step") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepConfig cfg = base_config(0.05);
  cfg.solver_mode = SolverMode::block;
  StepResult rb = step(sys, tab, lv_state(), cfg);
  cfg.solver_mode = SolverMode::full;
  StepResult rf = step(sys, tab, lv_state(), cfg);
  CHECK((rb.y1 - rf.y1).cwiseAbs().maxCoeff() <=
        1e-10 * std::max(1.0, rf.y1.cwiseAbs().maxCoeff()));
  CHECK(rb.report.solver_mode_used == SolverMode::block);
  CHECK(rf.report.solver_mode_used == SolverMode::full);
  // block factors one matrix per stage, full factors one big matrix
  CHECK(rb.report.factorization_count == 3);
  CHECK(rf.report.factorization_count == 1);
}

TEST_CASE("forcing the block solver without a real spectrum throws") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-4.5));
  StepConfig cfg = base_config(0.05);
  cfg.solver_mode = SolverMode::block;
  CHECK_THROWS_AS(step(sys, tab, lv_state(), cfg), SolverError);
  // auto quietly falls back to the full solver
  cfg.solver_mode = SolverMode::auto_mode;
  StepResult r = step(sys, tab, lv_state(), cfg);
  CHECK(r.report.solver_mode_used == SolverMode::full);
}

TEST_CASE("constant-S quadratic converges in two iterations") {
  PoissonSystem sys = small_quadratic();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  Vec y0(2);
  y0 << 0.4, -1.1;
  StepConfig cfg = base_config(0.1);
  StepResult r = step(sys, tab, y0, cfg);
  CHECK(r.report.iterations <= 2);
  CHECK(std::fabs(sys.energy(r.y1) - sys.energy(y0)) <= 1e-13);
}

TEST_CASE("partitioned family collapses to its CSRK core on constant S") {
  // with S constant the discrete stage nodes never enter: the same sum matrix
  // split differently gives the same step
  PoissonSystem sys = small_quadratic();
  Vec y0(2);
  y0 << 0.4, -1.1;
  StepConfig cfg = base_config(0.1);
  cfg.solver_mode = SolverMode::full;

  PcsrkTableau fam = fourth_order_family(optimal_family_params(-234.0));
  PcsrkTableau csrk;
  csrk.s = 3;
  csrk.c = fam.c;
  csrk.m_list = {csrk_alpha_family(-234.0).m, Mat::Zero(3, 3), Mat::Zero(3, 3)};
  csrk.m_sum = csrk.m_list[0];
  csrk.name = "csrk-core";

  StepResult ra = step(sys, fam, y0, cfg);
  StepResult rb = step(sys, csrk, y0, cfg);
  CHECK((ra.y1 - rb.y1).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("avf2 stage polynomial interpolates the step endpoint") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = classic_tableau(ClassicKind::avf2);
  StepResult r = step(sys, tab, lv_state(), base_config(0.05));
  CHECK((dense_eval(r.stages, 1.0) - r.y1).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("integrate conserves energy over an orbit") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  Trajectory tr = integrate(sys, tab, lv_state(), 0.05, 10.0, base_config(0.0));
  REQUIRE_FALSE(tr.aborted);
  REQUIRE(tr.states.size() == 201);
  REQUIRE(tr.times.size() == 201);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(10.0).epsilon(1e-13));
  double worst = 0.0;
  for (double h : tr.energy) worst = std::max(worst, std::fabs(h - tr.energy.front()));
  CHECK(worst <= 1e-11);
  REQUIRE(tr.invariant_names.size() == 1);
  CHECK(tr.invariant_names[0] == "casimir");
  REQUIRE(tr.invariant_values.size() == 1);
  CHECK(tr.invariant_values[0].size() == 201);
  CHECK(tr.reports.size() == 200);
}

TEST_CASE("integrate edge cases") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepConfig cfg = base_config(0.0);

  Trajectory tr0 = integrate(sys, tab, lv_state(), 0.05, 0.0, cfg);
  CHECK_FALSE(tr0.aborted);
  CHECK(tr0.states.size() == 1);

  CHECK_THROWS_AS(integrate(sys, tab, lv_state(), 0.0, 1.0, cfg), ConfigError);
  CHECK_THROWS_AS(integrate(sys, tab, lv_state(), 0.05, 10.013, cfg), ConfigError);
  CHECK_THROWS_AS(integrate(sys, tab, lv_state(), 0.05, -1.0, cfg), ConfigError);
}

TEST_CASE("a too-large step aborts and keeps the partial trajectory") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  Trajectory tr = integrate(sys, tab, lv_state(), 0.25, 10.0, base_config(0.0));
  CHECK(tr.aborted);
  CHECK_FALSE(tr.abort_reason.empty());
  CHECK(tr.states.size() >= 1);
  CHECK(tr.states.size() < 41);
  CHECK(tr.states.size() == tr.reports.size() + 1);
  CHECK(tr.states.size() == tr.times.size());
}

TEST_CASE("frozen Jacobian and warm starts reproduce the per-step run") {
  PoissonSystem sys = lotka_volterra();
  PcsrkTableau tab = fourth_order_family(optimal_family_params(-234.0));
  StepConfig cfg = base_config(0.0);
  Trajectory cold = integrate(sys, tab, lv_state(), 0.05, 10.0, cfg);
  REQUIRE_FALSE(cold.aborted);

  StepConfig warm = cfg;
  warm.warm_start = true;
  Trajectory tw = integrate(sys, tab, lv_state(), 0.05, 10.0, warm);
  REQUIRE_FALSE(tw.aborted);
  CHECK((tw.states.back() - cold.states.back()).cwiseAbs().maxCoeff() <= 1e-10);

  StepConfig frozen = cfg;
  frozen.jacobian_refresh = JacobianRefresh::frozen;
  Trajectory tf = integrate(sys, tab, lv_state(), 0.05, 10.0, frozen);
  REQUIRE_FALSE(tf.aborted);
  CHECK((tf.states.back() - cold.states.back()).cwiseAbs().maxCoeff() <= 1e-10);

  // frozen mode reuses factorizations: most steps report none
  long refreshes = 0;
  for (const StepReport& r : tf.reports) refreshes += r.factorization_count > 0 ? 1 : 0;
  CHECK(refreshes < static_cast<long>(tf.reports.size()) / 4);

  // warm starts cut the iteration count noticeably
  long it_cold = 0, it_warm = 0;
  for (const StepReport& r : cold.reports) it_cold += r.iterations;
  for (const StepReport& r : tw.reports) it_warm += r.iterations;
  CHECK(it_warm < it_cold);
}
