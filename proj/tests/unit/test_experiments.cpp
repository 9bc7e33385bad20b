#include "doctest.h"
#include "sggl/experiments.hpp"

#include <cmath>

using namespace sggl;

namespace {

GLParams params() {
  GLParams p;
  p.alpha = 0.3;
  p.beta = 0.5;
  p.gamma = 0.1;
  p.sigma = 3.0;
  p.lambda1 = {cplx(0.05, 0.02), cplx(-0.03, 0.04)};
  p.lambda2 = {cplx(0.02, -0.01), cplx(0.03, 0.0)};
  return p;
}

JumpModel noise() {
  JumpModel m;
  m.nu = {1.0, 0.5};
  m.h = {0.5, 1.0};
  m.c = 0.1;
  return m;
}

SimConfig sim(std::size_t n = 6) {
  SimConfig c;
  c.n1 = c.n2 = n;
  c.dt = 1e-3;
  c.t_end = 0.1;
  c.seed = 31;
  return c;
}

MonotonicityConfig mono() {
  MonotonicityConfig e;
  e.eps9 = e.eps11 = 3e-3;
  return derive_monotonicity_config(e, params(), noise().constants());
}

}  // namespace

TEST_CASE("uniqueness pair shares the noise") {
  const auto p = params();
  const auto c = sim();
  const auto u0 = make_initial(InitialCondition{}, 6, 6, p, c.seed, 0);
  auto m = noise();
  m.nu = {20.0, 10.0};  // several jumps in the window
  const auto run = uniqueness_experiment(c, p, m, mono(), u0, 1e-3, 0);
  CHECK_FALSE(run.inconclusive);
  CHECK(!run.u1_traj.jump_log.empty());
  CHECK(run.u1_traj.jump_log == run.u2_traj.jump_log);
  CHECK(run.u1_traj.times == run.u2_traj.times);
  REQUIRE(run.t.size() == c.n_steps() + 1);
  CHECK(std::sqrt(run.omega_l2_sq.front()) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(run.r.front() == 0.0);
  for (std::size_t i = 1; i < run.r.size(); ++i) CHECK(run.r[i] >= run.r[i - 1]);
  for (std::size_t i = 0; i < run.t.size(); ++i)
    CHECK(run.contraction[i] == doctest::Approx(std::exp(-run.r[i]) * run.omega_l2_sq[i]));
  CHECK(run.violations.empty());
  CHECK(run.contraction.back() < run.contraction.front());
}

TEST_CASE("zero separation") {
  const auto p = params();
  const auto c = sim();
  const auto u0 = make_initial(InitialCondition{}, 6, 6, p, c.seed, 0);
  const auto run = uniqueness_experiment(c, p, noise(), mono(), u0, 0.0, 0);
  for (double w : run.omega_l2_sq) CHECK(w == 0.0);
  CHECK(run.violations.empty());
  CHECK_THROWS_AS(uniqueness_experiment(c, p, noise(), mono(), u0, -1.0, 0), std::invalid_argument);
}

TEST_CASE("uniqueness needs a valid regime") {
  const auto c = sim();
  GLParams p = params();
  const auto u0 = make_initial(InitialCondition{}, 6, 6, p, c.seed, 0);
  CHECK_THROWS_AS(uniqueness_experiment(c, p, noise(), MonotonicityConfig{}, u0, 1e-3, 0), RegimeError);
  p.beta = 2.0;
  const auto bad = derive_monotonicity_config(MonotonicityConfig{}, p, noise().constants());
  CHECK_FALSE(bad.contraction_valid);
  CHECK_THROWS_AS(uniqueness_experiment(c, p, noise(), bad, u0, 1e-3, 0), RegimeError);
}

TEST_CASE("uniqueness ensemble") {
  SimConfig c = sim();
  c.n_paths = 6;
  const auto a = uniqueness_ensemble(c, params(), noise(), mono(), InitialCondition{}, 1e-3, 1);
  const auto b = uniqueness_ensemble(c, params(), noise(), mono(), InitialCondition{}, 1e-3, 3);
  CHECK(a.n_paths == 6);
  CHECK(a.inconclusive == 0);
  CHECK(a.decreased);
  CHECK(a.contraction == b.contraction);
  CHECK(a.r == b.r);
  CHECK(a.dt == c.dt);
  CHECK(a.max_increment >= 0.0);
  if (a.violations.empty()) CHECK(a.slack_constant == 0.0);
}

TEST_CASE("galerkin scan on smooth data") {
  SimConfig c = sim();
  c.t_end = 0.05;
  InitialCondition ic;
  ic.mode = InitialCondition::Mode::Gaussian;
  ic.width = 0.15;
  const auto s = galerkin_scan(c, params(), JumpModel{}, ic, {4, 8, 16}, 2);
  REQUIRE(s.rows.size() == 3);
  for (const auto& r : s.rows) {
    MESSAGE("n=" << r.n << " discrepancy " << r.discrepancy);
    CHECK(r.discrepancy > 0.0);
    CHECK(r.l31.n1 == r.n);
  }
  CHECK(s.monotone);
  CHECK_THROWS_AS(galerkin_scan(c, params(), JumpModel{}, ic, {4, 8}), std::invalid_argument);
}
