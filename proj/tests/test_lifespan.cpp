#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "korteweg/errors.hpp"
#include "korteweg/lifespan.hpp"
#include "oracles/frozen_oracles.hpp"

using namespace korteweg;
using Catch::Matchers::WithinRel;

namespace {

LifespanInputs unit_inputs() {
  LifespanInputs in;
  in.norm_q0_crit = in.norm_v0_crit = in.norm_q0_sur = in.norm_v0_sur = 1.0;
  in.dim = 1;
  in.p = 1.5;
  return in;
}

}  // namespace

TEST_CASE("reference evaluation", "[lifespan]") {
  const LifespanResult r = lifespan_lower_bound(unit_inputs());
  CHECK_THAT(r.branches[0], WithinRel(oracle::kLifespanSurcritical, 1e-14));
  CHECK_THAT(r.branches[1], WithinRel(oracle::kLifespanSurcritical, 1e-14));
  CHECK_THAT(r.branches[2], WithinRel(0.25, 1e-15));
  CHECK_THAT(r.branches[3], WithinRel(oracle::kLifespanUnit, 1e-14));
  CHECK_THAT(r.T, WithinRel(oracle::kLifespanUnit, 1e-14));
  CHECK(std::string(r.active_name()) == "critical_a0");
}

TEST_CASE("vanishing data leaves the constant branch", "[lifespan]") {
  LifespanInputs in = unit_inputs();
  in.norm_q0_crit = in.norm_v0_crit = in.norm_q0_sur = in.norm_v0_sur = 0.0;
  in.k.C1 = 0.6;
  const LifespanResult r = lifespan_lower_bound(in);
  CHECK(std::isinf(r.branches[0]));
  CHECK(std::isinf(r.branches[3]));
  CHECK_THAT(r.T, WithinRel(0.15, 1e-15));
  CHECK(std::string(r.active_name()) == "c1_quarter");

  in.norm_q0_crit = in.norm_v0_crit = in.norm_q0_sur = in.norm_v0_sur = 1e-9;
  CHECK_THAT(lifespan_lower_bound(in).T, WithinRel(0.15, 1e-12));
}

TEST_CASE("bound never increases with a norm", "[lifespan]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 3.0), grow(1.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    LifespanInputs in = unit_inputs();
    in.norm_q0_crit = u(rng);
    in.norm_v0_crit = u(rng);
    in.norm_q0_sur = u(rng);
    in.norm_v0_sur = u(rng);
    const double T = lifespan_lower_bound(in).T;
    LifespanInputs more = in;
    switch (i % 4) {
      case 0: more.norm_q0_crit *= grow(rng); break;
      case 1: more.norm_v0_crit *= grow(rng); break;
      case 2: more.norm_q0_sur *= grow(rng); break;
      default: more.norm_v0_sur *= grow(rng); break;
    }
    CHECK(lifespan_lower_bound(more).T <= T);
  }
}

TEST_CASE("admissible smallness", "[lifespan]") {
  CHECK_THAT(epsilon_from_data(0.0, 1.0), WithinRel(0.25, 1e-15));
  CHECK_THAT(epsilon_from_data(1.0, 1.0), WithinRel(1.0 / 16.0, 1e-15));
  CHECK(epsilon_from_data(2.0, 1.0) < epsilon_from_data(1.0, 1.0));
}

TEST_CASE("input validation", "[lifespan]") {
  LifespanInputs in = unit_inputs();
  in.norm_q0_crit = -1.0;
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = unit_inputs();
  in.k.eps_prime = 1.5;
  CHECK_THROWS_AS(in.validate(), ConfigError);
  in = unit_inputs();
  in.k.C = 0.0;
  CHECK_THROWS_AS(lifespan_lower_bound(in), ConfigError);

  in = unit_inputs();
  in.k.eps_prime = 0.25;
  in.dim = 1;
  in.p = 1.5;
  CHECK(in.p_in_window());
  in.p = 1.2;
  CHECK_FALSE(in.p_in_window());
}

TEST_CASE("norms of the data", "[lifespan]") {
  const Grid g(1, 128);
  const BumpPair bumps = build_bumps();
  const RealField q = sample(g, std::function<double(double)>([](double x) { return 0.1 * std::cos(x); }));
  const LifespanInputs in = lifespan_inputs(q, zero_vector(g), 2.0, {}, bumps);
  CHECK(in.norm_v0_crit == 0.0);
  CHECK(in.norm_q0_crit > 0.0);
  CHECK(in.dim == 1);
  CHECK(in.p == 2.0);
  const LifespanInputs eq = lifespan_inputs(RealField(g), zero_vector(g), 2.0, {}, bumps);
  CHECK(eq.a0() == 0.0);
  CHECK(lifespan_lower_bound(eq).T == Catch::Approx(0.25));
}

TEST_CASE("restart schedule", "[lifespan]") {
  const LifespanInputs in = unit_inputs();
  const double T = lifespan_lower_bound(in).T;
  const RestartSchedule s = restart_schedule([&](double) { return in; }, 10 * T, 0.5);
  CHECK_FALSE(s.stalled);
  REQUIRE(s.entries.size() >= 20);
  for (std::size_t i = 0; i < s.entries.size(); ++i) CHECK_THAT(s.entries[i].t, WithinRel(0.5 * T * i, 1e-12) || Catch::Matchers::WithinAbs(0.0, 1e-300));

  CHECK(restart_schedule([&](double) { return in; }, 0.0).entries.empty());

  const RestartSchedule grow = restart_schedule(
      [&](double t) {
        LifespanInputs g = in;
        g.norm_q0_crit = g.norm_v0_crit = 1.0 + 10.0 * t;
        return g;
      },
      0.05);
  for (std::size_t i = 1; i < grow.entries.size(); ++i) CHECK(grow.entries[i].T <= grow.entries[i - 1].T);

  const RestartSchedule stall = restart_schedule(
      [&](double t) {
        LifespanInputs g = in;
        g.norm_q0_crit = std::exp(1e4 * t);
        return g;
      },
      1.0);
  CHECK(stall.stalled);
  CHECK(!stall.message.empty());
}

TEST_CASE("calibration of the constant", "[lifespan]") {
  LifespanInputs in = unit_inputs();
  in.norm_q0_sur = in.norm_v0_sur = 1e-6;
  const Calibration c = calibrate_c1(in, 1e-3);
  CHECK(c.attained);
  LifespanInputs at = in;
  at.k.C1 = c.C1;
  CHECK_THAT(lifespan_lower_bound(at).T, WithinRel(1e-3, 1e-9));
  const Calibration too_far = calibrate_c1(in, 10.0);
  CHECK_FALSE(too_far.attained);
}
