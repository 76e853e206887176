#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>

#include "app/presets.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/solver.hpp"

using namespace korteweg;

namespace {

PhysParams quantum() {
  PhysParams p;
  p.mu = 0.1;
  p.kappa = 0.01;
  return p;
}

PrimitiveState bump(const Grid& g, const PhysParams& p, double amplitude = 0.1) {
  app::InitialSpec spec;
  spec.preset = "smooth_bump";
  spec.amplitude = amplitude;
  return app::make_initial(g, p, spec);
}

SolverConfig config(double dt, double t_end, Formulation f = Formulation::primitive) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.formulation = f;
  return c;
}

double max_state_diff(const SolverState& a, const SolverState& b) {
  double d = max_abs_diff(a.scalar, b.scalar);
  for (std::size_t j = 0; j < a.vector.size(); ++j) d = std::max(d, max_abs_diff(a.vector[j], b.vector[j]));
  return d;
}

}  // namespace

TEST_CASE("equilibrium is preserved", "[solver]") {
  const Grid g(2, 32);
  const PhysParams p = quantum();
  for (Formulation f : {Formulation::primitive, Formulation::effective}) {
    const SolverState s0 = SolverState::from_primitive({RealField(g, 1.0), zero_vector(g)}, f, p);
    const RunResult r = run(s0, p, config(1e-3, 0.1, f));
    CHECK(r.completed);
    CHECK(max_state_diff(r.final_state, s0) < 1e-14);
  }
}

TEST_CASE("frozen explicit part leaves the exact heat flow", "[solver]") {
  const Grid g(1, 64);
  const PhysParams p = quantum();
  SolverConfig c = config(1e-3, 0.5, Formulation::effective);
  c.freeze_explicit = true;
  c.diagnostics = false;
  SolverState s;
  s.formulation = Formulation::effective;
  s.scalar = sample(g, std::function<double(double)>([](double x) { return std::sin(x); }));
  s.vector = zero_vector(g);
  const RunResult r = run(s, p, c);
  const RealField want = std::exp(-p.mu * 0.5) * s.scalar;
  CHECK(max_abs_diff(r.final_state.scalar, want) / max_abs(want) < 1e-8);
}

TEST_CASE("time stepping is second order", "[solver]") {
  const Grid g(1, 64);
  const PhysParams p = quantum();
  const PrimitiveState init = bump(g, p, 0.3);
  auto density_at = [&](double dt) {
    SolverConfig c = config(dt, 0.2);
    c.diagnostics = false;
    return run(SolverState::from_primitive(init, c.formulation, p), p, c).final_state.density(p);
  };
  const RealField ref = density_at(1.25e-4);
  const double e1 = max_abs_diff(density_at(2e-3), ref);
  const double e2 = max_abs_diff(density_at(1e-3), ref);
  const double e3 = max_abs_diff(density_at(5e-4), ref);
  INFO("errors " << e1 << " " << e2 << " " << e3);
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.6);
  CHECK(e2 / e3 > 3.5);
  CHECK(e2 / e3 < 4.6);
}

TEST_CASE("zero horizon returns the initial diagnostics only", "[solver]") {
  const Grid g(1, 64);
  const PhysParams p = quantum();
  const PrimitiveState init = bump(g, p);
  const RunResult r = run(SolverState::from_primitive(init, Formulation::primitive, p), p, config(1e-3, 0.0));
  CHECK(r.completed);
  CHECK(r.steps == 0);
  REQUIRE(r.record.rows.size() == 1);
  CHECK(r.record.rows[0].t == 0.0);
  CHECK(max_abs_diff(r.final_state.scalar, init.rho) == 0.0);
}

TEST_CASE("restart from a checkpoint reproduces the uninterrupted run", "[solver]") {
  const Grid g(1, 128);
  const PhysParams p = quantum();
  const PrimitiveState init = bump(g, p, 0.2);
  for (Formulation f : {Formulation::primitive, Formulation::effective}) {
    SolverConfig c = config(1e-3, 1.0, f);
    c.diag_stride = 50;
    std::optional<Checkpoint> saved;
    RunCallbacks cb;
    cb.checkpoint_steps = {500};
    cb.on_checkpoint = [&](const Checkpoint& ck) { saved = ck; };
    const RunResult full = run(SolverState::from_primitive(init, f, p), p, c, cb);
    REQUIRE(saved.has_value());
    CHECK(saved->time() == 0.5);

    const auto path = std::filesystem::temp_directory_path() / "korteweg_restart_test.ckpt";
    write_checkpoint(path.string(), *saved);
    const Checkpoint loaded = read_checkpoint(path.string());
    std::filesystem::remove(path);
    const RunResult rest = resume(loaded, c);
    CHECK(rest.steps == full.steps);
    CHECK(max_state_diff(rest.final_state, full.final_state) <= 1e-14);
    REQUIRE(!rest.record.rows.empty());
    const DiagnosticsRow& a = rest.record.rows.back();
    const DiagnosticsRow& b = full.record.rows.back();
    CHECK(a.t == b.t);
    CHECK(std::abs(a.dissip_u - b.dissip_u) <= 1e-14 * std::max(1.0, b.dissip_u));
    CHECK(std::abs(a.jungel - b.jungel) <= 1e-14 * std::max(1.0, b.jungel));
  }
}

TEST_CASE("checkpoint text round trip is exact", "[solver]") {
  const Grid g(2, 16);
  const PhysParams p = quantum();
  Checkpoint c;
  c.params = p;
  c.state = SolverState::from_primitive(bump(g, p, 0.3), Formulation::effective, p);
  c.step = 17;
  c.dt = 1e-3;
  c.accumulator = {{"x", 1.0 / 3.0}, {"y", -2e-300}};
  const Checkpoint back = parse_checkpoint(format_checkpoint(c));
  CHECK(back.step == 17);
  CHECK(back.dt == c.dt);
  CHECK(back.state.formulation == Formulation::effective);
  CHECK(max_state_diff(back.state, c.state) == 0.0);
  CHECK(back.accumulator == c.accumulator);
  CHECK(back.params.kappa == p.kappa);
  CHECK_THROWS_AS(parse_checkpoint("not a checkpoint"), IoError);
  CHECK_THROWS_AS(read_checkpoint("/nonexistent/korteweg.ckpt"), IoError);
}

TEST_CASE("small smooth data evolves without vacuum and with decaying energy", "[solver]") {
  const Grid g(1, 256);
  const PhysParams p = quantum();
  SolverConfig c = config(1e-4, 1.0);
  const RunResult r = run(SolverState::from_primitive(bump(g, p), c.formulation, p), p, c);
  CHECK(r.completed);
  CHECK(r.record.rows.size() == 101);
  for (std::size_t i = 1; i < r.record.rows.size(); ++i)
    CHECK(r.record.rows[i].energy <= r.record.rows[i - 1].energy * (1.0 + 1e-12));
}

TEST_CASE("unstable or inconsistent configurations are rejected before running", "[solver]") {
  const Grid g(1, 256);
  const PhysParams p = quantum();
  const double ceiling = stability_ceiling(g, p);
  CHECK(ceiling == Catch::Approx(0.2 * std::pow(kTwoPi / 256, 2) / 0.1));
  CHECK_THROWS_AS(config(2.0 * ceiling, 1.0).validate(g, p), ConfigError);
  CHECK_THROWS_AS(config(1e-4, 0.10005).validate(g, p), ConfigError);
  CHECK_THROWS_AS(config(-1e-4, 1.0).validate(g, p), ConfigError);
  CHECK_NOTHROW(config(1e-4, 1.0).validate(g, p));
  CHECK(config(1e-4, 1.0).total_steps() == 10000);
  const SolverState s = SolverState::from_primitive(bump(g, p), Formulation::primitive, p);
  CHECK_THROWS_AS(run(s, p, config(2.0 * ceiling, 0.1)), ConfigError);
}

TEST_CASE("vacuum floor breach aborts with the time and minimum", "[solver]") {
  const Grid g(1, 128);
  const PhysParams p = quantum();
  app::InitialSpec spec;
  spec.preset = "near_vacuum";
  spec.delta = 0.05;
  SolverConfig c = config(1e-4, 0.1);
  c.vacuum_floor = 0.06;
  const SolverState s = SolverState::from_primitive(app::make_initial(g, p, spec), c.formulation, p);
  try {
    run(s, p, c);
    FAIL("expected a vacuum breach");
  } catch (const VacuumBreach& e) {
    CHECK(e.min_rho() <= 0.06);
    CHECK(e.time() >= 0.0);
    CHECK(e.cause() == Cause::vacuum_breach);
  }
}

TEST_CASE("linear system solution", "[solver][picard]") {
  const Grid g(1, 64);
  const double mu = 0.1;
  const RealField q0 = sample(g, std::function<double(double)>([](double x) { return std::cos(3 * x); }));
  const VectorField v0 = {sample(g, std::function<double(double)>([](double x) { return std::sin(3 * x); }))};

  const LinearSolution id = solve_linear_system(q0, v0, mu, 0.0);
  CHECK(max_abs_diff(id.q, q0) < 1e-14);
  CHECK(max_abs_diff(id.v[0], v0[0]) < 1e-14);

  const LinearSolution heat = solve_linear_system(q0, zero_vector(g), mu, 0.7);
  CHECK(max_abs(heat.v[0]) == 0.0);
  CHECK(max_abs_diff(heat.q, std::exp(-mu * 9 * 0.7) * q0) < 1e-14);

  // Single mode: q(t) = e^{-mu k^2 t} (q0 - t div v0), div v0 = 3 cos 3x.
  const double t = 0.4;
  const LinearSolution s = solve_linear_system(q0, v0, mu, t);
  const double decay = std::exp(-mu * 9 * t);
  CHECK(max_abs_diff(s.q, decay * (1.0 - 3.0 * t) * q0) < 1e-13);
  CHECK(max_abs_diff(s.v[0], decay * v0[0]) < 1e-14);
}

TEST_CASE("iteration scheme", "[solver][picard]") {
  const Grid g(1, 64);
  const PhysParams p = quantum();
  PicardConfig c;

  const PicardResult zero = picard_solve(RealField(g), zero_vector(g), p, 0.5, c);
  CHECK(zero.converged);
  CHECK(zero.iterations == 1);

  const EffectiveState small = to_effective(bump(g, p, 1e-3), p);
  const PicardResult ok = picard_solve(small.q, small.v, p, 0.1, c);
  CHECK(ok.converged);
  CHECK_FALSE(ok.non_contraction);
  for (double r : ok.ratios) CHECK(r < 1.0);

  const EffectiveState large = to_effective(bump(g, p, 2.0), p);
  const PicardResult bad = picard_solve(large.q, large.v, p, 10.0, c);
  CHECK(bad.non_contraction);
  CHECK_FALSE(bad.converged);
  CHECK(bad.message.find("non-contraction") != std::string::npos);

  PhysParams off = p;
  off.kappa = 0.02;
  CHECK_THROWS_AS(picard_solve(small.q, small.v, off, 0.1, c), ConfigError);
}
