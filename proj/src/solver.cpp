#include "korteweg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg {

const char* formulation_name(Formulation f) noexcept {
  return f == Formulation::primitive ? "primitive" : "effective";
}

Formulation parse_formulation(const std::string& name) {
  if (name == "primitive") return Formulation::primitive;
  if (name == "effective") return Formulation::effective;
  throw ConfigError("solver.formulation must be 'primitive' or 'effective' (got '" + name + "')");
}

SolverState SolverState::from_primitive(const PrimitiveState& s, Formulation target, const PhysParams& p) {
  if (target == Formulation::primitive) return {target, s.rho, s.u};
  EffectiveState e = to_effective(s, p);
  return {target, std::move(e.q), std::move(e.v)};
}

PrimitiveState SolverState::primitive(const PhysParams& p) const {
  if (formulation == Formulation::primitive) return {scalar, vector};
  return from_effective({scalar, vector}, p);
}

EffectiveState SolverState::effective(const PhysParams& p) const {
  if (formulation == Formulation::effective) return {scalar, vector};
  return to_effective({scalar, vector}, p);
}

RealField SolverState::density(const PhysParams& p) const {
  if (formulation == Formulation::primitive) return scalar;
  return map(scalar, [&](double q) { return p.rho_bar * std::exp(q); });
}

double stability_ceiling(const Grid& grid, const PhysParams& p, double c_stab) {
  const double h = grid.spacing();
  return c_stab * h * h / std::max(p.mu, std::sqrt(p.kappa));
}

void SolverConfig::validate(const Grid& grid, const PhysParams& p) const {
  p.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver.dt must be finite and > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("solver.t_end must be finite and >= 0");
  if (!(vacuum_floor > 0.0)) throw ConfigError("solver.vacuum_floor must be > 0");
  if (diag_stride < 1) throw ConfigError("solver.diag_stride must be >= 1");
  if (formulation == Formulation::effective && p.kappa < p.mu * p.mu - 1e-12)
    throw ConfigError("solver.formulation = effective requires physics.kappa >= mu^2");
  if (enforce_stability) {
    const double ceiling = stability_ceiling(grid, p, stability_constant);
    if (dt > ceiling) {
      std::ostringstream os;
      os.precision(6);
      os << "solver.dt = " << dt << " exceeds the stability ceiling " << ceiling
         << " (C h^2 / max(mu, sqrt(kappa)) with C = " << stability_constant << ")";
      throw ConfigError(os.str());
    }
  }
  (void)total_steps();
}

std::int64_t SolverConfig::total_steps() const {
  const double ratio = t_end / dt;
  const auto n = static_cast<std::int64_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(n)) > 1e-6 * std::max(1.0, ratio))
    throw ConfigError("solver.t_end must be an integer multiple of solver.dt");
  return n;
}

namespace {

struct Parts {
  RealField scalar;
  VectorField vector;
};

Parts axpy(const Parts& x, double a, const Parts& y) {
  Parts out{x.scalar + a * y.scalar, x.vector};
  for (std::size_t j = 0; j < out.vector.size(); ++j) out.vector[j] += a * y.vector[j];
  return out;
}

// Multiplies the diffused variables by exp(-mu |xi|^2 dt).
Parts propagate(Parts w, const PhysParams& p, double dt, Formulation f) {
  auto factor = [&](const std::array<double, 2>& xi) { return std::exp(-p.mu * (xi[0] * xi[0] + xi[1] * xi[1]) * dt); };
  if (f == Formulation::effective) w.scalar = filter(w.scalar, factor);
  for (auto& c : w.vector) c = filter(c, factor);
  return w;
}

double density_min(const Parts& w, const PhysParams& p, Formulation f) {
  const double m = min_value(w.scalar);
  return f == Formulation::primitive ? m : p.rho_bar * std::exp(m);
}

bool finite(const Parts& w) {
  if (!all_finite(w.scalar)) return false;
  for (const auto& c : w.vector)
    if (!all_finite(c)) return false;
  return true;
}

Parts explicit_part(const Parts& w, const PhysParams& p, const SolverConfig& cfg, double t) {
  const Grid& grid = w.scalar.grid();
  if (cfg.freeze_explicit) return {RealField(grid), zero_vector(grid)};
  if (!finite(w)) throw NumericBlowup(t);
  const RhsOptions opt{cfg.dealias, false, 0.0};
  if (cfg.formulation == Formulation::primitive) {
    const double m = min_value(w.scalar);
    if (!(m > 0.0)) throw VacuumBreach(t, m);
    PrimitiveState d = rhs_primitive({w.scalar, w.vector}, p, opt);
    return {std::move(d.rho), std::move(d.u)};
  }
  EffectiveState d = rhs_effective({w.scalar, w.vector}, p, opt);
  return {std::move(d.q), std::move(d.v)};
}

}  // namespace

SolverState step_imex(const SolverState& state, const PhysParams& p, const SolverConfig& cfg, double t) {
  if (state.formulation != cfg.formulation)
    throw ConfigError("step_imex: state formulation does not match solver.formulation");
  const Formulation f = cfg.formulation;
  const double dt = cfg.dt;
  const Parts w{state.scalar, state.vector};

  const Parts n1 = explicit_part(w, p, cfg, t);
  const Parts stage = propagate(axpy(w, dt, n1), p, dt, f);
  const Parts n2 = explicit_part(stage, p, cfg, t + dt);
  Parts next = axpy(propagate(axpy(w, 0.5 * dt, n1), p, dt, f), 0.5 * dt, n2);

  if (!finite(next)) throw NumericBlowup(t + dt);
  const double m = density_min(next, p, f);
  if (!(m > cfg.vacuum_floor)) throw VacuumBreach(t + dt, m);
  return {f, std::move(next.scalar), std::move(next.vector)};
}

namespace {

RunResult integrate(SolverState w, std::int64_t start, const PhysParams& p, const SolverConfig& cfg,
                    DiagnosticsAccumulator& acc, bool observe_start, const RunCallbacks& cb) {
  cfg.validate(w.grid(), p);
  if (w.formulation != cfg.formulation)
    w = SolverState::from_primitive(w.primitive(p), cfg.formulation, p);
  const std::int64_t total = cfg.total_steps();

  RunResult res;
  res.record.dim = w.grid().dim();
  res.record.params = p;

  const double m0 = min_value(w.density(p));
  if (!(m0 > cfg.vacuum_floor)) throw VacuumBreach(static_cast<double>(start) * cfg.dt, m0);

  auto observe = [&](std::int64_t step) {
    if (!cfg.diagnostics) return;
    const double t = static_cast<double>(step) * cfg.dt;
    const bool emit = step % cfg.diag_stride == 0 || step == total;
    auto row = acc.observe(w.primitive(p), w.effective(p), t, emit);
    if (row) {
      res.record.rows.push_back(*row);
      if (cb.on_row) cb.on_row(*row);
    }
  };
  auto checkpoint = [&](std::int64_t step) {
    if (!cb.on_checkpoint) return;
    if (std::find(cb.checkpoint_steps.begin(), cb.checkpoint_steps.end(), step) == cb.checkpoint_steps.end()) return;
    cb.on_checkpoint(Checkpoint{p, w, step, cfg.dt, acc.save()});
  };

  std::int64_t step = start;
  if (observe_start) observe(step);
  if (cb.on_step) cb.on_step(step, static_cast<double>(step) * cfg.dt, w);
  checkpoint(step);
  while (step < total) {
    w = step_imex(w, p, cfg, static_cast<double>(step) * cfg.dt);
    ++step;
    observe(step);
    if (cb.on_step) cb.on_step(step, static_cast<double>(step) * cfg.dt, w);
    checkpoint(step);
  }
  res.final_state = std::move(w);
  res.steps = step;
  res.t = static_cast<double>(step) * cfg.dt;
  res.completed = true;
  return res;
}

}  // namespace

RunResult run(const SolverState& initial, const PhysParams& p, const SolverConfig& cfg, const RunCallbacks& cb) {
  DiagnosticsAccumulator acc(p);
  return integrate(initial, 0, p, cfg, acc, true, cb);
}

RunResult resume(const Checkpoint& from, const SolverConfig& cfg, const RunCallbacks& cb) {
  if (from.dt != cfg.dt) throw ConfigError("resume: solver.dt differs from the checkpoint step size");
  if (from.state.formulation != cfg.formulation)
    throw ConfigError("resume: solver.formulation differs from the checkpoint");
  DiagnosticsAccumulator acc(from.params);
  if (!from.accumulator.empty()) acc.restore(from.accumulator);
  return integrate(from.state, from.step, from.params, cfg, acc, from.accumulator.empty(), cb);
}

}  // namespace korteweg
