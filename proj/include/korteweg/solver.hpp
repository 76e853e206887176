#pragma once

// Time integration of the primitive or the effective formulation.
//
// Scheme: integrating-factor Runge-Kutta 2 (Heun). With E = exp(-mu |xi|^2 dt)
// acting on the diffused variables and N the remaining right-hand side,
//
//   N1 = N(w_n),  w* = E(w_n + dt N1),  N2 = N(w*),
//   w_{n+1} = E(w_n + dt/2 N1) + dt/2 N2.
//
// In the primitive formulation only u carries the factor (rho has no linear
// diffusion); in the effective one both q and v do.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/diagnostics.hpp"
#include "korteweg/fields.hpp"
#include "korteweg/model.hpp"

namespace korteweg {

enum class Formulation { primitive, effective };

const char* formulation_name(Formulation f) noexcept;
Formulation parse_formulation(const std::string& name);

/// Native variables of one formulation: (rho, u) or (q, v).
struct SolverState {
  Formulation formulation = Formulation::primitive;
  RealField scalar{Grid(1, 8)};
  VectorField vector;

  static SolverState from_primitive(const PrimitiveState& s, Formulation target, const PhysParams& p);
  PrimitiveState primitive(const PhysParams& p) const;
  EffectiveState effective(const PhysParams& p) const;
  /// Density, reconstructed as rho_bar e^q in the effective formulation.
  RealField density(const PhysParams& p) const;
  const Grid& grid() const { return scalar.grid(); }
};

/// Largest explicit step: C * h^2 / max(mu, sqrt(kappa)).
inline constexpr double kStabilityConstant = 0.2;
double stability_ceiling(const Grid& grid, const PhysParams& p, double c_stab = kStabilityConstant);

struct SolverConfig {
  double dt = 1e-4;
  double t_end = 0.0;
  Formulation formulation = Formulation::primitive;
  bool dealias = true;
  double vacuum_floor = 1e-8;
  std::int64_t diag_stride = 100;
  bool enforce_stability = true;
  double stability_constant = kStabilityConstant;
  /// Test hook: the explicit part is replaced by zero, leaving only the exact
  /// heat propagator.
  bool freeze_explicit = false;
  /// Diagnostics are observed every step (for the time integrals) and emitted
  /// every diag_stride steps.
  bool diagnostics = true;

  /// Throws ConfigError naming the offending field.
  void validate(const Grid& grid, const PhysParams& p) const;
  /// Number of steps to reach t_end.
  std::int64_t total_steps() const;
};

/// One step from time step*dt. Throws VacuumBreach when the (reconstructed)
/// density falls to vacuum_floor or below, NumericBlowup on non-finite values.
SolverState step_imex(const SolverState& state, const PhysParams& p, const SolverConfig& cfg, double t = 0.0);

/// Everything needed for a bitwise-identical continuation.
struct Checkpoint {
  PhysParams params;
  SolverState state;
  std::int64_t step = 0;
  double dt = 0;
  std::map<std::string, double> accumulator;

  double time() const { return static_cast<double>(step) * dt; }
};

void write_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);
std::string format_checkpoint(const Checkpoint& c);
Checkpoint parse_checkpoint(const std::string& text);

struct RunCallbacks {
  std::function<void(const DiagnosticsRow&)> on_row;
  std::function<void(std::int64_t step, double t, const SolverState&)> on_step;
  /// Steps at which on_checkpoint is invoked (the state after that many steps).
  std::vector<std::int64_t> checkpoint_steps;
  std::function<void(const Checkpoint&)> on_checkpoint;
};

struct RunResult {
  SolverState final_state;
  std::int64_t steps = 0;  // absolute step index reached
  double t = 0;
  DiagnosticsRecord record;
  bool completed = false;
};

RunResult run(const SolverState& initial, const PhysParams& p, const SolverConfig& cfg, const RunCallbacks& cb = {});

/// Continues from a checkpoint up to cfg.t_end.
RunResult resume(const Checkpoint& from, const SolverConfig& cfg, const RunCallbacks& cb = {});

// ---------------------------------------------------------------------------
// Iteration mode mirroring the existence proof.

struct PicardConfig {
  int max_iters = 30;
  double tol = 1e-12;
  int time_steps = 64;  // uniform grid on [0, T] for the Duhamel quadrature
  /// Lebesgue exponent of the critical spaces; s = N/p.
  double p = 2.0;
  bool dealias = true;

  void validate() const;
};

struct LinearSolution {
  RealField q;
  VectorField v;
};

/// Exact per-mode solution of dq/dt + div v - mu lap q = 0, dv/dt - mu lap v = 0.
LinearSolution solve_linear_system(const RealField& q0, const VectorField& v0, double mu, double t);

struct PicardIterate {
  std::vector<RealField> q;  // one field per time node
  std::vector<VectorField> v;
};

struct PicardResult {
  std::vector<double> times;
  std::vector<double> differences;  // ||(q^n - q^{n-1}, v^n - v^{n-1})|| in the solution space
  std::vector<double> ratios;       // differences[i] / differences[i-1]
  PicardIterate last;
  int iterations = 0;
  bool converged = false;
  bool non_contraction = false;
  std::string message;
  double T = 0;
  double data_norm_q = 0;  // ||q0||_{B^{N/p}_{p,1}}
  double data_norm_v = 0;  // ||v0||_{B^{N/p-1}_{p,1}}
};

/// Runs the iteration; non-contraction is reported in the result (and as a
/// message) instead of being thrown. Requires kappa = mu^2.
PicardResult picard_solve(const RealField& q0, const VectorField& v0, const PhysParams& p, double T,
                          const PicardConfig& cfg);

}  // namespace korteweg
