#pragma once

// Isothermal Korteweg system with shallow-water viscosity 2*mu*rho*Du and
// quantum capillarity kappa(rho) = kappa/rho, in primitive (rho, u) and
// effective-velocity (q, v) variables:
//
//   q = ln(rho / rho_bar),   v = u + mu * grad ln(rho).

#include "korteweg/fields.hpp"

namespace korteweg {

struct PhysParams {
  double mu = 0.1;
  double kappa = 0.01;
  double a = 1.0;
  double gamma = 1.0;
  double rho_bar = 1.0;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// kappa == mu^2, the case where the effective system has no residual
  /// capillary term.
  bool is_quantum() const noexcept;

  /// Pressure exponents covered by the global theory for a given dimension:
  /// gamma >= 1 for N <= 2, 1 <= gamma < 7/3 for N = 3, gamma = 1 for N >= 4.
  static bool gamma_admissible(int dim, double gamma) noexcept;
};

struct PrimitiveState {
  RealField rho;
  VectorField u;
};

struct EffectiveState {
  RealField q;
  VectorField v;
};

/// Capillary coefficient kappa(rho) = coeff * rho^exponent.
struct Capillarity {
  double coeff = 1.0;
  double exponent = -1.0;

  double value(double rho) const;
  double derivative(double rho) const;
};

struct RhsOptions {
  /// Project every right-hand side onto the 2/3-rule band.
  bool dealias = true;
  /// When false the mu*Laplacian terms are left out (they are integrated
  /// exactly by the time stepper).
  bool include_diffusion = true;
  /// Densities at or below this value are rejected with DomainError.
  double vacuum_floor = 0.0;
};

/// div K = grad(rho k(rho) lap rho + (k + rho k')|grad rho|^2 / 2) - div(k(rho) grad rho (x) grad rho).
VectorField div_k_form_a(const RealField& rho, const Capillarity& kappa);

/// div K = kappa div(rho grad grad ln rho), valid for kappa(rho) = kappa/rho.
VectorField div_k_form_b(const RealField& rho, double kappa);

/// kappa (rho grad lap ln rho + (rho/2) grad |grad ln rho|^2).
VectorField div_k_log_form(const RealField& rho, double kappa);

RealField pressure(const RealField& rho, const PhysParams& p);

EffectiveState to_effective(const PrimitiveState& s, const PhysParams& p);
PrimitiveState from_effective(const EffectiveState& e, const PhysParams& p);

/// Returns (d rho/dt, du/dt): mass conservation and the momentum balance
/// divided by rho.
PrimitiveState rhs_primitive(const PrimitiveState& s, const PhysParams& p, const RhsOptions& opt = {});

/// Returns (dq/dt, dv/dt). For kappa > mu^2 the residual capillary term
/// (kappa - mu^2) div(rho grad grad ln rho) / rho is included; kappa < mu^2 is
/// rejected.
EffectiveState rhs_effective(const EffectiveState& e, const PhysParams& p, const RhsOptions& opt = {});

/// Throws DomainError unless min(rho) > floor (and rho is finite).
void require_positive_density(const RealField& rho, double floor, const char* where);

}  // namespace korteweg
