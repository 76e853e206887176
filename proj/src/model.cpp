#include "korteweg/model.hpp"

#include <cmath>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg {

void PhysParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "physics." << name << " must be finite and > 0 (got " << v << ")";
      throw ConfigError(os.str());
    }
  };
  positive(mu, "mu");
  positive(kappa, "kappa");
  positive(a, "a");
  positive(rho_bar, "rho_bar");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConfigError("physics.gamma must be >= 1");
}

bool PhysParams::is_quantum() const noexcept { return std::abs(kappa - mu * mu) <= 1e-12; }

bool PhysParams::gamma_admissible(int dim, double gamma) noexcept {
  if (gamma < 1.0) return false;
  if (dim <= 2) return true;
  if (dim == 3) return gamma < 7.0 / 3.0;
  return gamma == 1.0;
}

double Capillarity::value(double rho) const { return coeff * std::pow(rho, exponent); }

double Capillarity::derivative(double rho) const {
  return coeff * exponent * std::pow(rho, exponent - 1.0);
}

void require_positive_density(const RealField& rho, double floor, const char* where) {
  double m = rho[0];
  for (double v : rho.values()) {
    if (!std::isfinite(v)) throw NumericError(std::string(where) + ": non-finite density");
    m = std::min(m, v);
  }
  if (!(m > floor)) {
    std::ostringstream os;
    os.precision(17);
    os << where << ": vacuum (min rho = " << m << ")";
    throw DomainError(os.str());
  }
}

namespace {

RealField log_density(const RealField& rho, double floor, const char* where) {
  require_positive_density(rho, floor, where);
  return map(rho, [](double r) { return std::log(r); });
}

RealField maybe_dealias(RealField f, bool on) { return on ? dealias(f) : f; }

// (H(f) g)_j = sum_i d_ij f g_i
VectorField hessian_times(const TensorField& H, const VectorField& g) {
  const int d = static_cast<int>(g.size());
  VectorField out = zero_vector(g.front().grid());
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) out[j] += H[i][j] * g[i];
  return out;
}

// grad lap f + H(f) grad f = div(e^f grad grad f) / e^f.
VectorField weighted_hessian_divergence(const RealField& lnrho) {
  const VectorField g = grad(lnrho);
  const TensorField H = hessian(lnrho);
  VectorField out = grad(laplacian(lnrho));
  const VectorField hg = hessian_times(H, g);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += hg[j];
  return out;
}

}  // namespace

VectorField div_k_form_a(const RealField& rho, const Capillarity& kappa) {
  require_positive_density(rho, 0.0, "div_k_form_a");
  const Grid& grid = rho.grid();
  const int d = grid.dim();
  const VectorField g = grad(rho);
  const RealField lap = laplacian(rho);
  const RealField g2 = norm_squared(g);

  RealField potential(grid);
  RealField k(grid);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = rho[i];
    const double kv = kappa.value(r);
    k[i] = kv;
    potential[i] = r * kv * lap[i] + 0.5 * (kv + r * kappa.derivative(r)) * g2[i];
  }
  VectorField out = grad(potential);
  for (int j = 0; j < d; ++j) {
    VectorField flux(d, RealField(grid));
    for (int i = 0; i < d; ++i) flux[i] = k * g[i] * g[j];
    out[j] -= div(flux);
  }
  return out;
}

VectorField div_k_form_b(const RealField& rho, double kappa) {
  const RealField lnrho = log_density(rho, 0.0, "div_k_form_b");
  const Grid& grid = rho.grid();
  const int d = grid.dim();
  const TensorField H = hessian(lnrho);
  VectorField out = zero_vector(grid);
  for (int j = 0; j < d; ++j) {
    VectorField flux(d, RealField(grid));
    for (int i = 0; i < d; ++i) flux[i] = rho * H[i][j];
    out[j] = kappa * div(flux);
  }
  return out;
}

VectorField div_k_log_form(const RealField& rho, double kappa) {
  const RealField lnrho = log_density(rho, 0.0, "div_k_log_form");
  const VectorField a = grad(laplacian(lnrho));
  const VectorField b = grad(norm_squared(grad(lnrho)));
  VectorField out = zero_vector(rho.grid());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = kappa * (rho * a[j] + 0.5 * (rho * b[j]));
  return out;
}

RealField pressure(const RealField& rho, const PhysParams& p) {
  require_positive_density(rho, 0.0, "pressure");
  if (p.gamma == 1.0) return p.a * rho;
  return map(rho, [&](double r) { return p.a * std::pow(r, p.gamma); });
}

EffectiveState to_effective(const PrimitiveState& s, const PhysParams& p) {
  const RealField lnrho = log_density(s.rho, 0.0, "to_effective");
  EffectiveState e{map(s.rho, [&](double r) { return std::log(r / p.rho_bar); }), s.u};
  const VectorField g = grad(lnrho);
  for (std::size_t j = 0; j < e.v.size(); ++j) e.v[j] += p.mu * g[j];
  return e;
}

PrimitiveState from_effective(const EffectiveState& e, const PhysParams& p) {
  PrimitiveState s{map(e.q, [&](double q) { return p.rho_bar * std::exp(q); }), e.v};
  const VectorField g = grad(e.q);
  for (std::size_t j = 0; j < s.u.size(); ++j) s.u[j] -= p.mu * g[j];
  return s;
}

PrimitiveState rhs_primitive(const PrimitiveState& s, const PhysParams& p, const RhsOptions& opt) {
  const Grid& grid = s.rho.grid();
  const int d = grid.dim();
  const RealField lnrho = log_density(s.rho, opt.vacuum_floor, "rhs_primitive");
  const VectorField glog = grad(lnrho);

  VectorField flux(d, RealField(grid));
  for (int j = 0; j < d; ++j) flux[j] = s.rho * s.u[j];
  PrimitiveState out{maybe_dealias(-div(flux), opt.dealias), zero_vector(grid)};

  // Strain tensor Du and div u.
  TensorField gu(d);
  for (int j = 0; j < d; ++j) gu[j] = grad(s.u[j]);  // gu[j][i] = d_i u_j
  RealField divu(grid);
  for (int j = 0; j < d; ++j) divu += gu[j][j];
  const VectorField grad_divu = grad(divu);

  // grad P / rho = a gamma rho^(gamma-1) grad ln rho
  RealField pfac = p.gamma == 1.0 ? RealField(grid, p.a)
                                  : map(s.rho, [&](double r) { return p.a * p.gamma * std::pow(r, p.gamma - 1.0); });
  const VectorField capillary = weighted_hessian_divergence(lnrho);

  for (int j = 0; j < d; ++j) {
    RealField r(grid);
    // -(u . grad) u_j
    for (int i = 0; i < d; ++i) r -= s.u[i] * gu[j][i];
    // div(2 mu rho Du)/rho = mu (lap u + grad div u) + 2 mu Du . grad ln rho;
    // the mu lap u part is optional.
    if (opt.include_diffusion) r += p.mu * laplacian(s.u[j]);
    r += p.mu * grad_divu[j];
    for (int i = 0; i < d; ++i) r += p.mu * ((gu[j][i] + gu[i][j]) * glog[i]);
    r -= pfac * glog[j];
    r += p.kappa * capillary[j];
    out.u[j] = maybe_dealias(std::move(r), opt.dealias);
  }
  return out;
}

EffectiveState rhs_effective(const EffectiveState& e, const PhysParams& p, const RhsOptions& opt) {
  if (p.kappa < p.mu * p.mu - 1e-12)
    throw ConfigError("rhs_effective: kappa < mu^2 has no effective-velocity reduction");
  const Grid& grid = e.q.grid();
  const int d = grid.dim();
  if (opt.vacuum_floor > 0.0) {
    const double min_rho = p.rho_bar * std::exp(min_value(e.q));
    if (!(min_rho > opt.vacuum_floor)) throw DomainError("rhs_effective: vacuum");
  }
  const VectorField gq = grad(e.q);

  // u = v - mu grad q
  VectorField u = e.v;
  for (int j = 0; j < d; ++j) u[j] -= p.mu * gq[j];

  RealField dq = p.mu * norm_squared(gq) - dot(e.v, gq) - div(e.v);
  if (opt.include_diffusion) dq += p.mu * laplacian(e.q);

  RealField pfac = p.gamma == 1.0
                       ? RealField(grid, p.a)
                       : map(e.q, [&](double q) {
                           return p.a * p.gamma * std::pow(p.rho_bar * std::exp(q), p.gamma - 1.0);
                         });
  const double residual = p.is_quantum() ? 0.0 : p.kappa - p.mu * p.mu;
  VectorField capillary;
  if (residual != 0.0) capillary = weighted_hessian_divergence(e.q);

  EffectiveState out{maybe_dealias(std::move(dq), opt.dealias), zero_vector(grid)};
  for (int j = 0; j < d; ++j) {
    const VectorField gv = grad(e.v[j]);
    RealField r = p.mu * dot(gq, gv) - dot(u, gv) - pfac * gq[j];
    if (opt.include_diffusion) r += p.mu * laplacian(e.v[j]);
    if (residual != 0.0) r += residual * capillary[j];
    out.v[j] = maybe_dealias(std::move(r), opt.dealias);
  }
  return out;
}

}  // namespace korteweg
