#include "korteweg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg {

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

RealField sqrt_field(const RealField& rho) {
  return map(rho, [](double r) { return std::sqrt(r); });
}

}  // namespace

double pi_potential(double rho, const PhysParams& p) {
  if (!(rho > 0.0)) throw DomainError("pi_potential: non-positive density");
  const double rb = p.rho_bar;
  if (p.gamma == 1.0) return p.a * (rho * std::log(rho / rb) + rb - rho);
  const double g = p.gamma;
  return p.a / (g - 1.0) * (std::pow(rho, g) - std::pow(rb, g) - g * std::pow(rb, g - 1.0) * (rho - rb));
}

RealField pi_potential(const RealField& rho, const PhysParams& p) {
  require_positive_density(rho, 0.0, "pi_potential");
  return map(rho, [&](double r) { return pi_potential(r, p); });
}

double energy(const PrimitiveState& s, const PhysParams& p) {
  const RealField pi = pi_potential(s.rho, p);
  const RealField kinetic = 0.5 * (s.rho * norm_squared(s.u));
  const RealField capillary = (2.0 * p.kappa) * norm_squared(grad(sqrt_field(s.rho)));
  return integral(kinetic + pi + capillary);
}

double bd_entropy(const EffectiveState& e, const PhysParams& p) {
  const RealField rho = map(e.q, [&](double q) { return p.rho_bar * std::exp(q); });
  RealField density = 0.5 * (rho * norm_squared(e.v)) + pi_potential(rho, p);
  const double residual = p.is_quantum() ? 0.0 : p.kappa - p.mu * p.mu;
  if (residual != 0.0) density += (2.0 * residual) * norm_squared(grad(sqrt_field(rho)));
  return integral(density);
}

double sqrt_h1_norm(const RealField& rho, double rho_bar) {
  require_positive_density(rho, 0.0, "sqrt_h1_norm");
  const RealField s = sqrt_field(rho);
  const RealField dev = map(s, [&](double x) { return x - std::sqrt(rho_bar); });
  return lp_norm(dev, 2.0) + l2_norm(grad(s));
}

double jungel_integrand(const RealField& rho) {
  require_positive_density(rho, 0.0, "jungel");
  const RealField l = laplacian(sqrt_field(rho));
  return integral(l * l);
}

double jungel_accumulate(const std::vector<RealField>& rho_series, const std::vector<double>& times) {
  if (rho_series.size() != times.size()) throw ConfigError("jungel_accumulate: series and times differ in length");
  std::vector<double> y;
  y.reserve(rho_series.size());
  for (const auto& r : rho_series) y.push_back(jungel_integrand(r));
  return trapezoid(times, y);
}

DissipationRates dissipation_rates(const PrimitiveState& s, const EffectiveState& e, const PhysParams& p) {
  const Grid& grid = s.rho.grid();
  const int d = grid.dim();
  DissipationRates out;

  TensorField gu(d);
  for (int j = 0; j < d; ++j) gu[j] = grad(s.u[j]);
  RealField strain(grid);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const RealField dij = 0.5 * (gu[j][i] + gu[i][j]);
      strain += dij * dij;
    }
  out.u = 2.0 * p.mu * integral(s.rho * strain);

  RealField gv2(grid);
  for (int j = 0; j < d; ++j) gv2 += norm_squared(grad(e.v[j]));
  out.v = p.mu * integral(s.rho * gv2);
  const double residual = p.is_quantum() ? 0.0 : p.kappa - p.mu * p.mu;
  if (residual > 0.0) {
    const TensorField H = hessian(map(s.rho, [](double r) { return std::log(r); }));
    RealField h2(grid);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) h2 += H[i][j] * H[i][j];
    out.v += p.mu * residual * integral(s.rho * h2);
  }

  // P'(rho)/rho = a gamma rho^(gamma-2)
  const RealField weight = map(s.rho, [&](double r) { return p.a * p.gamma * std::pow(r, p.gamma - 2.0); });
  out.density = p.mu * integral(weight * norm_squared(grad(s.rho)));
  return out;
}

double weighted_velocity_norm(const RealField& rho, const VectorField& v, double p) {
  const RealField speed2 = norm_squared(v);
  RealField f(rho.grid());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(rho[i], 1.0 / p) * std::sqrt(speed2[i]);
  return lp_norm(f, p);
}

double lp_gain_rhs(double p, int dim, double a, double A0, double W, double t) {
  const double N2 = static_cast<double>(dim) * dim;
  const double half_a2 = 0.5 * a * a;
  const double poly = N2 * 2.0 * p * p / (p - 2.0) + 2.0 * p * p * (p - 4.0);
  const double growth =
      std::pow(W, 4.0 / (p * (p - 2.0))) * std::pow(half_a2, 1.0 / p) * std::pow(poly, 1.0 / p) * std::pow(t, 1.0 / p);
  const double rate = (1.0 / p) * std::pow(W, 4.0 / (p - 2.0)) * half_a2 * (N2 * (p - 4.0) / (p - 2.0) + 1.0);
  return std::pow(2.0, 1.0 / p) * (A0 + growth) * std::exp(rate * t);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "t",      "mass",     "energy",  "bd_entropy",  "dissip_u",   "dissip_v",   "dissip_density",
      "jungel", "min_rho",  "max_inv_rho", "h1_sqrt", "lp_gain_p4", "lp_gain_p8", "lp_gain_p16"};
  return cols;
}

std::vector<double> csv_values(const DiagnosticsRow& r) {
  auto gain = [&](double p) {
    auto it = r.lp_gain.find(p);
    return it == r.lp_gain.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
  };
  return {r.t,      r.mass,    r.energy,      r.bd_entropy, r.dissip_u, r.dissip_v,  r.dissip_density,
          r.jungel, r.min_rho, r.max_inv_rho, r.h1_sqrt,    gain(4.0),  gain(8.0),   gain(16.0)};
}

// ---------------------------------------------------------------------------

DiagnosticsAccumulator::DiagnosticsAccumulator(const PhysParams& params) : params_(params) {}

std::optional<DiagnosticsRow> DiagnosticsAccumulator::observe(const PrimitiveState& s, const EffectiveState& e,
                                                              double t, bool emit) {
  const DissipationRates rate = dissipation_rates(s, e, params_);
  const double jr = jungel_integrand(s.rho);
  if (started_) {
    const double h = t - t_prev_;
    total_.u += 0.5 * h * (rate.u + rate_prev_.u);
    total_.v += 0.5 * h * (rate.v + rate_prev_.v);
    total_.density += 0.5 * h * (rate.density + rate_prev_.density);
    jungel_total_ += 0.5 * h * (jr + jungel_prev_);
  }
  started_ = true;
  t_prev_ = t;
  rate_prev_ = rate;
  jungel_prev_ = jr;
  w_sup_ = std::max(w_sup_, weighted_velocity_norm(s.rho, e.v, 2.0));
  if (!emit) return std::nullopt;

  DiagnosticsRow row;
  row.t = t;
  row.mass = integral(s.rho);
  row.energy = energy(s, params_);
  row.bd_entropy = bd_entropy(e, params_);
  row.dissip_u = total_.u;
  row.dissip_v = total_.v;
  row.dissip_density = total_.density;
  row.jungel = jungel_total_;
  row.min_rho = min_value(s.rho);
  row.max_inv_rho = 1.0 / row.min_rho;
  row.h1_sqrt = sqrt_h1_norm(s.rho, params_.rho_bar);
  for (double p : kGainExponents) row.lp_gain[p] = weighted_velocity_norm(s.rho, e.v, p);
  row.w_sup = w_sup_;
  return row;
}

std::map<std::string, double> DiagnosticsAccumulator::save() const {
  return {{"started", started_ ? 1.0 : 0.0},
          {"t_prev", t_prev_},
          {"rate_u", rate_prev_.u},
          {"rate_v", rate_prev_.v},
          {"rate_density", rate_prev_.density},
          {"rate_jungel", jungel_prev_},
          {"total_u", total_.u},
          {"total_v", total_.v},
          {"total_density", total_.density},
          {"total_jungel", jungel_total_},
          {"w_sup", w_sup_}};
}

void DiagnosticsAccumulator::restore(const std::map<std::string, double>& saved) {
  auto get = [&](const char* key) {
    auto it = saved.find(key);
    if (it == saved.end()) throw IoError(std::string("checkpoint lacks accumulator entry '") + key + "'");
    return it->second;
  };
  started_ = get("started") != 0.0;
  t_prev_ = get("t_prev");
  rate_prev_ = {get("rate_u"), get("rate_v"), get("rate_density")};
  jungel_prev_ = get("rate_jungel");
  total_ = {get("total_u"), get("total_v"), get("total_density")};
  jungel_total_ = get("total_jungel");
  w_sup_ = get("w_sup");
}

// ---------------------------------------------------------------------------

namespace {

// A resumed record starts with nonzero accumulated dissipation, so the reference includes it.
InequalityVerdict check_one(const DiagnosticsRecord& rec, double tol, double (*lhs)(const DiagnosticsRow&),
                            double (*start)(const DiagnosticsRow&)) {
  InequalityVerdict v;
  if (rec.rows.empty()) return v;
  const double e0 = start(rec.rows.front());
  const double limit = e0 * (1.0 + tol);
  for (const auto& row : rec.rows) {
    const double l = lhs(row);
    const double excess = e0 > 0.0 ? l / limit - 1.0 : l - limit;
    v.worst_excess = row.t == rec.rows.front().t ? excess : std::max(v.worst_excess, excess);
    if (!(l <= limit) && !v.first_violation) {
      v.holds = false;
      v.first_violation = row.t;
    }
  }
  return v;
}

}  // namespace

EnergyVerdict check_energy_inequality(const DiagnosticsRecord& rec, double tol) {
  EnergyVerdict out;
  out.energy = check_one(
      rec, tol, [](const DiagnosticsRow& r) { return r.energy + r.dissip_u; },
      [](const DiagnosticsRow& r) { return r.energy + r.dissip_u; });
  out.bd_entropy = check_one(
      rec, tol, [](const DiagnosticsRow& r) { return r.bd_entropy + r.dissip_v + r.dissip_density; },
      [](const DiagnosticsRow& r) { return r.bd_entropy + r.dissip_v + r.dissip_density; });
  return out;
}

LpGainResult lp_gain_check(const DiagnosticsRecord& rec, double p, double tol) {
  if (p < 4.0) throw ConfigError("lp_gain_check: p must be >= 4");
  LpGainResult out;
  out.p = p;
  if (rec.params.gamma != 1.0 || !rec.params.is_quantum()) {
    out.valid = false;
    out.message = "inequality constants valid only for gamma=1";
  }
  if (rec.rows.empty()) return out;
  auto value = [&](const DiagnosticsRow& r) {
    auto it = r.lp_gain.find(p);
    if (it == r.lp_gain.end()) throw DomainError("lp_gain_check: exponent not recorded");
    return it->second;
  };
  const double A0 = value(rec.rows.front());
  const double t0 = rec.rows.front().t;
  for (const auto& row : rec.rows) {
    out.times.push_back(row.t);
    out.lhs.push_back(value(row));
    if (!out.valid) continue;
    const double r = lp_gain_rhs(p, rec.dim, rec.params.a, A0, row.w_sup, row.t - t0);
    out.rhs.push_back(r);
    const double lhs = out.lhs.back();
    out.worst_ratio = std::max(out.worst_ratio, r > 0.0 ? lhs / r : (lhs > 0.0 ? INFINITY : 0.0));
    if (!(lhs <= r * (1.0 + tol))) out.verdict = false;
  }
  if (!out.valid) out.verdict = false;
  return out;
}

// ---------------------------------------------------------------------------

double level_set_measure(const RealField& rho, double alpha, double k) {
  std::size_t count = 0;
  for (double r : rho.values())
    if (std::pow(r, -alpha) >= k) ++count;
  return static_cast<double>(count) * rho.grid().cell_volume();
}

LevelSetReport level_set_report(const DensitySeries& run, double alpha, double k, const LevelSetExponents& ex) {
  if (run.rho.empty() || run.rho.size() != run.times.size())
    throw DomainError("level_set_report: empty or inconsistent density series");
  if (!(alpha > 0.0)) throw ConfigError("level_set_report: alpha must be > 0");
  if (!(k >= 1.0)) throw ConfigError("level_set_report: level k must be >= 1");
  const int N = run.rho.front().grid().dim();
  if (!(ex.kappa1 > 0.0 && ex.kappa1 < 1.0) || !(ex.q > 1.0) || !(ex.r > 1.0))
    throw ConfigError("level_set_report: need q > 1, r > 1 and 0 < kappa1 < 1");
  const double relation = 1.0 / ex.r + N / (2.0 * ex.q) - (1.0 - ex.kappa1);
  if (std::abs(relation) > 1e-9) {
    std::ostringstream os;
    os << "level_set_report: exponents violate 1/r + N/(2q) = 1 - kappa1 (residual " << relation << ")";
    throw ConfigError(os.str());
  }

  LevelSetReport rep;
  rep.alpha = alpha;
  rep.k = k;
  rep.r = ex.r;
  rep.q = ex.q;
  rep.kappa1 = ex.kappa1;
  rep.q1 = 2.0 * ex.q / (ex.q - 1.0);
  rep.r1 = 2.0 * ex.r / (ex.r - 1.0);
  rep.kappa = 2.0 * ex.kappa1 / N;
  rep.mu_exponent = rep.r1 / rep.q1;
  rep.hypothesis_exponent = (1.0 + rep.kappa) / (rep.r1 * (1.0 + rep.kappa));
  rep.times = run.times;

  std::vector<double> powered;
  std::vector<double> grad_sq;
  double sup_l2 = 0.0;
  for (const auto& rho : run.rho) {
    require_positive_density(rho, 0.0, "level_set_report");
    const double m = level_set_measure(rho, alpha, k);
    rep.measure_series.push_back(m);
    powered.push_back(m > 0.0 ? std::pow(m, rep.mu_exponent) : 0.0);

    const RealField f = map(rho, [&](double r) { return std::pow(r, -alpha); });
    const RealField trunc = map(f, [&](double x) { return std::max(x - k, 0.0); });
    sup_l2 = std::max(sup_l2, lp_norm(trunc, 2.0));
    const VectorField g = grad(f);
    RealField masked = norm_squared(g);
    for (std::size_t i = 0; i < masked.size(); ++i)
      if (!(f[i] > k)) masked[i] = 0.0;
    grad_sq.push_back(integral(masked));
  }
  rep.mu_k = trapezoid(run.times, powered);
  rep.q_norm = sup_l2 + std::sqrt(trapezoid(run.times, grad_sq));
  return rep;
}

DeGiorgiResult degiorgi_recursion(double c, double b, double eps, double y0, int n_max) {
  if (!(c > 0.0) || !(eps > 0.0) || !(b >= 1.0) || !(y0 >= 0.0) || n_max < 0)
    throw ConfigError("degiorgi_recursion: need c > 0, eps > 0, b >= 1, y0 >= 0, n_max >= 0");
  DeGiorgiResult out;
  out.theta = std::exp(-std::log(c) / eps - std::log(b) / (eps * eps));
  out.vanishes = y0 <= out.theta && b > 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (y0 == 0.0) {
      out.bound.push_back(0.0);
      continue;
    }
    const double g = std::pow(1.0 + eps, n);
    const double log_bound =
        (g - 1.0) / eps * std::log(c) + ((g - 1.0) / (eps * eps) - n / eps) * std::log(b) + g * std::log(y0);
    out.bound.push_back(std::exp(log_bound));
  }
  return out;
}

double vacuum_bound_formula(const VacuumBoundInputs& in) {
  const int N = in.dim;
  if (!(in.q > N)) throw DomainError("vacuum bound: need q > N");
  if (!(in.rho_bar > 1.0)) throw DomainError("vacuum bound: need rho_bar > 1");
  if (!(in.t1 >= 0.0) || !(in.q3 >= 1.0)) throw DomainError("vacuum bound: need t1 >= 0 and q3 >= 1");
  const double kappa = 1.0 / N;
  const double r = 1.0 / (0.5 - N / (2.0 * in.q));
  const double r1 = 2.0 * r / (r - 1.0);
  const double q1 = 2.0 * in.q / (in.q - 1.0);
  const double gamma_dg = in.c_alpha_mu * std::pow(in.inv_rho_sup, 1.0 / (2.0 * in.q)) * in.weighted_v_sup *
                          std::pow(in.t1, 1.0 / r);
  const double e = in.q3 / q1;
  const double tail = std::pow(2.0, 2.0 / kappa + 1.0 / (kappa * kappa)) *
                      std::pow(in.beta * gamma_dg, 1.0 + 1.0 / kappa) * std::pow(in.t1, 1.0 / r1) *
                      std::pow(1.0 / (std::sqrt(in.rho_bar) - 1.0), e) * std::pow(in.sqrt_dev_sup, e);
  return 2.0 * std::max(1.0, in.k0_hat) * (1.0 + tail);
}

VacuumBoundReport vacuum_bound_estimate(const DensitySeries& run, double alpha, double q_exp, double t1,
                                        const PhysParams& p, double q3, double beta, double c_alpha_mu) {
  if (run.rho.empty() || run.rho.size() != run.times.size() || run.v.size() != run.rho.size())
    throw DomainError("vacuum_bound_estimate: run statistics missing (need densities and velocities)");
  if (t1 < run.times.front() || t1 > run.times.back())
    throw DomainError("vacuum_bound_estimate: t1 outside the run horizon");
  VacuumBoundReport rep;
  VacuumBoundInputs& in = rep.inputs;
  in.dim = run.rho.front().grid().dim();
  in.alpha = alpha;
  in.q = q_exp;
  in.q3 = q3;
  in.t1 = t1;
  in.rho_bar = p.rho_bar;
  in.beta = beta;
  in.c_alpha_mu = c_alpha_mu;
  in.k0_hat = std::pow(min_value(run.rho.front()), -alpha);
  in.inv_rho_sup = 0.0;
  in.weighted_v_sup = 0.0;
  in.sqrt_dev_sup = 0.0;
  rep.measured = 0.0;
  for (std::size_t i = 0; i < run.rho.size() && run.times[i] <= t1; ++i) {
    const RealField& rho = run.rho[i];
    require_positive_density(rho, 0.0, "vacuum_bound_estimate");
    const double m = min_value(rho);
    in.inv_rho_sup = std::max(in.inv_rho_sup, 1.0 / m);
    rep.measured = std::max(rep.measured, std::pow(m, -alpha));
    in.weighted_v_sup = std::max(in.weighted_v_sup, weighted_velocity_norm(rho, run.v[i], 2.0 * q_exp));
    const RealField dev = map(rho, [&](double r) { return std::sqrt(r) - std::sqrt(p.rho_bar); });
    in.sqrt_dev_sup = std::max(in.sqrt_dev_sup, lp_norm(dev, q3));
  }
  rep.bound = vacuum_bound_formula(in);
  rep.kappa = 1.0 / in.dim;
  rep.r = 1.0 / (0.5 - in.dim / (2.0 * q_exp));
  rep.r1 = 2.0 * rep.r / (rep.r - 1.0);
  rep.q1 = 2.0 * q_exp / (q_exp - 1.0);
  rep.gamma_dg = c_alpha_mu * std::pow(in.inv_rho_sup, 1.0 / (2.0 * q_exp)) * in.weighted_v_sup * std::pow(t1, 1.0 / rep.r);
  rep.consistent = rep.bound >= rep.measured;
  return rep;
}

}  // namespace korteweg
