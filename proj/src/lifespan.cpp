#include "korteweg/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg {

void LifespanInputs::validate() const {
  for (double v : {norm_q0_crit, norm_v0_crit, norm_q0_sur, norm_v0_sur})
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("lifespan: norms must be finite and >= 0");
  for (double v : {k.C, k.C1, k.c, k.mu, k.eps})
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("lifespan: constants must be finite and > 0");
  if (!(k.eps_prime > 0.0 && k.eps_prime <= 1.0)) throw ConfigError("lifespan: eps_prime must lie in (0, 1]");
}

bool LifespanInputs::p_in_window() const {
  if (dim <= 0 || !(p > 0.0) || k.eps_prime >= 1.0) return false;
  return p > dim / (1.0 - k.eps_prime) && p < 2.0 * dim;
}

LifespanResult lifespan_lower_bound(const LifespanInputs& in) {
  in.validate();
  const auto& k = in.k;
  const double e = 2.0 / k.eps_prime;
  auto surcritical = [&](double norm) {
    if (norm == 0.0) return kInf;
    // 2 (c mu)^{e-1} eps^e / ((8C)^e norm^e), evaluated in log space.
    const double log_t = std::log(2.0) + (e - 1.0) * std::log(k.c * k.mu) + e * std::log(k.eps) -
                         e * std::log(8.0 * k.C) - e * std::log(norm);
    return std::exp(log_t);
  };
  LifespanResult r;
  r.branches[0] = surcritical(in.norm_q0_sur);
  r.branches[1] = surcritical(in.norm_v0_sur);
  r.branches[2] = k.C1 / 4.0;
  const double a0 = in.a0();
  r.branches[3] = a0 == 0.0 ? kInf : 1.0 / (16.0 * k.C1 * k.C1 * a0 * std::pow(1.0 + std::sqrt(a0), 2));
  r.active = static_cast<int>(std::min_element(r.branches.begin(), r.branches.end()) - r.branches.begin());
  r.T = r.branches[static_cast<std::size_t>(r.active)];
  return r;
}

double epsilon_from_data(double A0, double C1) {
  if (!(A0 >= 0.0) || !(C1 > 0.0)) throw ConfigError("epsilon_from_data: need A0 >= 0 and C1 > 0");
  return 1.0 / (4.0 * C1 * (1.0 + 2.0 * std::sqrt(A0) + A0));
}

LifespanInputs lifespan_inputs(const RealField& q0, const VectorField& v0, double p, const LifespanConstants& k,
                               const BumpPair& bumps) {
  const int N = q0.grid().dim();
  const double s = N / p;
  LifespanInputs in;
  in.k = k;
  in.dim = N;
  in.p = p;
  in.norm_q0_crit = besov_norm(q0, {s, p, 1.0}, bumps);
  in.norm_v0_crit = besov_norm(v0, {s - 1.0, p, 1.0}, bumps);
  in.norm_q0_sur = besov_norm(q0, {s + k.eps_prime, p, 1.0}, bumps);
  in.norm_v0_sur = besov_norm(v0, {s - 1.0 + k.eps_prime, p, 1.0}, bumps);
  return in;
}

RestartSchedule restart_schedule(const std::function<LifespanInputs(double)>& norms_at, double horizon,
                                 double fraction, double floor, std::size_t max_entries) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("restart_schedule: fraction must lie in (0, 1]");
  if (!(horizon >= 0.0)) throw ConfigError("restart_schedule: horizon must be >= 0");
  RestartSchedule out;
  double t = 0.0;
  while (t < horizon) {
    const LifespanResult r = lifespan_lower_bound(norms_at(t));
    if (!(r.T >= floor)) {
      std::ostringstream os;
      os << "schedule stalled at t = " << t << ": bound " << r.T << " below floor " << floor;
      out.stalled = true;
      out.message = os.str();
      return out;
    }
    out.entries.push_back({t, r.T, r.active_name()});
    if (out.entries.size() >= max_entries) {
      out.stalled = true;
      out.message = "schedule exceeded the maximal number of restarts";
      return out;
    }
    t += fraction * r.T;
  }
  return out;
}

Calibration calibrate_c1(const LifespanInputs& reference, double T_target) {
  if (!(T_target > 0.0)) throw ConfigError("calibrate_c1: target time must be > 0");
  LifespanInputs in = reference;
  auto bound = [&](double c1) {
    in.k.C1 = c1;
    return lifespan_lower_bound(in).T;
  };
  // min(C1/4, 1/(16 C1^2 X)) peaks where both agree: C1^3 = 1/(4X).
  const double a0 = reference.a0();
  const double X = a0 * std::pow(1.0 + std::sqrt(a0), 2);
  const double c1_max = X > 0.0 ? std::cbrt(1.0 / (4.0 * X)) : 4.0 * T_target;
  Calibration cal;
  cal.T_target = T_target;
  if (bound(c1_max) < T_target) {
    cal.C1 = c1_max;
    cal.T_bound = bound(c1_max);
    return cal;
  }
  double lo = 0.0, hi = c1_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bound(mid) < T_target ? lo : hi) = mid;
  }
  cal.C1 = hi;
  cal.T_bound = bound(hi);
  cal.attained = std::abs(cal.T_bound - T_target) <= 1e-9 * T_target;
  return cal;
}

}  // namespace korteweg
