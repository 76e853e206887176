// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "app/presets.hpp"
#include "app/verify.hpp"
#include "korteweg/diagnostics.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/lifespan.hpp"
#include "korteweg/lp_besov.hpp"
#include "korteweg/solver.hpp"
#include "oracles/frozen_oracles.hpp"

using namespace korteweg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

const app::VerifyCase& find_case(const app::SuiteReport& r, const std::string& name) {
  for (const auto& c : r.cases)
    if (c.name == name) return c;
  throw ConfigError("missing verify case " + name);
}

Outcome suite_outcome(const std::string& suite) {
  const app::SuiteReport r = app::run_suite(suite);
  std::ostringstream os;
  for (const auto& c : r.cases) os << (c.pass ? "" : "!") << c.name << "=" << c.value << " ";
  return {r.pass(), os.str()};
}

// Small-data runs shared by the energy, mass and gain criteria.
struct SmallRun {
  std::string label;
  PhysParams params;
  app::InitialSpec init;
  RunResult result;
};

std::vector<SmallRun>& small_runs() {
  static std::vector<SmallRun> runs = [] {
    std::vector<SmallRun> out;
    auto add = [&](std::string label, double mu, double kappa, std::string preset, double amplitude, std::uint64_t seed) {
      SmallRun r;
      r.label = std::move(label);
      r.params.mu = mu;
      r.params.kappa = kappa;
      r.init.preset = std::move(preset);
      r.init.amplitude = amplitude;
      r.init.seed = seed;
      r.init.modes = 6;
      out.push_back(std::move(r));
    };
    add("bump_a0.1_quantum", 0.1, 0.01, "smooth_bump", 0.1, 1);
    add("bump_a0.05_kappa0.02", 0.1, 0.02, "smooth_bump", 0.05, 1);
    add("bump_a0.2_quantum_mu0.15", 0.15, 0.0225, "smooth_bump", 0.2, 1);
    add("random_seed7_quantum", 0.1, 0.01, "random_bandlimited", 0.1, 7);
    add("random_seed11_kappa0.015", 0.1, 0.015, "random_bandlimited", 0.1, 11);
    const Grid g(1, 256);
    for (auto& r : out) {
      SolverConfig c;
      c.dt = 1e-4;
      c.t_end = 1.0;
      c.diag_stride = 100;
      r.result = run(SolverState::from_primitive(app::make_initial(g, r.params, r.init), c.formulation, r.params),
                     r.params, c);
    }
    return out;
  }();
  return runs;
}

Outcome c1_divk() { return suite_outcome("divk"); }

Outcome c2_equivalence() {
  const app::SuiteReport r = app::run_suite("equivalence");
  const auto& c = find_case(r, "density_sup_difference");
  return {r.pass() && c.value < 1e-5, fmt("sup|rho_prim - rho_eff| = %.3e (< 1e-5)", c.value)};
}

Outcome c3_energy() {
  bool pass = true;
  std::ostringstream os;
  for (const auto& r : small_runs()) {
    const EnergyVerdict v = check_energy_inequality(r.result.record, 1e-4);
    const bool ok = r.result.completed && r.result.record.rows.size() == 101 && v.holds();
    pass = pass && ok;
    os << r.label << ":" << (ok ? "ok" : "VIOLATED") << "(" << v.energy.worst_excess << "," << v.bd_entropy.worst_excess
       << ") ";
  }
  return {pass, os.str()};
}

Outcome c4_mass() {
  double worst = 0.0;
  for (const auto& r : small_runs()) {
    const auto& rows = r.result.record.rows;
    for (const auto& row : rows) worst = std::max(worst, std::abs(row.mass - rows.front().mass) / rows.front().mass);
  }
  return {worst < 1e-10, fmt("max relative mass drift = %.3e (< 1e-10)", worst)};
}

Outcome c5_gain() {
  bool pass = true;
  int checked = 0;
  double worst = 0.0;
  for (const auto& r : small_runs()) {
    if (!r.params.is_quantum() || r.params.gamma != 1.0) continue;
    for (double p : {4.0, 8.0, 16.0}) {
      const LpGainResult g = lp_gain_check(r.result.record, p, 1e-3);
      pass = pass && g.valid && g.verdict;
      worst = std::max(worst, g.worst_ratio);
      ++checked;
    }
  }
  pass = pass && checked == 9;
  return {pass, fmt("%g checks, worst lhs/rhs = %.4f (<= 1.001)", checked, worst)};
}

Outcome c6_heat() {
  const app::SuiteReport r = app::run_suite("heat");
  const auto& v = find_case(r, "two_sided_block_bound_violations");
  return {r.pass(), fmt("block bound violations at t in {0.01,0.1,1}: %g", v.value)};
}

Outcome c7_lp() {
  const app::SuiteReport b = app::run_suite("besov");
  const app::SuiteReport y = app::run_suite("bony");
  const double pu = find_case(b, "partition_of_unity").value;
  const double rec = find_case(b, "reconstruction_sup").value;
  const double bern = find_case(b, "bernstein_ratio_over_8_3").value;
  const double bony = find_case(y, "reconstruction_rel_sup").value;
  const bool pass = pu < 1e-12 && rec < 1e-10 && bern <= 1.0 + 1e-12 && bony < 1e-8 && b.pass() && y.pass();
  std::ostringstream os;
  os << "partition=" << pu << " reconstruction=" << rec << " bernstein/(8/3)=" << bern << " bony=" << bony;
  return {pass, os.str()};
}

Outcome c8_degiorgi() {
  const app::SuiteReport r = app::run_suite("degiorgi");
  double closed_form_err = 0.0;
  const double bounds[] = {oracle::kDeGiorgiBound_0, oracle::kDeGiorgiBound_1, oracle::kDeGiorgiBound_2,
                           oracle::kDeGiorgiBound_3, oracle::kDeGiorgiBound_4};
  const DeGiorgiResult d = degiorgi_recursion(1.0, 2.0, 1.0, 0.4, 4);
  for (int n = 0; n <= 4; ++n) closed_form_err = std::max(closed_form_err, std::abs(d.bound[n] / bounds[n] - 1.0));
  const double saturation = find_case(r, "saturation_matches_closed_form").value;
  const double mismatches = find_case(r, "verdict_mismatches").value;
  const bool pass = r.pass() && closed_form_err < 1e-12 && saturation < 1e-12 && mismatches == 0.0;
  return {pass, fmt("oracle rel err %.2e, saturation rel err %.2e, verdict mismatches %g", closed_form_err, saturation,
                    mismatches)};
}

Outcome c9_lifespan() {
  LifespanInputs in;
  in.norm_q0_crit = in.norm_v0_crit = in.norm_q0_sur = in.norm_v0_sur = 1.0;
  in.dim = 1;
  in.p = 1.5;
  const LifespanResult r = lifespan_lower_bound(in);
  const double rel = std::abs(r.T / oracle::kLifespanUnit - 1.0);
  const bool branch = std::string(r.active_name()) == "critical_a0";

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.01, 3.0), grow(1.0, 4.0);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    LifespanInputs a = in;
    a.norm_q0_crit = u(rng);
    a.norm_v0_crit = u(rng);
    a.norm_q0_sur = u(rng);
    a.norm_v0_sur = u(rng);
    LifespanInputs b = a;
    double* targets[] = {&b.norm_q0_crit, &b.norm_v0_crit, &b.norm_q0_sur, &b.norm_v0_sur};
    *targets[i % 4] *= grow(rng);
    if (lifespan_lower_bound(b).T > lifespan_lower_bound(a).T) ++failures;
  }
  return {rel < 1e-6 && branch && failures == 0,
          fmt("T = %.10e (rel err %.2e), monotonicity failures %g/1000", r.T, rel, failures) + " branch=" +
              r.active_name()};
}

Outcome c10_picard() {
  const Grid g(1, 128);
  PhysParams p;
  p.mu = 0.1;
  p.kappa = 0.01;
  app::InitialSpec spec;
  spec.amplitude = 1e-3;
  const EffectiveState e = to_effective(app::make_initial(g, p, spec), p);
  const PicardConfig pc;

  // Empirical contraction horizon: the largest tested T whose worst ratio is at most 1/2.
  double T_c = 0.0;
  for (double T : {2.0, 1.0, 0.5, 0.25, 0.125, 0.0625}) {
    const PicardResult r = picard_solve(e.q, e.v, p, T, pc);
    if (r.converged && !r.ratios.empty() && *std::max_element(r.ratios.begin(), r.ratios.end()) <= 0.5) {
      T_c = T;
      break;
    }
  }
  if (T_c == 0.0) return {false, "no contracting horizon found"};

  LifespanConstants k;
  k.eps_prime = 0.25;
  LifespanInputs in = lifespan_inputs(e.q, e.v, 1.5, k, build_bumps());
  const Calibration cal = calibrate_c1(in, T_c);
  in.k.C1 = cal.C1;
  const double T = lifespan_lower_bound(in).T;
  const PicardResult r = picard_solve(e.q, e.v, p, T, pc);
  int run = 0, best = 0;
  for (double q : r.ratios) {
    run = q < 1.0 ? run + 1 : 0;
    best = std::max(best, run);
  }

  const EffectiveState large = to_effective(app::make_initial(g, p, {"smooth_bump", 2.0}), p);
  const PicardResult bad = picard_solve(large.q, large.v, p, 10.0, pc);

  const bool pass = cal.attained && r.converged && best >= 5 && bad.non_contraction;
  return {pass, fmt("T = %.4g (calibrated horizon %.4g), consecutive contracting ratios %g", T, T_c, best) +
                    (bad.non_contraction ? ", large data: non-contraction" : ", large data: contracted")};
}

Outcome c11_vacuum() {
  const Grid g(1, 128);
  PhysParams p;
  p.mu = 0.1;
  p.kappa = 0.01;
  app::InitialSpec spec;
  spec.preset = "near_vacuum";
  spec.delta = 0.05;
  SolverConfig c;
  c.dt = 1e-4;
  c.t_end = 1.0;
  c.vacuum_floor = 1e-8;

  DensitySeries series;
  RunCallbacks cb;
  cb.on_step = [&](std::int64_t step, double t, const SolverState& s) {
    if (step % 500 == 0) {
      series.times.push_back(t);
      series.rho.push_back(s.density(p));
    }
  };
  std::string status;
  bool run_ok = false;
  double min_rho = INFINITY;
  try {
    const RunResult r = run(SolverState::from_primitive(app::make_initial(g, p, spec), c.formulation, p), p, c, cb);
    for (const auto& row : r.record.rows) min_rho = std::min(min_rho, row.min_rho);
    run_ok = r.completed && min_rho > c.vacuum_floor;
    status = fmt("completed, min rho %.4f", min_rho);
  } catch (const VacuumBreach& e) {
    run_ok = true;
    status = fmt("vacuum breach at t=%.4g, min rho %.3e", e.time(), e.min_rho());
  }
  if (series.rho.size() < 2) return {false, status + ", too few samples"};

  // Brute-force counts compared to the library measure.
  int mismatches = 0;
  const double cell = std::pow(g.length() / g.n(), g.dim());
  for (const auto& rho : series.rho)
    for (double k : {1.0, 1.5, 2.0, 5.0, 10.0, 19.0}) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < rho.size(); ++i)
        if (1.0 / rho[i] >= k) ++count;
      if (level_set_measure(rho, 1.0, k) != static_cast<double>(count) * cell) ++mismatches;
    }

  const LevelSetExponents ex{4.0, 4.0, 1.0 - 0.25 - 1.0 / 8.0};
  int increases = 0;
  double prev = INFINITY;
  for (double k = 1.0; k <= 20.0; k += 0.5) {
    const double m = level_set_report(series, 1.0, k, ex).mu_k;
    if (m > prev) ++increases;
    prev = m;
  }
  return {run_ok && mismatches == 0 && increases == 0,
          status + fmt(", level-set mismatches %g, mu(k) increases %g", mismatches, increases)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 capillary tensor identity", c1_divk},
      {"2 formulation equivalence", c2_equivalence},
      {"3 energy and entropy inequalities", c3_energy},
      {"4 mass conservation", c4_mass},
      {"5 weighted velocity gain bound", c5_gain},
      {"6 heat semigroup block decay", c6_heat},
      {"7 Littlewood-Paley suite", c7_lp},
      {"8 De Giorgi recursion", c8_degiorgi},
      {"9 lifespan formula", c9_lifespan},
      {"10 iteration scheme contraction", c10_picard},
      {"11 vacuum monitoring", c11_vacuum},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%s] %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
