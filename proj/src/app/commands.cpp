#include "app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "app/presets.hpp"
#include "korteweg/diagnostics.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/lifespan.hpp"
#include "korteweg/solver.hpp"

namespace korteweg::app {

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) {
    if (path.empty()) return;
    file_ = std::fopen(path.c_str(), "w");
    if (!file_) throw IoError("cannot open CSV output: " + path);
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) std::fprintf(file_, "%s%s", i ? "," : "", cols[i].c_str());
    std::fprintf(file_, "\n");
  }
  ~CsvWriter() {
    if (file_) std::fclose(file_);
  }
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const DiagnosticsRow& r) {
    if (!file_) return;
    const auto v = csv_values(r);
    for (std::size_t i = 0; i < v.size(); ++i) std::fprintf(file_, "%s%.17g", i ? "," : "", v[i]);
    std::fprintf(file_, "\n");
    std::fflush(file_);
  }

 private:
  std::FILE* file_ = nullptr;
};

json physics_json(const PhysParams& p) {
  return {{"mu", p.mu}, {"kappa", p.kappa}, {"a", p.a}, {"gamma", p.gamma}, {"rho_bar", p.rho_bar},
          {"quantum", p.is_quantum()}};
}

json inequality_json(const InequalityVerdict& v) {
  json j = {{"holds", v.holds}, {"worst_excess", v.worst_excess}};
  j["first_violation"] = v.first_violation ? json(*v.first_violation) : json(nullptr);
  return j;
}

}  // namespace

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open JSON output: " + path);
  out << j.dump(2) << "\n";
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const Grid grid = cfg.grid.make();
  const PhysParams& p = cfg.physics;
  CsvWriter csv(cfg.output.csv);

  DensitySeries snapshots;
  const std::int64_t snap_stride =
      cfg.diagnostics.snapshot_stride > 0 ? static_cast<std::int64_t>(cfg.diagnostics.snapshot_stride)
                                          : cfg.solver.diag_stride;
  const bool want_snapshots = !cfg.diagnostics.level_set_k.empty() || cfg.diagnostics.vacuum_bound;
  const std::int64_t total = cfg.solver.total_steps();

  RunCallbacks cb;
  cb.on_row = [&](const DiagnosticsRow& r) { csv.row(r); };
  if (want_snapshots)
    cb.on_step = [&](std::int64_t step, double t, const SolverState& s) {
      if (step % snap_stride != 0 && step != total) return;
      snapshots.times.push_back(t);
      snapshots.rho.push_back(s.density(p));
      snapshots.v.push_back(s.effective(p).v);
    };
  if (cfg.output.checkpoint_time) {
    cb.checkpoint_steps.push_back(std::llround(*cfg.output.checkpoint_time / cfg.solver.dt));
    cb.on_checkpoint = [&](const Checkpoint& c) { write_checkpoint(cfg.output.checkpoint, c); };
  }

  json summary;
  summary["grid"] = {{"dim", grid.dim()}, {"n", grid.n()}, {"length", grid.length()}};
  summary["physics"] = physics_json(p);
  summary["solver"] = {{"dt", cfg.solver.dt},
                       {"t_end", cfg.solver.t_end},
                       {"formulation", formulation_name(cfg.solver.formulation)},
                       {"stability_ceiling", stability_ceiling(grid, p, cfg.solver.stability_constant)}};
  summary["initial"] = {{"preset", cfg.initial.preset}, {"amplitude", cfg.initial.amplitude}};

  // Rows are collected here as well so that an aborted run still reports them.
  DiagnosticsRecord record;
  record.dim = grid.dim();
  record.params = p;
  auto stream_row = cb.on_row;
  cb.on_row = [&](const DiagnosticsRow& r) {
    record.rows.push_back(r);
    stream_row(r);
  };

  int code = 0;
  try {
    RunResult res;
    if (!cfg.output.restart.empty()) {
      res = resume(read_checkpoint(cfg.output.restart), cfg.solver, cb);
    } else {
      const PrimitiveState init = make_initial(grid, p, cfg.initial);
      res = run(SolverState::from_primitive(init, cfg.solver.formulation, p), p, cfg.solver, cb);
    }
    summary["status"] = "completed";
    summary["t_final"] = res.t;
    summary["steps"] = res.steps;
  } catch (const VacuumBreach& e) {
    summary["status"] = cause_name(e.cause());
    summary["abort_time"] = e.time();
    summary["abort_min_rho"] = e.min_rho();
    code = static_cast<int>(e.cause());
  } catch (const NumericBlowup& e) {
    summary["status"] = cause_name(e.cause());
    summary["abort_time"] = e.time();
    code = static_cast<int>(e.cause());
  }

  json verdicts;
  bool all_pass = true;
  if (!record.rows.empty()) {
    const auto& first = record.rows.front();
    const auto& last = record.rows.back();
    double min_rho = first.min_rho;
    for (const auto& r : record.rows) min_rho = std::min(min_rho, r.min_rho);
    summary["mass_drift_rel"] = (last.mass - first.mass) / first.mass;
    summary["min_rho"] = min_rho;
    summary["jungel"] = last.jungel;
    summary["jungel_reference"] = first.energy + first.bd_entropy;
    summary["h1_sqrt_final"] = last.h1_sqrt;
    if (cfg.diagnostics.energy) {
      const EnergyVerdict ev = check_energy_inequality(record);
      verdicts["energy"] = inequality_json(ev.energy);
      verdicts["bd_entropy"] = inequality_json(ev.bd_entropy);
      all_pass = all_pass && ev.holds();
    }
    if (cfg.diagnostics.lp_gain) {
      for (double q : kGainExponents) {
        const LpGainResult g = lp_gain_check(record, q);
        json j = {{"p", q}, {"valid", g.valid}, {"verdict", g.verdict}, {"worst_ratio", g.worst_ratio}};
        if (!g.message.empty()) j["message"] = g.message;
        verdicts["lp_gain"].push_back(j);
        if (g.valid) all_pass = all_pass && g.verdict;
      }
    }
  }

  if (!cfg.diagnostics.level_set_k.empty() && !snapshots.rho.empty()) {
    const int N = grid.dim();
    const auto& d = cfg.diagnostics;
    const LevelSetExponents ex{d.level_set_r, d.level_set_q, 1.0 - 1.0 / d.level_set_r - N / (2.0 * d.level_set_q)};
    json sets = json::array();
    for (double k : d.level_set_k) {
      const LevelSetReport rep = level_set_report(snapshots, d.level_set_alpha, k, ex);
      sets.push_back({{"k", k},
                      {"mu_k", rep.mu_k},
                      {"q_norm", rep.q_norm},
                      {"max_measure", *std::max_element(rep.measure_series.begin(), rep.measure_series.end())},
                      {"exponents",
                       {{"r", rep.r}, {"q", rep.q}, {"r1", rep.r1}, {"q1", rep.q1}, {"kappa", rep.kappa},
                        {"kappa1", rep.kappa1}, {"mu_exponent", rep.mu_exponent},
                        {"hypothesis_exponent", rep.hypothesis_exponent}}}});
    }
    summary["level_sets"] = sets;
  }
  if (cfg.diagnostics.vacuum_bound && snapshots.rho.size() >= 2) {
    const auto& d = cfg.diagnostics;
    try {
      const VacuumBoundReport vb = vacuum_bound_estimate(snapshots, d.level_set_alpha, d.vacuum_q,
                                                         snapshots.times.back(), p, d.vacuum_q3, d.beta, d.c_alpha_mu);
      summary["vacuum_bound"] = {{"bound", vb.bound}, {"measured", vb.measured}, {"consistent", vb.consistent},
                                 {"gamma_dg", vb.gamma_dg}, {"t1", vb.inputs.t1}};
    } catch (const DomainError& e) {
      summary["vacuum_bound"] = {{"error", e.what()}};
    }
  }

  summary["verdicts"] = verdicts;
  summary["verdicts_pass"] = all_pass;
  if (code == 0 && !all_pass) code = static_cast<int>(Cause::verification);
  summary["exit_code"] = code;
  write_json(cfg.output.json, summary);
  out << summary.dump(2) << "\n";
  return code;
}

json lifespan_report(const RunConfig& cfg) {
  const Grid grid = cfg.grid.make();
  const PhysParams& p = cfg.physics;
  const PrimitiveState init = make_initial(grid, p, cfg.initial);
  const EffectiveState e = to_effective(init, p);
  const BumpPair bumps = build_bumps();
  const LifespanInputs in = lifespan_inputs(e.q, e.v, cfg.lifespan_p, cfg.lifespan, bumps);
  const LifespanResult r = lifespan_lower_bound(in);
  json branches;
  for (std::size_t i = 0; i < r.branches.size(); ++i)
    branches[kBranchNames[i]] = std::isinf(r.branches[i]) ? json("inf") : json(r.branches[i]);
  return {{"inputs",
           {{"p", in.p},
            {"dim", in.dim},
            {"p_in_window", in.p_in_window()},
            {"norm_q0_crit", in.norm_q0_crit},
            {"norm_v0_crit", in.norm_v0_crit},
            {"norm_q0_sur", in.norm_q0_sur},
            {"norm_v0_sur", in.norm_v0_sur},
            {"A0", in.a0()},
            {"constants",
             {{"C", in.k.C}, {"C1", in.k.C1}, {"c", in.k.c}, {"mu", in.k.mu}, {"eps", in.k.eps},
              {"eps_prime", in.k.eps_prime}}}}},
          {"branches", branches},
          {"active_branch", r.active_name()},
          {"T", r.T},
          {"sqrt_eps_admissible", epsilon_from_data(in.a0(), in.k.C1)}};
}

int cmd_lifespan(const RunConfig& cfg, std::ostream& out) {
  const json j = lifespan_report(cfg);
  write_json(cfg.output.json, j);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_picard(const RunConfig& cfg, std::ostream& out) {
  const Grid grid = cfg.grid.make();
  const PhysParams& p = cfg.physics;
  const PrimitiveState init = make_initial(grid, p, cfg.initial);
  const EffectiveState e = to_effective(init, p);
  double T = cfg.picard.T;
  if (T == 0.0) T = lifespan_report(cfg)["T"].get<double>();
  const PicardResult r = picard_solve(e.q, e.v, p, T, cfg.picard.cfg);
  json j = {{"T", T},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"non_contraction", r.non_contraction},
            {"message", r.message},
            {"data_norm_q", r.data_norm_q},
            {"data_norm_v", r.data_norm_v},
            {"differences", r.differences},
            {"ratios", r.ratios}};
  write_json(cfg.output.json, j);
  out << j.dump(2) << "\n";
  return r.non_contraction ? static_cast<int>(Cause::non_contraction) : 0;
}

int cmd_besov(const std::string& state_path, const BesovSpec& spec, std::ostream& out) {
  const Checkpoint c = read_checkpoint(state_path);
  const BumpPair bumps = build_bumps();
  const RealField rho = c.state.density(c.params);
  const EffectiveState e = c.state.effective(c.params);
  auto report = [&](const RealField& f) {
    const auto norms = block_norms(decompose(f, bumps), spec);
    std::vector<double> w;
    for (const auto& b : norms) w.push_back(b.weighted);
    return json{{"norm", lr_sum(w, spec.r)}, {"blocks", json::parse(block_report_json(norms))}};
  };
  json j = {{"t", c.time()},
            {"spec", {{"s", spec.s}, {"p", spec.p}, {"r", std::isinf(spec.r) ? json("inf") : json(spec.r)}}},
            {"q", report(e.q)}};
  for (std::size_t k = 0; k < e.v.size(); ++k) j["v" + std::to_string(k)] = report(e.v[k]);
  j["rho"] = report(rho);
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace korteweg::app
