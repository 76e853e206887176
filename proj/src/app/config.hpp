#pragma once

// Run configuration: an INI file with sections [grid] [physics] [solver]
// [initial] [output] [diagnostics] [lifespan] [picard]. Unknown sections or
// keys are rejected, and every error names the offending "section.key".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/lifespan.hpp"
#include "korteweg/model.hpp"
#include "korteweg/solver.hpp"

namespace korteweg::app {

struct GridSpec {
  int dim = 1;
  int n = 256;
  double length = kTwoPi;
  Grid make() const { return Grid(dim, n, length); }
};

struct InitialSpec {
  std::string preset = "smooth_bump";
  double amplitude = 0.1;
  double width = 0.5;   // bump width
  double delta = 0.05;  // near_vacuum: min rho0 = rho_bar * delta
  std::uint64_t seed = 12345;
  int modes = 8;        // random_bandlimited: highest wave index
};

struct OutputSpec {
  std::string csv;   // empty: no CSV
  std::string json;  // empty: no JSON
  std::string checkpoint;            // path written at checkpoint_time
  std::optional<double> checkpoint_time;
  std::string restart;               // checkpoint to continue from
};

struct DiagnosticsSpec {
  bool energy = true;
  bool lp_gain = true;
  double level_set_alpha = 1.0;
  std::vector<double> level_set_k;   // empty: no level-set report
  double level_set_r = 4.0;
  double level_set_q = 4.0;
  double snapshot_stride = 0;        // steps between stored density snapshots (0: diag_stride)
  bool vacuum_bound = false;
  double vacuum_q = 4.0;
  double vacuum_q3 = 2.0;
  double beta = 1.0;
  double c_alpha_mu = 1.0;
};

struct PicardSpec {
  PicardConfig cfg;
  double T = 0;  // 0: use the lifespan bound
};

struct RunConfig {
  GridSpec grid;
  PhysParams physics;
  SolverConfig solver;
  InitialSpec initial;
  OutputSpec output;
  DiagnosticsSpec diagnostics;
  LifespanConstants lifespan;
  double lifespan_p = 1.5;
  PicardSpec picard;

  /// Throws ConfigError with a field-level message.
  void validate() const;
};

/// Parses INI text; `overrides` are "section.key=value" strings applied on top.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace korteweg::app
