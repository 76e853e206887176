#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "app/config.hpp"
#include "korteweg/lp_besov.hpp"

namespace korteweg::app {

using json = nlohmann::ordered_json;

/// Integrates the configured scenario, writes the CSV series and the JSON
/// summary, and returns the process exit code (0, or the failure cause).
int cmd_run(const RunConfig& cfg, std::ostream& out);

/// Runs one property suite: divk, heat, bony, besov, degiorgi, equivalence.
int cmd_verify(const std::string& suite, std::ostream& out, const std::string& json_path = "");

/// Besov norms of the initial data and the resulting lifespan bound.
int cmd_lifespan(const RunConfig& cfg, std::ostream& out);

/// Iteration scheme on the initial data with contraction ratios.
int cmd_picard(const RunConfig& cfg, std::ostream& out);

/// Block-by-block norm report of the density and velocity of a checkpoint.
int cmd_besov(const std::string& state_path, const BesovSpec& spec, std::ostream& out);

/// Writes `j` to `path` (pretty-printed); no-op for an empty path.
void write_json(const std::string& path, const json& j);

json lifespan_report(const RunConfig& cfg);

}  // namespace korteweg::app
