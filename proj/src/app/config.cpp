#include "app/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg::app {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"grid", {"dim", "n", "length"}},
      {"physics", {"mu", "kappa", "a", "gamma", "rho_bar"}},
      {"solver",
       {"dt", "t_end", "formulation", "dealias", "vacuum_floor", "diag_stride", "enforce_stability",
        "stability_constant"}},
      {"initial", {"preset", "amplitude", "width", "delta", "seed", "modes"}},
      {"output", {"csv", "json", "checkpoint", "checkpoint_time", "restart"}},
      {"diagnostics",
       {"energy", "lp_gain", "level_set_alpha", "level_set_k", "level_set_r", "level_set_q", "snapshot_stride",
        "vacuum_bound", "vacuum_q", "vacuum_q3", "beta", "c_alpha_mu"}},
      {"lifespan", {"p", "C", "C1", "c", "mu", "eps", "eps_prime"}},
      {"picard", {"max_iters", "tol", "time_steps", "p", "T", "dealias"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  template <class T>
  void get(const char* section, const char* key, T& out) {
    const auto node = tree_.get_child_optional(pt::ptree::path_type(std::string(section) + "." + key, '.'));
    if (!node) return;
    const std::string raw = node->get_value<std::string>();
    try {
      out = convert<T>(raw);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(std::string(section) + "." + key + ": cannot parse '" + raw + "'");
    }
  }

  bool has(const char* section, const char* key) const {
    return static_cast<bool>(tree_.get_child_optional(pt::ptree::path_type(std::string(section) + "." + key, '.')));
  }

 private:
  template <class T>
  static T convert(const std::string& raw) {
    std::size_t pos = 0;
    if constexpr (std::is_same_v<T, std::string>) {
      return raw;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
      if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
      throw std::invalid_argument("bool");
    } else if constexpr (std::is_same_v<T, double>) {
      const double v = std::stod(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument("trailing");
      return v;
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      return convert<double>(raw);
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      std::vector<double> out;
      std::istringstream is(raw);
      for (std::string tok; std::getline(is, tok, ',');) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(convert<double>(tok.substr(b, e - b + 1)));
      }
      return out;
    } else {
      const long long v = std::stoll(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument("trailing");
      return static_cast<T>(v);
    }
  }

  const pt::ptree& tree_;
};

void check_schema(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError(section + "." + key + ": unknown key");
      if (!value.empty()) throw ConfigError(section + "." + key + ": nested values are not supported");
    }
  }
}

void apply_override(pt::ptree& tree, const std::string& item) {
  const auto eq = item.find('=');
  const auto dot = item.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ConfigError("override '" + item + "' must look like section.key=value");
  tree.put(pt::ptree::path_type(item.substr(0, eq), '.'), item.substr(eq + 1));
}

}  // namespace

void RunConfig::validate() const {
  const Grid g = grid.make();
  physics.validate();
  solver.validate(g, physics);
  static const std::set<std::string> presets = {"equilibrium", "smooth_bump", "near_vacuum", "random_bandlimited",
                                                "manufactured"};
  if (!presets.count(initial.preset))
    throw ConfigError("initial.preset: unknown preset '" + initial.preset + "'");
  if (!std::isfinite(initial.amplitude)) throw ConfigError("initial.amplitude must be finite");
  if (!(initial.width > 0.0)) throw ConfigError("initial.width must be > 0");
  if (!(initial.delta > 0.0 && initial.delta < 1.0)) throw ConfigError("initial.delta must lie in (0, 1)");
  if (initial.modes < 1 || initial.modes > grid.n / 3) throw ConfigError("initial.modes must lie in [1, n/3]");
  if (output.checkpoint_time && output.checkpoint.empty())
    throw ConfigError("output.checkpoint_time needs output.checkpoint");
  if (!(diagnostics.level_set_alpha > 0.0)) throw ConfigError("diagnostics.level_set_alpha must be > 0");
  for (double k : diagnostics.level_set_k)
    if (!(k >= 1.0)) throw ConfigError("diagnostics.level_set_k: levels must be >= 1");
  if (!(lifespan_p >= 1.0)) throw ConfigError("lifespan.p must be >= 1");
  LifespanInputs probe;
  probe.k = lifespan;
  probe.validate();
  picard.cfg.validate();
  if (!(picard.T >= 0.0)) throw ConfigError("picard.T must be >= 0");
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& o : overrides) apply_override(tree, o);
  check_schema(tree);

  RunConfig c;
  Reader r(tree);
  r.get("grid", "dim", c.grid.dim);
  r.get("grid", "n", c.grid.n);
  r.get("grid", "length", c.grid.length);

  r.get("physics", "mu", c.physics.mu);
  r.get("physics", "kappa", c.physics.kappa);
  r.get("physics", "a", c.physics.a);
  r.get("physics", "gamma", c.physics.gamma);
  r.get("physics", "rho_bar", c.physics.rho_bar);

  r.get("solver", "dt", c.solver.dt);
  r.get("solver", "t_end", c.solver.t_end);
  std::string formulation = formulation_name(c.solver.formulation);
  r.get("solver", "formulation", formulation);
  c.solver.formulation = parse_formulation(formulation);
  r.get("solver", "dealias", c.solver.dealias);
  r.get("solver", "vacuum_floor", c.solver.vacuum_floor);
  r.get("solver", "diag_stride", c.solver.diag_stride);
  r.get("solver", "enforce_stability", c.solver.enforce_stability);
  r.get("solver", "stability_constant", c.solver.stability_constant);

  r.get("initial", "preset", c.initial.preset);
  r.get("initial", "amplitude", c.initial.amplitude);
  r.get("initial", "width", c.initial.width);
  r.get("initial", "delta", c.initial.delta);
  r.get("initial", "seed", c.initial.seed);
  r.get("initial", "modes", c.initial.modes);

  r.get("output", "csv", c.output.csv);
  r.get("output", "json", c.output.json);
  r.get("output", "checkpoint", c.output.checkpoint);
  r.get("output", "checkpoint_time", c.output.checkpoint_time);
  r.get("output", "restart", c.output.restart);

  auto& d = c.diagnostics;
  r.get("diagnostics", "energy", d.energy);
  r.get("diagnostics", "lp_gain", d.lp_gain);
  r.get("diagnostics", "level_set_alpha", d.level_set_alpha);
  r.get("diagnostics", "level_set_k", d.level_set_k);
  r.get("diagnostics", "level_set_r", d.level_set_r);
  r.get("diagnostics", "level_set_q", d.level_set_q);
  r.get("diagnostics", "snapshot_stride", d.snapshot_stride);
  r.get("diagnostics", "vacuum_bound", d.vacuum_bound);
  r.get("diagnostics", "vacuum_q", d.vacuum_q);
  r.get("diagnostics", "vacuum_q3", d.vacuum_q3);
  r.get("diagnostics", "beta", d.beta);
  r.get("diagnostics", "c_alpha_mu", d.c_alpha_mu);

  c.lifespan.mu = c.physics.mu;
  r.get("lifespan", "p", c.lifespan_p);
  r.get("lifespan", "C", c.lifespan.C);
  r.get("lifespan", "C1", c.lifespan.C1);
  r.get("lifespan", "c", c.lifespan.c);
  r.get("lifespan", "mu", c.lifespan.mu);
  r.get("lifespan", "eps", c.lifespan.eps);
  r.get("lifespan", "eps_prime", c.lifespan.eps_prime);
  if (!r.has("lifespan", "eps_prime")) c.lifespan.eps_prime = 0.25;

  r.get("picard", "max_iters", c.picard.cfg.max_iters);
  r.get("picard", "tol", c.picard.cfg.tol);
  r.get("picard", "time_steps", c.picard.cfg.time_steps);
  r.get("picard", "p", c.picard.cfg.p);
  r.get("picard", "T", c.picard.T);
  r.get("picard", "dealias", c.picard.cfg.dealias);

  c.validate();
  return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace korteweg::app
