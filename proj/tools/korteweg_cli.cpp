#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/verify.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/lp_besov.hpp"

int main(int argc, char** argv) {
  using namespace korteweg;
  CLI::App app{"Periodic Navier-Stokes-Korteweg solver and diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override a key, as section.key=value");
  };

  CLI::App* run = app.add_subcommand("run", "Integrate a scenario and write diagnostics");
  add_config(run);
  CLI::App* lifespan = app.add_subcommand("lifespan", "Lower bound on the existence time of the initial data");
  add_config(lifespan);
  CLI::App* picard = app.add_subcommand("picard", "Iteration scheme with contraction ratios");
  add_config(picard);

  std::string suite, verify_json;
  CLI::App* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(app::suite_names()));
  verify->add_option("--json", verify_json, "Write the report as JSON");

  std::string state_path;
  BesovSpec spec;
  CLI::App* besov = app.add_subcommand("besov", "Block norms of a checkpoint");
  besov->add_option("--state", state_path, "Checkpoint file")->required()->check(CLI::ExistingFile);
  besov->add_option("--s", spec.s, "Regularity index");
  besov->add_option("--p", spec.p, "Integrability index");
  besov->add_option("--r", spec.r, "Summability index (inf allowed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(Cause::config);
  }

  try {
    if (*run) return app::cmd_run(app::load_config(config_path, overrides), std::cout);
    if (*lifespan) return app::cmd_lifespan(app::load_config(config_path, overrides), std::cout);
    if (*picard) return app::cmd_picard(app::load_config(config_path, overrides), std::cout);
    if (*verify) return app::cmd_verify(suite, std::cout, verify_json);
    if (*besov) return app::cmd_besov(state_path, spec, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << cause_name(e.cause()) << ": " << e.what() << "\n";
    return static_cast<int>(e.cause());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
