#pragma once

/**
 * @file run.hpp
 * @brief Command-line front end: flags, config loading and exit status.
 *
 * Exit status is 0 when every property passes, 1 on any failure and 2 on a
 * configuration or flag error.
 */

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdg/cli/config.hpp"
#include "sdg/cli/suite.hpp"

namespace sdg::cli {

inline constexpr int exit_config_error = 2;

inline void list_models(std::ostream& out) {
  for (const auto& m : model_names()) {
    out << m;
    if (m == "gauge") {
      out << " structure_group=";
      const auto& g = structure_group_names();
      for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "|" : "") << g[i];
      out << " base_dim=1|2|3";
    }
    out << "\n";
  }
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                   std::vector<Property> extra = {}) {
  CLI::App app{"Exact property checks for connections and curvature on groupoid models", "sdg"};
  std::string config_path;
  std::string seed_text;
  std::string suite;
  std::optional<std::size_t> trials;
  bool show_models = false;
  bool mutation = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--seed", seed_text, "override the seed (unsigned 64-bit)");
  app.add_option("--suite", suite, "run only this suite (algebra, tangent, lift, curvature, forms, bianchi, all)");
  app.add_option("--trials", trials, "override trials per property");
  app.add_flag("--list-models", show_models, "print the model registry and exit");
  app.add_flag("--mutation", mutation, "add the designed-failure Bianchi mutation check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sdg: " << e.what() << "\n";
    return exit_config_error;
  }

  if (show_models) {
    list_models(out);
    return 0;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!seed_text.empty()) cfg.seed = parse_seed(seed_text);
    if (!suite.empty()) cfg.suites = parse_suites(suite);
    if (trials) cfg.trials = *trials;
    if (mutation) cfg.mutation = true;
    validate_config(cfg);
  } catch (const ConfigError& e) {
    err << "sdg: config error: " << e.what() << "\n";
    return exit_config_error;
  }
  return run_suite(cfg, out, std::move(extra)).exit_code();
}

}  // namespace sdg::cli
