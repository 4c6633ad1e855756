#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gqft/harness.hpp"

namespace {

int config_error(const gqft::ConfigError& e) {
  std::cerr << "config error:\n";
  for (const auto& d : e.diagnostics()) std::cerr << "  " << d << "\n";
  return gqft::kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galilean field theory verification harness"};
  app.set_version_flag("--version", std::string(gqft::kVersion));
  app.require_subcommand(1);

  std::string config_path, json_path;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  bool serial = false, timings = true;

  auto* run = app.add_subcommand("run", "Run the selected suites and print a summary");
  run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  run->add_option("--suite", suites, "Suite to run (repeatable)")->check(CLI::IsMember(gqft::suite_names()));
  auto* seed_opt = run->add_option("--seed", seed, "Random seed");
  run->add_option("--json", json_path, "Write the machine-readable report here");
  run->add_flag("--serial", serial, "Run suites one after another");
  run->add_flag("!--no-timings", timings, "Omit timings from the JSON report");

  auto* list = app.add_subcommand("list", "List check identifiers with their anchors");
  list->add_option("--suite", suites, "Restrict to a suite (repeatable)")->check(CLI::IsMember(gqft::suite_names()));

  std::string check_id;
  auto* explain = app.add_subcommand("explain", "Print the anchor and formula of a check");
  explain->add_option("check-id", check_id, "Check identifier")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : gqft::kExitConfigError;
  }

  if (*list) {
    const auto checks = gqft::enumerate_checks(suites.empty() ? gqft::suite_names() : suites);
    for (const auto& c : checks) std::cout << c.suite << "\t" << c.id << "\t" << c.anchor << "\n";
    std::cout << checks.size() << " checks\n";
    return 0;
  }

  if (*explain) {
    const auto info = gqft::explain(check_id);
    if (!info) {
      std::cerr << "unknown check: " << check_id << "\n";
      return 1;
    }
    std::cout << info->id << "\n  suite:   " << info->suite << "\n  anchor:  " << info->anchor
              << "\n  formula: " << info->formula << "\n";
    return 0;
  }

  try {
    gqft::HarnessConfig cfg = config_path.empty() ? gqft::HarnessConfig::defaults() : gqft::load_config(config_path);
    if (!suites.empty()) cfg.suites = suites;
    if (*seed_opt) cfg.seed = seed;
    const gqft::Report report = gqft::run(cfg, serial);
    std::cout << gqft::report_summary(report);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "cannot write " << json_path << "\n";
        return gqft::kExitConfigError;
      }
      out << gqft::report_to_json(report, timings);
    }
    return gqft::exit_code(report);
  } catch (const gqft::ConfigError& e) {
    return config_error(e);
  }
}
