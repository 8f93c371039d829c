#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptgp/cli/commands.hpp"
#include "ptgp/cli/config.hpp"
#include "ptgp/errors.hpp"

int main(int argc, char** argv) {
  using namespace ptgp::cli;

  CLI::App app{"Geometric phases and interferometric thermal phases of PT-symmetric systems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_extras();

  std::string config_file;
  std::string format;
  std::string output;
  unsigned threads = 0;
  std::vector<std::string> overrides;

  app.add_option("-c,--config", config_file, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--threads", threads, "worker threads (0: all cores)")->envname("PTGP_THREADS");
  app.add_option("-f,--format", format, "csv or json");
  app.add_option("-o,--output", output, "write the result here instead of standard output");

  const std::vector<std::pair<std::string, std::string>> help = {
      {"check", "validate pseudo-Hermiticity, biorthonormality and the proper map along the loop"},
      {"phases", "theta1, theta2, the Berry form and the closure residuals per level"},
      {"igp-scan", "thermal interferometric phase on the (theta, beta) grid"},
      {"critical", "locate discontinuities of the interferometric phase"},
      {"oracle", "time-dependent evolution against the adiabatic prediction"},
      {"evolve", "a single evolution at oracle.ramp"},
  };
  for (const auto& [name, text] : help) {
    auto* sub = app.add_subcommand(name, text);
    sub->allow_extras();
    sub->add_option("overrides", overrides, "section.key=value settings");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto* chosen = app.get_subcommands().front();
  for (const auto& extra : chosen->remaining()) overrides.push_back(extra);
  for (const auto& extra : app.remaining()) overrides.push_back(extra);
  if (!format.empty()) overrides.push_back("output.format=" + format);
  if (!output.empty()) overrides.push_back("output.path=" + output);

  RunConfig cfg;
  try {
    cfg = config_file.empty() ? default_config(overrides) : load_config(config_file, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  cfg.threads = threads;
  return run_command(chosen->get_name(), cfg, std::cout, std::cerr);
}
