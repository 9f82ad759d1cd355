#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nks/branch_io.hpp"
#include "nks/driver.hpp"

namespace {

// NKS_OUTPUT_DIR overrides the config's output directory.
void apply_env_override(nks::RunConfig& cfg) {
  if (const char* dir = std::getenv("NKS_OUTPUT_DIR"); dir && *dir)
    cfg.output_dir = dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state continuation and time evolution for the nonlocal "
               "Kuramoto-Sivashinsky equation on the torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> branch_files;
  std::string out_base = "diagram";

  auto* cmd_run = app.add_subcommand(
      "run", "Trace the configured branches, write outputs, run diagnostics");
  cmd_run->add_option("config", config_path, "JSON run configuration")->required();

  auto* cmd_evolve =
      app.add_subcommand("evolve", "Run the evolution problems from a config");
  cmd_evolve->add_option("config", config_path, "JSON run configuration")->required();

  auto* cmd_diagnose =
      app.add_subcommand("diagnose", "Re-run diagnostics on stored branch files");
  cmd_diagnose->add_option("files", branch_files, "branch files")->required();

  auto* cmd_diagram =
      app.add_subcommand("diagram", "Emit CSV + SVG diagram from branch files");
  cmd_diagram->add_option("files", branch_files, "branch files")->required();
  cmd_diagram->add_option("--out", out_base, "output base path (.csv/.svg appended)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed() || cmd_evolve->parsed()) {
      nks::RunConfig cfg = nks::RunConfig::from_json_file(config_path);
      apply_env_override(cfg);
      return cmd_run->parsed() ? nks::run_driver(cfg) : nks::evolve_driver(cfg);
    }
    std::vector<std::filesystem::path> files(branch_files.begin(), branch_files.end());
    if (cmd_diagnose->parsed()) return nks::diagnose_driver(files);
    return nks::diagram_driver(files, out_base);
  } catch (const nks::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const nks::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const nks::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
