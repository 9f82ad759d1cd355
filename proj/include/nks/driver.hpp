#pragma once

#include <filesystem>
#include <vector>

#include "nks/run_config.hpp"

namespace nks {

/// Outcome of the hard diagnostics over a set of branches. The trend report
/// and singularity flags are informational and never fail a run.
struct DiagnosticsSummary {
  int checks_run = 0;
  int checks_failed = 0;
  std::vector<std::string> failures;  // human-readable, one per failed check
  std::vector<std::string> notes;

  bool ok() const { return checks_failed == 0; }
};

DiagnosticsSummary run_branch_diagnostics(const std::vector<Branch>& branches);

/// Seeds, corrects and traces every configured branch (both half-branches
/// unless a direction is pinned), writes branch/profile/diagram files and a
/// JSON report into the output directory. Returns 0, or 2 when a hard
/// diagnostic fails or a seed does not converge.
int run_driver(const RunConfig& cfg);

/// Runs the configured evolution problems, writing energy time series and
/// final profiles. Returns 0, or 2 on blow-up.
int evolve_driver(const RunConfig& cfg);

/// Reads stored branches and reruns the diagnostic suite. Returns 0/2.
int diagnose_driver(const std::vector<std::filesystem::path>& files);

/// Reads stored branches and emits <out_base>.csv / <out_base>.svg.
int diagram_driver(const std::vector<std::filesystem::path>& files,
                   const std::filesystem::path& out_base);

}  // namespace nks
