#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nks/continuation.hpp"

namespace nks {

/// Configuration is invalid; `field` names the offending entry.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_, const std::string& msg)
      : std::runtime_error(field_ + ": " + msg), field(std::move(field_)) {}
};

struct BranchSeedConfig {
  int k = 1;
  double t0 = 0.05;
  int direction = 0;  // +1 / -1 for one half-branch, 0 for both
};

struct EvolutionRunConfig {
  double eps = 0.9;
  double T = 10.0;
  double dt = 1e-3;
  int sample_every = 100;
  std::vector<std::pair<int, double>> u0_modes;  // (k, amplitude) terms
};

struct RunConfig {
  double r = 0.5;
  double s = 1.5;
  int modes = 128;
  std::uint64_t rng_seed = 0;
  std::string output_dir = "out";
  std::vector<BranchSeedConfig> branches;
  ContinuationConfig continuation;
  std::vector<EvolutionRunConfig> evolution;

  /// Throws ConfigError naming the field.
  void validate() const;

  /// Parses and validates a JSON config with a mandatory "version" field.
  static RunConfig from_json_file(const std::filesystem::path& path);
  static RunConfig from_json_text(const std::string& text);
};

}  // namespace nks
