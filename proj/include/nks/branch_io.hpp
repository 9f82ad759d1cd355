#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nks/continuation.hpp"

namespace nks {

/// File could not be opened or written.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File opened but its contents do not parse as a branch (truncation,
/// bad numbers, wrong column counts).
struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File carries a different schema version than this build writes.
struct VersionError : FormatError {
  explicit VersionError(const std::string& msg) : FormatError(msg) {}
};

/// Delimiter-separated text, one line per point, shortest round-trip float
/// formatting: read_branch(write_branch(b)) reproduces every double bit for
/// bit.
void write_branch(const Branch& branch, const std::filesystem::path& path);
Branch read_branch(const std::filesystem::path& path);

/// (eps, L2) pairs per branch as CSV plus an SVG bifurcation diagram with
/// one polyline per branch and markers at the bifurcation values sigma_k on
/// the eps axis. Rejects an empty branch list.
void emit_diagram(const std::vector<Branch>& branches,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path& svg_path);

/// Physical-space profiles of up to max_profiles evenly spaced points of the
/// branch, sampled on n_grid+1 nodes covering [-pi, pi] inclusive.
void write_profiles(const Branch& branch, const std::filesystem::path& path,
                    int max_profiles = 8, int n_grid = 512);

}  // namespace nks
