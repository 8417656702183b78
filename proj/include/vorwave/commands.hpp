#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "vorwave/io.hpp"

namespace vorwave {

/// Subcommand implementations behind the CLI front end. Each returns a
/// process exit code: 0 success, 1 validation error, 2 numerical failure.

int cmd_bifurcation_points(const RunConfig& cfg, std::ostream& log);
int cmd_continue(const RunConfig& cfg, std::ostream& log);
/// Reconstruct fields from a snapshot; grid overrides take effect when > 0.
int cmd_flowfield(const RunConfig& cfg, const std::string& snapshot_path, int grid_nx, int grid_ny,
                  std::ostream& log);
int cmd_laminar(const RunConfig& cfg, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::uint64_t seed, std::ostream& log);

}  // namespace vorwave
