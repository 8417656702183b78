#pragma once

#include <map>
#include <optional>
#include <string>

#include "vorwave/continuation.hpp"
#include "vorwave/governing.hpp"

namespace vorwave {

/// Flat run configuration: key = value lines grouped in [sections].
struct RunConfig {
    WaveParameters physical;
    ContinuationConfig branch;
    std::string output_dir = "out";
    int snapshot_every = 10;
    int field_nx = 256;
    int field_ny = 129;
    int n_max = 3;  ///< bifurcation-table mode range

    void validate() const;
};

/// Parse a config file; keys omitted in the file keep their defaults.
/// Unknown keys are rejected.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);
std::string config_to_text(const RunConfig& cfg);

/// Full round-trip decimal formatting (17 significant digits).
std::string format_full(double v);

/// Solution snapshot: parameters, both parametrizations, the coefficient
/// vector, and (when written from a branch trace) the predecessor state
/// needed to resume the secant continuation.
struct Snapshot {
    WaveParameters params;
    SolutionPoint point;
    std::optional<SolutionPoint> previous;
    double ds = 0.0;
    int newton_iters = 0;
    int prev_newton_iters = 0;
};

void save_snapshot(const std::string& path, const Snapshot& snap);
Snapshot load_snapshot(const std::string& path);

}  // namespace vorwave
