#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vorwave/governing.hpp"
#include "vorwave/periodic_series.hpp"
#include "vorwave/spectral.hpp"

namespace vorwave {

struct CheckResult {
    std::string name;
    double error = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct DiagnosticsReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

using ConjugationFn = std::function<PeriodicSeries(const PeriodicSeries&, StripDepth)>;

/// Cross-module property suite: operator identities (multiplier exactness,
/// skew/self-adjointness, averaging, algebra closure, kernel agreement),
/// variational gradient consistency, and the formulation-equivalence residual.
/// The conjugation operator is injectable so a deliberately corrupted
/// multiplier is detectable by the suite itself.
DiagnosticsReport run_diagnostics(const WaveParameters& params, std::uint64_t seed,
                                  const ConjugationFn& conj = {});

/// Random even, mean-zero profile with coefficient decay ~ n^-2 (test input).
PeriodicSeries random_even_profile(int n_modes, double amplitude, std::uint64_t seed);
/// Random general mean-zero profile (both parities).
PeriodicSeries random_profile(int n_modes, double amplitude, std::uint64_t seed);

}  // namespace vorwave
