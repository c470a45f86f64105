#pragma once

#include "cbounds/scenario.hpp"
#include "cbounds/table.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>

namespace cbounds {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit status contract of the command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitViolation = 2,
    kExitInputError = 3,
};

struct RunOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
    unsigned threads = 0;
};

/// A table plus whether any containment check in it failed.
struct RunResult {
    Table table;
    bool violation = false;
};

/// Per k: individual T_i, the transmission/reflection/production envelopes,
/// the classical product and the resonance flag. Production scenarios get a
/// single row built from the episode particle numbers.
RunResult run_bounds(const Scenario& s);

/// Per k: exact compound T, R, N next to the envelopes and a containment
/// verdict. Requires a scattering scenario.
RunResult run_sweep(const Scenario& s);

/// Iterative/closed-form audit, random phase sweeps at every k and the exact
/// containment audit.
RunResult run_verify(const Scenario& s, const RunOptions& opt);

/// Resonance margin per k (scattering) or the production criterion (production).
RunResult run_resonance(const Scenario& s);

RunResult run_analysis(Analysis a, const Scenario& s, const RunOptions& opt);

/// Entry point of the `cbounds` executable; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cbounds
