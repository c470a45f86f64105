#pragma once

#include "cbounds/barriers.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbounds {

enum class Mode { scattering, production };
enum class Analysis { bounds, sweep, verify, resonance };

std::string to_string(Mode m);
std::string to_string(Analysis a);
/// Throws DomainError for an unknown name.
Analysis analysis_from_string(std::string_view name);

/// Either an inclusive linear range or an explicit list of wavenumbers.
struct KSweep {
    struct Range {
        double start = 0.0;
        double stop = 0.0;
        int steps = 1;
    };
    std::optional<Range> range;
    std::vector<double> explicit_values;

    std::vector<double> values() const;
};

/// The CLI's input record. Scattering scenarios carry a position-sorted,
/// non-overlapping barrier list and a wavenumber sweep; production scenarios
/// carry per-episode particle numbers instead.
struct Scenario {
    std::string name;
    Mode mode = Mode::scattering;
    std::vector<Analysis> analyses;
    std::vector<BarrierSpec> barriers;
    KSweep k_sweep;
    std::vector<double> episodes;
};

/// Parses the key/value + barrier-table document described in the README.
/// Throws ParseError (with line numbers) for malformed text, DomainError for
/// physically invalid values and OverlapError for intersecting barriers.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a file; unreadable files raise ParseError.
Scenario load_scenario(const std::string& path);

} // namespace cbounds
