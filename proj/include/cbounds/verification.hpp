#pragma once

#include "cbounds/barriers.hpp"
#include "cbounds/bounds.hpp"
#include "cbounds/table.hpp"
#include "cbounds/transfer.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cbounds {

/// Hard containment band for sampled or constructed compositions.
inline constexpr double kContainmentTolerance = 1e-10;
/// Accuracy required of attain() after recomposition.
inline constexpr double kAttainTolerance = 1e-8;
/// Containment band for physical T, R (and N relative to max(1, N_high)).
inline constexpr double kScenarioTolerance = 1e-9;

/// Name of the sampling generator, recorded in every CSV header.
inline constexpr const char* kGeneratorName = "std::mt19937_64 seeded by std::seed_seq{seed, partition}";

struct PhasePair {
    double phi_alpha = 0.0;
    double phi_beta = 0.0;
};

/// One (phi_alpha, phi_beta) pair per barrier: the phase information the
/// bounds deliberately ignore.
struct PhaseAssignment {
    std::vector<PhasePair> phases;

    std::size_t size() const { return phases.size(); }
};

/// Composes from_polar(theta_i, phases_i) left to right. Sizes must match.
TransferMatrix compose_with_phases(const RapiditySequence& seq, const PhaseAssignment& phases);

struct SweepResult {
    double theta_min_observed = 0.0;
    double theta_max_observed = 0.0;
    PhaseAssignment argmin;
    PhaseAssignment argmax;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
};

/// Samples processed per independent substream.
inline constexpr std::size_t kPartitionSize = 4096;

/// Uniform random phases in (-pi, pi] for every barrier, composed exactly.
/// Sample index range is cut into kPartitionSize blocks; block p draws from
/// its own generator seeded by (seed, p), so the result does not depend on
/// `threads` (0 picks the hardware concurrency).
/// Throws ContainmentViolation if any sample leaves [B_n, S_n] by more than
/// kContainmentTolerance.
SweepResult random_phase_sweep(const RapiditySequence& seq, std::size_t samples, std::uint64_t seed,
                               unsigned threads = 0);

/// Deterministic search over the reduced gauge phi_alpha = 0, phi_beta_1 = 0,
/// phi_beta_j on a grid of `grid_points` values in (-pi, pi]. With `refine`
/// the best grid points are polished: the last phase is set to the exact
/// extremum of its sinusoidal dependence and the others are refined by
/// golden-section search within one grid step.
/// Throws DimensionError for more than four barriers.
SweepResult extremal_phase_search(const RapiditySequence& seq, std::size_t grid_points, bool refine = true);

/// Phases under which the composed rapidity equals `target`, which must lie
/// in [B_n, S_n]. Built left to right: each step picks the next running
/// rapidity as close to the target as the remaining barriers allow, then
/// solves the two-matrix modulus law
///   cosh 2x = cosh 2a cosh 2b + sinh 2a sinh 2b cos(psi)
/// for the relative phase psi.
/// Throws TargetOutOfRangeError.
PhaseAssignment attain(const RapiditySequence& seq, double target);

struct EquivalenceRow {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t agree = 0;      ///< iterative == closed within 1e-12
    std::size_t symmetric = 0;  ///< iterative value unchanged by a random shuffle
    double max_difference = 0.0;
};

struct EquivalenceAudit {
    std::vector<EquivalenceRow> rows;

    bool passed() const;
    Table to_table() const;
};

/// For each n in [2, n_max]: `trials` random sequences with theta_i in [0, 4].
EquivalenceAudit equivalence_audit(std::size_t n_max, std::size_t trials, std::uint64_t seed);

struct ContainmentRow {
    double k = 0.0;
    std::vector<double> barrier_thetas;
    BoundsReport bounds;
    double t_exact = 0.0;
    double r_exact = 0.0;
    double n_exact = 0.0;
    double theta_exact = 0.0;
    bool contained = false;
};

struct ContainmentAudit {
    std::vector<ContainmentRow> rows;
    /// Smallest distance to the nearest envelope edge (negative means a violation).
    double worst_t_margin = 0.0;
    double worst_r_margin = 0.0;
    double worst_n_margin = 0.0;
    double max_t = 0.0;
    double k_at_max_t = 0.0;
    double min_t = 0.0;
    double k_at_min_t = 0.0;
    std::size_t violations = 0;

    bool passed() const { return violations == 0; }
    Table to_table() const;
};

/// For each k: per-barrier rapidities, bounds, and the exact compound T, R, N,
/// checked against all six envelopes.
ContainmentAudit scenario_containment_audit(std::span<const BarrierSpec> specs, std::span<const double> k_sweep);

struct SpacingRow {
    double separation = 0.0;
    double t_exact = 0.0;
};

struct SpacingSweep {
    BoundsReport bounds;
    std::vector<SpacingRow> rows;
    double max_t = 0.0;
    double separation_at_max_t = 0.0;
    double min_t = 1.0;
};

/// Places `right` at left.position + separation for each separation and records
/// the exact compound transmission at fixed k.
SpacingSweep spacing_sweep(const BarrierSpec& left, const BarrierSpec& right, WaveContext ctx,
                           std::span<const double> separations);

} // namespace cbounds
