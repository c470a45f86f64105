#pragma once

#include "cbounds/transfer.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cbounds {

struct Interval {
    double low = 0.0;
    double high = 0.0;

    bool contains(double x, double tol = 0.0) const { return x >= low - tol && x <= high + tol; }
    double width() const { return high - low; }
};

/// Per-barrier rapidities theta_i = acosh|alpha_i|, all finite and >= 0.
/// The same numbers are the hyperbolic lengths of the individual barriers.
class RapiditySequence {
public:
    RapiditySequence() = default;
    explicit RapiditySequence(std::vector<double> thetas);
    RapiditySequence(std::initializer_list<double> thetas);

    static RapiditySequence from_transmissions(std::span<const double> ts);
    static RapiditySequence from_reflections(std::span<const double> rs);
    static RapiditySequence from_particle_numbers(std::span<const double> ns);
    static RapiditySequence from_matrices(std::span<const TransferMatrix> ms);

    std::span<const double> values() const { return thetas_; }
    std::size_t size() const { return thetas_.size(); }
    bool empty() const { return thetas_.empty(); }
    double operator[](std::size_t i) const { return thetas_[i]; }

private:
    std::vector<double> thetas_;
};

// Conversions between a single barrier's rapidity and its probabilities:
// theta = sech^-1 sqrt(T) = tanh^-1 sqrt(R) = sinh^-1 sqrt(N).

/// T in (0, 1]; T = 0 is rejected (it would map to infinite rapidity).
double theta_from_t(double t);
/// R in [0, 1).
double theta_from_r(double r);
/// N >= 0.
double theta_from_n(double n);
double t_from_theta(double theta);
double r_from_theta(double theta);
double n_from_theta(double theta);

// Two-barrier bounds. The hyperbolic form is canonical; the *_rational
// variants evaluate the equivalent algebraic expressions as a cross-check.
Interval two_barrier_t_bounds(double t1, double t2);
Interval two_barrier_t_bounds_rational(double t1, double t2);
Interval two_barrier_r_bounds(double r1, double r2);
Interval two_barrier_r_bounds_rational(double r1, double r2);
Interval two_barrier_n_bounds(double n1, double n2);
Interval two_barrier_n_bounds_rational(double n1, double n2);

/// S_n, the sum of rapidities (zero for an empty sequence).
double s_n(const RapiditySequence& seq);

/// Lower edge B_n built one barrier at a time:
///   B_1 = theta_1,
///   B_{m+1} = (theta_{m+1} - S_m) H(theta_{m+1} - S_m) + (B_m - theta_{m+1}) H(B_m - theta_{m+1}).
double b_n_iterative(const RapiditySequence& seq);

/// B_n = max(2 theta_peak - S_n, 0). Agrees with b_n_iterative on every input.
double b_n_closed(const RapiditySequence& seq);

/// Largest single rapidity (zero for an empty sequence).
double theta_peak(const RapiditySequence& seq);

/// Everything that can be said about a compound barrier from its per-barrier
/// rapidities alone. The composed rapidity lies in [b_n, s_n] for every choice
/// of phases, and the probability envelopes follow by monotonicity.
struct BoundsReport {
    double s_n = 0.0;
    double b_n = 0.0;
    double theta_peak = 0.0;
    double theta_off_peak = 0.0;
    Interval t_interval;           ///< [sech^2 S_n, sech^2 B_n]
    Interval r_interval;           ///< [tanh^2 B_n, tanh^2 S_n]
    Interval n_interval;           ///< [sinh^2 B_n, sinh^2 S_n]
    Interval alpha_mod_interval;   ///< [cosh B_n, cosh S_n]
    Interval beta_mod_interval;    ///< [sinh B_n, sinh S_n]
    Interval theta_interval() const { return {b_n, s_n}; }
};

/// Throws EmptySequenceError, and OverflowError when S_n exceeds kMaxRapidity.
BoundsReport bounds_report(const RapiditySequence& seq);

/// Product of the T_i: the answer when interference is ignored.
double classical_transmission(std::span<const double> ts);

struct ResonanceCheck {
    bool possible = false;
    /// t_peak - threshold; possible <=> margin >= 0 (up to rounding at equality).
    double margin = 0.0;
    double t_peak = 0.0;     ///< transmission of the most opaque barrier
    double t_min = 0.0;      ///< sech^2 S_n
    double threshold = 0.0;  ///< 2 sqrt(t_min) / (1 + sqrt(t_min))
};

/// Necessary condition for a perfect transmission resonance (T = 1) of the
/// compound barrier. `possible` is decided in rapidity space (B_n == 0); the
/// margin is the same statement evaluated through the half-angle formula.
ResonanceCheck resonance_possible(std::span<const double> ts);

struct ProductionCheck {
    bool guaranteed = false;
    double n_min = 0.0;      ///< sinh^2 B_n
    double n_peak = 0.0;
    double n_max = 0.0;      ///< sinh^2 S_n
    double threshold = 0.0;  ///< (sqrt(n_max + 1) - 1) / 2
};

/// Sufficient condition for nonzero net particle production over a series of
/// parametric episodes: N_peak > (sqrt(N_max + 1) - 1) / 2.
ProductionCheck production_guaranteed(std::span<const double> ns);

// Closed algebraic forms of hyperbolic addition, each checked against the
// transcendental evaluation in the tests.

/// sinh(asinh A + asinh B) = A sqrt(1+B^2) + B sqrt(1+A^2).
double sinh_sum_asinh(double a, double b);
/// cosh(asinh A + asinh B) = sqrt(1+A^2) sqrt(1+B^2) + AB.
double cosh_sum_asinh(double a, double b);
/// cosh(acosh A + acosh B) = AB + sqrt(A^2-1) sqrt(B^2-1), for A, B >= 1.
double cosh_sum_acosh(double a, double b);
/// tanh(atanh A + atanh B) = (A+B)/(1+AB), for |A|, |B| < 1.
double tanh_sum_atanh(double a, double b);
/// sech(asech A + asech B) = AB / (1 + sqrt(1-A^2) sqrt(1-B^2)), for A, B in (0, 1].
double sech_sum_asech(double a, double b);

} // namespace cbounds
