#pragma once

#include "cbounds/transfer.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

// Units throughout: hbar = 2m = 1, so E = k^2 and a slab of height V has
// local wavenumber sqrt(E - V).

namespace cbounds {

struct Rectangular {
    double height = 0.0;
    double width = 0.0;
};

/// lambda * delta(x - position). Negative strengths are attractive wells.
struct Delta {
    double strength = 0.0;
};

struct Slab {
    double height = 0.0;
    double width = 0.0;
};

/// Contiguous slabs listed left to right.
struct PiecewiseConstant {
    std::vector<Slab> slabs;
};

/// A localized barrier centred on `position` (deltas sit exactly there).
struct BarrierSpec {
    std::variant<Rectangular, Delta, PiecewiseConstant> kind;
    double position = 0.0;
};

BarrierSpec rectangular(double height, double width, double position = 0.0);
BarrierSpec delta(double strength, double position = 0.0);
BarrierSpec piecewise(std::vector<Slab> slabs, double position = 0.0);

/// Wavenumber of the incident wave; construction enforces k > 0.
class WaveContext {
public:
    explicit WaveContext(double k);

    double k() const { return k_; }
    double energy() const { return k_ * k_; }

private:
    double k_;
};

/// Closed support [lo, hi] of a barrier.
struct Support {
    double lo;
    double hi;
};

double total_width(const BarrierSpec& spec);
Support support(const BarrierSpec& spec);
std::string kind_name(const BarrierSpec& spec);

/// Throws DomainError for non-positive widths or non-finite parameters.
void validate(const BarrierSpec& spec);

/// Throws DomainError when positions are not sorted and OverlapError when
/// two closed supports intersect.
void check_layout(std::span<const BarrierSpec> specs);

/// Exact transfer matrix of the barrier at its position.
TransferMatrix transfer_of(const BarrierSpec& spec, WaveContext ctx);

/// Compound matrix in spatial order.
TransferMatrix scenario_transfer(std::span<const BarrierSpec> specs, WaveContext ctx);

} // namespace cbounds
