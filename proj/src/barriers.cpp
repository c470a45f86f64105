#include "cbounds/barriers.hpp"

#include "cbounds/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace cbounds {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Real propagator of (psi, psi') across a region; determinant one.
struct Propagator {
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

    Propagator then(const Propagator& next) const
    {
        return {next.m00 * m00 + next.m01 * m10, next.m00 * m01 + next.m01 * m11,
                next.m10 * m00 + next.m11 * m10, next.m10 * m01 + next.m11 * m11};
    }
};

Propagator slab_propagator(double height, double width, double energy)
{
    const double d = height - energy;
    if (d > 0.0) {
        const double kappa = std::sqrt(d);
        const double c = std::cosh(kappa * width);
        const double s = std::sinh(kappa * width);
        return {c, s / kappa, kappa * s, c};
    }
    if (d < 0.0) {
        const double q = std::sqrt(-d);
        const double c = std::cos(q * width);
        const double s = std::sin(q * width);
        return {c, s / q, -q * s, c};
    }
    return {1.0, width, 0.0, 1.0};
}

Propagator delta_propagator(double strength) { return {1.0, 0.0, strength, 1.0}; }

Propagator propagator_of(const BarrierSpec& spec, double energy)
{
    return std::visit(overloaded{
                          [&](const Rectangular& r) { return slab_propagator(r.height, r.width, energy); },
                          [&](const Delta& d) { return delta_propagator(d.strength); },
                          [&](const PiecewiseConstant& p) {
                              Propagator acc;
                              for (const auto& s : p.slabs) acc = acc.then(slab_propagator(s.height, s.width, energy));
                              return acc;
                          },
                      },
                      spec.kind);
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

} // namespace

BarrierSpec rectangular(double height, double width, double position)
{
    return {Rectangular{height, width}, position};
}

BarrierSpec delta(double strength, double position) { return {Delta{strength}, position}; }

BarrierSpec piecewise(std::vector<Slab> slabs, double position)
{
    return {PiecewiseConstant{std::move(slabs)}, position};
}

WaveContext::WaveContext(double k) : k_(k)
{
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive and finite");
}

double total_width(const BarrierSpec& spec)
{
    return std::visit(overloaded{
                          [](const Rectangular& r) { return r.width; },
                          [](const Delta&) { return 0.0; },
                          [](const PiecewiseConstant& p) {
                              double w = 0.0;
                              for (const auto& s : p.slabs) w += s.width;
                              return w;
                          },
                      },
                      spec.kind);
}

Support support(const BarrierSpec& spec)
{
    const double half = 0.5 * total_width(spec);
    return {spec.position - half, spec.position + half};
}

std::string kind_name(const BarrierSpec& spec)
{
    return std::visit(overloaded{
                          [](const Rectangular&) { return std::string("rect"); },
                          [](const Delta&) { return std::string("delta"); },
                          [](const PiecewiseConstant&) { return std::string("slabs"); },
                      },
                      spec.kind);
}

void validate(const BarrierSpec& spec)
{
    require_finite(spec.position, "barrier position");
    std::visit(overloaded{
                   [](const Rectangular& r) {
                       require_finite(r.height, "barrier height");
                       require_finite(r.width, "barrier width");
                       if (!(r.width > 0.0)) throw DomainError("rectangular barrier width must be positive");
                   },
                   [](const Delta& d) { require_finite(d.strength, "delta strength"); },
                   [](const PiecewiseConstant& p) {
                       if (p.slabs.empty()) throw DomainError("piecewise barrier needs at least one slab");
                       for (const auto& s : p.slabs) {
                           require_finite(s.height, "slab height");
                           require_finite(s.width, "slab width");
                           if (!(s.width > 0.0)) throw DomainError("slab widths must be positive");
                       }
                   },
               },
               spec.kind);
}

void check_layout(std::span<const BarrierSpec> specs)
{
    for (std::size_t i = 1; i < specs.size(); ++i) {
        if (specs[i].position < specs[i - 1].position)
            throw DomainError("barriers must be sorted by position");
        const Support prev = support(specs[i - 1]);
        const Support cur = support(specs[i]);
        if (prev.hi >= cur.lo) {
            std::ostringstream os;
            os << "barrier " << i << " [" << prev.lo << ", " << prev.hi << "] overlaps barrier " << i + 1 << " ["
               << cur.lo << ", " << cur.hi << "]";
            throw OverlapError(os.str());
        }
    }
}

TransferMatrix transfer_of(const BarrierSpec& spec, WaveContext ctx)
{
    validate(spec);
    const double k = ctx.k();
    const double half = 0.5 * total_width(spec);
    const Propagator p = propagator_of(spec, ctx.energy());

    // Amplitudes (A, B) of psi = A e^{-ikx} + B e^{ikx}; the matrix maps the
    // right-hand pair onto the left-hand pair: M = W(-half)^{-1} P^{-1} W(half).
    const complex ik{0.0, k};
    const complex eR = std::polar(1.0, k * half);  // e^{ik x_R}
    const complex eL = std::conj(eR);              // e^{ik x_L}

    // P^{-1} W(x_R) columns.
    const std::array<complex, 2> w_col0{std::conj(eR), -ik * std::conj(eR)};
    const std::array<complex, 2> w_col1{eR, ik * eR};
    auto apply_pinv = [&](const std::array<complex, 2>& v) {
        return std::array<complex, 2>{p.m11 * v[0] - p.m01 * v[1], -p.m10 * v[0] + p.m00 * v[1]};
    };
    const auto c0 = apply_pinv(w_col0);
    const auto c1 = apply_pinv(w_col1);

    // First row of W(x_L)^{-1} = [ik e^{ikx_L}, -e^{ikx_L}] / (2ik).
    auto row0 = [&](const std::array<complex, 2>& v) { return (ik * eL * v[0] - eL * v[1]) / (2.0 * ik); };
    const complex alpha = row0(c0);
    const complex beta = row0(c1);

    return shift(make_transfer(alpha, beta), k, spec.position);
}

TransferMatrix scenario_transfer(std::span<const BarrierSpec> specs, WaveContext ctx)
{
    check_layout(specs);
    std::vector<TransferMatrix> ms;
    ms.reserve(specs.size());
    for (const auto& s : specs) ms.push_back(transfer_of(s, ctx));
    return compose_sequence(ms);
}

} // namespace cbounds
