#include "cbounds/bounds.hpp"

#include "cbounds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cbounds {

namespace {

double square(double x) { return x * x; }

void require_transmission(double t)
{
    if (!(t > 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << "transmission probability " << t << " outside (0, 1]";
        throw DomainError(os.str());
    }
}

void require_reflection(double r)
{
    if (!(r >= 0.0 && r < 1.0)) {
        std::ostringstream os;
        os << "reflection probability " << r << " outside [0, 1)";
        throw DomainError(os.str());
    }
}

void require_particle_number(double n)
{
    if (!(n >= 0.0) || !std::isfinite(n)) {
        std::ostringstream os;
        os << "particle number " << n << " must be finite and non-negative";
        throw DomainError(os.str());
    }
}

} // namespace

RapiditySequence::RapiditySequence(std::vector<double> thetas) : thetas_(std::move(thetas))
{
    for (double t : thetas_) {
        if (!std::isfinite(t) || t < 0.0) throw DomainError("rapidities must be finite and non-negative");
    }
}

RapiditySequence::RapiditySequence(std::initializer_list<double> thetas)
    : RapiditySequence(std::vector<double>(thetas))
{
}

RapiditySequence RapiditySequence::from_transmissions(std::span<const double> ts)
{
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(theta_from_t(t));
    return RapiditySequence(std::move(out));
}

RapiditySequence RapiditySequence::from_reflections(std::span<const double> rs)
{
    std::vector<double> out;
    out.reserve(rs.size());
    for (double r : rs) out.push_back(theta_from_r(r));
    return RapiditySequence(std::move(out));
}

RapiditySequence RapiditySequence::from_particle_numbers(std::span<const double> ns)
{
    std::vector<double> out;
    out.reserve(ns.size());
    for (double n : ns) out.push_back(theta_from_n(n));
    return RapiditySequence(std::move(out));
}

RapiditySequence RapiditySequence::from_matrices(std::span<const TransferMatrix> ms)
{
    std::vector<double> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.push_back(rapidity(m));
    return RapiditySequence(std::move(out));
}

double theta_from_t(double t)
{
    require_transmission(t);
    // sech^-1 sqrt(T) written as asinh sqrt(R/T), which stays accurate as T -> 1.
    return std::asinh(std::sqrt((1.0 - t) / t));
}

double theta_from_r(double r)
{
    require_reflection(r);
    return std::atanh(std::sqrt(r));
}

double theta_from_n(double n)
{
    require_particle_number(n);
    return std::asinh(std::sqrt(n));
}

double t_from_theta(double theta) { return 1.0 / square(std::cosh(theta)); }

double r_from_theta(double theta) { return square(std::tanh(theta)); }

double n_from_theta(double theta) { return square(std::sinh(theta)); }

namespace {

// sinh^2(a - b) through sinh(a - b) sinh(a + b) = sinh^2 a - sinh^2 b, with the
// right-hand difference `d` formed from the inputs. Subtracting nearly equal
// rapidities directly would lose the leading digits.
double sinh2_of_difference(double a, double b, double d)
{
    const double sum = std::sinh(a + b);
    if (sum == 0.0 || !std::isfinite(d)) return n_from_theta(a - b);
    return square(d / sum);
}

} // namespace

Interval two_barrier_t_bounds(double t1, double t2)
{
    const double a = theta_from_t(t1);
    const double b = theta_from_t(t2);
    // sinh^2 theta = (1 - T) / T
    const double s2 = sinh2_of_difference(a, b, (t2 - t1) / (t1 * t2));
    return {t_from_theta(a + b), 1.0 / (1.0 + s2)};
}

Interval two_barrier_t_bounds_rational(double t1, double t2)
{
    require_transmission(t1);
    require_transmission(t2);
    const double cross = std::sqrt(1.0 - t1) * std::sqrt(1.0 - t2);
    const double low = t1 * t2 / square(1.0 + cross);
    // 1 - cross rewritten as (1 - R1 R2) / (1 + cross) to avoid cancellation
    const double gap = (t1 + t2 - t1 * t2) / (1.0 + cross);
    const double high = t1 == t2 ? 1.0 : std::min(1.0, t1 * t2 / square(gap));
    return {low, high};
}

Interval two_barrier_r_bounds(double r1, double r2)
{
    const double a = theta_from_r(r1);
    const double b = theta_from_r(r2);
    // sinh^2 theta = R / (1 - R)
    const double s2 = sinh2_of_difference(a, b, (r1 - r2) / ((1.0 - r1) * (1.0 - r2)));
    return {s2 / (1.0 + s2), r_from_theta(a + b)};
}

Interval two_barrier_r_bounds_rational(double r1, double r2)
{
    require_reflection(r1);
    require_reflection(r2);
    const double s1 = std::sqrt(r1);
    const double s2 = std::sqrt(r2);
    const double low = r1 == r2 ? 0.0 : square((s1 - s2) / (1.0 - s1 * s2));
    const double high = square((s1 + s2) / (1.0 + s1 * s2));
    return {low, high};
}

Interval two_barrier_n_bounds(double n1, double n2)
{
    const double a = theta_from_n(n1);
    const double b = theta_from_n(n2);
    return {sinh2_of_difference(a, b, n1 - n2), n_from_theta(a + b)};
}

Interval two_barrier_n_bounds_rational(double n1, double n2)
{
    require_particle_number(n1);
    require_particle_number(n2);
    const double u = std::sqrt(n1 * (n2 + 1.0));
    const double v = std::sqrt(n2 * (n1 + 1.0));
    // u - v = (u^2 - v^2) / (u + v) = (n1 - n2) / (u + v)
    const double low = n1 == n2 ? 0.0 : square((n1 - n2) / (u + v));
    return {low, square(u + v)};
}

double s_n(const RapiditySequence& seq)
{
    const auto v = seq.values();
    return std::accumulate(v.begin(), v.end(), 0.0);
}

double b_n_iterative(const RapiditySequence& seq)
{
    if (seq.empty()) throw EmptySequenceError("B_n needs at least one rapidity");
    const auto heaviside_part = [](double x) { return x > 0.0 ? x : 0.0; };
    double s = seq[0];
    double b = seq[0];
    for (std::size_t m = 1; m < seq.size(); ++m) {
        const double next = seq[m];
        b = heaviside_part(next - s) + heaviside_part(b - next);
        s += next;
    }
    return b;
}

double theta_peak(const RapiditySequence& seq)
{
    const auto v = seq.values();
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double b_n_closed(const RapiditySequence& seq)
{
    if (seq.empty()) throw EmptySequenceError("B_n needs at least one rapidity");
    return std::max(2.0 * theta_peak(seq) - s_n(seq), 0.0);
}

BoundsReport bounds_report(const RapiditySequence& seq)
{
    if (seq.empty()) throw EmptySequenceError("bounds need at least one barrier");
    BoundsReport rep;
    rep.s_n = s_n(seq);
    if (rep.s_n > kMaxRapidity) {
        std::ostringstream os;
        os << "total rapidity " << rep.s_n << " exceeds " << kMaxRapidity;
        throw OverflowError(os.str());
    }
    rep.b_n = b_n_closed(seq);
    rep.theta_peak = theta_peak(seq);
    rep.theta_off_peak = rep.s_n - rep.theta_peak;
    rep.t_interval = {t_from_theta(rep.s_n), t_from_theta(rep.b_n)};
    rep.r_interval = {r_from_theta(rep.b_n), r_from_theta(rep.s_n)};
    rep.n_interval = {n_from_theta(rep.b_n), n_from_theta(rep.s_n)};
    rep.alpha_mod_interval = {std::cosh(rep.b_n), std::cosh(rep.s_n)};
    rep.beta_mod_interval = {std::sinh(rep.b_n), std::sinh(rep.s_n)};
    return rep;
}

double classical_transmission(std::span<const double> ts)
{
    double p = 1.0;
    for (double t : ts) {
        if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmission probabilities must lie in [0, 1]");
        p *= t;
    }
    return p;
}

ResonanceCheck resonance_possible(std::span<const double> ts)
{
    if (ts.empty()) throw EmptySequenceError("resonance check needs at least one barrier");
    const auto seq = RapiditySequence::from_transmissions(ts);
    ResonanceCheck out;
    out.t_peak = *std::min_element(ts.begin(), ts.end());
    out.t_min = t_from_theta(s_n(seq));
    const double root = std::sqrt(out.t_min);
    out.threshold = 2.0 * root / (1.0 + root);
    out.margin = out.t_peak - out.threshold;
    out.possible = b_n_closed(seq) == 0.0;
    return out;
}

ProductionCheck production_guaranteed(std::span<const double> ns)
{
    if (ns.empty()) throw EmptySequenceError("production check needs at least one episode");
    const auto seq = RapiditySequence::from_particle_numbers(ns);
    const double s = s_n(seq);
    if (s > kMaxRapidity) throw OverflowError("total rapidity exceeds the representable range");
    ProductionCheck out;
    out.n_peak = *std::max_element(ns.begin(), ns.end());
    out.n_max = n_from_theta(s);
    out.threshold = (std::sqrt(out.n_max + 1.0) - 1.0) / 2.0;
    const double b = b_n_closed(seq);
    out.n_min = n_from_theta(b);
    out.guaranteed = b > 0.0;
    return out;
}

double sinh_sum_asinh(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("arguments must be finite");
    return a * std::sqrt(1.0 + b * b) + b * std::sqrt(1.0 + a * a);
}

double cosh_sum_asinh(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("arguments must be finite");
    return std::sqrt(1.0 + a * a) * std::sqrt(1.0 + b * b) + a * b;
}

double cosh_sum_acosh(double a, double b)
{
    if (!(a >= 1.0 && b >= 1.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("cosh_sum_acosh needs arguments >= 1");
    return a * b + std::sqrt(a * a - 1.0) * std::sqrt(b * b - 1.0);
}

double tanh_sum_atanh(double a, double b)
{
    if (!(std::abs(a) < 1.0 && std::abs(b) < 1.0)) throw DomainError("tanh_sum_atanh needs |A|, |B| < 1");
    return (a + b) / (1.0 + a * b);
}

double sech_sum_asech(double a, double b)
{
    if (!(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0)) throw DomainError("sech_sum_asech needs A, B in (0, 1]");
    return a * b / (1.0 + std::sqrt(1.0 - a * a) * std::sqrt(1.0 - b * b));
}

} // namespace cbounds
