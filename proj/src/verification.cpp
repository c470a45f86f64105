#include "cbounds/verification.hpp"

#include "cbounds/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace cbounds {

namespace {

constexpr double pi = std::numbers::pi;

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t partition)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(partition), static_cast<std::uint32_t>(partition >> 32)};
    return std::mt19937_64(seq);
}

// Uniform on (-pi, pi].
double draw_phase(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return pi - 2.0 * pi * u(gen);
}

std::string describe(const RapiditySequence& seq)
{
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? ", " : "") << seq[i];
    os << ']';
    return os.str();
}

struct PartitionExtremes {
    double lo = 0.0;
    double hi = 0.0;
    PhaseAssignment argmin;
    PhaseAssignment argmax;
    std::optional<std::string> violation;
};

} // namespace

TransferMatrix compose_with_phases(const RapiditySequence& seq, const PhaseAssignment& phases)
{
    if (phases.size() != seq.size()) throw DomainError("phase assignment length does not match the sequence");
    if (seq.empty()) throw EmptySequenceError("cannot compose an empty sequence");
    TransferMatrix acc = from_polar({seq[0], phases.phases[0].phi_alpha, phases.phases[0].phi_beta});
    for (std::size_t i = 1; i < seq.size(); ++i)
        acc = compose(acc, from_polar({seq[i], phases.phases[i].phi_alpha, phases.phases[i].phi_beta}));
    return acc;
}

SweepResult random_phase_sweep(const RapiditySequence& seq, std::size_t samples, std::uint64_t seed, unsigned threads)
{
    if (samples < 1) throw DomainError("random phase sweep needs at least one sample");
    const BoundsReport rep = bounds_report(seq);
    const std::size_t n = seq.size();
    const std::size_t partitions = (samples + kPartitionSize - 1) / kPartitionSize;
    std::vector<PartitionExtremes> results(partitions);

    auto run_partition = [&](std::size_t p) {
        auto gen = substream(seed, p);
        const std::size_t begin = p * kPartitionSize;
        const std::size_t end = std::min(samples, begin + kPartitionSize);
        PartitionExtremes& out = results[p];
        PhaseAssignment phases{std::vector<PhasePair>(n)};
        bool first = true;
        for (std::size_t s = begin; s < end; ++s) {
            for (auto& ph : phases.phases) {
                ph.phi_alpha = draw_phase(gen);
                ph.phi_beta = draw_phase(gen);
            }
            const double theta = rapidity(compose_with_phases(seq, phases));
            if (!out.violation && !rep.theta_interval().contains(theta, kContainmentTolerance)) {
                std::ostringstream os;
                os.precision(17);
                os << "sample " << s << " of " << describe(seq) << " has theta = " << theta << " outside ["
                   << rep.b_n << ", " << rep.s_n << "]";
                out.violation = os.str();
            }
            if (first || theta < out.lo) {
                out.lo = theta;
                out.argmin = phases;
            }
            if (first || theta > out.hi) {
                out.hi = theta;
                out.argmax = phases;
            }
            first = false;
        }
    };

    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, partitions));
    if (workers <= 1) {
        for (std::size_t p = 0; p < partitions; ++p) run_partition(p);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t p; (p = next.fetch_add(1)) < partitions;) run_partition(p);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        pool.clear();
        if (error) std::rethrow_exception(error);
    }

    SweepResult out;
    out.sample_count = samples;
    out.seed = seed;
    for (std::size_t p = 0; p < partitions; ++p) {
        const auto& r = results[p];
        if (r.violation) throw ContainmentViolation(*r.violation);
        if (p == 0 || r.lo < out.theta_min_observed) {
            out.theta_min_observed = r.lo;
            out.argmin = r.argmin;
        }
        if (p == 0 || r.hi > out.theta_max_observed) {
            out.theta_max_observed = r.hi;
            out.argmax = r.argmax;
        }
    }
    return out;
}

namespace {

PhaseAssignment reduced_gauge(std::span<const double> free_betas)
{
    PhaseAssignment a{std::vector<PhasePair>(free_betas.size() + 1)};
    for (std::size_t j = 0; j < free_betas.size(); ++j) a.phases[j + 1].phi_beta = free_betas[j];
    return a;
}

double alpha_norm(const RapiditySequence& seq, std::span<const double> free_betas)
{
    return std::norm(compose_with_phases(seq, reduced_gauge(free_betas)).alpha());
}

// With every other phase fixed, |alpha|^2 (and |beta|^2) is A + B cos(v) + C sin(v)
// in a single phase v, so three samples fix it and the extremum is exact.
double sinusoid_extremum(const std::function<double(double)>& f, double sign)
{
    const double f0 = f(0.0), f1 = f(2.0 * pi / 3.0), f2 = f(-2.0 * pi / 3.0);
    const double b = (2.0 * f0 - f1 - f2) / 3.0;
    const double c = (f1 - f2) / std::sqrt(3.0);
    // maximum of b cos v + c sin v at atan2(c, b); minimum opposite
    const double v = std::atan2(c, b);
    return sign > 0 ? normalize_phase(v + pi) : v;
}

// Golden-section minimum of f on [lo, hi]; assumes f is unimodal there.
double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

// Refines a grid point. sign = +1 minimizes |beta|^2 (same minimizer as
// |alpha|^2 without the offset of 1), sign = -1 maximizes |alpha|^2.
// The last phase is always set to its exact optimum, which profiles it out;
// the others are searched by golden section within +-h of their grid value.
std::vector<double> polish(const RapiditySequence& seq, std::vector<double> x, double h, double sign)
{
    auto value = [&](const std::vector<double>& v) {
        const auto m = compose_with_phases(seq, reduced_gauge(v));
        return sign > 0 ? std::norm(m.beta()) : std::norm(m.alpha());
    };
    // objective to minimize, with the last phase optimized in place
    auto profiled = [&](std::vector<double>& v) {
        auto along = [&](double p) {
            v.back() = p;
            return value(v);
        };
        v.back() = sinusoid_extremum(along, sign);
        return sign * value(v);
    };
    double best = profiled(x);
    for (int sweep = 0; sweep + 1 < 200 && x.size() > 1; ++sweep) {
        const double before = best;
        for (std::size_t j = 0; j + 1 < x.size(); ++j) {
            const double centre = x[j];
            auto along = [&](double p) {
                auto trial = x;
                trial[j] = p;
                return profiled(trial);
            };
            auto trial = x;
            trial[j] = golden_section(along, centre - h, centre + h, 1e-14);
            const double val = profiled(trial);
            if (val < best) {
                best = val;
                x = trial;
            }
        }
        if (!(best < before - 1e-15 * std::abs(before))) break;
    }
    for (auto& v : x) v = normalize_phase(v);
    return x;
}

} // namespace

SweepResult extremal_phase_search(const RapiditySequence& seq, std::size_t grid_points, bool refine)
{
    if (seq.empty()) throw EmptySequenceError("phase search needs at least one barrier");
    if (seq.size() > 4) throw DimensionError("extremal phase search supports at most four barriers");
    if (grid_points < 1) throw DomainError("grid needs at least one point per phase");

    const std::size_t free = seq.size() - 1;
    const double step = 2.0 * pi / static_cast<double>(grid_points);
    auto grid_value = [&](std::size_t j) { return -pi + step * static_cast<double>(j + 1); };

    std::vector<std::size_t> idx(free, 0);
    std::vector<double> x(free);
    std::vector<double> best_lo, best_hi;
    double lo = 0.0, hi = 0.0;
    std::uint64_t count = 0;
    for (bool more = true; more;) {
        for (std::size_t j = 0; j < free; ++j) x[j] = grid_value(idx[j]);
        const double a2 = alpha_norm(seq, x);
        if (count == 0 || a2 < lo) {
            lo = a2;
            best_lo = x;
        }
        if (count == 0 || a2 > hi) {
            hi = a2;
            best_hi = x;
        }
        ++count;
        more = false;
        for (std::size_t j = 0; j < free; ++j) {
            if (++idx[j] < grid_points) {
                more = true;
                break;
            }
            idx[j] = 0;
        }
    }

    if (refine && free > 0) {
        best_lo = polish(seq, best_lo, step, +1.0);
        best_hi = polish(seq, best_hi, step, -1.0);
    }

    SweepResult out;
    out.argmin = reduced_gauge(best_lo);
    out.argmax = reduced_gauge(best_hi);
    out.theta_min_observed = rapidity(compose_with_phases(seq, out.argmin));
    out.theta_max_observed = rapidity(compose_with_phases(seq, out.argmax));
    out.sample_count = count;
    return out;
}

namespace {

// cos(psi) such that |alpha_a alpha_b + beta_a beta_b e^{i psi}| = cosh x for
// moduli cosh/sinh of a and b. Evaluated from whichever end of [|a-b|, a+b]
// is nearer so that neither form cancels catastrophically.
double relative_phase_cosine(double a, double b, double x)
{
    const double denom = std::sinh(2.0 * a) * std::sinh(2.0 * b);
    double c;
    if (x >= 0.5 * (std::abs(a - b) + a + b))
        c = 1.0 - 2.0 * std::sinh(a + b + x) * std::sinh(a + b - x) / denom;
    else
        c = -1.0 + 2.0 * std::sinh(x + a - b) * std::sinh(x - a + b) / denom;
    return std::clamp(c, -1.0, 1.0);
}

} // namespace

PhaseAssignment attain(const RapiditySequence& seq, double target)
{
    if (seq.empty()) throw EmptySequenceError("attain needs at least one barrier");
    const BoundsReport rep = bounds_report(seq);
    const double slack = 1e-12 * std::max(1.0, rep.s_n);
    if (!std::isfinite(target) || target < rep.b_n - slack || target > rep.s_n + slack) {
        std::ostringstream os;
        os.precision(17);
        os << "target " << target << " outside [" << rep.b_n << ", " << rep.s_n << "]";
        throw TargetOutOfRangeError(os.str());
    }
    target = std::clamp(target, rep.b_n, rep.s_n);

    const std::size_t n = seq.size();
    // suffix_sum[j] and suffix_peak[j] describe barriers j..n-1.
    std::vector<double> suffix_sum(n + 1, 0.0), suffix_peak(n + 1, 0.0);
    for (std::size_t j = n; j-- > 0;) {
        suffix_sum[j] = suffix_sum[j + 1] + seq[j];
        suffix_peak[j] = std::max(suffix_peak[j + 1], seq[j]);
    }

    PhaseAssignment out{std::vector<PhasePair>(n)};
    TransferMatrix running = from_polar({seq[0], 0.0, 0.0});
    for (std::size_t j = 1; j < n; ++j) {
        const double cur = rapidity(running);
        const double next = seq[j];
        const double rest = suffix_sum[j + 1];
        const double rest_peak = suffix_peak[j + 1];

        // Running rapidities x from which the remaining barriers can still reach target.
        const double reach_lo = std::max({std::abs(cur - next), target - rest, 2.0 * rest_peak - rest - target});
        const double reach_hi = std::min(cur + next, target + rest);
        const double x = reach_lo <= reach_hi ? std::clamp(target, reach_lo, reach_hi)
                                              : std::clamp(0.5 * (reach_lo + reach_hi), std::abs(cur - next), cur + next);

        double psi = 0.0;
        if (cur > 0.0 && next > 0.0) psi = std::acos(relative_phase_cosine(cur, next, x));
        const auto p = to_polar(running);
        const double phi = normalize_phase(p.phi_beta - p.phi_alpha - psi);
        out.phases[j] = {0.0, phi};
        running = compose(running, from_polar({next, 0.0, phi}));
    }
    return out;
}

bool EquivalenceAudit::passed() const
{
    return std::all_of(rows.begin(), rows.end(),
                       [](const EquivalenceRow& r) { return r.agree == r.trials && r.symmetric == r.trials; });
}

Table EquivalenceAudit::to_table() const
{
    Table t;
    t.columns = {"n", "trials", "agree", "symmetric", "max_difference"};
    for (const auto& r : rows)
        t.add_row({std::to_string(r.n), std::to_string(r.trials), std::to_string(r.agree), std::to_string(r.symmetric),
                   format_number(r.max_difference)});
    return t;
}

EquivalenceAudit equivalence_audit(std::size_t n_max, std::size_t trials, std::uint64_t seed)
{
    if (n_max < 2) throw DomainError("equivalence audit needs n_max >= 2");
    constexpr double tol = 1e-12;
    EquivalenceAudit audit;
    for (std::size_t n = 2; n <= n_max; ++n) {
        auto gen = substream(seed, n);
        std::uniform_real_distribution<double> theta(0.0, 4.0);
        EquivalenceRow row;
        row.n = n;
        row.trials = trials;
        std::vector<double> v(n);
        for (std::size_t t = 0; t < trials; ++t) {
            for (auto& x : v) x = theta(gen);
            const RapiditySequence seq(v);
            const double closed = b_n_closed(seq);
            const double diff = std::abs(b_n_iterative(seq) - closed);
            row.max_difference = std::max(row.max_difference, diff);
            if (diff <= tol) ++row.agree;
            auto shuffled = v;
            std::shuffle(shuffled.begin(), shuffled.end(), gen);
            if (std::abs(b_n_iterative(RapiditySequence(shuffled)) - closed) <= tol) ++row.symmetric;
        }
        audit.rows.push_back(row);
    }
    return audit;
}

Table ContainmentAudit::to_table() const
{
    Table t;
    t.columns = {"k", "T_exact", "R_exact", "N_exact", "T_min", "T_upper", "R_low", "R_high", "N_low", "N_high",
                 "contained"};
    for (const auto& r : rows) {
        const auto& b = r.bounds;
        t.add_row({format_number(r.k), format_number(r.t_exact), format_number(r.r_exact), format_number(r.n_exact),
                   format_number(b.t_interval.low), format_number(b.t_interval.high), format_number(b.r_interval.low),
                   format_number(b.r_interval.high), format_number(b.n_interval.low), format_number(b.n_interval.high),
                   format_bool(r.contained)});
    }
    return t;
}

ContainmentAudit scenario_containment_audit(std::span<const BarrierSpec> specs, std::span<const double> k_sweep)
{
    if (specs.empty()) throw EmptySequenceError("scenario has no barriers");
    check_layout(specs);
    ContainmentAudit audit;
    bool first = true;
    for (double k : k_sweep) {
        const WaveContext ctx(k);
        std::vector<TransferMatrix> ms;
        for (const auto& s : specs) ms.push_back(transfer_of(s, ctx));
        const auto compound = compose_sequence(ms);

        ContainmentRow row;
        row.k = k;
        const auto seq = RapiditySequence::from_matrices(ms);
        row.barrier_thetas.assign(seq.values().begin(), seq.values().end());
        row.bounds = bounds_report(seq);
        row.t_exact = transmission(compound);
        row.r_exact = reflection(compound);
        row.n_exact = particle_number(compound);
        row.theta_exact = rapidity(compound);

        const auto& b = row.bounds;
        const double n_scale = std::max(1.0, b.n_interval.high);
        const double tm = std::min(row.t_exact - b.t_interval.low, b.t_interval.high - row.t_exact);
        const double rm = std::min(row.r_exact - b.r_interval.low, b.r_interval.high - row.r_exact);
        const double nm = std::min(row.n_exact - b.n_interval.low, b.n_interval.high - row.n_exact) / n_scale;
        row.contained = tm >= -kScenarioTolerance && rm >= -kScenarioTolerance && nm >= -kScenarioTolerance;
        if (!row.contained) ++audit.violations;

        if (first) {
            audit.worst_t_margin = tm;
            audit.worst_r_margin = rm;
            audit.worst_n_margin = nm;
            audit.max_t = audit.min_t = row.t_exact;
            audit.k_at_max_t = audit.k_at_min_t = k;
            first = false;
        } else {
            audit.worst_t_margin = std::min(audit.worst_t_margin, tm);
            audit.worst_r_margin = std::min(audit.worst_r_margin, rm);
            audit.worst_n_margin = std::min(audit.worst_n_margin, nm);
            if (row.t_exact > audit.max_t) {
                audit.max_t = row.t_exact;
                audit.k_at_max_t = k;
            }
            if (row.t_exact < audit.min_t) {
                audit.min_t = row.t_exact;
                audit.k_at_min_t = k;
            }
        }
        audit.rows.push_back(std::move(row));
    }
    return audit;
}

SpacingSweep spacing_sweep(const BarrierSpec& left, const BarrierSpec& right, WaveContext ctx,
                           std::span<const double> separations)
{
    const auto m_left = transfer_of(left, ctx);
    BarrierSpec moved = right;
    moved.position = left.position;
    const auto m_right0 = transfer_of(moved, ctx);

    SpacingSweep out;
    const std::vector<TransferMatrix> pair{m_left, m_right0};
    out.bounds = bounds_report(RapiditySequence::from_matrices(pair));
    bool first = true;
    for (double d : separations) {
        moved.position = left.position + d;
        const std::array<BarrierSpec, 2> layout{left, moved};
        check_layout(layout);
        const double t = transmission(compose(m_left, shift(m_right0, ctx.k(), d)));
        out.rows.push_back({d, t});
        if (first || t > out.max_t) {
            out.max_t = t;
            out.separation_at_max_t = d;
        }
        if (first || t < out.min_t) out.min_t = t;
        first = false;
    }
    return out;
}

} // namespace cbounds
