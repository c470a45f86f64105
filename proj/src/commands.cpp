#include "cbounds/commands.hpp"

#include "cbounds/bounds.hpp"
#include "cbounds/errors.hpp"
#include "cbounds/verification.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

namespace cbounds {

namespace {

struct BarrierData {
    std::vector<TransferMatrix> matrices;
    std::vector<double> transmissions;
    RapiditySequence thetas;
};

BarrierData barrier_data(const Scenario& s, double k)
{
    const WaveContext ctx(k);
    BarrierData d;
    for (const auto& b : s.barriers) {
        d.matrices.push_back(transfer_of(b, ctx));
        d.transmissions.push_back(transmission(d.matrices.back()));
    }
    d.thetas = RapiditySequence::from_matrices(d.matrices);
    return d;
}

void require_scattering(const Scenario& s, const char* analysis)
{
    if (s.mode != Mode::scattering)
        throw DomainError(std::string(analysis) + " analysis needs a scattering scenario with a spatial barrier model");
}

} // namespace

RunResult run_bounds(const Scenario& s)
{
    RunResult res;
    Table& t = res.table;
    if (s.mode == Mode::production) {
        const auto seq = RapiditySequence::from_particle_numbers(s.episodes);
        const auto rep = bounds_report(seq);
        const auto prod = production_guaranteed(s.episodes);
        for (std::size_t i = 0; i < s.episodes.size(); ++i) t.columns.push_back("N_" + std::to_string(i + 1));
        for (const char* c : {"S_n", "B_n", "theta_peak", "theta_off_peak", "N_low", "N_high", "alpha_low",
                              "alpha_high", "beta_low", "beta_high", "production_guaranteed"})
            t.columns.emplace_back(c);
        std::vector<std::string> row;
        for (double n : s.episodes) row.push_back(format_number(n));
        for (double v : {rep.s_n, rep.b_n, rep.theta_peak, rep.theta_off_peak, rep.n_interval.low, rep.n_interval.high,
                         rep.alpha_mod_interval.low, rep.alpha_mod_interval.high, rep.beta_mod_interval.low,
                         rep.beta_mod_interval.high})
            row.push_back(format_number(v));
        row.push_back(format_bool(prod.guaranteed));
        t.add_row(std::move(row));
        return res;
    }

    t.columns.emplace_back("k");
    for (std::size_t i = 0; i < s.barriers.size(); ++i) t.columns.push_back("T_" + std::to_string(i + 1));
    for (const char* c :
         {"T_min", "T_upper", "R_low", "R_high", "N_low", "N_high", "T_classical", "resonance_possible"})
        t.columns.emplace_back(c);
    for (double k : s.k_sweep.values()) {
        const auto d = barrier_data(s, k);
        const auto rep = bounds_report(d.thetas);
        std::vector<std::string> row{format_number(k)};
        for (double ti : d.transmissions) row.push_back(format_number(ti));
        for (double v : {rep.t_interval.low, rep.t_interval.high, rep.r_interval.low, rep.r_interval.high,
                         rep.n_interval.low, rep.n_interval.high, classical_transmission(d.transmissions)})
            row.push_back(format_number(v));
        row.push_back(format_bool(resonance_possible(d.transmissions).possible));
        t.add_row(std::move(row));
    }
    return res;
}

RunResult run_sweep(const Scenario& s)
{
    require_scattering(s, "sweep");
    const auto ks = s.k_sweep.values();
    const auto audit = scenario_containment_audit(s.barriers, ks);
    RunResult res{audit.to_table(), !audit.passed()};
    res.table.note("worst_T_margin", format_number(audit.worst_t_margin));
    res.table.note("max_T", format_number(audit.max_t) + " at k = " + format_number(audit.k_at_max_t));
    res.table.note("min_T", format_number(audit.min_t) + " at k = " + format_number(audit.k_at_min_t));
    return res;
}

RunResult run_verify(const Scenario& s, const RunOptions& opt)
{
    RunResult res;
    Table& t = res.table;
    const auto equivalence = equivalence_audit(12, 1000, opt.seed);
    std::size_t agree = 0, symmetric = 0, trials = 0;
    for (const auto& r : equivalence.rows) {
        agree += r.agree;
        symmetric += r.symmetric;
        trials += r.trials;
    }
    t.note("equivalence_audit", "n = 2..12, " + std::to_string(trials) + " sequences, " + std::to_string(agree) +
                                    " iterative == closed, " + std::to_string(symmetric) + " permutation-invariant");
    if (!equivalence.passed()) res.violation = true;

    auto sweep_row = [&](const RapiditySequence& seq, std::vector<std::string>& row) {
        const auto rep = bounds_report(seq);
        row.push_back(format_number(rep.b_n));
        row.push_back(format_number(rep.s_n));
        try {
            const auto sw = random_phase_sweep(seq, opt.samples, opt.seed, opt.threads);
            row.push_back(format_number(sw.theta_min_observed));
            row.push_back(format_number(sw.theta_max_observed));
            row.push_back(std::to_string(sw.sample_count));
            row.push_back(format_bool(true));
        } catch (const ContainmentViolation& e) {
            t.note("violation", e.what());
            row.insert(row.end(), {"nan", "nan", std::to_string(opt.samples), format_bool(false)});
            res.violation = true;
        }
    };

    if (s.mode == Mode::production) {
        t.columns = {"B_n", "S_n", "theta_min_observed", "theta_max_observed", "samples", "phase_contained"};
        std::vector<std::string> row;
        sweep_row(RapiditySequence::from_particle_numbers(s.episodes), row);
        t.add_row(std::move(row));
        return res;
    }

    t.columns = {"k", "B_n", "S_n", "theta_min_observed", "theta_max_observed", "samples", "phase_contained",
                 "theta_exact", "T_exact", "exact_contained"};
    const auto ks = s.k_sweep.values();
    const auto audit = scenario_containment_audit(s.barriers, ks);
    if (!audit.passed()) res.violation = true;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto& a = audit.rows[i];
        std::vector<std::string> row{format_number(ks[i])};
        sweep_row(RapiditySequence(a.barrier_thetas), row);
        row.push_back(format_number(a.theta_exact));
        row.push_back(format_number(a.t_exact));
        row.push_back(format_bool(a.contained));
        t.add_row(std::move(row));
    }
    return res;
}

RunResult run_resonance(const Scenario& s)
{
    RunResult res;
    Table& t = res.table;
    if (s.mode == Mode::production) {
        const auto p = production_guaranteed(s.episodes);
        t.columns = {"N_peak", "N_max", "threshold", "production_guaranteed", "N_min"};
        t.add_row({format_number(p.n_peak), format_number(p.n_max), format_number(p.threshold),
                   format_bool(p.guaranteed), format_number(p.n_min)});
        return res;
    }
    t.columns = {"k", "T_peak", "T_min", "threshold", "margin", "resonance_possible"};
    for (double k : s.k_sweep.values()) {
        const auto d = barrier_data(s, k);
        const auto r = resonance_possible(d.transmissions);
        t.add_row({format_number(k), format_number(r.t_peak), format_number(r.t_min), format_number(r.threshold),
                   format_number(r.margin), format_bool(r.possible)});
    }
    return res;
}

RunResult run_analysis(Analysis a, const Scenario& s, const RunOptions& opt)
{
    switch (a) {
    case Analysis::bounds: return run_bounds(s);
    case Analysis::sweep: return run_sweep(s);
    case Analysis::verify: return run_verify(s, opt);
    case Analysis::resonance: return run_resonance(s);
    }
    throw DomainError("unknown analysis");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Phase-independent bounds on transmission, reflection and particle production for compound "
                 "one-dimensional barriers."};
    app.set_version_flag("--version", std::string("cbounds ") + kToolVersion);

    std::string scenario_path;
    std::string analysis_name;
    std::string out_path = "stdout";
    RunOptions opt;
    app.add_option("--scenario", scenario_path, "Scenario file")->required();
    app.add_option("--analysis", analysis_name, "Analysis to run (default: those listed in the scenario)")
        ->check(CLI::IsMember({"bounds", "sweep", "verify", "resonance"}));
    app.add_option("--seed", opt.seed, "Seed for phase sampling")->envname("CB_SEED");
    app.add_option("--samples", opt.samples, "Random phase samples per sweep point")
        ->envname("CB_SAMPLES")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", opt.threads, "Worker threads for sampling (0 = all cores)");
    app.add_option("--out", out_path, "Output path, or 'stdout'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        const Scenario sc = load_scenario(scenario_path);
        std::vector<Analysis> analyses =
            analysis_name.empty() ? sc.analyses : std::vector<Analysis>{analysis_from_string(analysis_name)};

        std::vector<RunResult> results;
        for (auto a : analyses) {
            auto r = run_analysis(a, sc, opt);
            Table& t = r.table;
            std::vector<std::pair<std::string, std::string>> head{
                {"tool", std::string("cbounds ") + kToolVersion},
                {"units", "hbar = 2m = 1, E = k^2"},
                {"scenario", sc.name.empty() ? scenario_path : sc.name},
                {"mode", to_string(sc.mode)},
                {"analysis", to_string(a)},
                {"seed", std::to_string(opt.seed)},
                {"samples", std::to_string(opt.samples)},
                {"generator", kGeneratorName},
            };
            t.metadata.insert(t.metadata.begin(), head.begin(), head.end());
            results.push_back(std::move(r));
        }

        std::unique_ptr<std::ofstream> file;
        std::ostream* sink = &out;
        if (out_path != "stdout" && out_path != "-") {
            file = std::make_unique<std::ofstream>(out_path);
            if (!*file) {
                err << "error: cannot write '" << out_path << "'\n";
                return kExitInputError;
            }
            sink = file.get();
        }
        bool violation = false;
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (i) *sink << '\n';
            write_csv(*sink, results[i].table);
            violation = violation || results[i].violation;
        }
        if (violation) {
            err << "containment violation detected\n";
            return kExitViolation;
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const OverlapError& e) {
        err << "overlap error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
    } catch (const OverflowError& e) {
        err << "overflow error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitInputError;
}

} // namespace cbounds
