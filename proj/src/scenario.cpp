#include "cbounds/scenario.hpp"

#include "cbounds/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace cbounds {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t j = s.find_first_of(" \t", i);
        if (i < s.size()) out.push_back(s.substr(i, j == std::string_view::npos ? s.size() - i : j - i));
        i = j == std::string_view::npos ? s.size() : j;
    }
    return out;
}

double parse_number(std::string_view text, int line, std::string_view field)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw ParseError(line, "field '" + std::string(field) + "': '" + std::string(text) + "' is not a number");
    return v;
}

int parse_int(std::string_view text, int line, std::string_view field)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(line, "field '" + std::string(field) + "': '" + std::string(text) + "' is not an integer");
    return v;
}

std::vector<double> parse_list(std::string_view text, int line, std::string_view field)
{
    std::vector<double> out;
    for (auto item : split(text, ',')) out.push_back(parse_number(item, line, field));
    return out;
}

struct Row {
    int line;
    std::string kind;
    std::map<std::string, std::string, std::less<>> fields;
};

const std::string& require_field(const Row& row, const std::string& key)
{
    const auto it = row.fields.find(key);
    if (it == row.fields.end()) throw ParseError(row.line, row.kind + " barrier is missing '" + key + "'");
    return it->second;
}

void reject_unknown(const Row& row, std::initializer_list<std::string_view> allowed)
{
    for (const auto& [key, value] : row.fields) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError(row.line, "unknown field '" + key + "' for " + row.kind + " barrier");
    }
}

BarrierSpec barrier_from_row(const Row& row)
{
    const double position = parse_number(require_field(row, "position"), row.line, "position");
    if (row.kind == "rect" || row.kind == "rectangular") {
        reject_unknown(row, {"position", "height", "width"});
        return rectangular(parse_number(require_field(row, "height"), row.line, "height"),
                           parse_number(require_field(row, "width"), row.line, "width"), position);
    }
    if (row.kind == "delta") {
        reject_unknown(row, {"position", "strength"});
        return delta(parse_number(require_field(row, "strength"), row.line, "strength"), position);
    }
    if (row.kind == "slabs" || row.kind == "piecewise") {
        reject_unknown(row, {"position", "slabs"});
        std::vector<Slab> slabs;
        for (auto pair : split(require_field(row, "slabs"), ',')) {
            const auto parts = split(pair, ':');
            if (parts.size() != 2) throw ParseError(row.line, "slab '" + std::string(pair) + "' is not height:width");
            slabs.push_back({parse_number(parts[0], row.line, "slabs"), parse_number(parts[1], row.line, "slabs")});
        }
        return piecewise(std::move(slabs), position);
    }
    throw ParseError(row.line, "unknown barrier kind '" + row.kind + "' (expected rect, delta or slabs)");
}

} // namespace

std::string to_string(Mode m) { return m == Mode::scattering ? "scattering" : "production"; }

std::string to_string(Analysis a)
{
    switch (a) {
    case Analysis::bounds: return "bounds";
    case Analysis::sweep: return "sweep";
    case Analysis::verify: return "verify";
    case Analysis::resonance: return "resonance";
    }
    return "unknown";
}

Analysis analysis_from_string(std::string_view name)
{
    for (auto a : {Analysis::bounds, Analysis::sweep, Analysis::verify, Analysis::resonance}) {
        if (to_string(a) == name) return a;
    }
    throw DomainError("unknown analysis '" + std::string(name) + "'");
}

std::vector<double> KSweep::values() const
{
    if (!range) return explicit_values;
    if (range->steps == 1) return {range->start};
    std::vector<double> out(static_cast<std::size_t>(range->steps));
    for (int i = 0; i < range->steps; ++i)
        out[i] = range->start + (range->stop - range->start) * static_cast<double>(i) / (range->steps - 1);
    out.back() = range->stop;
    return out;
}

Scenario parse_scenario(std::string_view text)
{
    Scenario sc;
    std::map<std::string, std::pair<int, std::string>, std::less<>> keys;
    std::vector<Row> rows;
    bool in_barriers = false;

    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line != "[barriers]") throw ParseError(line_no, "unknown section '" + std::string(line) + "'");
            if (in_barriers) throw ParseError(line_no, "duplicate [barriers] section");
            in_barriers = true;
            continue;
        }
        if (!in_barriers) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty()) throw ParseError(line_no, "empty key");
            if (!keys.emplace(key, std::make_pair(line_no, value)).second)
                throw ParseError(line_no, "duplicate key '" + key + "'");
            continue;
        }

        const auto toks = tokens(line);
        Row row{line_no, std::string(toks.front()), {}};
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto eq = toks[i].find('=');
            if (eq == std::string_view::npos || eq == 0)
                throw ParseError(line_no, "expected field=value, got '" + std::string(toks[i]) + "'");
            if (!row.fields.emplace(std::string(toks[i].substr(0, eq)), std::string(toks[i].substr(eq + 1))).second)
                throw ParseError(line_no, "duplicate field '" + std::string(toks[i].substr(0, eq)) + "'");
        }
        rows.push_back(std::move(row));
    }

    auto take = [&](std::string_view key) -> std::optional<std::pair<int, std::string>> {
        const auto it = keys.find(key);
        if (it == keys.end()) return std::nullopt;
        auto v = it->second;
        keys.erase(it);
        return v;
    };

    if (auto v = take("name")) sc.name = v->second;
    if (auto v = take("mode")) {
        if (v->second == "scattering") sc.mode = Mode::scattering;
        else if (v->second == "production") sc.mode = Mode::production;
        else throw ParseError(v->first, "mode must be 'scattering' or 'production'");
    }
    if (auto v = take("analyses")) {
        for (auto item : split(v->second, ',')) {
            try {
                sc.analyses.push_back(analysis_from_string(item));
            } catch (const DomainError& e) {
                throw ParseError(v->first, e.what());
            }
        }
    } else {
        sc.analyses = {Analysis::bounds};
    }

    auto start = take("k.start");
    auto stop = take("k.stop");
    auto steps = take("k.steps");
    auto values = take("k.values");
    if (values && (start || stop || steps))
        throw ParseError(values->first, "use either k.values or k.start/k.stop/k.steps, not both");
    if (start || stop || steps) {
        if (!start || !stop || !steps) {
            const int at = start ? start->first : stop ? stop->first : steps->first;
            throw ParseError(at, "k range needs all of k.start, k.stop and k.steps");
        }
        KSweep::Range r{parse_number(start->second, start->first, "k.start"),
                        parse_number(stop->second, stop->first, "k.stop"),
                        parse_int(steps->second, steps->first, "k.steps")};
        if (r.steps < 1) throw DomainError("line " + std::to_string(steps->first) + ": k.steps must be >= 1");
        if (!(r.start > 0.0) || !(r.stop > 0.0))
            throw DomainError("line " + std::to_string(start->first) + ": wavenumbers must be positive");
        sc.k_sweep.range = r;
    } else if (values) {
        sc.k_sweep.explicit_values = parse_list(values->second, values->first, "k.values");
        for (double k : sc.k_sweep.explicit_values) {
            if (!(k > 0.0) || !std::isfinite(k))
                throw DomainError("line " + std::to_string(values->first) + ": wavenumbers must be positive");
        }
    }

    auto episodes = take("episodes");
    if (episodes) {
        sc.episodes = parse_list(episodes->second, episodes->first, "episodes");
        for (double n : sc.episodes) {
            if (!(n >= 0.0) || !std::isfinite(n))
                throw DomainError("line " + std::to_string(episodes->first) + ": particle numbers must be >= 0");
        }
    }

    if (!keys.empty()) {
        const auto& [key, where] = *keys.begin();
        throw ParseError(where.first, "unknown key '" + key + "'");
    }

    for (const auto& row : rows) {
        BarrierSpec spec = barrier_from_row(row);
        try {
            validate(spec);
        } catch (const DomainError& e) {
            throw DomainError("line " + std::to_string(row.line) + ": " + e.what());
        }
        sc.barriers.push_back(std::move(spec));
    }

    if (sc.mode == Mode::scattering) {
        if (sc.barriers.empty()) throw ParseError(0, "scattering scenario needs a [barriers] table with at least one row");
        if (sc.k_sweep.values().empty()) throw ParseError(0, "scattering scenario needs k.values or a k range");
        if (episodes) throw ParseError(episodes->first, "episodes are only meaningful in production mode");
        std::stable_sort(sc.barriers.begin(), sc.barriers.end(),
                         [](const BarrierSpec& a, const BarrierSpec& b) { return a.position < b.position; });
        check_layout(sc.barriers);
    } else {
        if (sc.episodes.empty()) throw ParseError(0, "production scenario needs 'episodes = N1, N2, ...'");
        if (!sc.barriers.empty()) throw ParseError(rows.front().line, "production scenarios take episodes, not barriers");
    }
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

} // namespace cbounds
