#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cbounds {

/// Column-oriented result table rendered as RFC-4180 style CSV (LF line ends), optionally preceded
/// by `# key: value` metadata lines.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_row(std::vector<std::string> row);
    void note(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

/// Shortest round-trippable decimal form of a double.
std::string format_number(double x);
std::string format_bool(bool b);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

void write_csv(std::ostream& os, const Table& table);

} // namespace cbounds
