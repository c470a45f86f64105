#include "cbounds/table.hpp"

#include "cbounds/errors.hpp"

#include <charconv>
#include <ostream>

namespace cbounds {

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != columns.size()) throw Error("table row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& os, const Table& table)
{
    for (const auto& [key, value] : table.metadata) os << "# " << key << ": " << value << '\n';
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os << ',';
            os << csv_escape(fields[i]);
        }
        os << '\n';
    };
    line(table.columns);
    for (const auto& r : table.rows) line(r);
}

} // namespace cbounds
