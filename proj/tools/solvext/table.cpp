#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace solvext::cli {
namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>)
                return quote(v);
            else if constexpr (std::is_same_v<T, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else
                return std::to_string(v);
        },
        c);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << quote(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw std::logic_error("write_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render(row[i]);
        os << '\n';
    }
}

nlohmann::json rows_to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace solvext::cli
