#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace solvext::cli {

using Cell = std::variant<std::string, double, long long, bool>;

/// Column-oriented result table with CSV and JSON renderings.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// %.17g; non-finite values render as "nan"/"inf"/"-inf".
std::string format_double(double v);

/// RFC 4180 quoting (fields containing comma, quote, CR or LF are quoted,
/// quotes doubled), LF line endings, header first.
void write_csv(std::ostream& os, const Table& t);

nlohmann::json rows_to_json(const Table& t);

}  // namespace solvext::cli
