#pragma once

// Tabular experiment reports and their CSV / JSON serializations.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sintlab {

using Value = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    /// Key/value pairs printed ahead of the table (command, seed, parameters).
    std::vector<std::pair<std::string, std::string>> meta;

    void add(std::vector<Value> row);
};

/// %.15g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double x);
std::string format_value(const Value& v);

/// "# key=value ..." line, header row, then one row per record.
void write_csv(const Report& r, std::ostream& out);
/// Array of flat objects; metadata keys lead each object.
void write_json(const Report& r, std::ostream& out);

}  // namespace sintlab
