#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace sintlab {

void Report::add(std::vector<Value> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string format_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::string>) return x;
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>) return format_double(x);
            else return std::to_string(x);
        },
        v);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_line(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << "\r\n";
}

nlohmann::ordered_json json_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                // Non-finite values have no JSON number form.
                if (!std::isfinite(x)) return format_double(x);
                return nlohmann::ordered_json::parse(format_double(x));
            } else {
                return x;
            }
        },
        v);
}

}  // namespace

void write_csv(const Report& r, std::ostream& out) {
    out << '#';
    for (const auto& [k, v] : r.meta) out << ' ' << k << '=' << v;
    out << "\r\n";
    csv_line(out, r.columns);
    for (const auto& row : r.rows) {
        std::vector<std::string> fields;
        for (const auto& v : row) fields.push_back(format_value(v));
        csv_line(out, fields);
    }
}

void write_json(const Report& r, std::ostream& out) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.meta) obj[k] = v;
        for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = json_value(row[i]);
        arr.push_back(std::move(obj));
    }
    out << arr.dump(1) << '\n';
}

}  // namespace sintlab
