#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nlfiber::cli {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest form that still carries 17 significant digits; independent of the C locale.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const auto* d = std::get_if<double>(&row[i])) os << format_number(*d);
            else os << std::get<std::string>(row[i]);
        }
        os << '\n';
    }
}

// Column-oriented JSON: {"column": [values...]}.
inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            if (const auto* d = std::get_if<double>(&row[c])) arr.push_back(*d);
            else arr.push_back(std::get<std::string>(row[c]));
        }
        j[t.columns[c]] = std::move(arr);
    }
    return j;
}

inline void write_table(std::ostream& os, const Table& t, const std::string& format) {
    if (format == "json") os << to_json(t).dump(2) << '\n';
    else write_csv(os, t);
}

}  // namespace nlfiber::cli
