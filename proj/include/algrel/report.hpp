#pragma once

// Tabular results rendered as aligned text, CSV or JSON.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "algrel/errors.hpp"

namespace algrel::io {

using OrderedJson = nlohmann::ordered_json;

enum class Format { table, csv, json };

inline Format parse_format(const std::string& s) {
    if (s == "table") {
        return Format::table;
    }
    if (s == "csv") {
        return Format::csv;
    }
    if (s == "json") {
        return Format::json;
    }
    throw ValidationError("unknown format \"" + s + "\" (expected json, csv or table)");
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<OrderedJson>> rows;

    void add(std::vector<OrderedJson> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::string command;
    std::vector<Table> tables;

    Table& table(std::string name, std::vector<std::string> columns) {
        tables.push_back(Table{std::move(name), std::move(columns), {}});
        return tables.back();
    }
};

inline std::string format_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

namespace detail {

inline OrderedJson rounded(const OrderedJson& v, int precision) {
    if (v.is_number_float()) {
        return std::strtod(format_number(v.get<double>(), precision).c_str(), nullptr);
    }
    if (v.is_array()) {
        OrderedJson out = OrderedJson::array();
        for (const auto& x : v) {
            out.push_back(rounded(x, precision));
        }
        return out;
    }
    return v;
}

inline std::string cell_text(const OrderedJson& v, int precision) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        return format_number(v.get<double>(), precision);
    }
    if (v.is_array()) {
        std::string out = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += (i ? "," : "") + cell_text(v[i], precision);
        }
        return out + ")";
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

}  // namespace detail

inline void render(const Report& report, Format format, int precision, std::ostream& out) {
    if (format == Format::json) {
        OrderedJson doc;
        doc["command"] = report.command;
        for (const auto& t : report.tables) {
            OrderedJson rows = OrderedJson::array();
            for (const auto& row : t.rows) {
                OrderedJson obj = OrderedJson::object();
                for (std::size_t c = 0; c < t.columns.size(); ++c) {
                    obj[t.columns[c]] = detail::rounded(row[c], precision);
                }
                rows.push_back(std::move(obj));
            }
            doc[t.name] = std::move(rows);
        }
        out << doc.dump(2) << '\n';
        return;
    }

    const bool titled = report.tables.size() > 1;
    for (std::size_t ti = 0; ti < report.tables.size(); ++ti) {
        const auto& t = report.tables[ti];
        if (ti > 0) {
            out << '\n';
        }
        if (titled) {
            out << "# " << t.name << '\n';
        }
        std::vector<std::vector<std::string>> text;
        for (const auto& row : t.rows) {
            std::vector<std::string> line;
            for (const auto& cell : row) {
                line.push_back(detail::cell_text(cell, precision));
            }
            text.push_back(std::move(line));
        }
        if (format == Format::csv) {
            for (std::size_t c = 0; c < t.columns.size(); ++c) {
                out << (c ? "," : "") << detail::csv_escape(t.columns[c]);
            }
            out << '\n';
            for (const auto& line : text) {
                for (std::size_t c = 0; c < line.size(); ++c) {
                    out << (c ? "," : "") << detail::csv_escape(line[c]);
                }
                out << '\n';
            }
            continue;
        }
        std::vector<std::size_t> width(t.columns.size());
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            width[c] = t.columns[c].size();
            for (const auto& line : text) {
                width[c] = std::max(width[c], line[c].size());
            }
        }
        auto emit = [&](const std::vector<std::string>& line) {
            std::string s;
            for (std::size_t c = 0; c < line.size(); ++c) {
                if (c) {
                    s += "  ";
                }
                s += line[c] + std::string(width[c] - line[c].size(), ' ');
            }
            s.erase(s.find_last_not_of(' ') + 1);
            out << s << '\n';
        };
        emit(t.columns);
        std::vector<std::string> rule;
        for (std::size_t w : width) {
            rule.emplace_back(w, '-');
        }
        emit(rule);
        for (const auto& line : text) {
            emit(line);
        }
    }
}

}  // namespace algrel::io
