#include "frontier/panel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace frontier::data {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("panel: " + msg); }

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    if (quoted) fail("line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += "\"";
    return out;
}

double parse_numeric(const std::string& field, std::size_t line_no, const std::string& column) {
    if (field.empty()) return missing_value();
    const char* begin = field.data();
    const char* end = begin + field.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        fail("line " + std::to_string(line_no) + ": column '" + column + "' is not numeric: '" + field + "'");
    return v;
}

long parse_integer(const std::string& field, std::size_t line_no, const std::string& column) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    long v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || field.empty())
        fail("line " + std::to_string(line_no) + ": column '" + column + "' is not an integer: '" + field + "'");
    return v;
}

}  // namespace

std::string group_name(int type) {
    switch (type) {
        case 1: return "SOB";
        case 2: return "JSB";
        case 3: return "RCB/CCB";
    }
    return "type" + std::to_string(type);
}

const std::vector<int>& group_codes() {
    static const std::vector<int> codes{1, 2, 3};
    return codes;
}

void Panel::declare_variable(const std::string& name) {
    if (!columns_.count(name)) {
        columns_[name] = std::vector<double>(banks_.size(), missing_value());
        variable_names_.push_back(name);
    }
}

void Panel::add_row(std::string bank, int year, int type,
                    const std::map<std::string, double>& values) {
    const auto key = std::make_pair(bank, year);
    if (index_.count(key))
        fail("duplicate (bank, year) pair: (" + bank + ", " + std::to_string(year) + ")");

    for (std::size_t r = 0; r < banks_.size(); ++r) {
        if (banks_[r] == bank && types_[r] != type)
            fail("bank " + bank + " carries conflicting type labels " + std::to_string(types_[r]) +
                 " and " + std::to_string(type));
    }

    for (const auto& [name, _] : values) declare_variable(name);
    index_[key] = banks_.size();
    banks_.push_back(std::move(bank));
    years_.push_back(year);
    types_.push_back(type);
    for (auto& [name, col] : columns_) {
        const auto it = values.find(name);
        col.push_back(it == values.end() ? missing_value() : it->second);
    }
}

bool Panel::has_variable(const std::string& name) const { return columns_.count(name) > 0; }

const std::vector<double>& Panel::column(const std::string& name) const {
    const auto it = columns_.find(name);
    if (it == columns_.end()) fail("unknown variable '" + name + "'");
    return it->second;
}

double Panel::value(std::size_t row, const std::string& name) const { return column(name)[row]; }

int Panel::type_of(const std::string& bank) const {
    for (std::size_t r = 0; r < banks_.size(); ++r)
        if (banks_[r] == bank) return types_[r];
    fail("unknown bank '" + bank + "'");
}

std::optional<std::size_t> Panel::find_row(const std::string& bank, int year) const {
    const auto it = index_.find(std::make_pair(bank, year));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> Panel::distinct_years() const {
    std::set<int> s(years_.begin(), years_.end());
    return {s.begin(), s.end()};
}

std::vector<std::string> Panel::distinct_banks() const {
    std::set<std::string> s(banks_.begin(), banks_.end());
    return {s.begin(), s.end()};
}

std::vector<std::size_t> Panel::rows_for_year(int year) const {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < years_.size(); ++r)
        if (years_[r] == year) rows.push_back(r);
    return rows;
}

std::vector<std::size_t> Panel::rows_for_bank(const std::string& bank) const {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < banks_.size(); ++r)
        if (banks_[r] == bank) rows.push_back(r);
    std::sort(rows.begin(), rows.end(),
              [&](std::size_t a, std::size_t b) { return years_[a] < years_[b]; });
    return rows;
}

Panel load_panel(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) fail("'" + path + "' is empty");
    const auto header = split_csv_line(line, 1);

    auto column_of = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) fail("required column '" + name + "' missing from header");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t bank_col = column_of(options.bank_column);
    const std::size_t year_col = column_of(options.year_column);
    const std::size_t type_col = column_of(options.type_column);

    Panel panel;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != bank_col && c != year_col && c != type_col) panel.declare_variable(header[c]);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line, line_no);
        if (fields.size() != header.size())
            fail("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                 " fields, found " + std::to_string(fields.size()));

        const std::string bank = fields[bank_col];
        if (bank.empty()) fail("line " + std::to_string(line_no) + ": empty bank id");
        const int year = static_cast<int>(parse_integer(fields[year_col], line_no, options.year_column));
        const long type = parse_integer(fields[type_col], line_no, options.type_column);
        if (std::find(group_codes().begin(), group_codes().end(), static_cast<int>(type)) ==
            group_codes().end()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": unknown type label '" << type << "'; allowed labels:";
            for (int code : group_codes()) msg << " " << code << "=" << group_name(code);
            fail(msg.str());
        }

        std::map<std::string, double> values;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == bank_col || c == year_col || c == type_col) continue;
            values[header[c]] = parse_numeric(fields[c], line_no, header[c]);
        }
        try {
            panel.add_row(bank, year, static_cast<int>(type), values);
        } catch (const std::runtime_error& e) {
            fail("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return panel;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) fail("number formatting failed");
    return std::string(buf, ptr);
}

void save_panel(const Panel& panel, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write '" + path + "'");
    out << "bank,year,type";
    for (const auto& name : panel.variable_names()) out << "," << csv_escape(name);
    out << "\n";
    for (std::size_t r = 0; r < panel.num_rows(); ++r) {
        out << csv_escape(panel.banks()[r]) << "," << panel.years()[r] << "," << panel.types()[r];
        for (const auto& name : panel.variable_names())
            out << "," << format_double(panel.column(name)[r]);
        out << "\n";
    }
}

}  // namespace frontier::data
