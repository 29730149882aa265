#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frontier::data {

/// Missing numeric cells are stored as NaN.
inline bool is_missing(double v) { return std::isnan(v); }
inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }

/// Unbalanced long-format panel: one row per (bank, year), a group type per
/// bank, and named numeric variable columns.
class Panel {
public:
    void add_row(std::string bank, int year, int type,
                 const std::map<std::string, double>& values);

    /// Registers a variable column (all-missing) ahead of add_row so column
    /// order can follow the source file rather than map order.
    void declare_variable(const std::string& name);

    std::size_t num_rows() const { return banks_.size(); }
    const std::vector<std::string>& banks() const { return banks_; }
    const std::vector<int>& years() const { return years_; }
    const std::vector<int>& types() const { return types_; }
    const std::vector<std::string>& variable_names() const { return variable_names_; }

    bool has_variable(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;

    double value(std::size_t row, const std::string& name) const;
    int type_of(const std::string& bank) const;

    std::optional<std::size_t> find_row(const std::string& bank, int year) const;
    std::vector<int> distinct_years() const;           // sorted ascending
    std::vector<std::string> distinct_banks() const;   // sorted ascending
    std::vector<std::size_t> rows_for_year(int year) const;

    /// Rows of one bank ordered by year.
    std::vector<std::size_t> rows_for_bank(const std::string& bank) const;

private:
    std::vector<std::string> banks_;
    std::vector<int> years_;
    std::vector<int> types_;
    std::vector<std::string> variable_names_;
    std::map<std::string, std::vector<double>> columns_;
    std::map<std::pair<std::string, int>, std::size_t> index_;
};

/// Group labels used throughout the outputs; type codes are 1, 2, 3.
std::string group_name(int type);
const std::vector<int>& group_codes();

struct LoadOptions {
    std::string bank_column = "bank";
    std::string year_column = "year";
    std::string type_column = "type";
};

/// Reads a UTF-8 comma-separated file with a header row. Throws
/// std::runtime_error with the offending line number on malformed input,
/// duplicate (bank, year) pairs, or unknown type labels.
Panel load_panel(const std::string& path, const LoadOptions& options = {});

/// Writes a panel back to disk; numeric cells round-trip bit-for-bit.
void save_panel(const Panel& panel, const std::string& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace frontier::data
