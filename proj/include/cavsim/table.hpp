#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cavsim {

/// Shortest representation with 12 significant digits.
std::string format_g12(double v);
/// Exact round-trip representation (17 significant digits), used where a
/// reader must reproduce the value bit for bit.
std::string format_exact(double v);

/// Named numeric columns of equal length plus provenance lines that are
/// written as leading '#' comments. Serialization is plain CSV with 12
/// significant digits per value.
struct SweepTable {
    std::string name;
    std::vector<std::string> provenance;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;

    int n_rows() const;
    int n_cols() const { return static_cast<int>(column_names.size()); }
    void add_column(const std::string& name);
    /// Throws std::invalid_argument if the row width does not match.
    void add_row(const std::vector<double>& row);
    const std::vector<double>& column(const std::string& name) const;

    void write_csv(std::ostream& os) const;
    void write_csv_file(const std::string& path) const;
};

/// quantity,value table (string keys), same comment conventions.
struct KeyValueTable {
    std::string name;
    std::vector<std::string> provenance;
    std::vector<std::pair<std::string, double>> rows;
    std::string key_header = "quantity";
    std::string value_header = "value";

    void write_csv(std::ostream& os) const;
    void write_csv_file(const std::string& path) const;
};

} // namespace cavsim
