#include "cavsim/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cavsim {

std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int SweepTable::n_rows() const {
    return columns.empty() ? 0 : static_cast<int>(columns.front().size());
}

void SweepTable::add_column(const std::string& name) {
    if (n_rows() != 0) {
        throw std::logic_error("SweepTable::add_column: table already has rows");
    }
    column_names.push_back(name);
    columns.emplace_back();
}

void SweepTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns.size()) {
        throw std::logic_error("SweepTable::add_row: value count mismatch");
    }
    for (size_t i = 0; i < values.size(); ++i) columns[i].push_back(values[i]);
}

const std::vector<double>& SweepTable::column(const std::string& name) const {
    for (size_t i = 0; i < column_names.size(); ++i) {
        if (column_names[i] == name) return columns[i];
    }
    throw std::invalid_argument("SweepTable::column: no column named " + name);
}

void SweepTable::write_csv(std::ostream& os) const {
    for (const std::string& line : provenance) os << "# " << line << "\n";
    for (size_t i = 0; i < column_names.size(); ++i) {
        os << (i ? "," : "") << column_names[i];
    }
    os << "\n";
    for (int r = 0; r < n_rows(); ++r) {
        for (size_t c = 0; c < columns.size(); ++c) {
            os << (c ? "," : "") << format_g12(columns[c][r]);
        }
        os << "\n";
    }
}

void SweepTable::write_csv_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    write_csv(os);
}

void KeyValueTable::write_csv(std::ostream& os) const {
    for (const std::string& line : provenance) os << "# " << line << "\n";
    os << key_header << "," << value_header << "\n";
    for (const auto& [key, value] : rows) {
        os << key << "," << format_g12(value) << "\n";
    }
}

void KeyValueTable::write_csv_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    write_csv(os);
}

} // namespace cavsim
