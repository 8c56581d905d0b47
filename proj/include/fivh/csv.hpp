#pragma once

// Deterministic CSV emission. Numbers are serialized with 17 significant
// digits so that every value round-trips exactly through parsing.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fivh::io {

/// Shortest-faithful double formatting: 17 significant digits.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

struct CsvTable {
    std::string schema; ///< timeseries | equilibria | bifurcation | amplitude | sweep | portrait | curve | cycles
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) {
        if (row.size() != header.size())
            throw std::invalid_argument("CsvTable: row width != header width");
        rows.push_back(std::move(row));
    }
};

/// Write UTF-8, comma-separated, LF line endings, header first.
inline void write_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failure on " + path);
}

} // namespace fivh::io
