#include "core/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace sqha {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::vector<double>> read_table(const std::filesystem::path& path,
                                            const std::string& expected_header,
                                            std::size_t n_cols) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw IoError("bad header in " + path.string() + " (expected '" + expected_header + "')");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != n_cols)
            throw IoError("bad row in " + path.string());
        rows.push_back(std::move(row));
    }
    if (rows.size() < 8) throw IoError("too few rows in " + path.string());
    return rows;
}

Grid1D grid_from_rows(const std::vector<std::vector<double>>& rows) {
    return Grid1D(rows.front()[0], rows.back()[0], rows.size());
}

} // namespace

void write_real_field_csv(const std::filesystem::path& path, const RealField& f) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "q,value\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        out << format_double(f.grid().x(j)) << ',' << format_double(f[j]) << '\n';
}

void write_complex_field_csv(const std::filesystem::path& path, const ComplexField& f) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "q,re,im\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        out << format_double(f.grid().x(j)) << ',' << format_double(f[j].real()) << ','
            << format_double(f[j].imag()) << '\n';
}

RealField read_real_field_csv(const std::filesystem::path& path) {
    auto rows = read_table(path, "q,value", 2);
    std::vector<double> v(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) v[j] = rows[j][1];
    return RealField(grid_from_rows(rows), std::move(v));
}

ComplexField read_complex_field_csv(const std::filesystem::path& path) {
    auto rows = read_table(path, "q,re,im", 3);
    std::vector<Complex> v(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) v[j] = Complex(rows[j][1], rows[j][2]);
    return ComplexField(grid_from_rows(rows), std::move(v));
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path.string()), n_cols_(columns.size()), out_(path) {
    if (!out_) throw IoError("cannot write " + path_);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (j) out_ << ',';
        out_ << columns[j];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) cells[j] = format_double(values[j]);
    raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_) throw IoError("CsvWriter: column count mismatch for " + path_);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        if (j) out_ << ',';
        out_ << cells[j];
    }
    out_ << '\n';
}

} // namespace sqha
