#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace sqha {

/// Full round-trip double formatting (17 significant digits).
std::string format_double(double v);

/// Field serialization: header `q,value` (real) / `q,re,im` (complex).
void write_real_field_csv(const std::filesystem::path& path, const RealField& f);
void write_complex_field_csv(const std::filesystem::path& path, const ComplexField& f);
RealField read_real_field_csv(const std::filesystem::path& path);
ComplexField read_complex_field_csv(const std::filesystem::path& path);

/// Generic table writer used by the experiment runner.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

private:
    std::string path_;
    std::size_t n_cols_;
    std::ofstream out_;
};

} // namespace sqha
