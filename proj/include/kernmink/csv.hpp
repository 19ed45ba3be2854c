#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kernmink/matrix.hpp"

namespace kernmink {

/// CSV ingestion options. The label column may be named (needs a header
/// row) or given as a zero-based column index.
struct CsvFormat {
    std::optional<std::string> label_column;
    bool require_nonneg = false; // reject negative features (kernel mode)
};

/// Loads a comma-separated file: one row per sample, optional header
/// (auto-detected: any non-numeric first-row cell), '.' decimals. Parse
/// failures report 1-based row/column locations.
Dataset load_dataset(const std::string& path, const CsvFormat& format = {});
Dataset parse_csv(const std::string& text, const CsvFormat& format = {});

/// Shortest round-trip formatting, so written values re-read bit-identically.
std::string format_double(double v);

void write_matrix_csv(std::ostream& out, const Matrix& m,
                      const std::vector<std::string>& header = {});

/// One integer per line (used for label/assignment files).
std::vector<int> load_int_column(const std::string& path);

} // namespace kernmink
