#pragma once

#include <string>

#include "gma/types.hpp"

namespace gma::io {

/// Reads a plain numeric CSV file (comma-separated, decimal point, no
/// quoting) into a dense matrix. Rows must all have the same width.
/// With skip_header the first line is discarded. Blank lines are ignored.
/// Throws ParseError on unreadable files, ragged rows, non-numeric or
/// non-finite fields, or an empty table.
Matd read_csv_matrix(const std::string& path, bool skip_header = false);

/// Reads a single-column (or single-row) CSV file as a vector.
/// Throws ParseError if the table has more than one column and more than
/// one row.
Vecd read_csv_vector(const std::string& path, bool skip_header = false);

/// Splits off column `target` (0-based) of `table` as y; the remaining
/// columns, in order, become X. Throws ParseError if the column index is
/// out of range or no predictor columns remain.
struct SplitData {
  Matd X;
  Vecd y;
};
SplitData split_target(const Matd& table, Index target);

/// Returns [1 | X]: prepends a constant column of ones.
Matd prepend_intercept(const Matd& X);

}  // namespace gma::io
