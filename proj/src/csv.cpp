#include "gma/io/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "gma/errors.hpp"

namespace gma::io {

namespace {

// Parses one CSV field as a double. std::from_chars accepts the strict
// numeric grammar only, so stray characters (letters, double signs, thousands
// separators) are rejected rather than silently truncated.
double parse_field(std::string_view field, const std::string& path, long line,
                   std::size_t col) {
  std::size_t lo = 0, hi = field.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(field[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(field[hi - 1]))) --hi;
  const std::string_view body = field.substr(lo, hi - lo);
  const auto where = [&] {
    return path + ":" + std::to_string(line) + ", field " + std::to_string(col + 1);
  };
  if (body.empty()) throw ParseError("empty field at " + where());
  double value = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size())
    throw ParseError("non-numeric field '" + std::string(body) + "' at " + where());
  if (!std::isfinite(value))
    throw ParseError("non-finite value at " + where());
  return value;
}

}  // namespace

Matd read_csv_matrix(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_header && line_no == 1) continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::vector<double> row;
    std::size_t start = 0;
    for (std::size_t col = 0;; ++col) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = (comma == std::string::npos) ? line.size() : comma;
      row.push_back(parse_field(
          std::string_view(line).substr(start, end - start), path, line_no, col));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row at " + path + ":" + std::to_string(line_no) +
                       " (expected " + std::to_string(rows.front().size()) +
                       " fields, got " + std::to_string(row.size()) + ")");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows in '" + path + "'");

  Matd out(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j)
      out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

Vecd read_csv_vector(const std::string& path, bool skip_header) {
  const Matd table = read_csv_matrix(path, skip_header);
  if (table.cols() == 1) return table.col(0);
  if (table.rows() == 1) return table.row(0).transpose();
  throw ParseError("'" + path + "' is " + std::to_string(table.rows()) + "x" +
                   std::to_string(table.cols()) + ", expected a vector");
}

SplitData split_target(const Matd& table, Index target) {
  if (target < 0 || target >= table.cols())
    throw ParseError("target column " + std::to_string(target) +
                     " out of range for " + std::to_string(table.cols()) +
                     " columns");
  if (table.cols() < 2)
    throw ParseError("no predictor columns remain after removing the target");
  SplitData out;
  out.y = table.col(target);
  out.X.resize(table.rows(), table.cols() - 1);
  Index j = 0;
  for (Index c = 0; c < table.cols(); ++c) {
    if (c == target) continue;
    out.X.col(j++) = table.col(c);
  }
  return out;
}

Matd prepend_intercept(const Matd& X) {
  Matd out(X.rows(), X.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(X.cols()) = X;
  return out;
}

}  // namespace gma::io
