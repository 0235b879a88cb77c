#pragma once

#include <string>
#include <vector>

namespace periscreen::io {

// Expression matrix: one gene per row, identifier first, then the n
// observations at t = 1..n.
struct Matrix {
  std::vector<std::string> ids;
  int n = 0;
  std::vector<double> values;  // row-major ids.size() x n

  const double* row(int g) const { return values.data() + static_cast<std::size_t>(g) * n; }
};

// delimiter: ',' or '\t', or 0 to auto-detect from the first line (tab wins
// if present). Tolerates trailing CR on each line and skips blank lines.
// Throws parse_error (with 1-based row number) on ragged rows, rows shorter
// than 3 observations, or cells that do not parse as finite reals; throws
// std::runtime_error when the file cannot be opened.
Matrix load_matrix(const std::string& path, bool has_header, char delimiter);

// Serializes in the same format, with the header row `gene,t1,...,tn`;
// values use shortest round-trip formatting, LF line endings.
std::string matrix_csv(const Matrix& m);

}  // namespace periscreen::io
