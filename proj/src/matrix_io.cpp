#include "periscreen/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "periscreen/errors.hpp"
#include "periscreen/report.hpp"

namespace periscreen::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_cell(std::string_view cell, long row) {
  // Trim spaces (common in hand-edited files).
  while (!cell.empty() && (cell.front() == ' ')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ')) cell.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw parse_error("cell '" + std::string(cell) + "' is not a finite number", row);
  return v;
}

}  // namespace

Matrix load_matrix(const std::string& path, bool has_header, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  Matrix m;
  long row = 0;
  char delim = delimiter;
  std::size_t pos = 0;
  bool header_pending = has_header;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string_view line(content.data() + pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++row;
    if (line.empty()) continue;
    if (delim == 0)
      delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = split(line, delim);
    if (cells.size() < 4)
      throw parse_error("need an identifier plus at least 3 observations, got " +
                            std::to_string(cells.size()) + " fields",
                        row);
    const int n_here = static_cast<int>(cells.size()) - 1;
    if (m.n == 0) {
      m.n = n_here;
    } else if (n_here != m.n) {
      throw parse_error("ragged row: expected " + std::to_string(m.n) +
                            " observations, got " + std::to_string(n_here),
                        row);
    }
    m.ids.emplace_back(cells[0]);
    for (int k = 1; k <= m.n; ++k) m.values.push_back(parse_cell(cells[k], row));
  }
  if (m.ids.empty()) throw parse_error("no data rows found", row);
  return m;
}

std::string matrix_csv(const Matrix& m) {
  std::string out = "gene";
  for (int t = 1; t <= m.n; ++t) {
    out += ",t";
    out += std::to_string(t);
  }
  out += '\n';
  for (std::size_t g = 0; g < m.ids.size(); ++g) {
    out += m.ids[g];
    const double* r = m.values.data() + g * m.n;
    for (int k = 0; k < m.n; ++k) {
      out += ',';
      out += report::format_number(r[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace periscreen::io
