#include "periscreen/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace periscreen::report {

namespace {

std::string to_chars_string(double v, int precision) {
  char buf[64];
  std::to_chars_result r =
      precision > 0
          ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision)
          : std::to_chars(buf, buf + sizeof(buf), v);
  if (r.ec != std::errc())
    throw std::runtime_error("number formatting failed");
  return std::string(buf, r.ptr);
}

}  // namespace

std::string format_number(double v) { return to_chars_string(v, 0); }

std::string format_pvalue(double v) { return to_chars_string(v, 17); }

std::string ratio_curve_csv(const mdlab::RatioCurve& curve) {
  std::string out = "y,empirical,reference,ratio,stderr\n";
  for (std::size_t i = 0; i < curve.y_grid.size(); ++i) {
    out += format_number(curve.y_grid[i]);
    out += ',';
    out += format_pvalue(curve.empirical_tail[i]);
    out += ',';
    out += format_pvalue(curve.reference_tail[i]);
    out += ',';
    out += format_number(curve.ratio[i]);
    out += ',';
    out += format_number(curve.mc_stderr[i]);
    out += '\n';
  }
  return out;
}

std::string ratio_curve_json(const mdlab::RatioCurve& curve) {
  nlohmann::json j;
  j["replicates"] = curve.replicates;
  j["degenerate_resampled"] = curve.degenerate_resampled;
  j["y"] = curve.y_grid;
  j["empirical"] = curve.empirical_tail;
  j["reference"] = curve.reference_tail;
  j["ratio"] = curve.ratio;
  j["stderr"] = curve.mc_stderr;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace periscreen::report
