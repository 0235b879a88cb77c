#pragma once

#include <string>
#include <string_view>

#include "periscreen/mdlab.hpp"

namespace periscreen::report {

// Locale-independent numeric formatting ('.' decimal point, no grouping).
std::string format_number(double v);   // shortest round-trip representation
std::string format_pvalue(double v);   // 17 significant digits

// RatioCurve files: header `y,empirical,reference,ratio,stderr`, LF endings.
std::string ratio_curve_csv(const mdlab::RatioCurve& curve);
std::string ratio_curve_json(const mdlab::RatioCurve& curve);

// Writes bytes verbatim (binary mode; no newline translation).
void write_file(const std::string& path, std::string_view content);

}  // namespace periscreen::report
