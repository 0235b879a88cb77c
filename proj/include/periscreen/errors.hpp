#pragma once

#include <stdexcept>
#include <string>

namespace periscreen {

// A series whose periodogram is identically zero (constant input): the g
// statistic is 0/0 and no p-value exists. Screening catches this per gene;
// everything else treats it as a hard error.
class degenerate_input : public std::runtime_error {
 public:
  explicit degenerate_input(const std::string& what) : std::runtime_error(what) {}
};

// Malformed tabular input. Carries the 1-based row number when known.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, long row)
      : std::runtime_error(row > 0 ? what + " (row " + std::to_string(row) + ")" : what),
        row_(row) {}
  long row() const noexcept { return row_; }

 private:
  long row_;
};

// Monte Carlo configuration that cannot resolve the quantity it is asked to
// estimate (e.g. a calibrated survival function coarser than the BH threshold
// it must be compared against).
class resolution_error : public std::runtime_error {
 public:
  explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace periscreen
