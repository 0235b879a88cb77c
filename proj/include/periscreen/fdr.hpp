#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace periscreen::fdr {

// p-values with their gene identifiers; lengths must match.
struct PValueVector {
  std::vector<double> pvals;
  std::vector<std::string> gene_ids;
};

struct BhDecision {
  double theta = 0.0;
  int total = 0;    // G
  int i_theta = 0;  // largest i with P_(i) <= i*theta/G; 0 when none qualifies
  double p_threshold = 0.0;  // P_(i_theta); meaningful only when i_theta >= 1
  std::vector<int> rejected;               // 0-based input indices, ascending
  std::vector<std::uint8_t> rejected_mask; // size G
};

// Benjamini-Hochberg step-up selection. Sorts p ascending (stable, so tied
// p-values keep input order), finds i_theta = max{ i : P_(i) <= i*theta/G },
// and rejects every index with P_i <= P_(i_theta) — ties at the threshold are
// all rejected. Empty input yields an empty decision.
// Throws std::invalid_argument for theta outside (0,1) or non-[0,1] p-values.
BhDecision bh_select(std::span<const double> pvalues, double theta);
BhDecision bh_select(const PValueVector& pv, double theta);

}  // namespace periscreen::fdr
