#include "periscreen/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace periscreen::fdr {

BhDecision bh_select(std::span<const double> pvalues, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("bh_select: theta must lie in (0,1)");
  for (double p : pvalues)
    if (!(p >= 0.0 && p <= 1.0))  // rejects NaN too
      throw std::invalid_argument("bh_select: p-values must lie in [0,1]");

  const int G = static_cast<int>(pvalues.size());
  BhDecision d;
  d.theta = theta;
  d.total = G;
  d.rejected_mask.assign(G, 0);
  if (G == 0) return d;

  std::vector<int> order(G);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pvalues[a] < pvalues[b]; });

  int i_theta = 0;
  for (int i = G; i >= 1; --i) {
    if (pvalues[order[i - 1]] <= i * theta / G) {
      i_theta = i;
      break;
    }
  }
  d.i_theta = i_theta;
  if (i_theta == 0) return d;

  d.p_threshold = pvalues[order[i_theta - 1]];
  for (int i = 0; i < G; ++i) {
    if (pvalues[i] <= d.p_threshold) {
      d.rejected_mask[i] = 1;
      d.rejected.push_back(i);
    }
  }
  return d;
}

BhDecision bh_select(const PValueVector& pv, double theta) {
  if (pv.pvals.size() != pv.gene_ids.size())
    throw std::invalid_argument("bh_select: pvals and gene_ids lengths differ");
  return bh_select(std::span(pv.pvals), theta);
}

}  // namespace periscreen::fdr
