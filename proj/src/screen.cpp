#include "periscreen/screen.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "periscreen/errors.hpp"
#include "periscreen/parallel.hpp"
#include "periscreen/report.hpp"

namespace periscreen::screen {

namespace {

const char* method_token(gstat::NullTailMethod m) {
  return m == gstat::NullTailMethod::FisherExact ? "exact" : "gumbel";
}

}  // namespace

ScreenReport run_screen(const io::Matrix& matrix, const ScreenConfig& config) {
  if (!(config.theta > 0.0 && config.theta < 1.0))
    throw std::invalid_argument("run_screen: theta must lie in (0,1)");
  const int G = static_cast<int>(matrix.ids.size());
  if (G == 0) throw std::invalid_argument("run_screen: empty matrix");

  const spectral::PeriodogramPlan plan(matrix.n, config.kernel);
  const int n = matrix.n, q = plan.q();

  ScreenReport report;
  report.genes = G;
  report.n = n;
  report.q = q;
  report.theta = config.theta;
  report.method = config.method;
  report.rows.resize(G);

  constexpr int kBatch = 8;
  const long batches = (G + kBatch - 1) / kBatch;
  parallel_chunks(batches, config.threads, [&](long first, long last) {
    std::vector<double> x(static_cast<std::size_t>(n) * kBatch);
    std::vector<double> ord(static_cast<std::size_t>(q) * kBatch);
    std::vector<double> one(q);
    for (long t = first; t < last; ++t) {
      const int g0 = static_cast<int>(t) * kBatch;
      const int width = std::min(kBatch, G - g0);
      if (width < kBatch) std::fill(x.begin(), x.end(), 0.0);
      for (int b = 0; b < width; ++b) {
        const double* row = matrix.row(g0 + b);
        for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k) * kBatch + b] = row[k];
      }
      plan.ordinates_batch(x.data(), kBatch, kBatch, ord.data());
      for (int b = 0; b < width; ++b) {
        GeneRecord& rec = report.rows[g0 + b];
        rec.id = matrix.ids[g0 + b];
        // A constant series carries no frequency content; its computed
        // ordinates are rounding dust, so decide degeneracy from the series.
        const double* row = matrix.row(g0 + b);
        if (std::all_of(row, row + n, [&](double v) { return v == row[0]; })) {
          rec.degenerate = true;
          continue;
        }
        for (int j = 0; j < q; ++j) one[j] = ord[static_cast<std::size_t>(j) * kBatch + b];
        try {
          rec.test = gstat::g_test(std::span<const double>(one));
        } catch (const degenerate_input&) {
          rec.degenerate = true;
        }
      }
    }
  });

  // BH over the non-degenerate genes, preserving input order.
  std::vector<double> pv;
  std::vector<int> pv_gene;
  pv.reserve(G);
  for (int g = 0; g < G; ++g) {
    if (report.rows[g].degenerate) {
      ++report.degenerate_count;
      continue;
    }
    const auto& t = report.rows[g].test;
    pv.push_back(config.method == gstat::NullTailMethod::FisherExact ? t.p_exact : t.p_gumbel);
    pv_gene.push_back(g);
  }
  report.decision = fdr::bh_select(std::span<const double>(pv), config.theta);
  for (int idx : report.decision.rejected) report.rows[pv_gene[idx]].rejected = true;
  return report;
}

std::string report_csv(const ScreenReport& r) {
  std::string out;
  out += "# G=" + std::to_string(r.genes) + "\n";
  out += "# n=" + std::to_string(r.n) + "\n";
  out += "# q=" + std::to_string(r.q) + "\n";
  out += "# theta=" + report::format_number(r.theta) + "\n";
  out += std::string("# method=") + method_token(r.method) + "\n";
  out += "# i_theta=" + std::to_string(r.decision.i_theta) + "\n";
  out += "# p_threshold=" +
         (r.decision.i_theta > 0 ? report::format_pvalue(r.decision.p_threshold)
                                 : std::string()) +
         "\n";
  out += "# total_rejected=" + std::to_string(r.decision.rejected.size()) + "\n";
  out += "# degenerate=" + std::to_string(r.degenerate_count) + "\n";
  out += "gene_id,g_stat,y_stat,p_exact,p_gumbel,rejected\n";
  for (const auto& rec : r.rows) {
    out += rec.id;
    if (rec.degenerate) {
      out += ",,,,,0\n";
      continue;
    }
    out += ',' + report::format_number(rec.test.g);
    out += ',' + report::format_number(rec.test.y);
    out += ',' + report::format_pvalue(rec.test.p_exact);
    out += ',' + report::format_pvalue(rec.test.p_gumbel);
    out += rec.rejected ? ",1\n" : ",0\n";
  }
  return out;
}

std::string report_json(const ScreenReport& r) {
  nlohmann::json j;
  j["summary"] = {
      {"G", r.genes},
      {"n", r.n},
      {"q", r.q},
      {"theta", r.theta},
      {"method", method_token(r.method)},
      {"i_theta", r.decision.i_theta},
      {"p_threshold", r.decision.i_theta > 0 ? nlohmann::json(r.decision.p_threshold)
                                             : nlohmann::json()},
      {"total_rejected", r.decision.rejected.size()},
      {"degenerate", r.degenerate_count},
  };
  nlohmann::json genes = nlohmann::json::array();
  for (const auto& rec : r.rows) {
    nlohmann::json row;
    row["gene_id"] = rec.id;
    row["degenerate"] = rec.degenerate;
    if (rec.degenerate) {
      row["g_stat"] = nullptr;
      row["y_stat"] = nullptr;
      row["p_exact"] = nullptr;
      row["p_gumbel"] = nullptr;
    } else {
      row["g_stat"] = rec.test.g;
      row["y_stat"] = rec.test.y;
      row["p_exact"] = rec.test.p_exact;
      row["p_gumbel"] = rec.test.p_gumbel;
    }
    row["rejected"] = rec.rejected ? 1 : 0;
    genes.push_back(std::move(row));
  }
  j["genes"] = std::move(genes);
  return j.dump(2) + "\n";
}

}  // namespace periscreen::screen
