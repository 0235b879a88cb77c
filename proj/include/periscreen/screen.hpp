#pragma once

#include <string>
#include <vector>

#include "periscreen/fdr.hpp"
#include "periscreen/gstat.hpp"
#include "periscreen/matrix_io.hpp"
#include "periscreen/spectral.hpp"

namespace periscreen::screen {

enum class OutputFormat { Csv, Json };

struct ScreenConfig {
  std::string input_path;
  bool has_header = false;
  char delimiter = 0;  // 0 = auto-detect
  double theta = 0.05;
  gstat::NullTailMethod method = gstat::NullTailMethod::FisherExact;
  std::string output_path;  // empty = stdout
  OutputFormat format = OutputFormat::Csv;
  int threads = 1;
  spectral::KernelKind kernel = spectral::KernelKind::Auto;
};

struct GeneRecord {
  std::string id;
  bool degenerate = false;     // constant series: no statistics, never rejected
  gstat::GTestResult test{};   // valid only when !degenerate
  bool rejected = false;
};

struct ScreenReport {
  int genes = 0;
  int n = 0;
  int q = 0;
  double theta = 0.0;
  gstat::NullTailMethod method = gstat::NullTailMethod::FisherExact;
  int degenerate_count = 0;
  fdr::BhDecision decision;  // over the non-degenerate genes, in input order
  std::vector<GeneRecord> rows;
};

// Full pipeline on an in-memory matrix: per-gene g-test (batched), BH
// selection driven by config.method's p-value over the non-degenerate subset.
ScreenReport run_screen(const io::Matrix& matrix, const ScreenConfig& config);

// Report serialization. CSV: a `# key=value` summary block, then the header
// `gene_id,g_stat,y_stat,p_exact,p_gumbel,rejected`, one row per gene in input
// order; degenerate genes leave the statistic fields empty. LF endings,
// p-values with 17 significant digits.
std::string report_csv(const ScreenReport& report);
std::string report_json(const ScreenReport& report);

}  // namespace periscreen::screen
