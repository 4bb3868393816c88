#ifndef UEXP_SWEEP_HPP
#define UEXP_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uexp/expansivity.hpp"

namespace uexp {

// Results file (CSV). Hex fields are bit-exact; decimal fields are
// 17-significant-digit conveniences; absent values are empty fields.
inline constexpr std::string_view kResultsHeader =
    "index,a_lo_hex,a_hi_hex,status,delta_hex,lambda_hex,delta_dec,lambda_dec,k_coarse,k_fine,"
    "elapsed_ms";

// With include_timing false the elapsed_ms field is left empty, making rows a
// pure function of the inputs.
std::string format_result_row(const AnalysisResult& result, bool include_timing = true);
// Throws std::runtime_error describing the malformed field.
AnalysisResult parse_result_row(std::string_view line);

// Throws std::runtime_error with the line number on malformed input.
std::vector<AnalysisResult> read_results(std::istream& in);
std::vector<AnalysisResult> read_results(const std::filesystem::path& path);

struct SweepConfig {
  double a_min = 0x1.6666666666666p+0;  // nearest binary64 to 1.4
  double a_max = 2.0;
  std::int64_t n = 60000;
  std::int64_t first = 0;
  std::int64_t last = 60000;
  AnalysisConfig analysis = {};
  unsigned workers = 1;
  std::filesystem::path output;
  // Rows between flushes of the results file.
  std::int64_t checkpoint_every = 1;
  bool record_timing = false;
  // Stop (as if interrupted) after writing this many new rows.
  std::optional<std::int64_t> stop_after;
};

struct SweepSummary {
  std::int64_t resumed = 0;  // rows already present
  std::int64_t written = 0;  // rows added by this run
  std::int64_t successes = 0;
};

// Analyzes grid intervals [first, last) and appends one row per index, in index
// order, to config.output. An existing file is resumed: its complete rows must
// be the leading indices of the range; a trailing partial line is discarded.
// Output bytes do not depend on the worker count.
SweepSummary run_sweep(const SweepConfig& config);

struct PlotFiles {
  std::filesystem::path param_delta;
  std::filesystem::path param_lambda;
  std::filesystem::path delta_lambda;
  std::filesystem::path param_delta_lambda;
};

// Whitespace-separated columns from SUCCESS rows: (a_mid, delta), (a_mid,
// lambda), (delta, lambda), (a_mid, delta, lambda). Files are named
// <prefix>_param_delta.dat and so on.
PlotFiles emit_plot_data(const std::filesystem::path& results, const std::string& prefix);

}  // namespace uexp

#endif  // UEXP_SWEEP_HPP
