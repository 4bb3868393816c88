#include "uexp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "uexp/partition.hpp"
#include "uexp/text.hpp"

namespace uexp {

namespace {

void validate(const SweepConfig& c) {
  if (c.n < 1) throw std::invalid_argument("uexp: sweep needs N >= 1");
  if (!(0 <= c.first && c.first < c.last && c.last <= c.n)) {
    throw std::invalid_argument("uexp: sweep index range must satisfy 0 <= first < last <= N");
  }
  if (c.workers < 1) throw std::invalid_argument("uexp: sweep needs at least one worker");
  if (c.checkpoint_every < 1) throw std::invalid_argument("uexp: checkpoint interval must be >= 1");
  if (c.output.empty()) throw std::invalid_argument("uexp: sweep needs an output path");
}

// Loads the complete rows of an existing results file, dropping a trailing
// partial line left by an interrupted run. Returns the number of rows kept.
std::int64_t prepare_output(const SweepConfig& c, SweepSummary& summary) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(c.output, ec) || fs::file_size(c.output) == 0) {
    std::ofstream out(c.output, std::ios::trunc);
    if (!(out << kResultsHeader << '\n')) {
      throw std::runtime_error("uexp: cannot write results file " + c.output.string());
    }
    return 0;
  }

  std::string content;
  {
    std::ifstream in(c.output, std::ios::binary);
    if (!in) throw std::runtime_error("uexp: cannot read results file " + c.output.string());
    content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const std::size_t complete = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
  if (complete < content.size()) {
    fs::resize_file(c.output, complete);
    content.resize(complete);
  }
  if (content.empty()) {
    std::ofstream out(c.output, std::ios::trunc);
    out << kResultsHeader << '\n';
    return 0;
  }

  std::istringstream in(content);
  const auto rows = read_results(in);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::int64_t expected = c.first + static_cast<std::int64_t>(i);
    if (rows[i].index != expected || expected >= c.last) {
      throw std::runtime_error("uexp: results file " + c.output.string() + " holds index " +
                               std::to_string(rows[i].index) + " where " +
                               std::to_string(expected) + " was expected; not a prefix of this sweep");
    }
    if (rows[i].status == Status::kSuccess) ++summary.successes;
  }
  return static_cast<std::int64_t>(rows.size());
}

AnalysisResult analyze_or_record(const ParamInterval& omega, const AnalysisConfig& config) {
  try {
    return analyze(omega, config);
  } catch (const std::exception& e) {
    std::cerr << "uexp: interval " << omega.index() << " failed: " << e.what() << '\n';
    AnalysisResult r;
    r.index = omega.index();
    r.a_lo = omega.a_lo();
    r.a_hi = omega.a_hi();
    r.status = Status::kError;
    r.k_coarse = config.k_coarse;
    r.k_fine = config.k_fine;
    return r;
  }
}

}  // namespace

SweepSummary run_sweep(const SweepConfig& config) {
  validate(config);
  SweepSummary summary;
  summary.resumed = prepare_output(config, summary);

  const std::int64_t begin = config.first + summary.resumed;
  std::int64_t end = config.last;
  if (config.stop_after) end = std::min(end, begin + std::max<std::int64_t>(0, *config.stop_after));
  if (begin >= end) return summary;

  std::ofstream out(config.output, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("uexp: cannot append to results file " + config.output.string());

  const ParamGrid grid(config.a_min, config.a_max, config.n);
  // Workers never run further ahead of the writer than this.
  const std::int64_t window = 2 * static_cast<std::int64_t>(config.workers);

  std::mutex mutex;
  std::condition_variable cv;
  std::map<std::int64_t, std::string> ready;
  std::int64_t next_to_write = begin;
  bool abort = false;
  std::atomic<std::int64_t> cursor{begin};

  const auto worker = [&] {
    while (true) {
      const std::int64_t i = cursor.fetch_add(1);
      if (i >= end) return;
      {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return abort || i < next_to_write + window; });
        if (abort) return;
      }
      const AnalysisResult r = analyze_or_record(grid.interval(i), config.analysis);
      std::string row = format_result_row(r, config.record_timing);
      std::lock_guard lock(mutex);
      ready.emplace(i, std::move(row));
      cv.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(config.workers);
  for (unsigned w = 0; w < config.workers; ++w) pool.emplace_back(worker);

  std::int64_t since_flush = 0;
  try {
    while (true) {
      std::string row;
      {
        std::unique_lock lock(mutex);
        if (next_to_write >= end) break;
        cv.wait(lock, [&] { return ready.contains(next_to_write); });
        auto node = ready.extract(next_to_write);
        row = std::move(node.mapped());
      }
      if (row.find(",SUCCESS,") != std::string::npos) ++summary.successes;
      out << row << '\n';
      if (++since_flush >= config.checkpoint_every) {
        out.flush();
        since_flush = 0;
      }
      if (!out) throw std::runtime_error("uexp: write to " + config.output.string() + " failed");
      ++summary.written;
      {
        std::lock_guard lock(mutex);
        ++next_to_write;
      }
      cv.notify_all();
    }
    out.flush();
    if (!out) throw std::runtime_error("uexp: write to " + config.output.string() + " failed");
  } catch (...) {
    {
      std::lock_guard lock(mutex);
      abort = true;
    }
    cv.notify_all();
    throw;
  }
  return summary;
}

PlotFiles emit_plot_data(const std::filesystem::path& results, const std::string& prefix) {
  const auto rows = read_results(results);
  const PlotFiles files{prefix + "_param_delta.dat", prefix + "_param_lambda.dat",
                        prefix + "_delta_lambda.dat", prefix + "_param_delta_lambda.dat"};
  std::ofstream pd(files.param_delta);
  std::ofstream pl(files.param_lambda);
  std::ofstream dl(files.delta_lambda);
  std::ofstream pdl(files.param_delta_lambda);
  if (!pd || !pl || !dl || !pdl) throw std::runtime_error("uexp: cannot create plot files at " + prefix);

  for (const auto& r : rows) {
    if (r.status != Status::kSuccess) continue;
    const std::string mid = decimal17((r.a_lo + r.a_hi) / 2);
    const std::string delta = decimal17(*r.delta_bar);
    const std::string lambda = decimal17(*r.lambda_bar);
    pd << mid << ' ' << delta << '\n';
    pl << mid << ' ' << lambda << '\n';
    dl << delta << ' ' << lambda << '\n';
    pdl << mid << ' ' << delta << ' ' << lambda << '\n';
  }
  if (!pd || !pl || !dl || !pdl) throw std::runtime_error("uexp: writing plot files failed");
  return files;
}

}  // namespace uexp
