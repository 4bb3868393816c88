#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uexp/cycle_mean.hpp"
#include "uexp/digraph.hpp"
#include "uexp/expansivity.hpp"
#include "uexp/partition.hpp"
#include "uexp/rigor.hpp"
#include "uexp/sweep.hpp"
#include "uexp/text.hpp"

namespace uexp::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double number(const std::string& text, const char* flag) {
  try {
    return repr(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": not a finite number: '" + text + "'");
  }
}

const std::map<std::string, PartitionScheme> kSchemes{
    {"critical-orbit", PartitionScheme::kCriticalOrbit},
    {"geometric", PartitionScheme::kGeometric},
};

struct IntervalArgs {
  std::string a_lo;
  std::string a_hi;

  void add_to(CLI::App* app, bool required) {
    auto* lo = app->add_option("--a-lo", a_lo, "lower parameter endpoint (decimal or hex-float)");
    auto* hi = app->add_option("--a-hi", a_hi, "upper parameter endpoint (decimal or hex-float)");
    if (required) {
      lo->required();
      hi->required();
    }
  }
  [[nodiscard]] bool given() const { return !a_lo.empty() || !a_hi.empty(); }
  [[nodiscard]] ParamInterval interval(std::int64_t index = 0) const {
    if (a_lo.empty() || a_hi.empty()) throw UsageError("both --a-lo and --a-hi are required");
    return {index, number(a_lo, "--a-lo"), number(a_hi, "--a-hi")};
  }
};

struct AnalysisArgs {
  std::string delta0 = "0.001";
  int steps = 20;
  std::size_t k_coarse = 1000;
  std::size_t k_fine = 20000;
  std::string scheme = "critical-orbit";

  void add_to(CLI::App* app, bool with_fine) {
    app->add_option("--delta0", delta0, "largest critical radius tried")->capture_default_str();
    app->add_option("--steps", steps, "bisection steps on [0, delta0]")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--k-coarse", k_coarse, "cells in the bisection partition")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    if (with_fine) {
      app->add_option("--k-fine", k_fine, "cells in the final partition")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
    }
    add_scheme(app, scheme);
  }
  static void add_scheme(CLI::App* app, std::string& target) {
    app->add_option("--partition", target, "phase partition scheme")
        ->capture_default_str()
        ->check(CLI::IsMember({"critical-orbit", "geometric"}));
  }
  [[nodiscard]] AnalysisConfig config() const {
    AnalysisConfig c;
    c.delta0 = number(delta0, "--delta0");
    c.bisection_steps = steps;
    c.k_coarse = k_coarse;
    c.k_fine = k_fine;
    c.partition.scheme = kSchemes.at(scheme);
    return c;
  }
};

std::string lambda_text(const std::optional<double>& lambda) {
  return lambda ? hex_float(*lambda) + ' ' + decimal17(*lambda) : std::string("acyclic");
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  for (const auto field : split(text, ',')) {
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      const std::string s(field);
      const long long v = std::stoll(s, &used);
      if (used != s.size() || v <= 0) throw std::invalid_argument(s);
      k = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw UsageError("--k-list: bad entry '" + std::string(field) + "'");
    }
    ks.push_back(k);
  }
  if (ks.empty()) throw UsageError("--k-list must not be empty");
  return ks;
}

void report(std::ostream& err, const std::exception& e) {
  const std::string_view what = e.what();
  if (!what.starts_with("uexp:")) err << "uexp: ";
  err << what << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified expansion bounds for the quadratic family a - x^2", "uexp"};
  app.require_subcommand(1);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze one parameter interval; prints a CSV row");
  IntervalArgs analyze_iv;
  analyze_iv.add_to(analyze_cmd, false);
  std::optional<std::int64_t> analyze_index;
  std::int64_t analyze_n = 60000;
  std::string grid_min = "1.4";
  std::string grid_max = "2";
  analyze_cmd->add_option("--index", analyze_index, "grid interval index")->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--n", analyze_n, "grid size")->capture_default_str()->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--a-min", grid_min, "grid start")->capture_default_str();
  analyze_cmd->add_option("--a-max", grid_max, "grid end")->capture_default_str();
  AnalysisArgs analyze_args;
  analyze_args.add_to(analyze_cmd, true);
  bool analyze_header = false;
  analyze_cmd->add_flag("--header", analyze_header, "print the CSV header first");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "analyze a range of grid intervals into a results file");
  SweepConfig sweep;
  std::string sweep_min = "1.4";
  std::string sweep_max = "2";
  std::optional<std::int64_t> sweep_last;
  std::string sweep_output;
  std::optional<std::int64_t> sweep_stop_after;
  AnalysisArgs sweep_args;
  sweep_cmd->add_option("--a-min", sweep_min, "grid start")->capture_default_str();
  sweep_cmd->add_option("--a-max", sweep_max, "grid end")->capture_default_str();
  sweep_cmd->add_option("--n", sweep.n, "grid size")->capture_default_str();
  sweep_cmd->add_option("--first", sweep.first, "first index")->capture_default_str();
  sweep_cmd->add_option("--last", sweep_last, "one past the last index (default: n)");
  sweep_cmd->add_option("--workers", sweep.workers, "worker threads")->capture_default_str();
  sweep_cmd->add_option("--output", sweep_output, "results CSV (resumed if present)")->required();
  sweep_cmd->add_option("--checkpoint-every", sweep.checkpoint_every, "rows between flushes")
      ->capture_default_str();
  sweep_cmd->add_option("--stop-after", sweep_stop_after, "stop after writing this many rows");
  sweep_cmd->add_flag("--timings", sweep.record_timing, "fill the elapsed_ms column");
  sweep_args.add_to(sweep_cmd, true);

  // lambda
  auto* lambda_cmd = app.add_subcommand("lambda", "expansion bound for fixed (omega, delta, k)");
  IntervalArgs lambda_iv;
  lambda_iv.add_to(lambda_cmd, true);
  std::string lambda_delta;
  std::size_t lambda_k = 1000;
  std::string lambda_algorithm = "lowmem";
  std::string lambda_scheme = "critical-orbit";
  lambda_cmd->add_option("--delta", lambda_delta, "critical radius")->required();
  lambda_cmd->add_option("--k", lambda_k, "cells")->capture_default_str()->check(CLI::PositiveNumber);
  lambda_cmd->add_option("--algorithm", lambda_algorithm, "minimum cycle mean solver")
      ->capture_default_str()
      ->check(CLI::IsMember({"lowmem", "karp"}));
  AnalysisArgs::add_scheme(lambda_cmd, lambda_scheme);

  // partition
  auto* partition_cmd = app.add_subcommand("partition", "print phase partition breakpoints (hex)");
  IntervalArgs partition_iv;
  partition_iv.add_to(partition_cmd, true);
  std::string partition_delta;
  std::size_t partition_k = 1000;
  std::string partition_scheme = "critical-orbit";
  partition_cmd->add_option("--delta", partition_delta, "critical radius")->required();
  partition_cmd->add_option("--k", partition_k, "cells")->capture_default_str();
  AnalysisArgs::add_scheme(partition_cmd, partition_scheme);

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "dump the representation graph");
  IntervalArgs graph_iv;
  graph_iv.add_to(graph_cmd, true);
  std::string graph_delta;
  std::size_t graph_k = 1000;
  std::string graph_scheme = "critical-orbit";
  std::string graph_output;
  graph_cmd->add_option("--delta", graph_delta, "critical radius")->required();
  graph_cmd->add_option("--k", graph_k, "cells")->capture_default_str();
  graph_cmd->add_option("--output", graph_output, "file (default: standard output)");
  AnalysisArgs::add_scheme(graph_cmd, graph_scheme);

  // mincyclemean
  auto* mcm_cmd = app.add_subcommand("mincyclemean", "minimum cycle mean of a graph dump");
  std::string mcm_input;
  std::string mcm_algorithm = "lowmem";
  mcm_cmd->add_option("graph", mcm_input, "graph file, or - for standard input")->required();
  mcm_cmd->add_option("--algorithm", mcm_algorithm, "solver")
      ->capture_default_str()
      ->check(CLI::IsMember({"lowmem", "karp", "brute"}));

  // plotdata
  auto* plot_cmd = app.add_subcommand("plotdata", "write plot columns from a results file");
  std::string plot_results;
  std::string plot_prefix;
  plot_cmd->add_option("--results", plot_results, "results CSV")->required();
  plot_cmd->add_option("--prefix", plot_prefix, "output prefix (default: results path without extension)");

  // kstudy
  auto* kstudy_cmd = app.add_subcommand("kstudy", "expansion bound against partition size");
  IntervalArgs kstudy_iv;
  kstudy_iv.add_to(kstudy_cmd, true);
  std::string kstudy_list = "1000,2000,5000,10000,20000";
  std::string kstudy_delta;
  AnalysisArgs kstudy_args;
  kstudy_cmd->add_option("--k-list", kstudy_list, "comma-separated partition sizes")->capture_default_str();
  kstudy_cmd->add_option("--delta", kstudy_delta, "critical radius (default: coarse bisection result)");
  kstudy_args.add_to(kstudy_cmd, false);

  std::vector<const char*> argv{"uexp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "uexp: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) {
      std::optional<ParamInterval> omega;
      if (analyze_index) {
        if (analyze_iv.given()) throw UsageError("give either --a-lo/--a-hi or --index, not both");
        if (*analyze_index >= analyze_n) throw UsageError("--index must be below --n");
        const ParamGrid grid(number(grid_min, "--a-min"), number(grid_max, "--a-max"), analyze_n);
        omega = grid.interval(*analyze_index);
      } else {
        if (!analyze_iv.given()) throw UsageError("give --a-lo/--a-hi or --index");
        omega = analyze_iv.interval();
      }
      const AnalysisResult r = analyze(*omega, analyze_args.config());
      if (analyze_header) out << kResultsHeader << '\n';
      out << format_result_row(r) << '\n';
      return r.status == Status::kSuccess || r.status == Status::kAcyclic ? kExitOk : kExitFailure;
    }

    if (*sweep_cmd) {
      sweep.a_min = number(sweep_min, "--a-min");
      sweep.a_max = number(sweep_max, "--a-max");
      sweep.last = sweep_last.value_or(sweep.n);
      sweep.output = sweep_output;
      sweep.stop_after = sweep_stop_after;
      sweep.analysis = sweep_args.config();
      const SweepSummary s = run_sweep(sweep);
      err << "uexp: " << s.resumed << " rows resumed, " << s.written << " written, " << s.successes
          << " SUCCESS\n";
      return kExitOk;
    }

    if (*lambda_cmd) {
      const ParamInterval omega = lambda_iv.interval();
      const double delta = number(lambda_delta, "--delta");
      PartitionOptions po;
      po.scheme = kSchemes.at(lambda_scheme);
      std::optional<double> lambda;
      if (lambda_algorithm == "karp") {
        const auto graph = build_representation(omega, phase_partition(omega, delta, lambda_k, po));
        lambda = min_cycle_mean_karp(graph).value;
      } else {
        lambda = lambda_bound(omega, delta, lambda_k, {}, po);
      }
      out << lambda_text(lambda) << '\n';
      return kExitOk;
    }

    if (*partition_cmd) {
      const ParamInterval omega = partition_iv.interval();
      PartitionOptions po;
      po.scheme = kSchemes.at(partition_scheme);
      const auto p = phase_partition(omega, number(partition_delta, "--delta"), partition_k, po);
      for (const double x : p.breakpoints()) out << hex_float(x) << '\n';
      return kExitOk;
    }

    if (*graph_cmd) {
      const ParamInterval omega = graph_iv.interval();
      PartitionOptions po;
      po.scheme = kSchemes.at(graph_scheme);
      const auto graph =
          build_representation(omega, phase_partition(omega, number(graph_delta, "--delta"), graph_k, po));
      if (graph_output.empty()) {
        write_graph(out, graph);
      } else {
        std::ofstream file(graph_output);
        if (!file) throw std::runtime_error("cannot write " + graph_output);
        write_graph(file, graph);
        if (!file) throw std::runtime_error("writing " + graph_output + " failed");
      }
      return kExitOk;
    }

    if (*mcm_cmd) {
      WeightedDigraph graph;
      if (mcm_input == "-") {
        graph = read_graph(std::cin);
      } else {
        std::ifstream file(mcm_input);
        if (!file) throw std::runtime_error("cannot open " + mcm_input);
        graph = read_graph(file);
      }
      CycleMeanResult r;
      if (mcm_algorithm == "karp") {
        r = min_cycle_mean_karp(graph);
      } else if (mcm_algorithm == "brute") {
        r = brute_force_cycle_mean(graph);
      } else {
        r = min_cycle_mean_lowmem(graph);
      }
      out << lambda_text(r.value) << '\n';
      if (!r.witness.empty()) {
        out << "cycle";
        for (const Vertex v : r.witness) out << ' ' << v;
        out << '\n';
      }
      return kExitOk;
    }

    if (*plot_cmd) {
      std::string prefix = plot_prefix;
      if (prefix.empty()) {
        std::filesystem::path p(plot_results);
        prefix = p.replace_extension().string();
      }
      const PlotFiles files = emit_plot_data(plot_results, prefix);
      for (const auto& f : {files.param_delta, files.param_lambda, files.delta_lambda, files.param_delta_lambda}) {
        out << f.string() << '\n';
      }
      return kExitOk;
    }

    if (*kstudy_cmd) {
      const ParamInterval omega = kstudy_iv.interval();
      const auto ks = parse_k_list(kstudy_list);
      const AnalysisConfig config = kstudy_args.config();
      double delta = 0.0;
      if (!kstudy_delta.empty()) {
        delta = number(kstudy_delta, "--delta");
      } else {
        const DeltaBound bound = delta_bound(omega, config.delta0, config.bisection_steps, config.k_coarse,
                                             config.cycle_mean, config.partition);
        if (!bound.success) {
          err << "uexp: no expansion at delta0 = " << decimal17(config.delta0) << " with k = " << config.k_coarse
              << '\n';
          return kExitFailure;
        }
        delta = bound.delta;
      }
      err << "uexp: delta = " << hex_float(delta) << " (" << decimal17(delta) << ")\n";
      out << "k,lambda_hex,lambda_dec,elapsed_ms\n";
      for (const std::size_t k : ks) {
        const auto start = std::chrono::steady_clock::now();
        const auto lambda = lambda_bound(omega, delta, k, config.cycle_mean, config.partition);
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        out << k << ',' << (lambda ? hex_float(*lambda) : "") << ',' << (lambda ? decimal17(*lambda) : "") << ','
            << ms << '\n';
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    report(err, e);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    report(err, e);
    return kExitUsage;
  } catch (const std::exception& e) {
    report(err, e);
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace uexp::cli
