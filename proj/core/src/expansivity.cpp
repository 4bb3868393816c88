#include "uexp/expansivity.hpp"

#include <array>
#include <chrono>
#include <stdexcept>
#include <string>

#include "uexp/digraph.hpp"
#include "uexp/partition.hpp"
#include "uexp/rigor.hpp"

namespace uexp {

namespace {

constexpr std::array<std::pair<Status, std::string_view>, 5> kStatusTokens{{
    {Status::kSuccess, "SUCCESS"},
    {Status::kNoExpansionAtDelta0, "NO_EXPANSION_AT_DELTA0"},
    {Status::kFinePartitionArtifact, "FINE_PARTITION_ARTIFACT"},
    {Status::kAcyclic, "ACYCLIC"},
    {Status::kError, "ERROR"},
}};

// A bound certifies expansion when it is positive; an acyclic graph certifies
// it vacuously.
bool certifies(const std::optional<double>& lambda) { return !lambda || *lambda > 0.0; }

}  // namespace

std::string_view status_token(Status status) {
  for (const auto& [s, token] : kStatusTokens) {
    if (s == status) return token;
  }
  return "ERROR";
}

Status parse_status(std::string_view token) {
  for (const auto& [s, t] : kStatusTokens) {
    if (t == token) return s;
  }
  throw std::invalid_argument("uexp: unknown status '" + std::string(token) + "'");
}

std::optional<double> lambda_bound(const ParamInterval& omega, double delta, std::size_t k,
                                   const LowMemoryOptions& options,
                                   const PartitionOptions& partition) {
  const WeightedDigraph graph = build_representation(omega, phase_partition(omega, delta, k, partition));
  return min_cycle_mean_lowmem(graph, options).value;
}

DeltaBound delta_bound(const ParamInterval& omega, double delta0, int steps, std::size_t k_coarse,
                       const LowMemoryOptions& options, const PartitionOptions& partition) {
  if (!(delta0 > 0.0)) throw std::invalid_argument("uexp: delta0 must be positive");
  const auto at_delta0 = lambda_bound(omega, delta0, k_coarse, options, partition);
  if (!certifies(at_delta0)) return {false, delta0, at_delta0};

  double lo = 0.0;
  DeltaBound best{true, delta0, at_delta0};
  for (int i = 0; i < steps; ++i) {
    // lo + hi is at most 2 * delta0, so halving is exact.
    const double mid = rounding::add_up(lo, best.delta) / 2;
    if (!(mid > lo && mid < best.delta)) break;
    const auto lambda = lambda_bound(omega, mid, k_coarse, options, partition);
    if (certifies(lambda)) {
      best.delta = mid;
      best.lambda = lambda;
    } else {
      lo = mid;
    }
  }
  return best;
}

AnalysisResult analyze(const ParamInterval& omega, const AnalysisConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisResult result;
  result.index = omega.index();
  result.a_lo = omega.a_lo();
  result.a_hi = omega.a_hi();
  result.k_coarse = config.k_coarse;
  result.k_fine = config.k_fine;

  const DeltaBound coarse =
      delta_bound(omega, config.delta0, config.bisection_steps, config.k_coarse,
                  config.cycle_mean, config.partition);
  if (!coarse.success) {
    result.status = Status::kNoExpansionAtDelta0;
  } else {
    result.delta_bar = coarse.delta;
    if (!coarse.lambda) {
      result.status = Status::kAcyclic;
    } else {
      const auto fine = lambda_bound(omega, coarse.delta, config.k_fine, config.cycle_mean,
                                     config.partition);
      if (!fine) {
        result.status = Status::kAcyclic;
      } else if (*fine <= 0.0) {
        result.status = Status::kFinePartitionArtifact;
        result.lambda_bar = fine;
      } else {
        result.status = Status::kSuccess;
        result.lambda_bar = fine;
      }
    }
  }
  result.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return result;
}

}  // namespace uexp
