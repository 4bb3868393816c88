#ifndef UEXP_EXPANSIVITY_HPP
#define UEXP_EXPANSIVITY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "uexp/cycle_mean.hpp"
#include "uexp/family.hpp"
#include "uexp/partition.hpp"

namespace uexp {

enum class Status {
  kSuccess,
  kNoExpansionAtDelta0,
  kFinePartitionArtifact,
  kAcyclic,
  // The analysis threw; recorded by sweeps so one bad interval does not stop a run.
  kError,
};

std::string_view status_token(Status status);
// Throws std::invalid_argument for an unknown token.
Status parse_status(std::string_view token);

struct AnalysisConfig {
  double delta0 = 0.001;
  int bisection_steps = 20;
  std::size_t k_coarse = 1000;
  std::size_t k_fine = 20000;
  LowMemoryOptions cycle_mean = {};
  PartitionOptions partition = {};
};

struct AnalysisResult {
  std::int64_t index = 0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  Status status = Status::kError;
  std::optional<double> delta_bar;
  std::optional<double> lambda_bar;
  std::size_t k_coarse = 0;
  std::size_t k_fine = 0;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const AnalysisResult&, const AnalysisResult&) = default;
};

// Certified lower bound on the expansion exponent outside (-delta, delta),
// uniform over omega, from a k-cell partition. nullopt means the
// representation graph is acyclic (every orbit enters the critical
// neighborhood within k steps). A value <= 0 certifies nothing.
std::optional<double> lambda_bound(const ParamInterval& omega, double delta, std::size_t k,
                                   const LowMemoryOptions& options = {},
                                   const PartitionOptions& partition = {});

struct DeltaBound {
  // False when the bound at delta0 is not positive.
  bool success = false;
  // Smallest tested radius with a positive (or vacuous) bound; delta0 on failure.
  double delta = 0.0;
  // Bound at `delta` with the coarse partition; nullopt if acyclic.
  std::optional<double> lambda = 0.0;
};

// Bisection on [0, delta0]: keeps hi at the smallest radius whose coarse
// bound is positive; midpoints are rounded upward.
DeltaBound delta_bound(const ParamInterval& omega, double delta0 = 0.001, int steps = 20,
                       std::size_t k_coarse = 1000, const LowMemoryOptions& options = {},
                       const PartitionOptions& partition = {});

AnalysisResult analyze(const ParamInterval& omega, const AnalysisConfig& config = {});

}  // namespace uexp

#endif  // UEXP_EXPANSIVITY_HPP
