#include <gtest/gtest.h>

#include <stdexcept>

#include "uexp/cycle_mean.hpp"
#include "uexp/digraph.hpp"
#include "uexp/expansivity.hpp"
#include "uexp/partition.hpp"

using namespace uexp;

namespace {

ParamInterval top_interval() { return {0, repr("1.9999"), 2.0}; }

}  // namespace

TEST(Status, TokensRoundTrip) {
  for (const auto s : {Status::kSuccess, Status::kNoExpansionAtDelta0, Status::kFinePartitionArtifact,
                       Status::kAcyclic, Status::kError}) {
    EXPECT_EQ(parse_status(status_token(s)), s);
  }
  EXPECT_EQ(status_token(Status::kNoExpansionAtDelta0), "NO_EXPANSION_AT_DELTA0");
  EXPECT_THROW(parse_status("success"), std::invalid_argument);
}

TEST(LambdaBound, PositiveNearTopOfParameterRange) {
  const auto lambda = lambda_bound(top_interval(), 0.001, 1000);
  ASSERT_TRUE(lambda.has_value());
  EXPECT_GT(*lambda, 0.0);
}

TEST(LambdaBound, NonPositiveAtTooFewCells) {
  const auto lambda = lambda_bound(top_interval(), 0.001, 2);
  ASSERT_TRUE(lambda.has_value());
  EXPECT_LE(*lambda, 0.0);
}

TEST(DeltaBound, SucceedsNearTopAndReverifies) {
  const ParamInterval omega = top_interval();
  const DeltaBound b = delta_bound(omega);
  ASSERT_TRUE(b.success);
  EXPECT_GT(b.delta, 0.0);
  EXPECT_LE(b.delta, 0.001);
  ASSERT_TRUE(b.lambda.has_value());
  EXPECT_GT(*b.lambda, 0.0);
  // Bit-exact re-check of the certificate at the returned radius.
  EXPECT_EQ(lambda_bound(omega, b.delta, 1000), b.lambda);
}

TEST(DeltaBound, FailsInsidePeriodicWindow) {
  const ParamInterval omega(0, 1.77, 1.77001);
  const DeltaBound b = delta_bound(omega);
  EXPECT_FALSE(b.success);
  EXPECT_EQ(b.delta, 0.001);
}

TEST(DeltaBound, RejectsNonPositiveStart) { EXPECT_THROW(delta_bound(top_interval(), 0.0), std::invalid_argument); }

TEST(DeltaBound, ZeroStepsKeepsDelta0) {
  const DeltaBound b = delta_bound(top_interval(), 0.001, 0);
  EXPECT_TRUE(b.success);
  EXPECT_EQ(b.delta, 0.001);
}

TEST(Analyze, SuccessPath) {
  AnalysisConfig c;
  c.k_fine = 2000;
  const AnalysisResult r = analyze(top_interval(), c);
  EXPECT_EQ(r.status, Status::kSuccess);
  ASSERT_TRUE(r.delta_bar && r.lambda_bar);
  EXPECT_LE(*r.delta_bar, 0.001);
  EXPECT_GT(*r.lambda_bar, 0.0);
  EXPECT_EQ(r.k_coarse, 1000U);
  EXPECT_EQ(r.k_fine, 2000U);
}

TEST(Analyze, WindowFails) {
  const AnalysisResult r = analyze({7, 1.7699, 1.77});
  EXPECT_EQ(r.status, Status::kNoExpansionAtDelta0);
  EXPECT_EQ(r.index, 7);
  EXPECT_FALSE(r.delta_bar || r.lambda_bar);
}

TEST(Analyze, CoarseFinePartitionIsAnArtifact) {
  AnalysisConfig c;
  c.k_fine = 2;
  const AnalysisResult r = analyze(top_interval(), c);
  EXPECT_EQ(r.status, Status::kFinePartitionArtifact);
  ASSERT_TRUE(r.delta_bar && r.lambda_bar);
  EXPECT_LE(*r.lambda_bar, 0.0);
}

TEST(Analyze, DeterministicApartFromTiming) {
  AnalysisConfig c;
  c.k_fine = 1000;
  AnalysisResult a = analyze(top_interval(), c);
  AnalysisResult b = analyze(top_interval(), c);
  a.elapsed_ms = b.elapsed_ms = 0;
  EXPECT_EQ(a, b);
}

TEST(Monotonicity, NestedPartitionsDoNotDecrease) {
  const ParamInterval omega(0, 1.95, 1.9501);
  const auto fine = phase_partition(omega, 1e-5, 800);
  const auto x = fine.breakpoints();
  const std::vector<double> positive(x.begin() + static_cast<long>(x.size() / 2), x.end());
  double previous = -1e300;
  // Dropping the innermost cells grows delta over a chain of nested partitions.
  for (std::size_t drop = 0; drop < 300; drop += 50) {
    const std::vector<double> kept(positive.begin() + static_cast<long>(drop), positive.end());
    const auto g = build_representation(omega, PhasePartition::from_breakpoints(kept));
    const auto mu = min_cycle_mean_karp(g);
    ASSERT_TRUE(mu.value.has_value());
    EXPECT_GE(*mu.value, previous) << "delta = " << kept.front();
    previous = *mu.value;
  }
}
