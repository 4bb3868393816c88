// Randomized checks of structural invariants across modules.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>

#include "support.hpp"
#include "uexp/cycle_mean.hpp"
#include "uexp/digraph.hpp"
#include "uexp/family.hpp"
#include "uexp/partition.hpp"
#include "uexp/sweep.hpp"

using namespace uexp;
using uexp::test::uniform;
using uexp::test::uniform_pair;

namespace {

ParamInterval random_omega(std::mt19937_64& rng, double max_width) {
  const double lo = uniform(rng, 1.4, 2.0 - max_width);
  return {0, lo, lo + uniform(rng, 0.0, max_width)};
}

Enclosure random_phase_range(std::mt19937_64& rng, const ParamInterval& omega) {
  const double r = phase_domain(omega).radius();
  const auto [lo, hi] = uniform_pair(rng, -r, r);
  return {lo, hi};
}

// Simple cycles of a small graph, each listed once from its smallest vertex.
void simple_cycles(const WeightedDigraph& g, std::vector<Vertex>& path, std::vector<bool>& on_path,
                   std::vector<std::vector<Vertex>>& out) {
  const Vertex u = path.back();
  for (const Vertex v : g.targets(u)) {
    if (v == path.front()) out.push_back(path);
    if (v > path.front() && !on_path[v]) {
      on_path[v] = true;
      path.push_back(v);
      simple_cycles(g, path, on_path, out);
      path.pop_back();
      on_path[v] = false;
    }
  }
}

}  // namespace

TEST(FamilyProperties, ParameterUniformImageContainsEachMember) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 5000; ++t) {
    const ParamInterval omega = random_omega(rng, 0.01);
    const Enclosure x = random_phase_range(rng, omega);
    const double a = uniform(rng, omega.a_lo(), omega.a_hi());
    EXPECT_TRUE(image(omega, x).contains(image({0, a, a}, x)));
  }
}

TEST(FamilyProperties, PreimageOfImageCoversSource) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 5000; ++t) {
    const ParamInterval omega = random_omega(rng, 0.01);
    Enclosure x = random_phase_range(rng, omega);
    if (x.contains_zero()) x = Enclosure(x.magnitude() / 2, x.magnitude());
    const Preimage pre = preimage(omega, image(omega, x));
    const bool covered = (pre.negative && pre.negative->contains(x)) || (pre.positive && pre.positive->contains(x));
    EXPECT_TRUE(covered);
  }
}

TEST(FamilyProperties, EvenSymmetry) {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 5000; ++t) {
    const ParamInterval omega = random_omega(rng, 0.01);
    const Enclosure x = random_phase_range(rng, omega);
    EXPECT_EQ(image(omega, x), image(omega, -x));
    if (!x.contains_zero()) EXPECT_EQ(deriv_log_inf(x), deriv_log_inf(-x));
  }
}

TEST(PartitionProperties, GridsAreMonotone) {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 50; ++t) {
    const auto [a, b] = uniform_pair(rng, 0.0, 2.0);
    if (!(a < b)) continue;
    const ParamGrid g(a, b, std::uniform_int_distribution<std::int64_t>(1, 5000)(rng));
    const auto p = g.points();
    EXPECT_EQ(p.front(), a);
    EXPECT_EQ(p.back(), b);
    EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
  }
}

TEST(PartitionProperties, CellsAreOrderedSymmetricAndCovering) {
  std::mt19937_64 rng(65);
  for (int t = 0; t < 40; ++t) {
    const ParamInterval omega = random_omega(rng, 0.001);
    const double delta = std::exp(uniform(rng, std::log(1e-7), std::log(0.1)));
    const std::size_t k = 2 * std::uniform_int_distribution<std::size_t>(1, 800)(rng);
    PartitionOptions o;
    if (t % 2) o.scheme = PartitionScheme::kGeometric;
    const PhasePartition p = phase_partition(omega, delta, k, o);
    ASSERT_EQ(p.cell_count(), k);
    for (std::size_t i = 0; i + 1 < k; ++i) ASSERT_LE(p.cell(i).hi(), p.cell(i + 1).lo());
    for (std::size_t i = 0; i < k; ++i) ASSERT_EQ(p.cell(i), -p.cell(k - 1 - i));
    EXPECT_EQ(p.cell(k / 2).lo(), delta);
    EXPECT_EQ(p.cell(k - 1).hi(), phase_domain(omega).radius());
    for (std::size_t i = k / 2; i + 1 < k; ++i) ASSERT_EQ(p.cell(i).hi(), p.cell(i + 1).lo());
  }
}

TEST(DigraphProperties, EverySimpleCycleMeanIsAtLeastTheMinimum) {
  std::mt19937_64 rng(66);
  for (int t = 0; t < 30; ++t) {
    const ParamInterval omega = random_omega(rng, 0.001);
    const PhasePartition p = phase_partition(omega, uniform(rng, 1e-4, 0.1), 10);
    const WeightedDigraph g = build_representation(omega, p);
    const auto karp = min_cycle_mean_karp(g);
    const auto low = min_cycle_mean_lowmem(g);
    ASSERT_TRUE(karp.value && low.value);
    std::vector<std::vector<Vertex>> cycles;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      std::vector<Vertex> path{s};
      std::vector<bool> on_path(g.vertex_count(), false);
      on_path[s] = true;
      simple_cycles(g, path, on_path, cycles);
    }
    ASSERT_FALSE(cycles.empty());
    for (const auto& c : cycles) {
      const double mean = cycle_mean_up(g, c);
      EXPECT_GE(mean, *karp.value);
      EXPECT_GE(mean, *low.value);
      for (const Vertex v : c) EXPECT_NE(v, g.vertex_count() - 1);
    }
  }
}

TEST(DigraphProperties, LoweringAWeightNeverRaisesTheMinimum) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 300; ++t) {
    const WeightedDigraph g = uexp::test::random_graph(rng, 9, 6, 0.3);
    auto edges = g.edges();
    if (edges.empty()) continue;
    const auto before_karp = min_cycle_mean_karp(g);
    const auto before_low = min_cycle_mean_lowmem(g);
    auto& e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
    e.weight -= std::uniform_int_distribution<int>(1, 4)(rng);
    const WeightedDigraph h(g.vertex_count(), edges);
    const auto after_karp = min_cycle_mean_karp(h);
    const auto after_low = min_cycle_mean_lowmem(h);
    if (!before_karp.value) continue;
    EXPECT_LE(*after_karp.value, *before_karp.value);
    EXPECT_LE(*after_low.value, *before_low.value + 1e-9);
  }
}

TEST(DigraphProperties, CriticalVertexNeverInWitness) {
  std::mt19937_64 rng(68);
  for (int t = 0; t < 20; ++t) {
    const ParamInterval omega = random_omega(rng, 0.0001);
    const auto g = build_representation(omega, phase_partition(omega, 0.001, 200));
    const auto r = min_cycle_mean_lowmem(g);
    for (const Vertex v : r.witness) EXPECT_LT(v, g.vertex_count() - 1);
  }
}

TEST(SweepProperties, AnyChainOfPartialRunsMatchesOneRun) {
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  uexp::test::TempDir dir("sweep-chain");
  SweepConfig base;
  base.a_min = repr("1.98");
  base.a_max = 2.0;
  base.n = 50;
  base.first = 30;
  base.last = 45;
  base.analysis.k_coarse = 100;
  base.analysis.k_fine = 200;
  base.analysis.bisection_steps = 3;
  base.output = dir.path() / "full.csv";
  run_sweep(base);
  const std::string reference = slurp(base.output);

  std::mt19937_64 rng(69);
  for (int trial = 0; trial < 4; ++trial) {
    SweepConfig c = base;
    c.output = dir.path() / ("chain" + std::to_string(trial) + ".csv");
    std::int64_t done = 0;
    while (done < base.last - base.first) {
      c.workers = std::uniform_int_distribution<unsigned>(1, 4)(rng);
      c.stop_after = std::uniform_int_distribution<std::int64_t>(0, 5)(rng);
      done += run_sweep(c).written;
    }
    EXPECT_EQ(slurp(c.output), reference);
    const auto rows = read_results(c.output);
    ASSERT_EQ(rows.size(), 15U);
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].index, 30 + static_cast<std::int64_t>(i));
  }
}
