#ifndef UEXP_CYCLE_MEAN_HPP
#define UEXP_CYCLE_MEAN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "uexp/digraph.hpp"

namespace uexp {

// value is empty iff the graph has no cycle. Otherwise value is a certified
// lower bound on the minimum cycle mean. witness, when nonempty, is a cycle
// (v0, v1, ..., v_{L-1}) starting at its smallest vertex whose mean is within
// the solver's tolerance of value.
struct CycleMeanResult {
  std::optional<double> value;
  std::vector<Vertex> witness;

  [[nodiscard]] bool acyclic() const { return !value.has_value(); }
};

// Karp's characterization mu* = min_v max_j (D_n(v) - D_j(v)) / (n - j), with
// D_j(v) the minimum weight of a walk of exactly j edges ending at v. Keeps a
// lower and an upper (n+1) x n table of walk weights, so memory is quadratic.
// Exact (to within the final directed division) for small-integer weights.
CycleMeanResult min_cycle_mean_karp(const WeightedDigraph& graph);

// Bytes of working storage min_cycle_mean_karp allocates for this graph.
std::size_t karp_working_bytes(const WeightedDigraph& graph);

struct LowMemoryOptions {
  // Stop once the certified lower bound is within epsilon of a known cycle mean.
  double epsilon = 1e-9;
  std::size_t max_rounds = 500;
};

// Parametric search over the candidate mean mu with O(|V|) working storage.
// Each round runs a label-correcting shortest-path pass on weights w - mu,
// rounded downward:
//  - if it settles, the potentials d satisfy w(u,v) + d(u) - d(v) >= mu on
//    every edge, so every cycle mean is >= mu; the smallest reduced weight
//    is an even better certified lower bound;
//  - otherwise the predecessor graph holds a cycle of the graph, whose exact
//    mean (rounded up) bounds mu* from above.
// Returns the certified lower bound, which is at most epsilon below mu*.
CycleMeanResult min_cycle_mean_lowmem(const WeightedDigraph& graph, const LowMemoryOptions& options = {});

// Exhaustive enumeration of simple cycles; test oracle for small graphs.
// Throws std::invalid_argument for more than 12 vertices.
CycleMeanResult brute_force_cycle_mean(const WeightedDigraph& graph);

// Mean weight of a cycle given as a vertex sequence, rounded downward/upward.
// Throws std::invalid_argument if some consecutive pair is not an edge.
double cycle_mean_down(const WeightedDigraph& graph, const std::vector<Vertex>& cycle);
double cycle_mean_up(const WeightedDigraph& graph, const std::vector<Vertex>& cycle);

}  // namespace uexp

#endif  // UEXP_CYCLE_MEAN_HPP
