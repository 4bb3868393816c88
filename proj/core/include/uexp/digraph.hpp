#ifndef UEXP_DIGRAPH_HPP
#define UEXP_DIGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "uexp/family.hpp"
#include "uexp/partition.hpp"

namespace uexp {

using Vertex = std::uint32_t;

struct Edge {
  Vertex from;
  Vertex to;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted digraph in compressed sparse row form. Out-edges of each vertex are
// sorted by target; parallel edges are merged keeping the largest weight
// (every weight is a valid lower bound, so the largest is the tightest).
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  // Throws std::invalid_argument on out-of-range endpoints or non-finite weights.
  WeightedDigraph(std::size_t vertex_count, std::vector<Edge> edges);

  [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
  [[nodiscard]] std::size_t edge_count() const { return targets_.size(); }

  [[nodiscard]] std::span<const Vertex> targets(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::span<const double> weights(Vertex v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::size_t out_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  [[nodiscard]] std::optional<double> weight(Vertex from, Vertex to) const;
  [[nodiscard]] bool has_edge(Vertex from, Vertex to) const { return weight(from, to).has_value(); }

  // Edges sorted by (from, to).
  [[nodiscard]] std::vector<Edge> edges() const;

  // Bytes held by the adjacency arrays.
  [[nodiscard]] std::size_t storage_bytes() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Vertex> targets_;
  std::vector<double> weights_;
};

// Representation of f on I_omega minus the critical neighborhood: vertices are
// the partition cells plus the critical cell (vertex k); an edge (i, j) is
// present whenever the image of cell i over all a in omega, clipped to the
// phase domain, meets vertex j; its weight is a lower bound of log|f'| over
// cell i intersected with the preimage of vertex j.
//
// Source cells are processed in `threads` contiguous blocks; the result does
// not depend on the thread count.
WeightedDigraph build_representation(const ParamInterval& omega, const PhasePartition& partition,
                                     unsigned threads = 1);

// Lower bound for log|f'| over { x in source : f_a(x) in target for some a in omega }.
double transition_weight(const ParamInterval& omega, const Enclosure& source,
                         const Enclosure& target);

// Text form: "vertices <n>" then one "  <from> <to> <hex-weight>" line per
// edge in (from, to) order.
void write_graph(std::ostream& out, const WeightedDigraph& graph);
// Throws std::runtime_error naming the offending line.
WeightedDigraph read_graph(std::istream& in);

}  // namespace uexp

#endif  // UEXP_DIGRAPH_HPP
