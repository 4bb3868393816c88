#include "uexp/cycle_mean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "uexp/rigor.hpp"

namespace uexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

using rounding::add_down;
using rounding::add_up;
using rounding::div_down;
using rounding::div_up;
using rounding::sub_down;

// Rotate so the smallest vertex comes first; keeps witnesses canonical.
void canonicalize(std::vector<Vertex>& cycle) {
  if (cycle.empty()) return;
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
}

double edge_weight(const WeightedDigraph& graph, Vertex from, Vertex to) {
  const auto w = graph.weight(from, to);
  if (!w) throw std::invalid_argument("uexp: cycle uses a missing edge");
  return *w;
}

}  // namespace

double cycle_mean_down(const WeightedDigraph& graph, const std::vector<Vertex>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("uexp: empty cycle");
  double sum = 0.0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    sum = add_down(sum, edge_weight(graph, cycle[i], cycle[(i + 1) % cycle.size()]));
  }
  return div_down(sum, static_cast<double>(cycle.size()));
}

double cycle_mean_up(const WeightedDigraph& graph, const std::vector<Vertex>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("uexp: empty cycle");
  double sum = 0.0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    sum = add_up(sum, edge_weight(graph, cycle[i], cycle[(i + 1) % cycle.size()]));
  }
  return div_up(sum, static_cast<double>(cycle.size()));
}

// --- Karp -------------------------------------------------------------------

std::size_t karp_working_bytes(const WeightedDigraph& graph) {
  const std::size_t n = graph.vertex_count();
  return 2 * (n + 1) * n * sizeof(double);
}

CycleMeanResult min_cycle_mean_karp(const WeightedDigraph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) return {};

  // Row j holds D_j; walks may start anywhere (D_0 = 0).
  std::vector<double> lower((n + 1) * n, kInf);
  std::vector<double> upper((n + 1) * n, kInf);
  std::fill_n(lower.begin(), n, 0.0);
  std::fill_n(upper.begin(), n, 0.0);

  for (std::size_t j = 1; j <= n; ++j) {
    const double* prev_lo = lower.data() + (j - 1) * n;
    const double* prev_hi = upper.data() + (j - 1) * n;
    double* cur_lo = lower.data() + j * n;
    double* cur_hi = upper.data() + j * n;
    for (Vertex u = 0; u < n; ++u) {
      if (prev_lo[u] == kInf) continue;
      const auto ts = graph.targets(u);
      const auto ws = graph.weights(u);
      for (std::size_t e = 0; e < ts.size(); ++e) {
        const Vertex v = ts[e];
        cur_lo[v] = std::min(cur_lo[v], add_down(prev_lo[u], ws[e]));
        cur_hi[v] = std::min(cur_hi[v], add_up(prev_hi[u], ws[e]));
      }
    }
  }

  // A walk of n edges exists iff the graph has a cycle.
  const double* last = lower.data() + n * n;
  std::optional<double> best;
  for (Vertex v = 0; v < n; ++v) {
    if (last[v] == kInf) continue;
    double worst = -kInf;
    for (std::size_t j = 0; j < n; ++j) {
      const double dj = upper[j * n + v];
      if (dj == kInf) continue;
      worst = std::max(worst, div_down(sub_down(last[v], dj), static_cast<double>(n - j)));
    }
    best = best ? std::min(*best, worst) : worst;
  }
  return {best, {}};
}

// --- Low-memory parametric search -----------------------------------------

namespace {

class ParametricSolver {
 public:
  ParametricSolver(const WeightedDigraph& graph, const LowMemoryOptions& options)
      : graph_(graph), options_(options), n_(graph.vertex_count()) {}

  CycleMeanResult solve() {
    if (!trim_to_cyclic_core()) return {};

    double lo = kInf;
    double hi = -kInf;
    for_each_core_edge([&](Vertex, Vertex, double w) {
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    });

    potential_.assign(n_, 0.0);
    dist_.assign(n_, 0.0);
    parent_.assign(n_, kNoParent);
    queued_.assign(n_, 0);
    queue_.assign(n_, 0);
    stamp_.assign(n_, 0);

    std::vector<Vertex> witness;
    for (std::size_t round = 0; round < options_.max_rounds; ++round) {
      if (rounding::sub_up(hi, lo) <= options_.epsilon) break;
      const double mu = lo + (hi - lo) / 2;
      if (!(mu > lo && mu < hi)) break;

      std::vector<Vertex> cycle;
      if (settle(mu, cycle)) {
        potential_ = dist_;
        lo = std::max({lo, mu, reduced_weight_bound()});
      } else {
        const double mean = cycle_mean_up(graph_, cycle);
        // A cycle at least as heavy as hi can only come from downward rounding
        // of a cycle whose mean equals mu; no further progress is possible.
        if (!(mean < hi)) break;
        hi = mean;
        witness = std::move(cycle);
      }
    }
    // hi never dropped below the heaviest edge, so any cycle is within bounds.
    if (witness.empty()) witness = any_core_cycle();
    canonicalize(witness);
    return {lo, std::move(witness)};
  }

 private:
  template <class F>
  void for_each_core_edge(F&& f) const {
    for (Vertex u = 0; u < n_; ++u) {
      if (!core_[u]) continue;
      const auto ts = graph_.targets(u);
      const auto ws = graph_.weights(u);
      for (std::size_t e = 0; e < ts.size(); ++e) {
        if (core_[ts[e]]) f(u, ts[e], ws[e]);
      }
    }
  }

  // Depth-first search over core edges, returning the first cycle closed.
  std::vector<Vertex> any_core_cycle() const {
    enum : std::uint8_t { kWhite, kGrey, kBlack };
    std::vector<std::uint8_t> colour(n_, kWhite);
    std::vector<std::pair<Vertex, std::size_t>> stack;
    for (Vertex s = 0; s < n_; ++s) {
      if (!core_[s] || colour[s] != kWhite) continue;
      stack.assign(1, {s, 0});
      colour[s] = kGrey;
      while (!stack.empty()) {
        auto& [u, next] = stack.back();
        const auto ts = graph_.targets(u);
        if (next == ts.size()) {
          colour[u] = kBlack;
          stack.pop_back();
          continue;
        }
        const Vertex v = ts[next++];
        if (!core_[v] || colour[v] == kBlack) continue;
        if (colour[v] == kGrey) {
          auto it = std::find_if(stack.begin(), stack.end(), [v](const auto& f) { return f.first == v; });
          std::vector<Vertex> cycle;
          for (; it != stack.end(); ++it) cycle.push_back(it->first);
          return cycle;
        }
        colour[v] = kGrey;
        stack.emplace_back(v, 0);
      }
    }
    return {};
  }

  // Repeatedly removes vertices without incoming edges (Kahn); what remains is
  // nonempty iff the graph has a cycle, and contains every cycle.
  bool trim_to_cyclic_core() {
    core_.assign(n_, 1);
    std::vector<std::uint32_t> indegree(n_, 0);
    for (Vertex u = 0; u < n_; ++u) {
      for (const Vertex v : graph_.targets(u)) ++indegree[v];
    }
    std::vector<Vertex> removable;
    for (Vertex v = 0; v < n_; ++v) {
      if (indegree[v] == 0) removable.push_back(v);
    }
    std::size_t remaining = n_;
    while (!removable.empty()) {
      const Vertex u = removable.back();
      removable.pop_back();
      core_[u] = 0;
      --remaining;
      for (const Vertex v : graph_.targets(u)) {
        if (--indegree[v] == 0) removable.push_back(v);
      }
    }
    // Sinks such as the critical cell cannot lie on a cycle either.
    for (Vertex u = 0; u < n_; ++u) {
      if (core_[u] && graph_.out_degree(u) == 0) core_[u] = 0;
    }
    return remaining > 0;
  }

  // Label-correcting pass (FIFO queue) on weights w - mu rounded downward,
  // warm-started from the last settled potentials. Returns true when labels
  // settle; otherwise stores a cycle of the predecessor graph in `cycle`.
  bool settle(double mu, std::vector<Vertex>& cycle) {
    std::size_t head = 0;
    std::size_t size = 0;
    for (Vertex v = 0; v < n_; ++v) {
      dist_[v] = potential_[v];
      parent_[v] = kNoParent;
      queued_[v] = core_[v];
      if (core_[v]) queue_[(head + size++) % n_] = v;
    }

    std::size_t relaxations = 0;
    while (size > 0) {
      const Vertex u = queue_[head];
      head = (head + 1) % n_;
      --size;
      queued_[u] = 0;
      const double du = dist_[u];
      const auto ts = graph_.targets(u);
      const auto ws = graph_.weights(u);
      for (std::size_t e = 0; e < ts.size(); ++e) {
        const Vertex v = ts[e];
        if (!core_[v]) continue;
        const double candidate = add_down(du, sub_down(ws[e], mu));
        if (!(candidate < dist_[v])) continue;
        dist_[v] = candidate;
        parent_[v] = u;
        if (!queued_[v]) {
          queued_[v] = 1;
          queue_[(head + size++) % n_] = v;
        }
        if (++relaxations % n_ == 0 && find_parent_cycle(cycle)) return false;
      }
    }
    return true;
  }

  // Walks predecessor chains, each vertex visited once per call.
  bool find_parent_cycle(std::vector<Vertex>& cycle) {
    ++walk_;
    for (Vertex s = 0; s < n_; ++s) {
      if (!core_[s] || visited_in_walk(s)) continue;
      const std::uint64_t mark = (walk_ << 32) | s;
      Vertex v = s;
      while (v != kNoParent && stamp_[v] >> 32 != walk_) {
        stamp_[v] = mark;
        v = parent_[v];
      }
      if (v != kNoParent && stamp_[v] == mark) {
        // v lies on a cycle of predecessor links; walk it once more.
        cycle.clear();
        Vertex x = v;
        do {
          cycle.push_back(x);
          x = parent_[x];
        } while (x != v);
        std::reverse(cycle.begin(), cycle.end());
        return true;
      }
    }
    return false;
  }

  [[nodiscard]] bool visited_in_walk(Vertex v) const { return stamp_[v] >> 32 == walk_; }

  // min over core edges of w(u,v) + d(u) - d(v), rounded down: every cycle
  // mean is at least this, whatever the potentials d are.
  [[nodiscard]] double reduced_weight_bound() const {
    double bound = kInf;
    for_each_core_edge([&](Vertex u, Vertex v, double w) {
      bound = std::min(bound, sub_down(add_down(w, potential_[u]), potential_[v]));
    });
    return bound;
  }

  const WeightedDigraph& graph_;
  LowMemoryOptions options_;
  std::size_t n_;
  std::vector<char> core_;
  std::vector<double> potential_;
  std::vector<double> dist_;
  std::vector<Vertex> parent_;
  std::vector<char> queued_;
  std::vector<Vertex> queue_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t walk_ = 0;
};

}  // namespace

CycleMeanResult min_cycle_mean_lowmem(const WeightedDigraph& graph, const LowMemoryOptions& options) {
  if (graph.vertex_count() == 0) return {};
  return ParametricSolver(graph, options).solve();
}

// --- Brute force -------------------------------------------------------------

namespace {

struct CycleEnumerator {
  const WeightedDigraph& graph;
  std::vector<Vertex> path;
  std::vector<char> on_path;
  std::optional<double> best;
  std::vector<Vertex> best_cycle;

  // Simple cycles whose smallest vertex is path.front().
  void extend(Vertex u, double weight) {
    const Vertex start = path.front();
    const auto ts = graph.targets(u);
    const auto ws = graph.weights(u);
    for (std::size_t e = 0; e < ts.size(); ++e) {
      const Vertex v = ts[e];
      const double total = add_down(weight, ws[e]);
      if (v == start) {
        const double mean = div_down(total, static_cast<double>(path.size()));
        if (!best || mean < *best) {
          best = mean;
          best_cycle = path;
        }
      } else if (v > start && !on_path[v]) {
        path.push_back(v);
        on_path[v] = 1;
        extend(v, total);
        on_path[v] = 0;
        path.pop_back();
      }
    }
  }
};

}  // namespace

CycleMeanResult brute_force_cycle_mean(const WeightedDigraph& graph) {
  if (graph.vertex_count() > 12) {
    throw std::invalid_argument("uexp: brute-force cycle mean limited to 12 vertices");
  }
  CycleEnumerator en{graph, {}, std::vector<char>(graph.vertex_count(), 0), std::nullopt, {}};
  for (Vertex s = 0; s < graph.vertex_count(); ++s) {
    en.path.assign(1, s);
    en.on_path[s] = 1;
    en.extend(s, 0.0);
    en.on_path[s] = 0;
  }
  return {en.best, std::move(en.best_cycle)};
}

}  // namespace uexp
