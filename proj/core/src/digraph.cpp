#include "uexp/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "uexp/rigor.hpp"
#include "uexp/text.hpp"

namespace uexp {

WeightedDigraph::WeightedDigraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count) {
  if (vertex_count > std::numeric_limits<Vertex>::max()) {
    throw std::invalid_argument("uexp: too many vertices");
  }
  for (const Edge& e : edges) {
    if (e.from >= vertex_count || e.to >= vertex_count) {
      throw std::invalid_argument("uexp: edge endpoint out of range");
    }
    if (!std::isfinite(e.weight)) throw std::invalid_argument("uexp: non-finite edge weight");
  }
  const auto key_less = [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  };
  if (!std::is_sorted(edges.begin(), edges.end(), key_less)) {
    std::stable_sort(edges.begin(), edges.end(), key_less);
  }

  offsets_.assign(vertex_count + 1, 0);
  targets_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (i > 0 && edges[i - 1].from == e.from && edges[i - 1].to == e.to) {
      weights_.back() = std::max(weights_.back(), e.weight);
      continue;
    }
    targets_.push_back(e.to);
    weights_.push_back(e.weight);
    ++offsets_[e.from + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] += offsets_[v];
}

std::optional<double> WeightedDigraph::weight(Vertex from, Vertex to) const {
  if (from >= vertex_count_) return std::nullopt;
  const auto ts = targets(from);
  const auto it = std::lower_bound(ts.begin(), ts.end(), to);
  if (it == ts.end() || *it != to) return std::nullopt;
  return weights(from)[static_cast<std::size_t>(it - ts.begin())];
}

std::vector<Edge> WeightedDigraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < vertex_count_; ++v) {
    const auto ts = targets(v);
    const auto ws = weights(v);
    for (std::size_t i = 0; i < ts.size(); ++i) out.push_back({v, ts[i], ws[i]});
  }
  return out;
}

std::size_t WeightedDigraph::storage_bytes() const {
  return offsets_.capacity() * sizeof(std::size_t) + targets_.capacity() * sizeof(Vertex) +
         weights_.capacity() * sizeof(double);
}

double transition_weight(const ParamInterval& omega, const Enclosure& source,
                         const Enclosure& target) {
  const Preimage pre = preimage(omega, target);
  std::optional<double> best;
  for (const auto& branch : {pre.negative, pre.positive}) {
    if (!branch) continue;
    if (const auto part = intersect(source, *branch)) {
      const double w = deriv_log_inf(*part);
      best = best ? std::min(*best, w) : w;
    }
  }
  // An edge always has a nonempty transition set; the whole source cell is
  // the fallback should the enclosures ever fail to show it.
  return best ? *best : deriv_log_inf(source);
}

namespace {

void append_edges_from(const ParamInterval& omega, const PhasePartition& partition,
                       const Enclosure& domain, std::size_t cell, std::vector<Edge>& out) {
  const Enclosure source = partition.cell(cell);
  const auto clipped = intersect(image(omega, source), domain);
  if (!clipped) return;
  const auto from = static_cast<Vertex>(cell);
  const auto range = partition.cells_meeting(*clipped);
  // The critical vertex is numbered k, after every cell, so appending it last
  // keeps targets sorted.
  for (std::size_t j = range.first; j < range.last; ++j) {
    out.push_back({from, static_cast<Vertex>(j), transition_weight(omega, source, partition.cell(j))});
  }
  const Enclosure critical = partition.critical_cell();
  if (intersect(*clipped, critical)) {
    out.push_back({from, static_cast<Vertex>(partition.cell_count()),
                   transition_weight(omega, source, critical)});
  }
}

}  // namespace

WeightedDigraph build_representation(const ParamInterval& omega, const PhasePartition& partition,
                                     unsigned threads) {
  const std::size_t k = partition.cell_count();
  const Enclosure domain = partition.domain();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(k)));

  std::vector<std::vector<Edge>> blocks(threads);
  const auto build_block = [&](unsigned b) {
    const std::size_t first = k * b / threads;
    const std::size_t last = k * (b + 1) / threads;
    for (std::size_t i = first; i < last; ++i) append_edges_from(omega, partition, domain, i, blocks[b]);
  };
  if (threads == 1) {
    build_block(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned b = 0; b < threads; ++b) pool.emplace_back(build_block, b);
  }

  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  std::vector<Edge> edges;
  edges.reserve(total);
  for (auto& b : blocks) {
    edges.insert(edges.end(), b.begin(), b.end());
    b = {};
  }
  return {k + 1, std::move(edges)};
}

void write_graph(std::ostream& out, const WeightedDigraph& graph) {
  out << "vertices " << graph.vertex_count() << '\n';
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    const auto ts = graph.targets(v);
    const auto ws = graph.weights(v);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      out << "  " << v << ' ' << ts[i] << ' ' << hex_float(ws[i]) << '\n';
    }
  }
}

WeightedDigraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& what) {
    throw std::runtime_error("uexp: graph line " + std::to_string(line_no) + ": " + what);
  };

  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string word;
      if (!(fields >> word >> n) || word != "vertices") fail("expected 'vertices <n>'");
      have_header = true;
      continue;
    }
    unsigned long long from = 0;
    unsigned long long to = 0;
    std::string weight;
    std::string extra;
    if (!(fields >> from >> to >> weight) || (fields >> extra)) fail("expected '<from> <to> <weight>'");
    if (from >= n || to >= n) fail("vertex index out of range");
    double w = 0.0;
    try {
      w = repr(weight);
    } catch (const std::invalid_argument&) {
      fail("bad weight '" + weight + "'");
    }
    edges.push_back({static_cast<Vertex>(from), static_cast<Vertex>(to), w});
  }
  if (!have_header) fail("missing 'vertices' header");
  return {n, std::move(edges)};
}

}  // namespace uexp
