#ifndef UEXP_TESTS_SUPPORT_HPP
#define UEXP_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "uexp/digraph.hpp"

namespace uexp::test {

// 50 decimal digits: exact for sums and products of binary64 numbers in range.
using Real = boost::multiprecision::cpp_bin_float_50;

inline Real real(double x) { return Real(x); }

// Uniform double in [lo, hi].
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random ordered pair (lo, hi) inside [min, max].
inline std::pair<double, double> uniform_pair(std::mt19937_64& rng, double min, double max) {
  double a = uniform(rng, min, max);
  double b = uniform(rng, min, max);
  if (a > b) std::swap(a, b);
  return {a, b};
}

// Random digraph on 1..max_vertices vertices with integer weights in
// [-max_weight, max_weight]; each ordered pair (self-loops included) is an
// edge with probability density.
inline WeightedDigraph random_graph(std::mt19937_64& rng, std::size_t max_vertices, int max_weight,
                                   double density) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_vertices)(rng);
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<int> weight(-max_weight, max_weight);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (present(rng)) edges.push_back({u, v, static_cast<double>(weight(rng))});
    }
  }
  return {n, std::move(edges)};
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("uexp-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace uexp::test

#endif  // UEXP_TESTS_SUPPORT_HPP
