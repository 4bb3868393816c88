#ifndef UEXP_PARTITION_HPP
#define UEXP_PARTITION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uexp/family.hpp"
#include "uexp/rigor.hpp"

namespace uexp {

// Subdivision points of [a_min, a_max] into n intervals, computed with the
// gcd-reduced fraction i/n so that a refined grid reproduces every point of a
// coarser one bit for bit.
class ParamGrid {
 public:
  ParamGrid(double a_min, double a_max, std::int64_t n);

  [[nodiscard]] std::int64_t size() const { return n_; }
  [[nodiscard]] double point(std::int64_t i) const { return points_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] std::span<const double> points() const { return points_; }
  // omega_i = [point(i), point(i + 1)], 0 <= i < size().
  [[nodiscard]] ParamInterval interval(std::int64_t i) const;

 private:
  std::int64_t n_;
  std::vector<double> points_;
};

// theta_i = a_min + ((i/g) * (a_max - a_min)) / (n/g), g = gcd(i, n), every
// operation rounded to nearest.
double grid_point(double a_min, double a_max, std::int64_t i, std::int64_t n);

ParamGrid subdivide_parameters(double a_min, double a_max, std::int64_t n);

// k cells covering [-p, -delta] u [delta, p], geometric in |x|, sorted
// ascending; cells k/2 .. k-1 are the positive side and cells 0 .. k/2-1 are
// their exact negations. Adjacent cells share their (representable) endpoint.
class PhasePartition {
 public:
  PhasePartition(double delta, double radius, std::size_t k);

  // Cells from explicit positive-side breakpoints delta = x_0 < ... < x_m = radius.
  static PhasePartition from_breakpoints(std::vector<double> positive);

  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] std::size_t cell_count() const { return lower_.size(); }
  [[nodiscard]] Enclosure cell(std::size_t i) const { return {lower_[i], upper_[i]}; }
  [[nodiscard]] Enclosure critical_cell() const { return {-delta_, delta_}; }
  [[nodiscard]] Enclosure domain() const { return {-radius_, radius_}; }

  // Half-open index range [first, last) of cells meeting the closed range y.
  struct CellRange {
    std::size_t first;
    std::size_t last;
  };
  [[nodiscard]] CellRange cells_meeting(const Enclosure& y) const;

  // All distinct cell endpoints in ascending order: -p, ..., -delta, delta, ..., p.
  [[nodiscard]] std::vector<double> breakpoints() const;

 private:
  PhasePartition() = default;
  void assign_cells(const std::vector<double>& x);

  double delta_ = 0.0;
  double radius_ = 0.0;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

enum class PartitionScheme {
  // Breakpoints x_j = delta * (p/delta)^(2j/k): constant relative cell width.
  kGeometric,
  // Breakpoints equidistribute the density
  //   1/x + sum_c 1/(|x - c| + w_c),
  // with one peak at the fixed-point magnitude p and one at each of the first
  // iterates of the critical point over omega (w_c = that iterate's spread,
  // at least a floor). Cells concentrate where orbits leaving the critical
  // neighborhood must be resolved.
  kCriticalOrbit,
};

struct PartitionOptions {
  PartitionScheme scheme = PartitionScheme::kCriticalOrbit;
  int orbit_steps = 8;
  double peak_floor = 1e-5;
};

// Throws std::invalid_argument if k is odd or zero, or delta is not in (0, p).
PhasePartition phase_partition(const ParamInterval& omega, double delta, std::size_t k,
                               const PartitionOptions& options = {});

// Positive-side breakpoints delta = x_0 < ... < x_{m} = radius equidistributing
// 1/x + sum 1/(|x - center| + width) over the peaks.
struct DensityPeak {
  double center;
  double width;
};
std::vector<double> equidistributed_breakpoints(double delta, double radius, std::size_t m,
                                                const std::vector<DensityPeak>& peaks);

// Peaks used by PartitionScheme::kCriticalOrbit.
std::vector<DensityPeak> critical_orbit_peaks(const ParamInterval& omega, int orbit_steps,
                                              double peak_floor);

}  // namespace uexp

#endif  // UEXP_PARTITION_HPP
