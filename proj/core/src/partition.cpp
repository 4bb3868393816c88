#include "uexp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace uexp {

double grid_point(double a_min, double a_max, std::int64_t i, std::int64_t n) {
  if (n < 1 || i < 0 || i > n) throw std::invalid_argument("uexp: grid index out of range");
  // The formula can miss a_max by an ulp for general endpoints.
  if (i == n) return a_max;
  const std::int64_t g = std::gcd(i, n);
  const double num = static_cast<double>(i / g);
  const double den = static_cast<double>(n / g);
  const double span = a_max - a_min;
  const double scaled = num * span;
  const double offset = scaled / den;
  return a_min + offset;
}

ParamGrid::ParamGrid(double a_min, double a_max, std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("uexp: grid needs at least one interval");
  if (!(a_min < a_max)) throw std::invalid_argument("uexp: grid needs a_min < a_max");
  points_.resize(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    points_[static_cast<std::size_t>(i)] = grid_point(a_min, a_max, i, n);
  }
}

ParamInterval ParamGrid::interval(std::int64_t i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("uexp: grid interval index out of range");
  return {i, point(i), point(i + 1)};
}

ParamGrid subdivide_parameters(double a_min, double a_max, std::int64_t n) {
  return {a_min, a_max, n};
}

PhasePartition::PhasePartition(double delta, double radius, std::size_t k)
    : delta_(delta), radius_(radius) {
  if (k == 0 || k % 2 != 0) {
    throw std::invalid_argument("uexp: phase partition size must be even and positive, got " +
                                std::to_string(k));
  }
  if (!(delta > 0.0 && delta < radius) || !std::isfinite(radius)) {
    throw std::invalid_argument("uexp: critical radius must lie in (0, p)");
  }
  const std::size_t half = k / 2;

  // Geometric breakpoints x_j = delta * (p/delta)^(j/half); the end points are
  // pinned exactly, interior ones only need to be strictly increasing since
  // cells are defined by the representable breakpoints themselves.
  std::vector<double> x(half + 1);
  const double log_ratio = std::log(radius) - std::log(delta);
  x.front() = delta;
  x.back() = radius;
  for (std::size_t j = 1; j < half; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(half);
    x[j] = delta * std::exp(t * log_ratio);
  }
  assign_cells(x);
}

PhasePartition PhasePartition::from_breakpoints(std::vector<double> positive) {
  if (positive.size() < 2 || !(positive.front() > 0.0) || !std::isfinite(positive.back())) {
    throw std::invalid_argument("uexp: breakpoints must start above 0 and end finite");
  }
  PhasePartition p;
  p.delta_ = positive.front();
  p.radius_ = positive.back();
  p.assign_cells(positive);
  return p;
}

void PhasePartition::assign_cells(const std::vector<double>& x) {
  for (std::size_t j = 1; j < x.size(); ++j) {
    if (!(x[j] > x[j - 1])) {
      throw std::invalid_argument("uexp: phase partition too fine for binary64 resolution");
    }
  }
  const std::size_t half = x.size() - 1;
  const std::size_t k = 2 * half;
  lower_.resize(k);
  upper_.resize(k);
  for (std::size_t j = 0; j < half; ++j) {
    lower_[half + j] = x[j];
    upper_[half + j] = x[j + 1];
    lower_[half - 1 - j] = -x[j + 1];
    upper_[half - 1 - j] = -x[j];
  }
}

PhasePartition::CellRange PhasePartition::cells_meeting(const Enclosure& y) const {
  // Cell i meets y iff upper_[i] >= y.lo and lower_[i] <= y.hi.
  const auto first = std::lower_bound(upper_.begin(), upper_.end(), y.lo());
  const auto last = std::upper_bound(lower_.begin(), lower_.end(), y.hi());
  const auto f = static_cast<std::size_t>(first - upper_.begin());
  const auto l = static_cast<std::size_t>(last - lower_.begin());
  return {f, std::max(f, l)};
}

std::vector<double> PhasePartition::breakpoints() const {
  std::vector<double> out;
  out.reserve(lower_.size() + 2);
  const std::size_t half = lower_.size() / 2;
  for (std::size_t i = 0; i < half; ++i) out.push_back(lower_[i]);
  out.push_back(upper_[half - 1]);
  for (std::size_t i = half; i < lower_.size(); ++i) out.push_back(lower_[i]);
  out.push_back(upper_.back());
  return out;
}

namespace {

// Antiderivative of 1/(|x - c| + w), zero at c.
double peak_mass(double x, const DensityPeak& peak) {
  const double d = x - peak.center;
  const double m = std::log1p(std::fabs(d) / peak.width);
  return d < 0.0 ? -m : m;
}

}  // namespace

std::vector<double> equidistributed_breakpoints(double delta, double radius, std::size_t m,
                                                const std::vector<DensityPeak>& peaks) {
  if (m == 0 || !(delta > 0.0 && delta < radius)) {
    throw std::invalid_argument("uexp: bad equidistribution request");
  }
  for (const auto& peak : peaks) {
    if (!(peak.width > 0.0)) throw std::invalid_argument("uexp: density peak needs positive width");
  }
  const double log_delta = std::log(delta);
  const auto cdf = [&](double x) {
    double total = std::log(x) - log_delta;
    for (const auto& peak : peaks) total += peak_mass(x, peak) - peak_mass(delta, peak);
    return total;
  };

  const double mass = cdf(radius);
  std::vector<double> x(m + 1);
  x.front() = delta;
  x.back() = radius;
  for (std::size_t j = 1; j < m; ++j) {
    const double target = mass * static_cast<double>(j) / static_cast<double>(m);
    double lo = x[j - 1];
    double hi = radius;
    // Bisect until the bracket cannot shrink further.
    while (true) {
      const double mid = lo + (hi - lo) / 2;
      if (!(mid > lo && mid < hi)) break;
      (cdf(mid) < target ? lo : hi) = mid;
    }
    x[j] = hi;
  }
  return x;
}

std::vector<DensityPeak> critical_orbit_peaks(const ParamInterval& omega, int orbit_steps,
                                              double peak_floor) {
  const Enclosure domain = phase_domain(omega).domain;
  std::vector<DensityPeak> peaks{{domain.hi(), peak_floor}};
  Enclosure orbit = Enclosure::point(0.0);
  for (int j = 0; j < orbit_steps; ++j) {
    const auto next = intersect(image(omega, orbit), domain);
    if (!next) break;
    orbit = *next;
    const double lo = orbit.mignitude();
    const double hi = orbit.magnitude();
    peaks.push_back({lo + (hi - lo) / 2, std::max(peak_floor, hi - lo)});
  }
  return peaks;
}

PhasePartition phase_partition(const ParamInterval& omega, double delta, std::size_t k,
                               const PartitionOptions& options) {
  const double radius = phase_domain(omega).radius();
  if (options.scheme == PartitionScheme::kGeometric) return {delta, radius, k};
  if (k == 0 || k % 2 != 0) {
    throw std::invalid_argument("uexp: phase partition size must be even and positive, got " +
                                std::to_string(k));
  }
  if (!(delta > 0.0 && delta < radius)) {
    throw std::invalid_argument("uexp: critical radius must lie in (0, p)");
  }
  const auto peaks = critical_orbit_peaks(omega, options.orbit_steps, options.peak_floor);
  return PhasePartition::from_breakpoints(equidistributed_breakpoints(delta, radius, k / 2, peaks));
}

}  // namespace uexp
