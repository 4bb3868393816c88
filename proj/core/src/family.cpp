#include "uexp/family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uexp {

ParamInterval::ParamInterval(std::int64_t index, double a_lo, double a_hi)
    : index_(index), a_lo_(a_lo), a_hi_(a_hi) {
  if (index < 0) throw std::invalid_argument("uexp: negative parameter interval index");
  if (!(0.0 <= a_lo && a_lo <= a_hi && a_hi <= 2.0)) {
    throw std::invalid_argument("uexp: parameter interval [" + std::to_string(a_lo) + ", " +
                                std::to_string(a_hi) + "] not within [0, 2]");
  }
}

Enclosure fixed_point_neg(const ParamInterval& omega) {
  // 4a and the halving are exact scalings by powers of two.
  const Enclosure four_a(4.0 * omega.a_lo(), 4.0 * omega.a_hi());
  const Enclosure root = sqrt(Enclosure::point(1.0) + four_a);
  const Enclosure half_root(root.lo() * 0.5, root.hi() * 0.5);
  return Enclosure::point(-0.5) - half_root;
}

PhaseDomain phase_domain(const ParamInterval& omega) {
  const double p = fixed_point_neg(omega).lo();
  return {Enclosure(p, -p)};
}

Enclosure image(const ParamInterval& omega, const Enclosure& x_range) {
  return omega.parameters() - square(x_range);
}

double deriv_log_inf(const Enclosure& x_range) {
  if (x_range.contains_zero()) {
    throw std::domain_error("uexp: derivative bound requested on a range containing 0");
  }
  // Doubling is exact for the magnitudes that occur here.
  return log_down(2.0 * x_range.mignitude());
}

Preimage preimage(const ParamInterval& omega, const Enclosure& y_range) {
  const Enclosure radicand = omega.parameters() - y_range;
  if (radicand.hi() < 0.0) return {};
  const Enclosure root = sqrt(Enclosure(std::fmax(radicand.lo(), 0.0), radicand.hi()));
  return {-root, root};
}

}  // namespace uexp
