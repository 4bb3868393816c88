#ifndef UEXP_FAMILY_HPP
#define UEXP_FAMILY_HPP

#include <cstdint>
#include <optional>

#include "uexp/rigor.hpp"

namespace uexp {

// A parameter interval omega = [a_lo, a_hi] of the quadratic family
// f_a(x) = a - x^2, with its position in a parameter grid.
class ParamInterval {
 public:
  // Throws std::invalid_argument unless 0 <= a_lo <= a_hi <= 2.
  ParamInterval(std::int64_t index, double a_lo, double a_hi);

  [[nodiscard]] std::int64_t index() const { return index_; }
  [[nodiscard]] double a_lo() const { return a_lo_; }
  [[nodiscard]] double a_hi() const { return a_hi_; }
  [[nodiscard]] Enclosure parameters() const { return {a_lo_, a_hi_}; }

 private:
  std::int64_t index_;
  double a_lo_;
  double a_hi_;
};

// Enclosure of I_omega, the union of the invariant intervals I_a = [p_a, -p_a].
struct PhaseDomain {
  Enclosure domain;

  // Upper end of the domain; the phase space is [-radius, radius].
  [[nodiscard]] double radius() const { return domain.hi(); }
};

// Encloses the negative fixed point p_a = -1/2 - sqrt(1 + 4a)/2 for all a in omega.
Enclosure fixed_point_neg(const ParamInterval& omega);

PhaseDomain phase_domain(const ParamInterval& omega);

// Encloses { a - x^2 : a in omega, x in x_range }.
Enclosure image(const ParamInterval& omega, const Enclosure& x_range);

// Lower bound on inf { log|f'(x)| : x in x_range } = log(2 min|x|).
// Throws std::domain_error if x_range contains 0.
double deriv_log_inf(const Enclosure& x_range);

// The two branches x = -sqrt(a - y) and x = +sqrt(a - y) of the preimage of
// y_range, taken over all a in omega. Both are empty when a - y < 0 throughout.
struct Preimage {
  std::optional<Enclosure> negative;
  std::optional<Enclosure> positive;
};

Preimage preimage(const ParamInterval& omega, const Enclosure& y_range);

}  // namespace uexp

#endif  // UEXP_FAMILY_HPP
