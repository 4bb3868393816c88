#ifndef UEXP_RIGOR_HPP
#define UEXP_RIGOR_HPP

#include <optional>
#include <string>
#include <string_view>

namespace uexp {

// Nearest binary64 number (ties-to-even) to a finite decimal or hex-float
// literal. Throws std::invalid_argument on malformed or out-of-range input.
double repr(std::string_view literal);

// Correctly rounded directed arithmetic on binary64 numbers.
//
// Each operation is evaluated once in round-to-nearest; an error-free
// transformation (TwoSum, FMA residual) recovers the sign of the rounding
// error, and the result is stepped to the adjacent representable number only
// when the nearest result lies on the wrong side of the exact value. No
// floating-point environment state is touched, so these are safe under any
// amount of concurrency.
//
// Overflow throws std::overflow_error; a nonzero result in the subnormal
// range throws std::underflow_error (the residual sign is unreliable there).
namespace rounding {

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double x);
double sqrt_up(double x);

}  // namespace rounding

// A representable number <= ln(x), at most 2 ulp below the exact value.
// Throws std::domain_error for x <= 0 or non-finite x.
double log_down(double x);

// Closed interval [lo, hi] of binary64 numbers, lo <= hi, both finite.
// Emptiness is expressed as std::optional<Enclosure> where it can occur.
class Enclosure {
 public:
  constexpr Enclosure() = default;
  // Throws std::invalid_argument unless lo <= hi and both are finite.
  Enclosure(double lo, double hi);

  static Enclosure point(double x) { return {x, x}; }

  [[nodiscard]] constexpr double lo() const { return lo_; }
  [[nodiscard]] constexpr double hi() const { return hi_; }

  [[nodiscard]] bool contains(double x) const { return lo_ <= x && x <= hi_; }
  [[nodiscard]] bool contains(const Enclosure& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  [[nodiscard]] bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  // Upper bound on hi - lo.
  [[nodiscard]] double width() const;
  // min |x| over the enclosure.
  [[nodiscard]] double mignitude() const;
  // max |x| over the enclosure.
  [[nodiscard]] double magnitude() const;

  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Enclosure operator+(const Enclosure& x, const Enclosure& y);
Enclosure operator-(const Enclosure& x, const Enclosure& y);
Enclosure operator-(const Enclosure& x);
Enclosure operator*(const Enclosure& x, const Enclosure& y);

Enclosure square(const Enclosure& x);
// Throws std::domain_error if x.lo() < 0.
Enclosure sqrt(const Enclosure& x);

std::optional<Enclosure> intersect(const Enclosure& x, const Enclosure& y);
Enclosure hull(const Enclosure& x, const Enclosure& y);

std::string to_string(const Enclosure& x);

}  // namespace uexp

#endif  // UEXP_RIGOR_HPP
