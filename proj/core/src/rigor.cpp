#include "uexp/rigor.hpp"

#include <algorithm>
#include <cerrno>
#include <cfloat>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace uexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double step_down(double x) { return std::nextafter(x, -kInf); }
double step_up(double x) { return std::nextafter(x, kInf); }

void check_finite(double r, const char* op) {
  if (!std::isfinite(r)) {
    throw std::overflow_error(std::string("uexp: overflow in ") + op);
  }
}

// nonzero: whether the exact result is known to be nonzero.
void check_normal(double r, bool nonzero, const char* op) {
  if ((r != 0.0 || nonzero) && std::fabs(r) < DBL_MIN) {
    throw std::underflow_error(std::string("uexp: underflow in ") + op);
  }
}

// Knuth's TwoSum: s + err == a + b exactly.
double two_sum_err(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

// Sign of (exact - nearest) for a + b; s is the nearest sum.
double sum_err(double a, double b, const char* op) {
  const double s = a + b;
  check_finite(s, op);
  return two_sum_err(a, b, s);
}

}  // namespace

double repr(std::string_view literal) {
  const std::string text(literal);
  if (text.empty()) {
    throw std::invalid_argument("uexp: empty numeric literal");
  }
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  if (std::isspace(static_cast<unsigned char>(text.front())) || end == begin || *end != '\0') {
    throw std::invalid_argument("uexp: malformed numeric literal '" + text + "'");
  }
  if (!std::isfinite(value) || errno == ERANGE) {
    throw std::invalid_argument("uexp: numeric literal out of range '" + text + "'");
  }
  return value;
}

namespace rounding {

double add_down(double a, double b) {
  const double s = a + b;
  return sum_err(a, b, "add") < 0.0 ? step_down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  return sum_err(a, b, "add") > 0.0 ? step_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  const double p = a * b;
  check_finite(p, "mul");
  check_normal(p, a != 0.0 && b != 0.0, "mul");
  return std::fma(a, b, -p) < 0.0 ? step_down(p) : p;
}

double mul_up(double a, double b) {
  const double p = a * b;
  check_finite(p, "mul");
  check_normal(p, a != 0.0 && b != 0.0, "mul");
  return std::fma(a, b, -p) > 0.0 ? step_up(p) : p;
}

namespace {

// Sign of (a / b - q), from the exact remainder a - q * b.
double quotient_err(double a, double b, double q) {
  const double r = std::fma(-q, b, a);
  return b > 0.0 ? r : -r;
}

}  // namespace

double div_down(double a, double b) {
  if (b == 0.0) throw std::domain_error("uexp: division by zero");
  const double q = a / b;
  check_finite(q, "div");
  check_normal(q, a != 0.0, "div");
  return quotient_err(a, b, q) < 0.0 ? step_down(q) : q;
}

double div_up(double a, double b) {
  if (b == 0.0) throw std::domain_error("uexp: division by zero");
  const double q = a / b;
  check_finite(q, "div");
  check_normal(q, a != 0.0, "div");
  return quotient_err(a, b, q) > 0.0 ? step_up(q) : q;
}

double sqrt_down(double x) {
  if (x < 0.0) throw std::domain_error("uexp: sqrt of negative number");
  const double s = std::sqrt(x);
  check_finite(s, "sqrt");
  // x - s*s > 0  <=>  s < sqrt(x)
  return std::fma(-s, s, x) < 0.0 ? step_down(s) : s;
}

double sqrt_up(double x) {
  if (x < 0.0) throw std::domain_error("uexp: sqrt of negative number");
  const double s = std::sqrt(x);
  check_finite(s, "sqrt");
  return std::fma(-s, s, x) > 0.0 ? step_up(s) : s;
}

}  // namespace rounding

double log_down(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("uexp: log of non-positive or non-finite number");
  }
  if (x == 1.0) return 0.0;
  if constexpr (LDBL_MANT_DIG >= 64) {
    // The extended-precision log is accurate to a few units of its own last
    // place, which is 2^-11 of a binary64 ulp; four steps cover that error.
    long double lower = std::log(static_cast<long double>(x));
    for (int i = 0; i < 4; ++i) {
      lower = std::nextafter(lower, -std::numeric_limits<long double>::infinity());
    }
    double d = static_cast<double>(lower);
    if (static_cast<long double>(d) > lower) d = step_down(d);
    return d;
  } else {
    // Faithful binary64 log: one step covers its error, the second keeps
    // the result strictly below.
    return step_down(step_down(std::log(x)));
  }
}

Enclosure::Enclosure(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw std::invalid_argument("uexp: invalid enclosure [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

double Enclosure::width() const { return rounding::sub_up(hi_, lo_); }

double Enclosure::mignitude() const {
  if (contains_zero()) return 0.0;
  return std::min(std::fabs(lo_), std::fabs(hi_));
}

double Enclosure::magnitude() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

Enclosure operator+(const Enclosure& x, const Enclosure& y) {
  return {rounding::add_down(x.lo(), y.lo()), rounding::add_up(x.hi(), y.hi())};
}

Enclosure operator-(const Enclosure& x, const Enclosure& y) {
  return {rounding::sub_down(x.lo(), y.hi()), rounding::sub_up(x.hi(), y.lo())};
}

Enclosure operator-(const Enclosure& x) { return {-x.hi(), -x.lo()}; }

Enclosure operator*(const Enclosure& x, const Enclosure& y) {
  using rounding::mul_down;
  using rounding::mul_up;
  const double lo = std::min({mul_down(x.lo(), y.lo()), mul_down(x.lo(), y.hi()),
                              mul_down(x.hi(), y.lo()), mul_down(x.hi(), y.hi())});
  const double hi = std::max({mul_up(x.lo(), y.lo()), mul_up(x.lo(), y.hi()),
                              mul_up(x.hi(), y.lo()), mul_up(x.hi(), y.hi())});
  return {lo, hi};
}

Enclosure square(const Enclosure& x) {
  using rounding::mul_down;
  using rounding::mul_up;
  if (x.lo() >= 0.0) return {mul_down(x.lo(), x.lo()), mul_up(x.hi(), x.hi())};
  if (x.hi() <= 0.0) return {mul_down(x.hi(), x.hi()), mul_up(x.lo(), x.lo())};
  const double m = x.magnitude();
  return {0.0, mul_up(m, m)};
}

Enclosure sqrt(const Enclosure& x) {
  if (x.lo() < 0.0) throw std::domain_error("uexp: sqrt of enclosure with negative part");
  return {rounding::sqrt_down(x.lo()), rounding::sqrt_up(x.hi())};
}

std::optional<Enclosure> intersect(const Enclosure& x, const Enclosure& y) {
  const double lo = std::max(x.lo(), y.lo());
  const double hi = std::min(x.hi(), y.hi());
  if (lo > hi) return std::nullopt;
  return Enclosure(lo, hi);
}

Enclosure hull(const Enclosure& x, const Enclosure& y) {
  return {std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi())};
}

std::string to_string(const Enclosure& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
  return buf;
}

}  // namespace uexp
