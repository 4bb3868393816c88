#ifndef UEXP_TEXT_HPP
#define UEXP_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace uexp {

// Bit-exact hexadecimal form ("%a"), e.g. 0x1.6666666666666p+0.
std::string hex_float(double x);
// 17 significant digits; round-trips through strtod.
std::string decimal17(double x);

std::vector<std::string_view> split(std::string_view line, char sep);

}  // namespace uexp

#endif  // UEXP_TEXT_HPP
