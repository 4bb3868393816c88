#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "uexp/rigor.hpp"
#include "uexp/sweep.hpp"
#include "uexp/text.hpp"

namespace uexp {

std::string hex_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::string decimal17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

namespace {

constexpr std::size_t kFieldCount = 11;

template <class Int>
Int parse_integer(std::string_view field, const char* name) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::runtime_error(std::string("bad ") + name + " '" + std::string(field) + "'");
  }
  return value;
}

double parse_real(std::string_view field, const char* name) {
  try {
    return repr(field);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(std::string("bad ") + name + " '" + std::string(field) + "'");
  }
}

std::optional<double> parse_optional_real(std::string_view field, const char* name) {
  if (field.empty()) return std::nullopt;
  return parse_real(field, name);
}

}  // namespace

std::string format_result_row(const AnalysisResult& r, bool include_timing) {
  const auto hex_or_empty = [](const std::optional<double>& x) { return x ? hex_float(*x) : std::string(); };
  const auto dec_or_empty = [](const std::optional<double>& x) { return x ? decimal17(*x) : std::string(); };
  std::string row;
  row += std::to_string(r.index);
  row += ',' + hex_float(r.a_lo);
  row += ',' + hex_float(r.a_hi);
  row += ',' + std::string(status_token(r.status));
  row += ',' + hex_or_empty(r.delta_bar);
  row += ',' + hex_or_empty(r.lambda_bar);
  row += ',' + dec_or_empty(r.delta_bar);
  row += ',' + dec_or_empty(r.lambda_bar);
  row += ',' + std::to_string(r.k_coarse);
  row += ',' + std::to_string(r.k_fine);
  row += ',';
  if (include_timing) row += std::to_string(r.elapsed_ms);
  return row;
}

AnalysisResult parse_result_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, ',');
  if (f.size() != kFieldCount) {
    throw std::runtime_error("expected " + std::to_string(kFieldCount) + " fields, found " +
                             std::to_string(f.size()));
  }
  AnalysisResult r;
  r.index = parse_integer<std::int64_t>(f[0], "index");
  r.a_lo = parse_real(f[1], "a_lo_hex");
  r.a_hi = parse_real(f[2], "a_hi_hex");
  try {
    r.status = parse_status(f[3]);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  r.delta_bar = parse_optional_real(f[4], "delta_hex");
  r.lambda_bar = parse_optional_real(f[5], "lambda_hex");
  parse_optional_real(f[6], "delta_dec");
  parse_optional_real(f[7], "lambda_dec");
  r.k_coarse = parse_integer<std::size_t>(f[8], "k_coarse");
  r.k_fine = parse_integer<std::size_t>(f[9], "k_fine");
  r.elapsed_ms = f[10].empty() ? 0 : parse_integer<std::int64_t>(f[10], "elapsed_ms");
  if (r.status == Status::kSuccess && (!r.delta_bar || !r.lambda_bar)) {
    throw std::runtime_error("SUCCESS row without delta and lambda");
  }
  return r;
}

std::vector<AnalysisResult> read_results(std::istream& in) {
  std::vector<AnalysisResult> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kResultsHeader) {
        throw std::runtime_error("uexp: results line 1: unexpected header");
      }
      continue;
    }
    if (line.empty()) continue;
    try {
      rows.push_back(parse_result_row(line));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("uexp: results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<AnalysisResult> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("uexp: cannot open results file " + path.string());
  return read_results(in);
}

}  // namespace uexp
