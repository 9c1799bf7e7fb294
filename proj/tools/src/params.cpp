#include "pfx_cli/params.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace pfx::cli {

namespace {

double parse_decimal(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

double parse_real(std::string_view s, std::string_view whole) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, whole);
  const double p = parse_decimal(s.substr(0, slash), whole);
  const double q = parse_decimal(s.substr(slash + 1), whole);
  if (q == 0.0) throw UsageError("zero denominator in '" + std::string(whole) + "'");
  return p / q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw UsageError("empty number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size() - 1; i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // pure imaginary, "bi"
    const std::string_view im = s.substr(0, s.size() - 1);
    return {0.0, im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im, text)};
  }
  const double re = parse_real(s.substr(0, split), text);
  std::string_view im = s.substr(split, s.size() - 1 - split);
  double imag = 0.0;
  if (im == "+" || im == "-") {
    imag = im == "+" ? 1.0 : -1.0;
  } else {
    const bool negative = im.front() == '-';
    im.remove_prefix(1);
    imag = parse_real(im, text);
    if (negative) imag = -imag;
  }
  return {re, imag};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_complex(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_infinity_literal(std::string_view text) {
  std::string s(trim(text));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  return s == "inf" || s == "infinity";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace pfx::cli
