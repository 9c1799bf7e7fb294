#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfx/scalar_kernel.hpp"

namespace pfx::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decimal or p/q literal, optionally followed by a signed imaginary part
// ending in `i`: "0.5", "1/3", "-2.5e-3", "1/3+2/5i", "0.25-0.1i".
Complex parse_complex(std::string_view text);

// Comma-separated list of complex literals.
std::vector<Complex> parse_complex_list(std::string_view text);

// True for "inf", "+inf", "infinity" (any case).
bool is_infinity_literal(std::string_view text);

// Shortest round-trip is not required; 17 significant digits always are.
std::string format_double(double v);

}  // namespace pfx::cli
