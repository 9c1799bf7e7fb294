#pragma once

// Complex gamma, log-gamma and Pochhammer symbols.
//
// Every function is pure. Arguments closer than `pole_guard` to a pole
// are rejected with PoleError instead of being extrapolated.

#include <complex>
#include <cstdint>

namespace pfx {

using Complex = std::complex<double>;

inline constexpr double kDefaultPoleGuard = 1e-8;
inline constexpr long kMaxPochhammerIndex = 10'000'000;

// Iterated products are used up to this index, log-gamma beyond it.
inline constexpr long kPochhammerProductLimit = 64;

// Throws NonFiniteError if either component is NaN or Inf.
void require_finite(Complex z, const char* what);

// True if z is within `guard` of one of 0, -1, -2, ...
bool near_nonpositive_integer(Complex z, double guard);

// sin(pi z) and cos(pi z) with exact argument reduction of Re(z), so
// integer and half-integer real parts give exact zeros.
Complex sin_pi(Complex z);
Complex cos_pi(Complex z);

Complex gamma(Complex z, double pole_guard = kDefaultPoleGuard);

// Principal branch of log Gamma: analytic off the cut (-inf, 0], real on
// the positive axis.
Complex log_gamma(Complex z, double pole_guard = kDefaultPoleGuard);

// 1/Gamma(z); an entire function, exactly zero at 0, -1, -2, ...
Complex reciprocal_gamma(Complex z);

// Rising factorial (a)_k. For k < 0 this is 1 / ((a-1)(a-2)...(a+k)).
Complex pochhammer(Complex a, long k, double pole_guard = kDefaultPoleGuard);

// (p)_m (q)_m for the pair p, q with p + q = sum and p q = product,
// evaluated from sum and product only (no square root), so the result is
// real whenever sum and product are. Negative m gives the reciprocal pair
// product.
Complex paired_pochhammer(Complex sum, Complex product, long m,
                          double pole_guard = kDefaultPoleGuard);

// ((1-k)/2 + sqrt(aa))_k^2 written as prod_{j<k} (aa - ((1-k)/2 + j)^2).
Complex paired_pochhammer_sq(Complex aa, long k);

// n!! for n >= -1, with (-1)!! = 0!! = 1.
std::uint64_t double_factorial(int n);

}  // namespace pfx
