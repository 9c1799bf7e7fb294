#include "pfx/scalar_kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pfx/errors.hpp"
#include "pfx/gamma_product.hpp"

namespace pfx {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// sin(pi x) for real x, exact at integers and half-integers.
double sin_pi_real(double x) {
  double r = std::fmod(x, 2.0);  // exact, r in (-2, 2)
  if (r < -1.0) r += 2.0;
  if (r > 1.0) r -= 2.0;
  const double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::fabs(r);
  if (r > 0.5) r = 1.0 - r;  // exact by Sterbenz
  return sign * std::sin(kPi * r);
}

double cos_pi_real(double x) {
  double r = std::fabs(std::fmod(x, 2.0));
  if (r > 1.0) r = 2.0 - r;  // r in [0, 1]
  if (r <= 0.5) return sin_pi_real(0.5 - r);
  return -sin_pi_real(r - 0.5);
}

// Godfrey's coefficients, g = 607/128, as tabulated in Numerical Recipes (3rd ed).
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

Complex lanczos_log_gamma(Complex z) {
  const Complex t = z + 5.24218750000000000;
  Complex ser = 0.999999999999997092;
  Complex y = z;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return (z + 0.5) * std::log(t) - t + std::log(2.5066282746310005 * ser / z);
}

Complex stirling_log_gamma(Complex z) {
  const Complex w = 1.0 / z;
  const Complex w2 = w * w;
  // B_{2k} / (2k (2k-1)), k = 1..7
  const Complex series =
      w * (1.0 / 12.0 +
           w2 * (-1.0 / 360.0 +
                 w2 * (1.0 / 1260.0 +
                       w2 * (-1.0 / 1680.0 +
                             w2 * (1.0 / 1188.0 + w2 * (-691.0 / 360360.0 + w2 * (1.0 / 156.0)))))));
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

Complex principal_log_gamma_right(Complex z) {
  if (z.imag() == 0.0) return detail::log_gamma_right(z);
  if (std::abs(z) >= 12.0) return stirling_log_gamma(z);
  Complex value = lanczos_log_gamma(z);
  // The Lanczos form may land on another sheet; the leading Stirling terms
  // are within far less than pi of the principal value for Re(z) >= 1/2.
  const Complex approx = (z - 0.5) * std::log(z) - z + kHalfLog2Pi + 1.0 / (12.0 * z);
  const double turns = std::round((approx.imag() - value.imag()) / (2.0 * kPi));
  value += Complex(0.0, 2.0 * kPi * turns);
  return value;
}

void check_pole(Complex z, double guard, const char* what) {
  if (near_nonpositive_integer(z, guard)) {
    throw PoleError(std::string(what) + ": argument (" + std::to_string(z.real()) + ", " +
                    std::to_string(z.imag()) + ") is at a pole");
  }
}

Complex checked(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw OverflowError(std::string(what) + ": result exceeds the floating range");
  }
  return v;
}

}  // namespace

namespace detail {

Complex log_gamma_right(Complex z) {
  if (z.imag() == 0.0) {
    // Gamma > 0 on [1/2, inf): the libm value is the principal one.
    int sign = 0;
    return {::lgamma_r(z.real(), &sign), 0.0};
  }
  if (std::abs(z) >= 12.0) return stirling_log_gamma(z);
  return lanczos_log_gamma(z);
}

}  // namespace detail

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NonFiniteError(std::string(what) + " is not finite");
  }
}

bool near_nonpositive_integer(Complex z, double guard) {
  const double n = std::min(std::round(z.real()), 0.0);
  return std::abs(z - n) <= guard;
}

Complex sin_pi(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (y == 0.0) return {sin_pi_real(x), 0.0};
  return {sin_pi_real(x) * std::cosh(kPi * y), cos_pi_real(x) * std::sinh(kPi * y)};
}

Complex cos_pi(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (y == 0.0) return {cos_pi_real(x), 0.0};
  return {cos_pi_real(x) * std::cosh(kPi * y), -sin_pi_real(x) * std::sinh(kPi * y)};
}

Complex gamma(Complex z, double pole_guard) {
  require_finite(z, "gamma argument");
  check_pole(z, pole_guard, "gamma");
  if (z.real() >= 0.5) return checked(std::exp(detail::log_gamma_right(z)), "gamma");
  // Gamma(z) = pi / (sin(pi z) Gamma(1 - z)), assembled in log space so
  // that a huge Gamma(1 - z) does not overflow before the division.
  const Complex s = sin_pi(z);
  const Complex log_mag = std::log(kPi) - detail::log_gamma_right(1.0 - z) - std::log(s);
  return checked(std::exp(log_mag), "gamma");
}

Complex log_gamma(Complex z, double pole_guard) {
  require_finite(z, "log_gamma argument");
  check_pole(z, pole_guard, "log_gamma");
  if (z.real() >= 0.5) return principal_log_gamma_right(z);
  // Upward recurrence keeps every cut on (-inf, 0].
  const long n = static_cast<long>(std::ceil(0.5 - z.real()));
  Complex shift_sum = 0.0;
  for (long j = 0; j < n; ++j) shift_sum += std::log(z + static_cast<double>(j));
  return principal_log_gamma_right(z + static_cast<double>(n)) - shift_sum;
}

Complex reciprocal_gamma(Complex z) {
  require_finite(z, "reciprocal_gamma argument");
  if (z.real() >= 0.5) return std::exp(-detail::log_gamma_right(z));
  const Complex s = sin_pi(z);
  if (s == 0.0) return 0.0;
  return checked(s / kPi * std::exp(detail::log_gamma_right(1.0 - z)), "reciprocal_gamma");
}

Complex pochhammer(Complex a, long k, double pole_guard) {
  require_finite(a, "pochhammer argument");
  if (k > kMaxPochhammerIndex || k < -kMaxPochhammerIndex) {
    throw RangeError("pochhammer: |k| exceeds the configured maximum");
  }
  if (k == 0) return 1.0;
  if (k < 0) {
    const long m = -k;
    Complex product = 1.0;
    for (long j = 1; j <= m; ++j) {
      const Complex f = a - static_cast<double>(j);
      if (std::abs(f) <= pole_guard) {
        throw DivisionByZero("pochhammer: factor a - " + std::to_string(j) + " vanishes");
      }
      product /= f;
    }
    return product;
  }
  if (k <= kPochhammerProductLimit) {
    Complex product = 1.0;
    for (long j = 0; j < k; ++j) product *= a + static_cast<double>(j);
    return checked(product, "pochhammer");
  }
  if (a.imag() == 0.0 && a.real() <= 0.0 && a.real() == std::round(a.real())) {
    const long m = static_cast<long>(-a.real());
    if (k > m) return 0.0;  // the product passes through zero
  }
  return GammaProduct(pole_guard).times_pochhammer(a, k).value();
}

Complex paired_pochhammer(Complex sum, Complex product, long m, double pole_guard) {
  require_finite(sum, "paired_pochhammer sum");
  require_finite(product, "paired_pochhammer product");
  if (m > kMaxPochhammerIndex || m < -kMaxPochhammerIndex) {
    throw RangeError("paired_pochhammer: |m| exceeds the configured maximum");
  }
  if (m == 0) return 1.0;
  const bool real_pair = sum.imag() == 0.0 && product.imag() == 0.0;
  if (m > 0 && m <= kPochhammerProductLimit) {
    Complex acc = 1.0;
    for (long j = 0; j < m; ++j) {
      const double jj = static_cast<double>(j);
      acc *= jj * jj + jj * sum + product;  // (p + j)(q + j)
    }
    return checked(acc, "paired_pochhammer");
  }
  if (m < 0 && -m <= kPochhammerProductLimit) {
    Complex acc = 1.0;
    for (long j = 1; j <= -m; ++j) {
      const double jj = static_cast<double>(j);
      const Complex f = jj * jj - jj * sum + product;  // (p - j)(q - j)
      if (std::abs(f) <= pole_guard * (1.0 + jj * jj)) {
        throw DivisionByZero("paired_pochhammer: reciprocal factor vanishes");
      }
      acc /= f;
    }
    return checked(acc, "paired_pochhammer");
  }
  // Long products: split into the two roots and use log-gamma.
  const Complex half = 0.5 * sum;
  Complex root = std::sqrt(half * half - product);
  if (std::real(std::conj(half) * root) < 0.0) root = -root;
  const Complex p = half + root;
  const Complex q = p == 0.0 ? Complex(0.0) : product / p;
  Complex v = GammaProduct(pole_guard).times_pochhammer_pair(p, q, m).value();
  if (real_pair) v = Complex(v.real(), 0.0);
  return v;
}

Complex paired_pochhammer_sq(Complex aa, long k) {
  require_finite(aa, "paired_pochhammer_sq argument");
  if (k < 0) throw RangeError("paired_pochhammer_sq: k must be nonnegative");
  if (k > kMaxPochhammerIndex) throw RangeError("paired_pochhammer_sq: k exceeds the configured maximum");
  Complex acc = 1.0;
  const double c = 0.5 * (1.0 - static_cast<double>(k));
  for (long j = 0; j < k; ++j) {
    const double shift = c + static_cast<double>(j);
    acc *= aa - shift * shift;
  }
  return checked(acc, "paired_pochhammer_sq");
}

std::uint64_t double_factorial(int n) {
  if (n < -1) throw RangeError("double_factorial: n must be >= -1");
  std::uint64_t acc = 1;
  for (int j = n; j > 1; j -= 2) {
    if (__builtin_mul_overflow(acc, static_cast<std::uint64_t>(j), &acc)) {
      throw OverflowError("double_factorial: result exceeds 64 bits");
    }
  }
  return acc;
}

}  // namespace pfx
