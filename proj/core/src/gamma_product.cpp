#include "pfx/gamma_product.hpp"

#include <cmath>
#include <numbers>

#include "pfx/errors.hpp"

namespace pfx {

namespace {
constexpr double kPi = std::numbers::pi;
}

GammaProduct::Factor GammaProduct::gamma_factor(Complex z) const {
  if (z.real() >= 0.5) return {detail::log_gamma_right(z), 1.0};
  if (near_nonpositive_integer(z, guard_)) throw PoleError("gamma factor at a pole");
  return {-detail::log_gamma_right(1.0 - z), kPi / sin_pi(z)};
}

GammaProduct::Factor GammaProduct::rgamma_factor(Complex z) const {
  if (z.real() >= 0.5) return {-detail::log_gamma_right(z), 1.0};
  return {detail::log_gamma_right(1.0 - z), sin_pi(z) / kPi};
}

GammaProduct::Factor GammaProduct::pochhammer_factor(Complex a, long k) const {
  if (k == 0) return {0.0, 1.0};
  if (k < 0) {
    // (a)_{-m} = 1 / (a - m)_m
    const long m = -k;
    if (m <= kPochhammerProductLimit) {
      Complex product = 1.0;
      for (long j = 1; j <= m; ++j) {
        const Complex f = a - static_cast<double>(j);
        if (std::abs(f) <= guard_) throw DivisionByZero("negative-index Pochhammer factor vanishes");
        product /= f;
      }
      return {0.0, product};
    }
    const Factor inner = pochhammer_factor(a - static_cast<double>(m), m);
    if (inner.scale == 0.0) throw DivisionByZero("negative-index Pochhammer factor vanishes");
    return {-inner.log, 1.0 / inner.scale};
  }
  if (k <= kPochhammerProductLimit) {
    Complex product = 1.0;
    for (long j = 0; j < k; ++j) product *= a + static_cast<double>(j);
    if (std::isfinite(product.real()) && std::isfinite(product.imag())) return {0.0, product};
  }
  const double kk = static_cast<double>(k);
  if (a.real() >= 0.5) {
    return {detail::log_gamma_right(a + kk) - detail::log_gamma_right(a), 1.0};
  }
  if ((a + kk).real() < 0.5) {
    // (a)_k = (-1)^k (1 - a - k)_k
    return {detail::log_gamma_right(1.0 - a) - detail::log_gamma_right(1.0 - a - kk),
            (k % 2 == 0) ? 1.0 : -1.0};
  }
  // Re(a) < 1/2 <= Re(a + k): reflect Gamma(a) only.
  return {detail::log_gamma_right(a + kk) + detail::log_gamma_right(1.0 - a), sin_pi(a) / kPi};
}

GammaProduct::Factor GammaProduct::paired_factor(Complex sum, Complex product, long m) const {
  if (m == 0) return {0.0, 1.0};
  if (m > 0 && m <= kPochhammerProductLimit) {
    Complex acc = 1.0;
    for (long j = 0; j < m; ++j) {
      const double jj = static_cast<double>(j);
      acc *= jj * jj + jj * sum + product;
    }
    if (std::isfinite(acc.real()) && std::isfinite(acc.imag())) return {0.0, acc};
  }
  if (m < 0 && -m <= kPochhammerProductLimit) {
    Complex acc = 1.0;
    for (long j = 1; j <= -m; ++j) {
      const double jj = static_cast<double>(j);
      const Complex f = jj * jj - jj * sum + product;
      if (std::abs(f) <= guard_ * (1.0 + jj * jj)) {
        throw DivisionByZero("paired Pochhammer reciprocal factor vanishes");
      }
      acc /= f;
    }
    return {0.0, acc};
  }
  const Complex half = 0.5 * sum;
  Complex root = std::sqrt(half * half - product);
  if (std::real(std::conj(half) * root) < 0.0) root = -root;
  const Complex p = half + root;
  const Complex q = p == 0.0 ? Complex(0.0) : product / p;
  const Factor fp = pochhammer_factor(p, m);
  const Factor fq = pochhammer_factor(q, m);
  return {fp.log + fq.log, fp.scale * fq.scale};
}

void GammaProduct::apply(const Factor& f) {
  log_ += f.log;
  scale_ *= f.scale;
}

void GammaProduct::apply_inverse(const Factor& f) {
  if (f.scale == 0.0) throw PoleError("division by a vanishing gamma-type factor");
  log_ -= f.log;
  scale_ /= f.scale;
}

GammaProduct& GammaProduct::times(Complex c) {
  scale_ *= c;
  return *this;
}

GammaProduct& GammaProduct::times_gamma(Complex z) {
  apply(gamma_factor(z));
  return *this;
}

GammaProduct& GammaProduct::over_gamma(Complex z) {
  apply(rgamma_factor(z));
  return *this;
}

GammaProduct& GammaProduct::times_pochhammer(Complex a, long k) {
  apply(pochhammer_factor(a, k));
  return *this;
}

GammaProduct& GammaProduct::over_pochhammer(Complex a, long k) {
  apply_inverse(pochhammer_factor(a, k));
  return *this;
}

GammaProduct& GammaProduct::times_gamma_pair(Complex p, Complex q) {
  const Factor fp = gamma_factor(p);
  const Factor fq = gamma_factor(q);
  apply({fp.log + fq.log, fp.scale * fq.scale});
  return *this;
}

GammaProduct& GammaProduct::over_gamma_pair(Complex p, Complex q) {
  const Factor fp = rgamma_factor(p);
  const Factor fq = rgamma_factor(q);
  apply({fp.log + fq.log, fp.scale * fq.scale});
  return *this;
}

GammaProduct& GammaProduct::times_pochhammer_pair(Complex p, Complex q, long k) {
  const Factor fp = pochhammer_factor(p, k);
  const Factor fq = pochhammer_factor(q, k);
  apply({fp.log + fq.log, fp.scale * fq.scale});
  return *this;
}

GammaProduct& GammaProduct::over_pochhammer_pair(Complex p, Complex q, long k) {
  const Factor fp = pochhammer_factor(p, k);
  const Factor fq = pochhammer_factor(q, k);
  apply_inverse({fp.log + fq.log, fp.scale * fq.scale});
  return *this;
}

GammaProduct& GammaProduct::times_paired_pochhammer(Complex sum, Complex product, long m) {
  apply(paired_factor(sum, product, m));
  return *this;
}

GammaProduct& GammaProduct::over_paired_pochhammer(Complex sum, Complex product, long m) {
  apply_inverse(paired_factor(sum, product, m));
  return *this;
}

GammaProduct& GammaProduct::over_factorial(long k) {
  log_ -= detail::log_gamma_right(Complex(static_cast<double>(k) + 1.0, 0.0));
  return *this;
}

Complex GammaProduct::value() const {
  if (scale_ == 0.0) return 0.0;
  const double scale_mag = std::abs(scale_);
  const double log_mag = log_.real() + std::log(scale_mag);
  if (log_mag > 709.0 || !std::isfinite(log_mag)) {
    if (log_mag == -INFINITY) return 0.0;
    throw OverflowError("gamma product exceeds the floating range");
  }
  return std::exp(Complex(log_mag, log_.imag())) * (scale_ / scale_mag);
}

}  // namespace pfx
