#pragma once

#include "pfx/scalar_kernel.hpp"

namespace pfx {

// Accumulates a product of gamma factors, Pochhammer symbols and plain
// scalars as scale * exp(log_sum). Arguments with Re < 1/2 go through the
// reflection formula, so reciprocal gammas at poles produce an exact zero
// while gammas at poles raise PoleError. The branch of log_sum is
// irrelevant because only exp(log_sum) is ever observed.
//
// The *_pair members combine the two contributions before accumulating,
// which makes the result bit-identical under swapping the pair.
class GammaProduct {
 public:
  explicit GammaProduct(double pole_guard = kDefaultPoleGuard) : guard_(pole_guard) {}

  GammaProduct& times(Complex c);
  GammaProduct& times_gamma(Complex z);
  GammaProduct& over_gamma(Complex z);
  GammaProduct& times_pochhammer(Complex a, long k);
  GammaProduct& over_pochhammer(Complex a, long k);

  GammaProduct& times_gamma_pair(Complex p, Complex q);
  GammaProduct& over_gamma_pair(Complex p, Complex q);
  GammaProduct& times_pochhammer_pair(Complex p, Complex q, long k);
  GammaProduct& over_pochhammer_pair(Complex p, Complex q, long k);

  // (p)_m (q)_m for the roots of u^2 - sum u + product. Short products are
  // formed from sum and product alone; long ones split the pair.
  GammaProduct& times_paired_pochhammer(Complex sum, Complex product, long m);
  GammaProduct& over_paired_pochhammer(Complex sum, Complex product, long m);

  // -log(k!) folded into the log sum.
  GammaProduct& over_factorial(long k);

  // Throws OverflowError when the product leaves the double range.
  Complex value() const;

 private:
  struct Factor {
    Complex log;
    Complex scale;
  };
  Factor gamma_factor(Complex z) const;
  Factor rgamma_factor(Complex z) const;
  Factor pochhammer_factor(Complex a, long k) const;
  Factor paired_factor(Complex sum, Complex product, long m) const;
  void apply(const Factor& f);
  void apply_inverse(const Factor& f);

  double guard_;
  Complex log_{0.0, 0.0};
  Complex scale_{1.0, 0.0};
};

namespace detail {
// log Gamma(z) on any branch, Re(z) >= 1/2 required.
Complex log_gamma_right(Complex z);
}  // namespace detail

}  // namespace pfx
