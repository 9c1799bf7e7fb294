#pragma once

#include <cmath>

#include "pfx/scalar_kernel.hpp"

namespace pfx {

// Kahan-Babuska-Neumaier summation, applied to real and imaginary parts
// separately. Terms must be added in a fixed order for reproducibility.
class CompensatedSum {
 public:
  void add(Complex term) {
    add_part(sum_re_, comp_re_, term.real());
    add_part(sum_im_, comp_im_, term.imag());
  }

  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double sum_re_ = 0.0;
  double comp_re_ = 0.0;
  double sum_im_ = 0.0;
  double comp_im_ = 0.0;
};

}  // namespace pfx
