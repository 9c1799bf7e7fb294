#pragma once

// Closed-form gamma ratios that the series are checked against.
// Denominator gammas go through reciprocal_gamma, so a pole there gives an
// exact zero; a pole of a numerator gamma raises PoleError.

#include <array>

#include "pfx/scalar_kernel.hpp"

namespace pfx::oracle {

// Gamma(x1) Gamma(x2) / Gamma(x1 + x2)
Complex beta(Complex x1, Complex x2);

// Gamma(x1) Gamma(x2) / Gamma(x1 + x2 + a)
Complex cdi_lhs(Complex x1, Complex x2, Complex a);

// Gamma(x1) Gamma(x2) Gamma(s - x1 - x2) / (Gamma(t - x1) Gamma(t - x2) Gamma(u + x1 + x2))
Complex clf_lhs(Complex x1, Complex x2, Complex s, Complex t, Complex u);

// prod_j Gamma(x_j) / prod_j Gamma(u - x_j)
Complex tvd_lhs(const std::array<Complex, 3>& x, Complex u);

}  // namespace pfx::oracle
