#include "pfx/reference_oracle.hpp"

#include "pfx/gamma_product.hpp"

namespace pfx::oracle {

Complex beta(Complex x1, Complex x2) { return cdi_lhs(x1, x2, 0.0); }

Complex cdi_lhs(Complex x1, Complex x2, Complex a) {
  for (const Complex v : {x1, x2, a}) require_finite(v, "oracle argument");
  // x1 + x2 is formed before anything else so the call graph is symmetric.
  const Complex sum = x1 + x2;
  return GammaProduct().times_gamma_pair(x1, x2).over_gamma(sum + a).value();
}

Complex clf_lhs(Complex x1, Complex x2, Complex s, Complex t, Complex u) {
  for (const Complex v : {x1, x2, s, t, u}) require_finite(v, "oracle argument");
  const Complex sum = x1 + x2;
  return GammaProduct()
      .times_gamma_pair(x1, x2)
      .times_gamma(s - sum)
      .over_gamma_pair(t - x1, t - x2)
      .over_gamma(u + sum)
      .value();
}

Complex tvd_lhs(const std::array<Complex, 3>& x, Complex u) {
  for (const Complex v : x) require_finite(v, "oracle argument");
  require_finite(u, "oracle argument");
  GammaProduct g;
  for (const Complex v : x) g.times_gamma(v).over_gamma(u - v);
  return g.value();
}

}  // namespace pfx::oracle
