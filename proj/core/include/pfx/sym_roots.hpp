#pragma once

// Elementary symmetric functions and the auxiliary root vectors
// (t_k, b', c^+-, eta^+-, xi^+-) used by the partial-fraction expansions.

#include <span>
#include <utility>
#include <vector>

#include "pfx/scalar_kernel.hpp"

namespace pfx {

// Relative tolerance of the Q(x) = Q(y) and lambda + k = 0 checks.
inline constexpr double kDegeneracyTolerance = 1e-12;

// A point up to permutation, stored as (e_1, ..., e_r).
class ESymPoint {
 public:
  ESymPoint() = default;
  explicit ESymPoint(std::vector<Complex> e) : e_(std::move(e)) {}

  std::size_t arity() const { return e_.size(); }
  // e_0 = 1; e_m = 0 for m < 0 or m > r.
  Complex e(long m) const;
  const std::vector<Complex>& values() const { return e_; }

 private:
  std::vector<Complex> e_;
};

// Q(x) = sum_m A_m e_m(x), a symmetric polynomial of degree at most one in
// each variable. Degree exactly one requires A_r != 0.
class LinearSymForm {
 public:
  LinearSymForm() = default;
  explicit LinearSymForm(std::vector<Complex> coefficients) : a_(std::move(coefficients)) {}

  // The form prod_m (x_m - b) on r variables.
  static LinearSymForm shifted_product(std::size_t r, Complex b);

  std::size_t arity() const { return a_.empty() ? 0 : a_.size() - 1; }
  const std::vector<Complex>& coefficients() const { return a_; }
  bool degenerate() const { return a_.empty() || a_.back() == 0.0; }

  Complex operator()(const ESymPoint& x) const;

  // Q-hat(y_1..y_l) = sum_{m<=l} A_{m+r-l} e_m(y).
  Complex leading_part(const ESymPoint& y_fixed) const;

 private:
  std::vector<Complex> a_;
};

// Unordered r-tuple of roots.
struct RootMultiset {
  std::vector<Complex> roots;
};

// A +- pair produced by a cancellation-safe quadratic solve. `plus` is the
// value of center + sqrt(radicand) on the principal branch.
struct RootPair {
  Complex plus;
  Complex minus;
};

ESymPoint elementary_from_roots(std::span<const Complex> xs);

RootMultiset roots_from_elementary(const ESymPoint& e);

// e_m(t) = (Q(y) e_m(x) - Q(x) e_m(y)) / (Q(y) - Q(x)).
ESymPoint t_elementary_full(const LinearSymForm& q, const ESymPoint& x, const ESymPoint& y);
RootMultiset t_vector_full(const LinearSymForm& q, const ESymPoint& x, const ESymPoint& y);

// Limit y_{l+1..r} -> infinity: e_m(t) = e_m(x) - Q(x)/Q-hat(y) e_{m+l-r}(y).
ESymPoint t_elementary_limit(const LinearSymForm& q, const ESymPoint& x,
                             std::span<const Complex> y_fixed);
RootMultiset t_vector_limit(const LinearSymForm& q, const ESymPoint& x,
                            std::span<const Complex> y_fixed);

// b' = lambda - (lambda - x1)(lambda - x2)/(lambda - b).
Complex b_prime(Complex lambda, Complex x1, Complex x2, Complex b);

// Pair with c+ + c- = s + k and c+ c- = x1 x2 + (s + k - x1 - x2) lambda.
RootPair c_pm(Complex s_plus_k, Complex lambda, Complex x1, Complex x2);

// Pair with eta+ + eta- = e1 + k and
// (eta+ - lambda)(eta- - lambda)(-k - lambda) = prod_j (x_j - lambda).
RootPair eta_pm(Complex e1_plus_k, Complex lambda, Complex prod_shift, Complex lambda_plus_k);

// xi+- = (2 - s - k)/2 +- sqrt((s + k - 2 lambda)^2/4 + prod_j(x_j - lambda)/(lambda + k)),
// i.e. xi+- = 1 - eta-+ when s = x1 + x2 + x3.
RootPair xi_pm(Complex s, long k, Complex lambda, Complex x1, Complex x2, Complex x3);

// Roots of u^2 - sum u + product with the larger one taken from
// center +- sqrt(radicand) and the partner from the product.
RootPair solve_pair(Complex center, Complex radicand, Complex product);

}  // namespace pfx
