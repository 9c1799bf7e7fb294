#include "pfx/sym_roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "pfx/errors.hpp"

namespace pfx {

namespace {

Complex horner_monic(const ESymPoint& e, Complex u) {
  // prod_j (u - t_j) = sum_m (-1)^m e_m u^{r-m}
  Complex acc = 1.0;
  const long r = static_cast<long>(e.arity());
  for (long m = 1; m <= r; ++m) acc = acc * u + ((m % 2) ? -e.e(m) : e.e(m));
  return acc;
}

Complex horner_monic_derivative(const ESymPoint& e, Complex u) {
  const long r = static_cast<long>(e.arity());
  Complex acc = static_cast<double>(r);
  for (long m = 1; m < r; ++m) {
    const Complex coeff = (m % 2) ? -e.e(m) : e.e(m);
    acc = acc * u + static_cast<double>(r - m) * coeff;
  }
  return acc;
}

// A couple of guarded Newton steps against the monic polynomial.
void polish(const ESymPoint& e, std::vector<Complex>& roots) {
  for (Complex& u : roots) {
    for (int iter = 0; iter < 3; ++iter) {
      const Complex f = horner_monic(e, u);
      if (f == 0.0) break;
      const Complex df = horner_monic_derivative(e, u);
      if (df == 0.0) break;
      const Complex next = u - f / df;
      if (std::abs(horner_monic(e, next)) < std::abs(f)) {
        u = next;
      } else {
        break;
      }
    }
  }
}

std::vector<Complex> cubic_roots(const ESymPoint& e) {
  const Complex a = -e.e(1);
  const Complex b = e.e(2);
  const Complex c = -e.e(3);
  const Complex p = b - a * a / 3.0;
  const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const Complex sd = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const Complex w1 = -q / 2.0 + sd;
  const Complex w2 = -q / 2.0 - sd;
  const Complex w = std::abs(w1) >= std::abs(w2) ? w1 : w2;
  std::vector<Complex> roots(3);
  const Complex shift = -a / 3.0;
  if (w == 0.0) {
    std::fill(roots.begin(), roots.end(), shift);
    return roots;
  }
  const Complex cube_root = std::exp(std::log(w) / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Complex rot = 1.0;
  for (int j = 0; j < 3; ++j) {
    const Complex cj = cube_root * rot;
    roots[j] = cj - p / (3.0 * cj) + shift;
    rot *= omega;
  }
  return roots;
}

std::vector<Complex> companion_roots(const ESymPoint& e) {
  const long r = static_cast<long>(e.arity());
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(r, r);
  for (long i = 1; i < r; ++i) companion(i, i - 1) = 1.0;
  for (long m = 1; m <= r; ++m) {
    // u^r = -sum_m (-1)^m e_m u^{r-m}
    const Complex coeff = (m % 2) ? e.e(m) : -e.e(m);
    companion(0, m - 1) = coeff;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + r);
  return roots;
}

double scale_of(Complex a, Complex b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

Complex ESymPoint::e(long m) const {
  if (m == 0) return 1.0;
  if (m < 0 || m > static_cast<long>(e_.size())) return 0.0;
  return e_[static_cast<std::size_t>(m - 1)];
}

LinearSymForm LinearSymForm::shifted_product(std::size_t r, Complex b) {
  // prod_m (x_m - b) = sum_m (-b)^{r-m} e_m(x)
  std::vector<Complex> a(r + 1);
  Complex power = 1.0;
  for (std::size_t m = r + 1; m-- > 0;) {
    a[m] = power;
    power *= -b;
  }
  return LinearSymForm(std::move(a));
}

Complex LinearSymForm::operator()(const ESymPoint& x) const {
  Complex acc = 0.0;
  for (std::size_t m = 0; m < a_.size(); ++m) acc += a_[m] * x.e(static_cast<long>(m));
  return acc;
}

Complex LinearSymForm::leading_part(const ESymPoint& y_fixed) const {
  const long r = static_cast<long>(arity());
  const long l = static_cast<long>(y_fixed.arity());
  Complex acc = 0.0;
  for (long m = 0; m <= l; ++m) acc += a_[static_cast<std::size_t>(m + r - l)] * y_fixed.e(m);
  return acc;
}

ESymPoint elementary_from_roots(std::span<const Complex> xs) {
  std::vector<Complex> coeff(xs.size() + 1, Complex(0.0));
  coeff[0] = 1.0;
  std::size_t used = 0;
  for (const Complex x : xs) {
    ++used;
    for (std::size_t m = used; m >= 1; --m) coeff[m] += x * coeff[m - 1];
  }
  return ESymPoint(std::vector<Complex>(coeff.begin() + 1, coeff.end()));
}

RootMultiset roots_from_elementary(const ESymPoint& e) {
  const std::size_t r = e.arity();
  if (r == 0) throw DegenerateError("roots_from_elementary: arity must be at least 1");
  for (const Complex v : e.values()) require_finite(v, "elementary symmetric value");
  std::vector<Complex> roots;
  if (r == 1) {
    roots = {e.e(1)};
  } else if (r == 2) {
    const Complex center = 0.5 * e.e(1);
    const RootPair pair = solve_pair(center, center * center - e.e(2), e.e(2));
    roots = {pair.plus, pair.minus};
  } else if (r == 3) {
    roots = cubic_roots(e);
    polish(e, roots);
  } else {
    roots = companion_roots(e);
    polish(e, roots);
  }
  return RootMultiset{std::move(roots)};
}

ESymPoint t_elementary_full(const LinearSymForm& q, const ESymPoint& x, const ESymPoint& y) {
  if (x.arity() != y.arity() || q.arity() != x.arity()) {
    throw DegenerateError("t_vector_full: arity mismatch between form and points");
  }
  const Complex qx = q(x);
  const Complex qy = q(y);
  const Complex denom = qy - qx;
  const double scale = std::max(std::abs(qx), std::abs(qy));
  if (scale == 0.0 || std::abs(denom) <= kDegeneracyTolerance * scale) {
    throw DegenerateError("t_vector_full: Q(x) = Q(y)");
  }
  std::vector<Complex> et(x.arity());
  for (std::size_t m = 1; m <= x.arity(); ++m) {
    const long mm = static_cast<long>(m);
    et[m - 1] = (qy * x.e(mm) - qx * y.e(mm)) / denom;
  }
  return ESymPoint(std::move(et));
}

RootMultiset t_vector_full(const LinearSymForm& q, const ESymPoint& x, const ESymPoint& y) {
  return roots_from_elementary(t_elementary_full(q, x, y));
}

ESymPoint t_elementary_limit(const LinearSymForm& q, const ESymPoint& x,
                             std::span<const Complex> y_fixed) {
  const long r = static_cast<long>(x.arity());
  const long l = static_cast<long>(y_fixed.size());
  if (static_cast<long>(q.arity()) != r) throw DegenerateError("t_vector_limit: arity mismatch");
  if (l > r - 1) throw DegenerateError("t_vector_limit: need 0 <= l <= r - 1 fixed coordinates");
  const ESymPoint ey = elementary_from_roots(y_fixed);
  const Complex q_hat = q.leading_part(ey);
  double scale = 0.0;
  for (long m = 0; m <= l; ++m) {
    scale += std::abs(q.coefficients()[static_cast<std::size_t>(m + r - l)] * ey.e(m));
  }
  if (scale == 0.0 || std::abs(q_hat) <= kDegeneracyTolerance * scale) {
    throw DegenerateError("t_vector_limit: Q-hat(y) vanishes");
  }
  const Complex ratio = q(x) / q_hat;
  std::vector<Complex> et(static_cast<std::size_t>(r));
  for (long m = 1; m <= r; ++m) et[static_cast<std::size_t>(m - 1)] = x.e(m) - ratio * ey.e(m + l - r);
  return ESymPoint(std::move(et));
}

RootMultiset t_vector_limit(const LinearSymForm& q, const ESymPoint& x,
                            std::span<const Complex> y_fixed) {
  return roots_from_elementary(t_elementary_limit(q, x, y_fixed));
}

Complex b_prime(Complex lambda, Complex x1, Complex x2, Complex b) {
  const Complex d = lambda - b;
  if (std::abs(d) <= kDegeneracyTolerance * scale_of(lambda, b)) {
    throw DegenerateError("b_prime: lambda = b");
  }
  return lambda - (lambda - x1) * (lambda - x2) / d;
}

RootPair solve_pair(Complex center, Complex radicand, Complex product) {
  const Complex root = std::sqrt(radicand);
  const bool flip = std::real(std::conj(center) * root) < 0.0;
  const Complex big = flip ? center - root : center + root;
  if (big == 0.0) return {0.0, 0.0};
  const Complex small = product / big;
  return flip ? RootPair{small, big} : RootPair{big, small};
}

RootPair c_pm(Complex s_plus_k, Complex lambda, Complex x1, Complex x2) {
  const Complex center = 0.5 * s_plus_k;
  const Complex radicand = center * center + lambda * (x1 + x2 - s_plus_k) - x1 * x2;
  const Complex product = x1 * x2 + (s_plus_k - (x1 + x2)) * lambda;
  return solve_pair(center, radicand, product);
}

RootPair eta_pm(Complex e1_plus_k, Complex lambda, Complex prod_shift, Complex lambda_plus_k) {
  if (std::abs(lambda_plus_k) <= kDegeneracyTolerance * std::max(1.0, std::abs(lambda))) {
    throw DegenerateError("eta_pm: lambda + k = 0");
  }
  const Complex center = 0.5 * e1_plus_k;
  const Complex half_gap = 0.5 * (e1_plus_k - 2.0 * lambda);
  const Complex perturb = prod_shift / lambda_plus_k;
  const Complex radicand = half_gap * half_gap + perturb;
  const Complex product = lambda * (e1_plus_k - lambda) - perturb;
  return solve_pair(center, radicand, product);
}

RootPair xi_pm(Complex s, long k, Complex lambda, Complex x1, Complex x2, Complex x3) {
  const double kk = static_cast<double>(k);
  const Complex lambda_plus_k = lambda + kk;
  if (std::abs(lambda_plus_k) <= kDegeneracyTolerance * std::max(1.0, std::abs(lambda))) {
    throw DegenerateError("xi_pm: lambda + k = 0");
  }
  const Complex prod_shift = (x1 - lambda) * (x2 - lambda) * (x3 - lambda);
  const Complex perturb = prod_shift / lambda_plus_k;
  const Complex center = 0.5 * (2.0 - s - kk);
  const Complex half_gap = 0.5 * (s + kk - 2.0 * lambda);
  const Complex radicand = half_gap * half_gap + perturb;
  // (1 - eta+)(1 - eta-) with eta+ eta- = lambda (s + k - lambda) - perturb
  const Complex product = (1.0 - s - kk) + lambda * (s + kk - lambda) - perturb;
  return solve_pair(center, radicand, product);
}

}  // namespace pfx
