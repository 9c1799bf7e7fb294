#include "pfx/finite_pf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfx/errors.hpp"
#include "pfx/summation.hpp"

namespace pfx {

namespace {

double factorial(int n) {
  double acc = 1.0;
  for (int j = 2; j <= n; ++j) acc *= j;
  return acc;
}

// (-1)^k / (k! (n - k)!)
double alternating_binomial_weight(int k, int n) {
  const double w = 1.0 / (factorial(k) * factorial(n - k));
  return (k % 2 == 0) ? w : -w;
}

void check_grid(Complex z, int n, double guard, const char* name) {
  for (int j = 0; j <= n; ++j) {
    if (std::abs(z + static_cast<double>(j)) <= guard) {
      throw PoleError(std::string(name) + " hits the pole grid 0, -1, ..., -n");
    }
  }
}

Complex checked_divisor(Complex d, double guard, const char* what) {
  if (std::abs(d) <= guard) throw PoleError(std::string(what) + " vanishes");
  return d;
}

// Monic quotient of prod(u - t_j) by (u - b), returned as its own
// elementary symmetric values.
ESymPoint deflate(const ESymPoint& et, Complex b) {
  const long r = static_cast<long>(et.arity());
  std::vector<Complex> quotient(static_cast<std::size_t>(r - 1));
  Complex d = 1.0;
  for (long m = 1; m < r; ++m) {
    const Complex c = (m % 2) ? -et.e(m) : et.e(m);
    d = c + b * d;
    quotient[static_cast<std::size_t>(m - 1)] = (m % 2) ? -d : d;
  }
  return ESymPoint(std::move(quotient));
}

double form_scale(const LinearSymForm& q, const ESymPoint& x) {
  double acc = 0.0;
  for (std::size_t m = 0; m < q.coefficients().size(); ++m) {
    acc += std::abs(q.coefficients()[m] * x.e(static_cast<long>(m)));
  }
  return acc;
}

Complex shifted_bracket(Complex x1, Complex x2, Complex lambda, double k) {
  return 1.0 / (x1 + k) + 1.0 / (x2 + k) - 1.0 / (lambda + k);
}

// Compensated sum that also tracks sum |term|, the scale against which
// cancellation in the right-hand side is judged.
struct TermSum {
  CompensatedSum sum;
  double mass = 0.0;
  void add(Complex t) {
    sum.add(t);
    mass += std::abs(t);
  }
  Complex value() const { return sum.value(); }
};

IdentityReport report_of(Complex lhs, const TermSum& rhs, std::vector<NamedValue> point) {
  IdentityReport r = make_report(lhs, rhs.value(), std::move(point));
  r.condition = rhs.mass / std::max({std::abs(lhs), std::abs(r.rhs), 1e-300});
  return r;
}

Complex pair_sum(const RootPair& p) { return p.plus + p.minus; }
Complex pair_product(const RootPair& p) { return p.plus * p.minus; }

// (c - p)_m (c - q)_m through the pair's symmetric functions.
Complex shifted_pair_pochhammer(Complex c, Complex sum, Complex product, long m, double guard) {
  return paired_pochhammer(2.0 * c - sum, c * c - c * sum + product, m, guard);
}

}  // namespace

const char* to_string(FiniteKind kind) {
  switch (kind) {
    case FiniteKind::BPF: return "bpf";
    case FiniteKind::GPF: return "gpf";
    case FiniteKind::TWPF: return "twpf";
    case FiniteKind::CBI: return "cbi";
    case FiniteKind::AFFP: return "affp";
    case FiniteKind::YL: return "yl";
  }
  return "unknown";
}

FiniteKind finite_kind_from_string(const std::string& name) {
  for (FiniteKind k : {FiniteKind::BPF, FiniteKind::GPF, FiniteKind::TWPF, FiniteKind::CBI,
                       FiniteKind::AFFP, FiniteKind::YL}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown finite identity '" + name + "'");
}

IdentityReport make_report(Complex lhs, Complex rhs, std::vector<NamedValue> point) {
  IdentityReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.abs_err = std::abs(lhs - rhs);
  report.rel_err = report.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  report.point = std::move(point);
  return report;
}

std::vector<Complex> residues_bpf(Complex a, int n) {
  if (n < 0) throw RangeError("residues_bpf: n must be nonnegative");
  std::vector<Complex> residues(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    residues[static_cast<std::size_t>(k)] =
        alternating_binomial_weight(k, n) * pochhammer(a - static_cast<double>(k), n);
  }
  return residues;
}

IdentityReport eval_bpf(Complex a, Complex x, int n, double pole_guard) {
  require_finite(a, "a");
  require_finite(x, "x");
  if (n < 0) throw RangeError("eval_bpf: n must be nonnegative");
  check_grid(x, n, pole_guard, "x");
  const Complex lhs = pochhammer(a + x, n) / pochhammer(x, n + 1);
  const std::vector<Complex> residues = residues_bpf(a, n);
  TermSum rhs;
  for (int k = 0; k <= n; ++k) rhs.add(residues[static_cast<std::size_t>(k)] / (x + static_cast<double>(k)));
  return report_of(lhs, rhs, {{"a", a}, {"x", x}, {"n", static_cast<double>(n)}});
}

namespace {

IdentityReport gpf_impl(const SymmetricEvaluator& p, std::span<const LinearSymForm> qs,
                        const ESymPoint& x, const ESymPoint& y, std::span<const Complex> x_pts,
                        std::span<const Complex> y_pts, double guard) {
  if (qs.empty()) throw RangeError("eval_gpf: need at least one form");
  const std::size_t n1 = qs.size();
  std::vector<Complex> qx(n1), qy(n1);
  Complex den_x = 1.0, den_y = 1.0;
  for (std::size_t j = 0; j < n1; ++j) {
    qx[j] = qs[j](x);
    qy[j] = qs[j](y);
    checked_divisor(qx[j], guard * std::max(1.0, form_scale(qs[j], x)), "Q_j(x)");
    checked_divisor(qy[j], guard * std::max(1.0, form_scale(qs[j], y)), "Q_j(y)");
    den_x *= qx[j];
    den_y *= qy[j];
  }
  const Complex lhs = p(x_pts) / den_x - p(y_pts) / den_y;
  TermSum rhs;
  for (std::size_t k = 0; k < n1; ++k) {
    const ESymPoint et = t_elementary_full(qs[k], x, y);
    const RootMultiset tk = roots_from_elementary(et);
    Complex den = 1.0;
    for (std::size_t j = 0; j < n1; ++j) {
      if (j == k) continue;
      const Complex v = qs[j](et);
      checked_divisor(v, guard * std::max(1.0, form_scale(qs[j], et)), "Q_j(t_k)");
      den *= v;
    }
    rhs.add(p(tk.roots) / den * (1.0 / qx[k] - 1.0 / qy[k]));
  }
  return report_of(lhs, rhs, {{"n", static_cast<double>(n1 - 1)}});
}

}  // namespace

IdentityReport eval_gpf(const SymmetricEvaluator& p, std::span<const LinearSymForm> qs,
                        const ESymPoint& x, const ESymPoint& y, double pole_guard) {
  const RootMultiset xr = roots_from_elementary(x);
  const RootMultiset yr = roots_from_elementary(y);
  return gpf_impl(p, qs, x, y, xr.roots, yr.roots, pole_guard);
}

IdentityReport eval_gfd(const SymmetricEvaluator& p, std::span<const Complex> bs,
                        const ESymPoint& x, const ESymPoint& y, double pole_guard) {
  if (bs.empty()) throw RangeError("eval_gfd: need at least one b_j");
  const std::size_t r = x.arity();
  const RootMultiset xr = roots_from_elementary(x);
  const RootMultiset yr = roots_from_elementary(y);
  Complex den_x = 1.0, den_y = 1.0;
  for (const Complex b : bs) {
    for (const Complex xm : xr.roots) den_x *= checked_divisor(xm - b, pole_guard, "x_m - b_j");
    for (const Complex ym : yr.roots) den_y *= checked_divisor(ym - b, pole_guard, "y_m - b_j");
  }
  const Complex lhs = p(xr.roots) / den_x - p(yr.roots) / den_y;
  TermSum rhs;
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const Complex bk = bs[k];
    const ESymPoint et = t_elementary_full(LinearSymForm::shifted_product(r, bk), x, y);
    std::vector<Complex> tk{bk};
    if (r > 1) {
      const RootMultiset rest = roots_from_elementary(deflate(et, bk));
      tk.insert(tk.end(), rest.roots.begin(), rest.roots.end());
    }
    Complex den = 1.0;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (j != k) den *= checked_divisor(bk - bs[j], pole_guard, "b_k - b_j");
      for (std::size_t m = 1; m < tk.size(); ++m) den *= checked_divisor(tk[m] - bs[j], pole_guard, "b_k^(m) - b_j");
    }
    Complex bracket = 0.0;
    for (const Complex xm : xr.roots) bracket += 1.0 / (xm - bk);
    for (const Complex ym : yr.roots) bracket -= 1.0 / (ym - bk);
    rhs.add(p(tk) / den * bracket);
  }
  return report_of(lhs, rhs, {{"n", static_cast<double>(bs.size() - 1)}});
}

IdentityReport eval_fipf(const SymmetricEvaluator& p, std::span<const Complex> bs,
                         std::span<const Complex> x, std::span<const Complex> y_fixed,
                         double pole_guard) {
  if (bs.empty()) throw RangeError("eval_fipf: need at least one b_j");
  const std::size_t r = x.size();
  const ESymPoint ex = elementary_from_roots(x);
  Complex den_x = 1.0;
  for (const Complex b : bs) {
    for (const Complex xm : x) den_x *= checked_divisor(xm - b, pole_guard, "x_m - b_j");
  }
  const Complex lhs = p(x) / den_x;
  TermSum rhs;
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const Complex bk = bs[k];
    const ESymPoint et = t_elementary_limit(LinearSymForm::shifted_product(r, bk), ex, y_fixed);
    std::vector<Complex> tk{bk};
    if (r > 1) {
      const RootMultiset rest = roots_from_elementary(deflate(et, bk));
      tk.insert(tk.end(), rest.roots.begin(), rest.roots.end());
    }
    Complex den = 1.0;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (j != k) den *= checked_divisor(bk - bs[j], pole_guard, "b_k - b_j");
      for (std::size_t m = 1; m < tk.size(); ++m) den *= checked_divisor(tk[m] - bs[j], pole_guard, "b_k^(m) - b_j");
    }
    Complex bracket = 0.0;
    for (const Complex xm : x) bracket += 1.0 / (xm - bk);
    for (const Complex yj : y_fixed) bracket -= 1.0 / checked_divisor(yj - bk, pole_guard, "y_j - b_k");
    rhs.add(p(tk) / den * bracket);
  }
  return report_of(lhs, rhs, {{"n", static_cast<double>(bs.size() - 1)}});
}

IdentityReport eval_cbi(Complex x1, Complex x2, Complex a, Complex lambda, int n, double pole_guard) {
  for (const Complex v : {x1, x2, a, lambda}) require_finite(v, "cbi parameter");
  if (n < 0) throw RangeError("eval_cbi: n must be nonnegative");
  check_grid(x1, n, pole_guard, "x1");
  check_grid(x2, n, pole_guard, "x2");
  check_grid(lambda, n, pole_guard, "lambda");
  const Complex lhs =
      pochhammer(x1 + x2 + a, n) / (pochhammer(x1, n + 1) * pochhammer(x2, n + 1));
  TermSum rhs;
  for (int k = 0; k < n + 1; ++k) {
    const double kk = k;
    const Complex bp = b_prime(lambda, x1, x2, -kk);
    const Complex den = checked_divisor(pochhammer(bp, n + 1), pole_guard, "(b')_{n+1}");
    rhs.add(alternating_binomial_weight(k, n) * pochhammer(bp + a - kk, n) / den *
            shifted_bracket(x1, x2, lambda, kk));
  }
  return report_of(lhs, rhs,
                     {{"x1", x1}, {"x2", x2}, {"a", a}, {"lambda", lambda}, {"n", static_cast<double>(n)}});
}

IdentityReport eval_affp(Complex x1, Complex x2, Complex s, Complex t, Complex u, Complex lambda,
                         int n, double pole_guard) {
  for (const Complex v : {x1, x2, s, t, u, lambda}) require_finite(v, "affp parameter");
  if (n < 0) throw RangeError("eval_affp: n must be nonnegative");
  check_grid(x1, n, pole_guard, "x1");
  check_grid(x2, n, pole_guard, "x2");
  check_grid(lambda, n, pole_guard, "lambda");
  check_grid(s - (x1 + x2), n, pole_guard, "s - (x1 + x2)");
  const Complex lhs = pochhammer(t - x1, n) * pochhammer(t - x2, n) * pochhammer(u + x1 + x2, n) /
                      (pochhammer(x1, n + 1) * pochhammer(x2, n + 1) * pochhammer(s - (x1 + x2), n + 1));
  TermSum rhs;
  for (int k = 0; k <= n; ++k) {
    const double kk = k;
    const double w = alternating_binomial_weight(k, n);
    const Complex bp = b_prime(lambda, x1, x2, -kk);
    const Complex den_b = checked_divisor(pochhammer(bp, n + 1) * pochhammer(s - bp + kk, n + 1),
                                          pole_guard, "first-sum denominator");
    rhs.add(w * pochhammer(t + kk, n) * pochhammer(t - bp, n) * pochhammer(u + bp - kk, n) / den_b *
            shifted_bracket(x1, x2, lambda, kk));
  }
  for (int k = 0; k <= n; ++k) {
    const double kk = k;
    const double w = alternating_binomial_weight(k, n);
    const RootPair c = c_pm(s + kk, lambda, x1, x2);
    const Complex sum = pair_sum(c);
    const Complex prod = pair_product(c);
    const Complex den_c = checked_divisor(paired_pochhammer(sum, prod, n + 1, pole_guard), pole_guard,
                                          "(c+)_{n+1} (c-)_{n+1}");
    const Complex gap = checked_divisor(s + kk - (x1 + x2), pole_guard, "s + k - x1 - x2");
    rhs.add(w * shifted_pair_pochhammer(t, sum, prod, n, pole_guard) * pochhammer(u + s + kk, n) /
            den_c / gap);
  }
  return report_of(lhs, rhs,
                     {{"x1", x1}, {"x2", x2}, {"s", s}, {"t", t}, {"u", u}, {"lambda", lambda},
                      {"n", static_cast<double>(n)}});
}

IdentityReport eval_yl(Complex x1, Complex x2, Complex x3, Complex u, Complex lambda, int n,
                       double pole_guard) {
  for (const Complex v : {x1, x2, x3, u, lambda}) require_finite(v, "yl parameter");
  if (n < 0) throw RangeError("eval_yl: n must be nonnegative");
  check_grid(x1, n, pole_guard, "x1");
  check_grid(x2, n, pole_guard, "x2");
  check_grid(x3, n, pole_guard, "x3");
  check_grid(lambda, n, pole_guard, "lambda");
  const Complex lhs = pochhammer(u - x1, n) * pochhammer(u - x2, n) * pochhammer(u - x3, n) /
                      (pochhammer(x1, n + 1) * pochhammer(x2, n + 1) * pochhammer(x3, n + 1));
  const Complex e1 = x1 + x2 + x3;
  const Complex prod_shift = (x1 - lambda) * (x2 - lambda) * (x3 - lambda);
  TermSum rhs;
  for (int k = 0; k <= n; ++k) {
    const double kk = k;
    const RootPair eta = eta_pm(e1 + kk, lambda, prod_shift, lambda + kk);
    const Complex sum = pair_sum(eta);
    const Complex prod = pair_product(eta);
    const Complex den = checked_divisor(paired_pochhammer(sum, prod, n + 1, pole_guard), pole_guard,
                                        "(eta+)_{n+1} (eta-)_{n+1}");
    const Complex bracket =
        1.0 / (x1 + kk) + 1.0 / (x2 + kk) + 1.0 / (x3 + kk) - 1.0 / (lambda + kk);
    rhs.add(alternating_binomial_weight(k, n) * pochhammer(u + kk, n) *
            shifted_pair_pochhammer(u, sum, prod, n, pole_guard) / den * bracket);
  }
  return report_of(lhs, rhs,
                     {{"x1", x1}, {"x2", x2}, {"x3", x3}, {"u", u}, {"lambda", lambda},
                      {"n", static_cast<double>(n)}});
}

Complex FiniteIdentityInstance::param(const std::string& name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  throw std::invalid_argument("missing parameter '" + name + "'");
}

namespace {

SymmetricEvaluator product_polynomial(std::vector<Complex> coeffs) {
  return [coeffs = std::move(coeffs)](std::span<const Complex> pts) {
    Complex acc = 1.0;
    for (const Complex t : pts) {
      Complex v = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
      acc *= v;
    }
    return acc;
  };
}

}  // namespace

IdentityReport evaluate(const FiniteIdentityInstance& in) {
  switch (in.kind) {
    case FiniteKind::BPF:
      return eval_bpf(in.param("a"), in.param("x"), in.n);
    case FiniteKind::CBI:
      return eval_cbi(in.param("x1"), in.param("x2"), in.param("a"), in.param("lambda"), in.n);
    case FiniteKind::AFFP:
      return eval_affp(in.param("x1"), in.param("x2"), in.param("s"), in.param("t"), in.param("u"),
                       in.param("lambda"), in.n);
    case FiniteKind::YL:
      return eval_yl(in.param("x1"), in.param("x2"), in.param("x3"), in.param("u"),
                     in.param("lambda"), in.n);
    case FiniteKind::GPF: {
      const ESymPoint ex = elementary_from_roots(in.x);
      const ESymPoint ey = elementary_from_roots(in.y);
      IdentityReport report = gpf_impl(product_polynomial(in.poly_coeffs), in.forms, ex, ey, in.x,
                                       in.y, kDefaultPoleGuard);
      report.point = in.params;
      return report;
    }
    case FiniteKind::TWPF: {
      IdentityReport report =
          eval_fipf(product_polynomial(in.poly_coeffs), in.bs, in.x, in.y, kDefaultPoleGuard);
      report.point = in.params;
      return report;
    }
  }
  throw std::invalid_argument("unknown finite identity kind");
}

double t_vector_residual(const FiniteIdentityInstance& in) {
  if (in.kind != FiniteKind::GPF) throw std::invalid_argument("t_vector_residual: GPF instances only");
  const ESymPoint ex = elementary_from_roots(in.x);
  const ESymPoint ey = elementary_from_roots(in.y);
  double worst = 0.0;
  for (const LinearSymForm& q : in.forms) {
    const RootMultiset t = t_vector_full(q, ex, ey);
    const ESymPoint et = elementary_from_roots(t.roots);
    const double scale = std::max({std::abs(q(ex)), std::abs(q(ey)), form_scale(q, et)});
    worst = std::max(worst, std::abs(q(et)) / scale);
  }
  return worst;
}

double finite_rel_bound(FiniteKind kind) {
  switch (kind) {
    case FiniteKind::BPF:
    case FiniteKind::CBI:
      return 1e-9;
    case FiniteKind::GPF:
    case FiniteKind::TWPF:
    case FiniteKind::AFFP:
    case FiniteKind::YL:
      return 1e-8;
  }
  return 1e-8;
}

namespace {

constexpr double kGridClearance = 0.05;

class BoxSampler {
 public:
  explicit BoxSampler(std::mt19937_64& rng) : rng_(rng) {}
  Complex operator()() {
    const double re = std::uniform_real_distribution<double>(0.1, 2.0)(rng_);
    const double im = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
    return {re, im};
  }
  Complex coefficient() {
    const double re = std::uniform_real_distribution<double>(-2.0, 2.0)(rng_);
    const double im = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
    return {re, im};
  }

 private:
  std::mt19937_64& rng_;
};

bool clear_of_grid(Complex z, int n) {
  for (int j = 0; j <= n; ++j) {
    if (std::abs(z + static_cast<double>(j)) < kGridClearance) return false;
  }
  return true;
}

bool clear_of_zero(Complex z, double scale = 1.0) { return std::abs(z) >= kGridClearance * scale; }

bool cbi_ok(Complex x1, Complex x2, Complex lambda, int n) {
  if (!clear_of_grid(x1, n) || !clear_of_grid(x2, n) || !clear_of_grid(lambda, n)) return false;
  for (int k = 0; k <= n; ++k) {
    if (!clear_of_grid(b_prime(lambda, x1, x2, -static_cast<double>(k)), n)) return false;
  }
  return true;
}

// Points whose right-hand side cancels by more than this factor are
// redrawn; there the residual measures cancellation, not the identity.
constexpr double kMaxCondition = 1e6;

bool accept(const FiniteIdentityInstance& in) {
  try {
    return evaluate(in).condition <= kMaxCondition;
  } catch (const Error&) {
    return false;
  }
}

bool roots_separated(const RootMultiset& t) {
  for (std::size_t i = 0; i < t.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < t.roots.size(); ++j) {
      if (std::abs(t.roots[i] - t.roots[j]) < kGridClearance) return false;
    }
  }
  return true;
}

}  // namespace

FiniteIdentityInstance sample_instance(FiniteKind kind, int n, std::mt19937_64& rng, int arity,
                                       int* redraws) {
  BoxSampler draw(rng);
  FiniteIdentityInstance in;
  in.kind = kind;
  in.n = n;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    if (redraws) *redraws = attempt;
    switch (kind) {
      case FiniteKind::BPF: {
        const Complex a = draw(), x = draw();
        if (!clear_of_grid(x, n)) continue;
        in.params = {{"a", a}, {"x", x}};
        if (accept(in)) return in;
        continue;
      }
      case FiniteKind::CBI: {
        const Complex x1 = draw(), x2 = draw(), a = draw(), lambda = draw();
        if (!cbi_ok(x1, x2, lambda, n)) continue;
        in.params = {{"x1", x1}, {"x2", x2}, {"a", a}, {"lambda", lambda}};
        if (accept(in)) return in;
        continue;
      }
      case FiniteKind::AFFP: {
        const Complex x1 = draw(), x2 = draw(), s = draw(), t = draw(), u = draw(), lambda = draw();
        if (!cbi_ok(x1, x2, lambda, n) || !clear_of_grid(s - (x1 + x2), n)) continue;
        bool ok = true;
        for (int k = 0; k <= n && ok; ++k) {
          const double kk = k;
          const Complex bp = b_prime(lambda, x1, x2, -kk);
          const RootPair c = c_pm(s + kk, lambda, x1, x2);
          ok = clear_of_grid(s - bp + kk, n) && clear_of_grid(c.plus, n) &&
               clear_of_grid(c.minus, n) && clear_of_zero(s + kk - (x1 + x2));
        }
        if (!ok) continue;
        in.params = {{"x1", x1}, {"x2", x2}, {"s", s}, {"t", t}, {"u", u}, {"lambda", lambda}};
        if (accept(in)) return in;
        continue;
      }
      case FiniteKind::YL: {
        const Complex x1 = draw(), x2 = draw(), x3 = draw(), u = draw(), lambda = draw();
        if (!clear_of_grid(x1, n) || !clear_of_grid(x2, n) || !clear_of_grid(x3, n) ||
            !clear_of_grid(lambda, n)) {
          continue;
        }
        const Complex prod_shift = (x1 - lambda) * (x2 - lambda) * (x3 - lambda);
        bool ok = true;
        for (int k = 0; k <= n && ok; ++k) {
          const double kk = k;
          const RootPair eta = eta_pm(x1 + x2 + x3 + kk, lambda, prod_shift, lambda + kk);
          ok = clear_of_grid(eta.plus, n) && clear_of_grid(eta.minus, n);
        }
        if (!ok) continue;
        in.params = {{"x1", x1}, {"x2", x2}, {"x3", x3}, {"u", u}, {"lambda", lambda}};
        if (accept(in)) return in;
        continue;
      }
      case FiniteKind::GPF: {
        const std::size_t r = static_cast<std::size_t>(arity);
        in.x.assign(r, 0.0);
        in.y.assign(r, 0.0);
        for (auto& v : in.x) v = draw();
        for (auto& v : in.y) v = draw();
        in.forms.clear();
        for (int j = 0; j <= n; ++j) {
          std::vector<Complex> a(r + 1);
          for (auto& c : a) c = draw.coefficient();
          if (std::abs(a.back()) < 0.25) a.back() += 1.0;
          in.forms.emplace_back(std::move(a));
        }
        in.poly_coeffs.assign(static_cast<std::size_t>(n) + 2, 0.0);
        for (auto& c : in.poly_coeffs) c = draw.coefficient();
        const ESymPoint ex = elementary_from_roots(in.x);
        const ESymPoint ey = elementary_from_roots(in.y);
        bool ok = true;
        for (std::size_t k = 0; k < in.forms.size() && ok; ++k) {
          const auto& q = in.forms[k];
          const Complex qx = q(ex), qy = q(ey);
          ok = clear_of_zero(qx, form_scale(q, ex)) && clear_of_zero(qy, form_scale(q, ey)) &&
               clear_of_zero(qy - qx, std::max(std::abs(qx), std::abs(qy)));
          if (!ok) break;
          const ESymPoint et = t_elementary_full(q, ex, ey);
          ok = roots_separated(roots_from_elementary(et));
          for (std::size_t j = 0; j < in.forms.size() && ok; ++j) {
            if (j != k) ok = clear_of_zero(in.forms[j](et), form_scale(in.forms[j], et));
          }
        }
        if (!ok) continue;
        in.params.clear();
        for (std::size_t i = 0; i < r; ++i) {
          in.params.emplace_back("x" + std::to_string(i + 1), in.x[i]);
          in.params.emplace_back("y" + std::to_string(i + 1), in.y[i]);
        }
        if (accept(in)) return in;
        continue;
      }
      case FiniteKind::TWPF: {
        in.x = {draw(), draw()};
        in.y = {draw()};
        in.bs.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 0; j <= n; ++j) in.bs[static_cast<std::size_t>(j)] = -static_cast<double>(j) + 0.5 * draw();
        in.poly_coeffs.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (auto& c : in.poly_coeffs) c = draw.coefficient();
        bool ok = true;
        for (std::size_t k = 0; k < in.bs.size() && ok; ++k) {
          const Complex bk = in.bs[k];
          ok = clear_of_zero(in.y[0] - bk);
          for (std::size_t j = 0; j < in.bs.size() && ok; ++j) {
            ok = clear_of_zero(in.x[0] - in.bs[j]) && clear_of_zero(in.x[1] - in.bs[j]) &&
                 (j == k || clear_of_zero(bk - in.bs[j]));
          }
          if (!ok) break;
          const Complex bp = b_prime(in.y[0], in.x[0], in.x[1], bk);
          for (std::size_t j = 0; j < in.bs.size() && ok; ++j) ok = clear_of_zero(bp - in.bs[j]);
        }
        if (!ok) continue;
        in.params = {{"x1", in.x[0]}, {"x2", in.x[1]}, {"lambda", in.y[0]}};
        if (accept(in)) return in;
        continue;
      }
    }
  }
  throw DegenerateError("sample_instance: no well-conditioned point found");
}

}  // namespace pfx
