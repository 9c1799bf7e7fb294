#include "pfx/series_engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>
#include <utility>

#include "pfx/errors.hpp"
#include "pfx/gamma_product.hpp"
#include "pfx/summation.hpp"

namespace pfx {

namespace {

constexpr std::size_t kHistoryCapacity = 4096;
constexpr long kDivergenceCheckStart = 1000;
// A log-log slope flatter than this means the terms are not decaying.
constexpr double kDivergenceSlope = 0.005;

double sign_of(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

bool is_real(Complex z) { return z.imag() == 0.0; }

std::optional<long> as_integer(Complex a) {
  if (a.imag() != 0.0) return std::nullopt;
  const double r = std::round(a.real());
  if (std::fabs(a.real() - r) > 1e-12 * std::max(1.0, std::fabs(r))) return std::nullopt;
  if (std::fabs(r) > static_cast<double>(kMaxPochhammerIndex)) return std::nullopt;
  return static_cast<long>(r);
}

void check_k_grid(Complex z, const char* name) {
  if (near_nonpositive_integer(z, kGridPoleRadius)) {
    throw PoleError(std::string(name) + " + k vanishes for some k >= 0");
  }
}

SeriesResult domain_violation(std::string why) {
  SeriesResult r;
  r.value = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  r.status = SeriesStatus::DomainViolation;
  r.tail_bound = std::numeric_limits<double>::infinity();
  r.message = std::move(why);
  return r;
}

SeriesResult scaled(SeriesResult r, Complex factor) {
  r.value *= factor;
  r.tail_bound *= std::abs(factor);
  for (auto& row : r.trace) {
    row.term *= factor;
    row.partial *= factor;
  }
  return r;
}

// Adds two independently converged sums.
SeriesResult combine(SeriesResult a, const SeriesResult& b, double tol) {
  if (a.status == SeriesStatus::DomainViolation) return a;
  if (b.status == SeriesStatus::DomainViolation) return b;
  SeriesResult r;
  r.value = a.value + b.value;
  r.terms_used = a.terms_used + b.terms_used;
  r.tail_bound = a.tail_bound + b.tail_bound;
  const bool both = a.status == SeriesStatus::Converged && b.status == SeriesStatus::Converged;
  r.status = both && r.tail_bound <= tol * std::abs(r.value) ? SeriesStatus::Converged
                                                              : SeriesStatus::CapHit;
  if (a.decay_exponent_fit && b.decay_exponent_fit) {
    r.decay_exponent_fit = std::min(*a.decay_exponent_fit, *b.decay_exponent_fit);
  } else {
    r.decay_exponent_fit = a.decay_exponent_fit ? a.decay_exponent_fit : b.decay_exponent_fit;
  }
  r.trace = std::move(a.trace);
  for (TraceRow row : b.trace) {
    row.partial += a.value;
    r.trace.push_back(row);
  }
  return r;
}

}  // namespace

void ConvergenceConfig::validate() const {
  if (!(tol > 0.0)) throw RangeError("tol must be positive");
  if (n_max < 1) throw RangeError("n_max must be at least 1");
  if (streak < 1) throw RangeError("streak must be at least 1");
}

const char* to_string(SeriesStatus status) {
  switch (status) {
    case SeriesStatus::Converged: return "Converged";
    case SeriesStatus::CapHit: return "CapHit";
    case SeriesStatus::DomainViolation: return "DomainViolation";
  }
  return "unknown";
}

SeriesResult sum_series(const TermFunction& term, const ConvergenceConfig& cfg,
                        const SumOptions& options) {
  cfg.validate();
  SeriesResult result;
  CompensatedSum acc;
  MagnitudeTrace history;
  history.reserve(kHistoryCapacity);
  long stride = 1;
  int small_run = 0;
  int alternating_run = 0;
  Complex previous = 0.0;
  long next_check = 0;
  long next_divergence_check = kDivergenceCheckStart;
  bool converged = false;

  for (long k = 0; k < cfg.n_max; ++k) {
    const Complex t = term(k);
    require_finite(t, "series term");
    acc.add(t);
    const Complex partial = acc.value();
    result.terms_used = k + 1;
    if (cfg.trace) result.trace.push_back({k, t, partial});

    if (options.terminates_on_zero && t == 0.0) {
      result.tail_bound = 0.0;
      converged = true;
      break;
    }
    const double mag = std::abs(t);
    if (k >= 1 && k % stride == 0) {
      history.emplace_back(k, mag);
      if (history.size() >= kHistoryCapacity) {
        MagnitudeTrace thinned;
        thinned.reserve(kHistoryCapacity);
        for (std::size_t i = 1; i < history.size(); i += 2) thinned.push_back(history[i]);
        history.swap(thinned);
        stride *= 2;
      }
    }
    if (k >= 1) {
      const bool flips = std::real(t * std::conj(previous)) < 0.0;
      alternating_run = (flips && mag <= std::abs(previous)) ? alternating_run + 1 : 0;
    }
    previous = t;

    const double pm = std::abs(partial);
    small_run = (mag < cfg.tol * pm / 10.0) ? small_run + 1 : 0;
    if (small_run >= cfg.streak && k >= next_check) {
      next_check = k + std::max<long>(cfg.streak, k / 64);
      const TailEstimate est = estimate_tail(history, alternating_run >= cfg.streak, k, mag);
      if (est.bound < cfg.tol * pm) {
        result.tail_bound = est.bound;
        converged = true;
        break;
      }
    }
    if (options.detect_divergence && k >= next_divergence_check) {
      next_divergence_check = k + k / 8;
      try {
        if (tail_exponent_estimate(history) < kDivergenceSlope) {
          SeriesResult r = domain_violation("terms do not decay: the series diverges");
          r.terms_used = k + 1;
          r.trace = std::move(result.trace);
          return r;
        }
      } catch (const FitError&) {
      }
    }
  }

  result.value = acc.value();
  try {
    result.decay_exponent_fit = tail_exponent_estimate(history);
  } catch (const FitError&) {
  }
  if (converged) {
    result.status = SeriesStatus::Converged;
  } else {
    result.status = SeriesStatus::CapHit;
    const double last = std::abs(previous);
    result.tail_bound =
        estimate_tail(history, alternating_run >= cfg.streak, result.terms_used - 1, last).bound;
    result.message = "term cap reached before the tolerance was met";
  }
  return result;
}

namespace terms {

Complex epsilon_shift(Complex x1, Complex x2, Complex lambda, long k) {
  return (lambda - x1) * (lambda - x2) / (lambda + static_cast<double>(k));
}

Complex bracket2(Complex x1, Complex x2, Complex lambda, long k) {
  const double kk = static_cast<double>(k);
  return (1.0 / (x1 + kk) + 1.0 / (x2 + kk)) - 1.0 / (lambda + kk);
}

Complex bracket3(const std::array<Complex, 3>& x, Complex lambda, long k) {
  const double kk = static_cast<double>(k);
  return (1.0 / (x[0] + kk) + 1.0 / (x[1] + kk) + 1.0 / (x[2] + kk)) - 1.0 / (lambda + kk);
}

Complex gapf(Complex x1, Complex x2, long k) {
  return GammaProduct()
      .times_pochhammer(1.0 - x2, k)
      .over_factorial(k)
      .times(1.0 / (x1 + static_cast<double>(k)))
      .value();
}

Complex cdi_gamma(Complex x1, Complex x2, Complex a, Complex lambda, long k) {
  const Complex b = lambda - epsilon_shift(x1, x2, lambda, k);
  return GammaProduct()
      .times_gamma(b)
      .over_gamma(b + a - static_cast<double>(k))
      .over_factorial(k)
      .times(sign_of(k) * bracket2(x1, x2, lambda, k))
      .value();
}

Complex cdi_integer(Complex x1, Complex x2, long a, Complex lambda, long k) {
  const Complex one_minus_b = 1.0 - lambda + epsilon_shift(x1, x2, lambda, k);
  return GammaProduct()
      .times_pochhammer(one_minus_b, k - a)
      .over_factorial(k)
      .times(sign_of(a) * bracket2(x1, x2, lambda, k))
      .value();
}

Complex cdi(Complex x1, Complex x2, Complex a, Complex lambda, long k) {
  if (const auto ai = as_integer(a)) return cdi_integer(x1, x2, *ai, lambda, k);
  return cdi_gamma(x1, x2, a, lambda, k);
}

Complex cdi_lambda_inf(Complex x1, Complex x2, long k) {
  const double kk = static_cast<double>(k);
  return GammaProduct()
      .times_pochhammer(x1 + x2, k)
      .over_factorial(k)
      .times(sign_of(k) * (1.0 / (x1 + kk) + 1.0 / (x2 + kk)))
      .value();
}

Complex clf_first(Complex x1, Complex x2, Complex s, Complex t, Complex u, Complex lambda, long k) {
  const double kk = static_cast<double>(k);
  const Complex b = lambda - epsilon_shift(x1, x2, lambda, k);
  return GammaProduct()
      .times_gamma(b)
      .times_gamma(s - b + kk)
      .over_gamma(t + kk)
      .over_gamma(t - b)
      .over_gamma(u + b - kk)
      .over_factorial(k)
      .times(sign_of(k) * bracket2(x1, x2, lambda, k))
      .value();
}

Complex clf_second(const RootPair& c, Complex x1, Complex x2, Complex s, Complex t, Complex u,
                   long k) {
  const double kk = static_cast<double>(k);
  return GammaProduct()
      .times_gamma_pair(c.plus, c.minus)
      .over_gamma_pair(t - c.plus, t - c.minus)
      .over_gamma(u + s + kk)
      .over_factorial(k)
      .times(sign_of(k) / (s + kk - (x1 + x2)))
      .value();
}

Complex tvd(const RootPair& eta, const std::array<Complex, 3>& x, Complex u, Complex lambda, long k) {
  const double kk = static_cast<double>(k);
  return GammaProduct()
      .times_gamma_pair(eta.plus, eta.minus)
      .over_gamma(u + kk)
      .over_gamma_pair(u - eta.plus, u - eta.minus)
      .over_factorial(k)
      .times(sign_of(k) * bracket3(x, lambda, k))
      .value();
}

Complex tve(Complex pair_sum, Complex pair_product, const std::array<Complex, 3>& x, long a,
            Complex lambda, long k) {
  // (1 - eta+) and (1 - eta-) as a pair
  const Complex sum = 2.0 - pair_sum;
  const Complex product = 1.0 - pair_sum + pair_product;
  const Complex s = x[0] + x[1] + x[2];
  const Complex v = GammaProduct()
                        .times_paired_pochhammer(sum, product, k - a)
                        .over_pochhammer(static_cast<double>(a) + s, k)
                        .over_factorial(k)
                        .times(sign_of(k) * bracket3(x, lambda, k))
                        .value();
  const bool real = is_real(sum) && is_real(product) && is_real(lambda) && is_real(x[0]) &&
                    is_real(x[1]) && is_real(x[2]);
  return real ? Complex(v.real(), 0.0) : v;
}

Complex tve(const RootPair& eta, const std::array<Complex, 3>& x, long a, Complex lambda, long k) {
  return tve(eta.plus + eta.minus, eta.plus * eta.minus, x, a, lambda, k);
}

Complex pi_squared(Complex sum, Complex product, Complex lambda, long k) {
  const double kk = static_cast<double>(k);
  const Complex v = GammaProduct()
                        .times_paired_pochhammer(sum, product, k)
                        .over_pochhammer(1.5, k)
                        .over_factorial(k)
                        .times(sign_of(k) * (6.0 / (2.0 * kk + 1.0) - 1.0 / (lambda + kk)))
                        .value();
  return (is_real(sum) && is_real(product) && is_real(lambda)) ? Complex(v.real(), 0.0) : v;
}

Complex pi_squared(const RootPair& xi, Complex lambda, long k) {
  return pi_squared(xi.plus + xi.minus, xi.plus * xi.minus, lambda, k);
}

}  // namespace terms

SeriesResult beta_gapf(Complex x1, Complex x2, const ConvergenceConfig& cfg) {
  require_finite(x1, "x1");
  require_finite(x2, "x2");
  if (!(x2.real() > 0.0)) return domain_violation("beta_gapf requires Re(x2) > 0");
  check_k_grid(x1, "x1");
  Complex coeff = 1.0;  // (1 - x2)_k / k!
  const TermFunction term = [&](long k) {
    const double kk = static_cast<double>(k);
    if (k > 0) coeff *= (kk - x2) / kk;
    return coeff / (x1 + kk);
  };
  SumOptions opts;
  opts.terminates_on_zero = true;
  return sum_series(term, cfg, opts);
}

SeriesResult beta_sym(Complex x1, Complex x2, Complex a, Complex lambda,
                      const ConvergenceConfig& cfg) {
  for (const Complex v : {x1, x2, a, lambda}) require_finite(v, "beta_sym parameter");
  if (!((a + lambda).real() > 0.0)) return domain_violation("beta_sym requires Re(a + lambda) > 0");
  check_k_grid(x1, "x1");
  check_k_grid(x2, "x2");
  check_k_grid(lambda, "lambda");
  const auto ai = as_integer(a);
  const TermFunction term = [&](long k) {
    return ai ? terms::cdi_integer(x1, x2, *ai, lambda, k) : terms::cdi_gamma(x1, x2, a, lambda, k);
  };
  return sum_series(term, cfg);
}

SeriesResult beta_sym_lambda_inf(Complex x1, Complex x2, const ConvergenceConfig& cfg) {
  require_finite(x1, "x1");
  require_finite(x2, "x2");
  check_k_grid(x1, "x1");
  check_k_grid(x2, "x2");
  Complex coeff = 1.0;  // (-1)^k (x1 + x2)_k / k!
  const TermFunction term = [&](long k) {
    const double kk = static_cast<double>(k);
    if (k > 0) coeff *= -(x1 + x2 + (kk - 1.0)) / kk;
    return coeff * (1.0 / (x1 + kk) + 1.0 / (x2 + kk));
  };
  SumOptions opts;
  opts.terminates_on_zero = true;
  opts.detect_divergence = true;
  return sum_series(term, cfg, opts);
}

SeriesResult closed_asym(Complex x1, Complex x2, Complex s, Complex t, Complex u, Complex lambda,
                         const ConvergenceConfig& cfg) {
  for (const Complex v : {x1, x2, s, t, u, lambda}) require_finite(v, "closed_asym parameter");
  if (!((2.0 * lambda - s + t + u).real() > 0.0)) {
    return domain_violation("closed_asym requires Re(2 lambda - s + t + u) > 0");
  }
  check_k_grid(x1, "x1");
  check_k_grid(x2, "x2");
  check_k_grid(lambda, "lambda");
  check_k_grid(s - (x1 + x2), "s - (x1 + x2)");
  const auto run = [&](const ConvergenceConfig& c) {
    const SeriesResult first = sum_series(
        [&](long k) { return terms::clf_first(x1, x2, s, t, u, lambda, k); }, c);
    const SeriesResult second = sum_series(
        [&](long k) {
          const RootPair cp = c_pm(s + static_cast<double>(k), lambda, x1, x2);
          return terms::clf_second(cp, x1, x2, s, t, u, k);
        },
        c);
    return std::pair{first, second};
  };
  auto [first, second] = run(cfg);
  SeriesResult r = combine(first, second, cfg.tol);
  const double spread = std::abs(first.value) + std::abs(second.value);
  if (r.status == SeriesStatus::CapHit && first.status == SeriesStatus::Converged &&
      second.status == SeriesStatus::Converged && std::abs(r.value) > 0.0) {
    // The two sums cancel; tighten each by the cancellation factor once.
    ConvergenceConfig tight = cfg;
    tight.tol = std::max(cfg.tol * std::abs(r.value) / spread, 1e-15);
    std::tie(first, second) = run(tight);
    r = combine(first, second, cfg.tol);
  }
  return r;
}

SeriesResult closed_sym_integer(const std::array<Complex, 3>& x, long a, Complex lambda,
                                const ConvergenceConfig& cfg) {
  for (const Complex v : x) require_finite(v, "x");
  require_finite(lambda, "lambda");
  if (!((lambda + static_cast<double>(a)).real() > 0.0)) {
    return domain_violation("integer form requires Re(lambda + a) > 0");
  }
  for (const Complex v : x) check_k_grid(v, "x_j");
  check_k_grid(lambda, "lambda");
  const Complex s = x[0] + x[1] + x[2];
  check_k_grid(static_cast<double>(a) + s, "a + s");
  const Complex shift = (x[0] - lambda) * (x[1] - lambda) * (x[2] - lambda);
  const TermFunction term = [&](long k) {
    const double kk = static_cast<double>(k);
    const Complex sum = s + kk;
    const Complex product = lambda * (s + kk - lambda) - shift / (lambda + kk);
    return terms::tve(sum, product, x, a, lambda, k);
  };
  return sum_series(term, cfg);
}

SeriesResult closed_sym(const std::array<Complex, 3>& x, Complex u, Complex lambda,
                        const ConvergenceConfig& cfg) {
  for (const Complex v : x) require_finite(v, "x");
  require_finite(u, "u");
  require_finite(lambda, "lambda");
  const Complex e1 = x[0] + x[1] + x[2];
  if (!((lambda + u - e1).real() > 0.0)) {
    return domain_violation("closed_sym requires Re(lambda + u - e1(x)) > 0");
  }
  for (const Complex v : x) check_k_grid(v, "x_j");
  check_k_grid(lambda, "lambda");
  const auto a = as_integer(u - e1);
  if (a && !near_nonpositive_integer(u, kGridPoleRadius)) {
    // Left sides differ by Gamma(u) = Gamma(a + s).
    return scaled(closed_sym_integer(x, *a, lambda, cfg), reciprocal_gamma(u));
  }
  const Complex shift = (x[0] - lambda) * (x[1] - lambda) * (x[2] - lambda);
  const TermFunction term = [&](long k) {
    const double kk = static_cast<double>(k);
    const RootPair eta = eta_pm(e1 + kk, lambda, shift, lambda + kk);
    return terms::tvd(eta, x, u, lambda, k);
  };
  return sum_series(term, cfg);
}

double pi_family_prefactor(int m, int n, int a) {
  double f = 1.0;
  for (int j = 2; j <= m + n + a; ++j) f *= j;
  f *= std::ldexp(1.0, m + n);
  f /= static_cast<double>(double_factorial(2 * m - 1));
  f /= static_cast<double>(double_factorial(2 * n - 1));
  return (a % 2 == 0) ? f : -f;
}

SeriesResult pi_family(int m, int n, int a, Complex lambda, const ConvergenceConfig& cfg) {
  require_finite(lambda, "lambda");
  if (m < 0 || n < 0 || m + n + a < 0) {
    return domain_violation("pi_family requires m, n >= 0 and m + n + a >= 0");
  }
  if (!(lambda.real() > -static_cast<double>(a))) {
    return domain_violation("pi_family requires Re(lambda) > -a");
  }
  // The (-1)^a of the integer form is carried by the terms, so only the
  // magnitude of the prefactor is applied here.
  const double factor = std::fabs(pi_family_prefactor(m, n, a));
  return scaled(beta_sym(0.5 + m, 0.5 + n, static_cast<double>(a), lambda, cfg), factor);
}

SeriesResult pi_family_lambda_inf(int m, int n, const ConvergenceConfig& cfg) {
  if (m < 0 || n < 0) return domain_violation("pi_family requires m, n >= 0");
  return scaled(beta_sym_lambda_inf(0.5 + m, 0.5 + n, cfg), pi_family_prefactor(m, n, 0));
}

SeriesResult pi_squared_series(Complex lambda, const ConvergenceConfig& cfg) {
  require_finite(lambda, "lambda");
  if (!(lambda.real() > 0.0)) return domain_violation("pi_squared_series requires Re(lambda) > 0");
  const Complex half = 0.5;
  const Complex shift = (half - lambda) * (half - lambda) * (half - lambda);
  const TermFunction term = [&](long k) {
    const double kk = static_cast<double>(k);
    // xi+ + xi- = 1/2 - k; product as in xi_pm with s = 3/2
    const Complex sum = 0.5 - kk;
    const Complex product = (-0.5 - kk) + lambda * (1.5 + kk - lambda) - shift / (lambda + kk);
    return terms::pi_squared(sum, product, lambda, k);
  };
  return sum_series(term, cfg);
}

}  // namespace pfx
