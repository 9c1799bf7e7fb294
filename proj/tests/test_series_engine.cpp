#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>

#include "pfx/errors.hpp"
#include "pfx/reference_oracle.hpp"
#include "pfx/series_engine.hpp"
#include "test_util.hpp"

using pfx::Complex;
using pfx::SeriesStatus;

namespace {

constexpr double kPi = std::numbers::pi;

struct Box {
  std::mt19937_64 rng;
  explicit Box(std::uint64_t seed) : rng(seed) {}
  Complex operator()(double lo, double hi, double im) {
    std::uniform_real_distribution<double> re(lo, hi), ii(-im, im);
    return {re(rng), ii(rng)};
  }
};

pfx::ConvergenceConfig tol(double t, long n_max = 1'000'000) {
  pfx::ConvergenceConfig cfg;
  cfg.tol = t;
  cfg.n_max = n_max;
  return cfg;
}

// Decay exponent of |term_k| fitted over k in [100, 2000].
double fitted_exponent(const std::function<pfx::SeriesResult(const pfx::ConvergenceConfig&)>& op) {
  pfx::ConvergenceConfig cfg;
  cfg.tol = 1e-300;
  cfg.n_max = 2001;
  cfg.trace = true;
  const pfx::SeriesResult r = op(cfg);
  pfx::MagnitudeTrace pts;
  for (const auto& row : r.trace) {
    if (row.k >= 100) pts.emplace_back(row.k, std::abs(row.term));
  }
  return pfx::tail_exponent_estimate(pts);
}

bool bit_equal(Complex a, Complex b) {
  return std::memcmp(&a, &b, sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("pi from the symmetric beta expansion at lambda = 5") {
  const auto r = pfx::beta_sym(0.5, 0.5, 0.0, 5.0, tol(1e-10));
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(rel_diff(r.value, kPi) < 1e-9);
  CHECK(r.terms_used <= 2000);
  CHECK(r.tail_bound <= 1e-10 * kPi);
}

TEST_CASE("geometric-type beta expansion") {
  const auto r = pfx::beta_gapf(0.7, 2.5, tol(1e-9));
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(rel_diff(r.value, pfx::oracle::beta(0.7, 2.5)) < 1e-8);
}

TEST_CASE("gapf terminates when x2 is a positive integer") {
  const auto r = pfx::beta_gapf(0.3, 3.0);
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(r.terms_used == 4);
  CHECK(r.tail_bound == 0.0);
  CHECK(rel_diff(r.value, pfx::oracle::beta(0.3, 3.0)) < 1e-14);
}

TEST_CASE("property: beta_gapf matches the beta oracle") {
  Box box(31);
  for (int i = 0; i < 50; ++i) {
    const Complex x1 = box(0.1, 2.0, 1.0), x2 = box(2.0, 3.0, 1.0);
    const auto r = pfx::beta_gapf(x1, x2, tol(1e-10));
    CAPTURE(x1);
    CAPTURE(x2);
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(rel_diff(r.value, pfx::oracle::beta(x1, x2)) < 1e-8);
  }
}

TEST_CASE("property: beta_sym matches the gamma-ratio oracle") {
  Box box(32);
  for (int i = 0; i < 50; ++i) {
    const Complex x1 = box(0.1, 2.0, 1.0), x2 = box(0.1, 2.0, 1.0);
    const Complex a = box(0.5, 1.5, 0.5), lambda = box(1.5, 3.0, 0.5);
    const auto r = pfx::beta_sym(x1, x2, a, lambda, tol(1e-10));
    CAPTURE(x1);
    CAPTURE(lambda);
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(rel_diff(r.value, pfx::oracle::cdi_lhs(x1, x2, a)) < 1e-8);
  }
}

TEST_CASE("property: closed_asym matches the gamma-ratio oracle") {
  Box box(33);
  for (int i = 0; i < 50; ++i) {
    const Complex x1 = box(0.1, 1.0, 0.3), x2 = box(0.1, 1.0, 0.3);
    const Complex s = box(2.5, 3.0, 0.3), t = box(1.0, 2.0, 0.3), u = box(0.5, 1.5, 0.3);
    const Complex lambda = box(1.5, 2.5, 0.3);
    const auto r = pfx::closed_asym(x1, x2, s, t, u, lambda, tol(1e-10));
    CAPTURE(i);
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(rel_diff(r.value, pfx::oracle::clf_lhs(x1, x2, s, t, u)) < 1e-8);
  }
}

TEST_CASE("property: closed_sym matches the gamma-ratio oracle") {
  Box box(34);
  for (int i = 0; i < 50; ++i) {
    const std::array<Complex, 3> x{box(0.1, 1.0, 0.3), box(0.1, 1.0, 0.3), box(0.1, 1.0, 0.3)};
    const Complex u = box(3.0, 4.0, 0.3), lambda = box(1.0, 2.0, 0.3);
    const auto r = pfx::closed_sym(x, u, lambda, tol(1e-10));
    CAPTURE(i);
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(rel_diff(r.value, pfx::oracle::tvd_lhs(x, u)) < 1e-8);
  }
}

TEST_CASE("closed_sym with integer u - e1 routes through the pochhammer form") {
  const std::array<Complex, 3> x{0.2, 0.3, 0.5};
  const auto r = pfx::closed_sym(x, 3.0, 1.5, tol(1e-11));
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(rel_diff(r.value, pfx::oracle::tvd_lhs(x, 3.0)) < 1e-9);
  CHECK(r.value.imag() == 0.0);
}

TEST_CASE("acc special case: (Gamma(1/4)/Gamma(3/4))^2") {
  const auto r = pfx::closed_asym(0.25, 0.25, 1.0, 1.0, 0.0, 3.0, tol(1e-12));
  const Complex g = pfx::gamma(0.25) / pfx::gamma(0.75);
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(rel_diff(r.value, g * g) < 1e-8);
}

TEST_CASE("pi family: several (m, n, a, lambda)") {
  CHECK(rel_diff(pfx::pi_family(0, 0, 0, 3.0, tol(1e-10)).value, kPi) < 1e-9);
  CHECK(rel_diff(pfx::pi_family(1, 0, 0, 2.0, tol(1e-10)).value, kPi) < 1e-9);
  CHECK(rel_diff(pfx::pi_family(1, 2, 1, 2.0, tol(1e-10)).value, kPi) < 1e-9);
  CHECK(rel_diff(pfx::pi_family(0, 1, 2, 0.5, tol(1e-10)).value, kPi) < 1e-9);
  CHECK(pfx::pi_family_prefactor(0, 0, 0) == 1.0);
  CHECK(pfx::pi_family_prefactor(1, 1, 1) == -24.0);
}

TEST_CASE("Madhava series from the lambda -> infinity form") {
  const auto r = pfx::pi_family_lambda_inf(0, 0, tol(1e-5));
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(rel_diff(r.value, kPi) < 1e-5);
}

TEST_CASE("lambda -> infinity form diverges when Re(x1 + x2) > 1") {
  const auto r = pfx::beta_sym_lambda_inf(1.0, 1.0, tol(1e-10, 100000));
  CHECK(r.status == SeriesStatus::DomainViolation);
  CHECK(std::isnan(r.value.real()));
}

TEST_CASE("pi squared series") {
  const auto r = pfx::pi_squared_series(2.0, tol(1e-12));
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(rel_diff(r.value, kPi * kPi / 2.0) < 1e-10);
  for (long k = 0; k <= 100; ++k) {
    const Complex t = pfx::terms::pi_squared(0.5 - k, -0.5 * k, 0.5, k);
    CHECK(rel_diff(t, 4.0 / ((2.0 * k + 1.0) * (2.0 * k + 1.0))) < 1e-12);
    CHECK(t.imag() == 0.0);
  }
}

TEST_CASE("domain guards") {
  CHECK(pfx::beta_sym(0.5, 0.5, 0.0, -1.0).status == SeriesStatus::DomainViolation);
  CHECK(pfx::beta_sym(0.5, 0.5, -2.0, 1.5).status == SeriesStatus::DomainViolation);
  CHECK(pfx::beta_gapf(0.5, -0.5).status == SeriesStatus::DomainViolation);
  CHECK(pfx::closed_asym(0.3, 0.4, 5.0, 0.0, 0.0, 1.0).status == SeriesStatus::DomainViolation);
  CHECK(pfx::closed_sym({0.3, 0.3, 0.3}, 0.5, 0.2).status == SeriesStatus::DomainViolation);
  CHECK(pfx::pi_squared_series(-0.5).status == SeriesStatus::DomainViolation);
  CHECK(pfx::pi_family(-1, 0, 0, 1.0).status == SeriesStatus::DomainViolation);
  CHECK(std::isnan(pfx::beta_sym(0.5, 0.5, 0.0, -1.0).value.real()));
  CHECK_THROWS_AS(pfx::beta_gapf(-2.0, 1.5), pfx::PoleError);
  CHECK_THROWS_AS(pfx::beta_sym(0.5, -3.0, 0.0, 2.0), pfx::PoleError);
  CHECK_THROWS_AS(pfx::beta_sym(0.5, 0.5, 0.0, Complex(NAN, 0.0)), pfx::NonFiniteError);
  CHECK_THROWS_AS(pfx::beta_sym(0.5, 0.5, 0.0, 2.0, tol(-1.0)), pfx::RangeError);
}

TEST_CASE("term cap is reported as CapHit with the partial sum") {
  const auto r = pfx::beta_sym(0.5, 0.5, 0.0, 1.0, tol(1e-10, 50));
  CHECK(r.status == SeriesStatus::CapHit);
  CHECK(r.terms_used == 50);
  CHECK(r.tail_bound > 0.0);
  CHECK(std::isfinite(r.value.real()));
}

TEST_CASE("property: lambda = x2 collapses the symmetric terms to gapf terms") {
  Box box(35);
  for (int i = 0; i < 20; ++i) {
    const Complex x1 = box(0.1, 2.0, 1.0), x2 = box(0.1, 2.0, 1.0);
    for (long k = 0; k <= 50; ++k) {
      CHECK(rel_diff(pfx::terms::cdi(x1, x2, 0.0, x2, k), pfx::terms::gapf(x1, x2, k)) < 1e-12);
      CHECK(rel_diff(pfx::terms::cdi_gamma(x1, x2, 0.0, x2, k), pfx::terms::gapf(x1, x2, k)) <
            1e-12);
    }
  }
}

TEST_CASE("property: integer-a and gamma-ratio term routes agree") {
  Box box(36);
  for (int i = 0; i < 20; ++i) {
    const Complex x1 = box(0.1, 2.0, 1.0), x2 = box(0.1, 2.0, 1.0), lambda = box(1.0, 3.0, 1.0);
    for (long a : {0L, 1L, 2L}) {
      for (long k = 0; k <= 30; ++k) {
        CHECK(rel_diff(pfx::terms::cdi_integer(x1, x2, a, lambda, k),
                       pfx::terms::cdi_gamma(x1, x2, static_cast<double>(a), lambda, k)) < 1e-11);
      }
    }
  }
}

TEST_CASE("property: swapping x1 and x2 leaves every sum bit-identical") {
  Box box(37);
  for (int i = 0; i < 20; ++i) {
    const Complex x1 = box(0.1, 2.0, 1.0), x2 = box(0.1, 2.0, 1.0);
    const Complex a = box(0.5, 1.5, 0.5), lambda = box(1.5, 3.0, 0.5);
    const auto p = pfx::beta_sym(x1, x2, a, lambda), q = pfx::beta_sym(x2, x1, a, lambda);
    CHECK(bit_equal(p.value, q.value));
    CHECK(p.terms_used == q.terms_used);
    const Complex s = box(2.5, 3.0, 0.3), t = box(1.0, 2.0, 0.3), u = box(0.5, 1.5, 0.3);
    CHECK(bit_equal(pfx::closed_asym(x1, x2, s, t, u, lambda).value,
                    pfx::closed_asym(x2, x1, s, t, u, lambda).value));
    CHECK(bit_equal(pfx::oracle::cdi_lhs(x1, x2, a), pfx::oracle::cdi_lhs(x2, x1, a)));
  }
}

TEST_CASE("property: swapping the +- members of c, eta and xi leaves terms bit-identical") {
  Box box(38);
  for (int i = 0; i < 20; ++i) {
    const Complex x1 = box(0.1, 2.0, 1.0), x2 = box(0.1, 2.0, 1.0), x3 = box(0.1, 2.0, 1.0);
    const Complex s = box(2.5, 3.0, 0.3), t = box(1.0, 2.0, 0.3), u = box(0.5, 1.5, 0.3);
    const Complex lambda = box(1.5, 2.5, 0.5);
    const std::array<Complex, 3> x{x1, x2, x3};
    const Complex e1 = x1 + x2 + x3;
    const Complex shift = (x1 - lambda) * (x2 - lambda) * (x3 - lambda);
    for (long k = 0; k <= 40; ++k) {
      const double kk = static_cast<double>(k);
      const pfx::RootPair c = pfx::c_pm(s + kk, lambda, x1, x2);
      const pfx::RootPair cs{c.minus, c.plus};
      CHECK(bit_equal(pfx::terms::clf_second(c, x1, x2, s, t, u, k),
                      pfx::terms::clf_second(cs, x1, x2, s, t, u, k)));
      const pfx::RootPair eta = pfx::eta_pm(e1 + kk, lambda, shift, lambda + kk);
      const pfx::RootPair etas{eta.minus, eta.plus};
      CHECK(bit_equal(pfx::terms::tvd(eta, x, u + 3.0, lambda, k),
                      pfx::terms::tvd(etas, x, u + 3.0, lambda, k)));
      CHECK(bit_equal(pfx::terms::tve(eta, x, 1, lambda, k), pfx::terms::tve(etas, x, 1, lambda, k)));
      const pfx::RootPair xi = pfx::xi_pm(1.5, k, lambda, 0.5, 0.5, 0.5);
      const pfx::RootPair xis{xi.minus, xi.plus};
      CHECK(bit_equal(pfx::terms::pi_squared(xi, lambda, k), pfx::terms::pi_squared(xis, lambda, k)));
    }
  }
}

TEST_CASE("equal-x integer form: terms are real and match the squared pochhammer") {
  // x = (1/3, 1/3, 1/3), u = 1, lambda = 1/3: a = 0, (x_j - lambda) = 0
  const std::array<Complex, 3> x{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const Complex lambda = 1.0 / 3.0;
  for (long k = 0; k <= 50; ++k) {
    const double kk = static_cast<double>(k);
    const Complex sum = 1.0 + kk;
    const Complex product = lambda * (1.0 + kk - lambda);
    const Complex term = pfx::terms::tve(sum, product, x, 0, lambda, k);
    CHECK(term.imag() == 0.0);
    // (1 - eta+-) have sum 1 - k and product -2k/3 + 2/9
    const Complex center = 0.5 * (1.0 - kk);
    const Complex aa = center * center - (-2.0 * kk / 3.0 + 2.0 / 9.0);
    double kf = 1.0;
    for (long j = 2; j <= k; ++j) kf *= static_cast<double>(j);
    // (-1)^k from the term and from (c + r)_k (c - r)_k = (-1)^k (c + r)_k^2 cancel
    const Complex expected =
        pfx::paired_pochhammer_sq(aa, k) / (kf * kf) * pfx::terms::bracket3(x, lambda, k);
    CAPTURE(k);
    CHECK(rel_diff(term, expected) < 1e-12);
  }
}

TEST_CASE("decay exponents of the symmetric beta expansion") {
  SUBCASE("integer lambda + a decays one order faster") {
    CHECK(fitted_exponent([](const auto& c) { return pfx::beta_sym(0.5, 0.5, 0.0, 1.0, c); }) ==
          doctest::Approx(3.0).epsilon(0.05));
    CHECK(fitted_exponent([](const auto& c) { return pfx::beta_sym(0.5, 0.5, 1.0, 2.0, c); }) ==
          doctest::Approx(5.0).epsilon(0.05));
  }
  SUBCASE("non-integer lambda + a gives 1 + Re(lambda + a)") {
    for (double lambda : {1.5, 2.3, 3.7}) {
      for (double a : {0.0, 0.4}) {
        const double p =
            fitted_exponent([&](const auto& c) { return pfx::beta_sym(0.5, 0.7, a, lambda, c); });
        CAPTURE(lambda);
        CAPTURE(a);
        CHECK(std::fabs(p - (1.0 + lambda + a)) < 0.3);
      }
    }
  }
  SUBCASE("gapf terms decay like k^-(1 + x2)") {
    const double p = fitted_exponent([](const auto& c) { return pfx::beta_gapf(0.5, 1.5, c); });
    CHECK(p == doctest::Approx(2.5).epsilon(0.02));
  }
}

TEST_CASE("tail classification") {
  SUBCASE("geometric magnitudes") {
    pfx::MagnitudeTrace h;
    for (long k = 1; k <= 200; ++k) h.emplace_back(k, std::pow(0.8, static_cast<double>(k)));
    const auto est = pfx::estimate_tail(h, false, 200, std::pow(0.8, 200.0));
    CHECK(est.kind == pfx::TailKind::Geometric);
    CHECK(est.bound == doctest::Approx(std::pow(0.8, 201.0) / 0.2).epsilon(1e-6));
  }
  SUBCASE("power law") {
    pfx::MagnitudeTrace h;
    for (long k = 1; k <= 1000; ++k) h.emplace_back(k, std::pow(static_cast<double>(k), -3.0));
    const auto est = pfx::estimate_tail(h, false, 1000, 1e-9);
    CHECK(est.kind == pfx::TailKind::PowerLaw);
    REQUIRE(est.exponent);
    CHECK(*est.exponent == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(est.bound == doctest::Approx(1e-9 * 1000.0 / 2.0).epsilon(1e-6));
  }
  SUBCASE("alternating") {
    pfx::MagnitudeTrace h;
    const auto est = pfx::estimate_tail(h, true, 10, 0.01);
    CHECK(est.kind == pfx::TailKind::Alternating);
    CHECK(est.bound == 0.01);
  }
  SUBCASE("too few points") {
    pfx::MagnitudeTrace h{{30, 1.0}, {31, 0.5}};
    CHECK(std::isinf(pfx::estimate_tail(h, false, 31, 0.5).bound));
    CHECK_THROWS_AS(pfx::tail_exponent_estimate(h), pfx::FitError);
  }
  SUBCASE("irregular magnitudes fail the fit") {
    std::mt19937_64 rng(39);
    std::uniform_real_distribution<double> e(-6.0, 0.0);
    pfx::MagnitudeTrace h;
    for (long k = 20; k < 400; ++k) h.emplace_back(k, std::pow(10.0, e(rng)));
    CHECK_THROWS_AS(pfx::tail_exponent_estimate(h), pfx::FitError);
  }
}

TEST_CASE("geometric toy series converges quickly") {
  const auto r = pfx::sum_series([](long k) { return Complex(std::pow(0.5, static_cast<double>(k))); },
                                 tol(1e-12));
  CHECK(r.status == SeriesStatus::Converged);
  CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.terms_used < 200);
}

TEST_CASE("trace rows hold the running partial sums") {
  pfx::ConvergenceConfig cfg;
  cfg.trace = true;
  const auto r = pfx::beta_sym(0.5, 0.5, 0.0, 5.0, cfg);
  REQUIRE(static_cast<long>(r.trace.size()) == r.terms_used);
  CHECK(r.trace.front().k == 0);
  CHECK(r.trace.back().partial == r.value);
  Complex running = 0.0;
  for (const auto& row : r.trace) running += row.term;
  CHECK(rel_diff(running, r.value) < 1e-13);
}

TEST_CASE("repeated evaluation is deterministic") {
  pfx::ConvergenceConfig cfg;
  cfg.trace = true;
  const auto a = pfx::closed_asym({0.3, 0.1}, 0.4, 2.7, 1.3, 0.9, 2.0, cfg);
  const auto b = pfx::closed_asym({0.3, 0.1}, 0.4, 2.7, 1.3, 0.9, 2.0, cfg);
  CHECK(bit_equal(a.value, b.value));
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(bit_equal(a.trace[i].partial, b.trace[i].partial));
}
