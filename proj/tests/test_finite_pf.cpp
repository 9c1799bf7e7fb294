#include <doctest.h>

#include <random>
#include <vector>

#include "pfx/errors.hpp"
#include "pfx/finite_pf.hpp"
#include "test_util.hpp"

using pfx::Complex;
using pfx::FiniteKind;

namespace {

pfx::SymmetricEvaluator product_polynomial(std::vector<Complex> coeffs) {
  return [coeffs](std::span<const Complex> t) {
    Complex prod = 1.0;
    for (const Complex& v : t) {
      Complex acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + *it;
      prod *= acc;
    }
    return prod;
  };
}

void check_suite(FiniteKind kind, int n_max, int count, std::uint64_t seed, int arity = 3) {
  std::mt19937_64 rng(seed);
  const double bound = pfx::finite_rel_bound(kind);
  for (int i = 0; i < count; ++i) {
    const int n = i % (n_max + 1);
    const pfx::FiniteIdentityInstance in = pfx::sample_instance(kind, n, rng, arity);
    const pfx::IdentityReport rep = pfx::evaluate(in);
    CAPTURE(n);
    CAPTURE(i);
    CHECK(rep.rel_err <= bound);
    CHECK(rep.condition <= 1e6);
  }
}

}  // namespace

TEST_CASE("bpf residues for n = 1") {
  const Complex a{0.3, 0.7};
  const std::vector<Complex> b = pfx::residues_bpf(a, 1);
  REQUIRE(b.size() == 2);
  CHECK(rel_diff(b[0], a) < 1e-15);
  CHECK(rel_diff(b[1], 1.0 - a) < 1e-15);
}

TEST_CASE("bpf with n = 0 is the trivial identity 1/x = 1/x") {
  const pfx::IdentityReport rep = pfx::eval_bpf({0.4, 0.1}, {1.3, -0.2}, 0);
  CHECK(rep.abs_err == 0.0);
  CHECK(rel_diff(rep.lhs, 1.0 / Complex(1.3, -0.2)) < 1e-15);
}

TEST_CASE("bpf rejects the pole grid") {
  CHECK_THROWS_AS(pfx::eval_bpf(0.5, -2.0, 3), pfx::PoleError);
  CHECK_THROWS_AS(pfx::eval_bpf(0.5, 0.0, 0), pfx::PoleError);
  CHECK_NOTHROW(pfx::eval_bpf(0.5, -4.0, 3));
  CHECK_THROWS_AS(pfx::eval_bpf(0.5, 1.0, -1), pfx::RangeError);
}

TEST_CASE("cbi at a specific point") {
  const pfx::IdentityReport rep = pfx::eval_cbi({0.6, 0.2}, {1.1, -0.4}, {0.7, 0.3}, {1.9, 0.5}, 6);
  CHECK(rep.rel_err < 1e-12);
}

TEST_CASE("property: bpf over 200 random points") { check_suite(FiniteKind::BPF, 8, 200, 101); }
TEST_CASE("property: cbi over 200 random points") { check_suite(FiniteKind::CBI, 8, 200, 102); }
TEST_CASE("property: affp over 200 random points") { check_suite(FiniteKind::AFFP, 6, 200, 103); }
TEST_CASE("property: yl over 200 random points") { check_suite(FiniteKind::YL, 6, 200, 104); }
TEST_CASE("property: gpf over random instances, r = 2") { check_suite(FiniteKind::GPF, 5, 60, 105, 2); }
TEST_CASE("property: gpf over random instances, r = 3") { check_suite(FiniteKind::GPF, 5, 60, 106, 3); }
TEST_CASE("property: twpf over random instances") { check_suite(FiniteKind::TWPF, 6, 100, 107); }

TEST_CASE("property: the auxiliary vectors of gpf instances solve Q(t) = 0") {
  std::mt19937_64 rng(108);
  for (int i = 0; i < 40; ++i) {
    const auto in = pfx::sample_instance(FiniteKind::GPF, 1 + i % 5, rng, 2 + i % 2);
    CHECK(pfx::t_vector_residual(in) < 1e-9);
  }
}

TEST_CASE("property: gfd and gpf agree on shifted product forms") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(0.1, 2.0), v(-1.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const int n = 1 + i % 4;
    const std::size_t r = 2 + static_cast<std::size_t>(i % 2);
    std::vector<Complex> bs, x(r), y(r), coeffs(static_cast<std::size_t>(n) + 2);
    for (int j = 0; j <= n; ++j) bs.emplace_back(-j + 0.3 * v(rng), 0.3 * v(rng));
    for (auto& z : x) z = {u(rng), v(rng)};
    for (auto& z : y) z = {u(rng), v(rng)};
    for (auto& c : coeffs) c = {v(rng), v(rng)};
    std::vector<pfx::LinearSymForm> qs;
    for (const Complex& b : bs) qs.push_back(pfx::LinearSymForm::shifted_product(r, b));
    const auto p = product_polynomial(coeffs);
    const auto ex = pfx::elementary_from_roots(x), ey = pfx::elementary_from_roots(y);
    pfx::IdentityReport a, b;
    try {
      a = pfx::eval_gpf(p, qs, ex, ey);
      b = pfx::eval_gfd(p, bs, ex, ey);
    } catch (const pfx::Error&) {
      continue;
    }
    if (a.condition > 1e6) continue;
    ++checked;
    CHECK(rel_diff(a.lhs, b.lhs) < 1e-12);
    CHECK(rel_diff(a.rhs, b.rhs) < 1e-8);
  }
  CHECK(checked > 40);
}

TEST_CASE("sampler is deterministic for a fixed seed") {
  for (FiniteKind kind : {FiniteKind::BPF, FiniteKind::CBI, FiniteKind::AFFP, FiniteKind::YL,
                          FiniteKind::GPF, FiniteKind::TWPF}) {
    std::mt19937_64 r1(7), r2(7);
    const auto a = pfx::evaluate(pfx::sample_instance(kind, 4, r1));
    const auto b = pfx::evaluate(pfx::sample_instance(kind, 4, r2));
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
  }
}

TEST_CASE("identity names round trip") {
  for (const char* name : {"bpf", "gpf", "twpf", "cbi", "affp", "yl"}) {
    CHECK(std::string(pfx::to_string(pfx::finite_kind_from_string(name))) == name);
  }
  CHECK_THROWS(pfx::finite_kind_from_string("nope"));
}
