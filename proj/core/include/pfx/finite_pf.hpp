#pragma once

// Both sides of the finite (rational-function) partial-fraction identities,
// evaluated numerically so they can be compared at arbitrary points.

#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfx/scalar_kernel.hpp"
#include "pfx/sym_roots.hpp"

namespace pfx {

enum class FiniteKind { BPF, GPF, TWPF, CBI, AFFP, YL };

const char* to_string(FiniteKind kind);
// Accepts the lower-case names bpf, gpf, twpf, cbi, affp, yl.
FiniteKind finite_kind_from_string(const std::string& name);

using NamedValue = std::pair<std::string, Complex>;

struct IdentityReport {
  Complex lhs;
  Complex rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  // sum_k |term_k| / max(|lhs|, |rhs|): how much the right side cancels.
  double condition = 1.0;
  std::vector<NamedValue> point;
};

IdentityReport make_report(Complex lhs, Complex rhs, std::vector<NamedValue> point);

// A symmetric polynomial supplied as a black box over point coordinates.
using SymmetricEvaluator = std::function<Complex(std::span<const Complex>)>;

// Residues B_k = (-1)^k (a - k)_n / (k! (n - k)!), k = 0..n.
std::vector<Complex> residues_bpf(Complex a, int n);

// (a + x)_n / (x)_{n+1} against sum_k B_k / (x + k).
IdentityReport eval_bpf(Complex a, Complex x, int n, double pole_guard = kDefaultPoleGuard);

// Two-point identity for symmetric P over linear forms Q_0..Q_n; the
// degree of P (at most n + 1 per variable) is the caller's responsibility.
IdentityReport eval_gpf(const SymmetricEvaluator& p, std::span<const LinearSymForm> qs,
                        const ESymPoint& x, const ESymPoint& y,
                        double pole_guard = kDefaultPoleGuard);

// The same identity for Q_j = prod_m (x_m - b_j), written through the
// roots b_k, b_k', ... of each auxiliary vector. Independent second route.
IdentityReport eval_gfd(const SymmetricEvaluator& p, std::span<const Complex> bs,
                        const ESymPoint& x, const ESymPoint& y,
                        double pole_guard = kDefaultPoleGuard);

// Limit form with y_{l+1..r} sent to infinity; P of degree at most n per
// variable. With r = 2 and one fixed coordinate this is the two-variable
// expansion from which eval_cbi is specialised.
IdentityReport eval_fipf(const SymmetricEvaluator& p, std::span<const Complex> bs,
                         std::span<const Complex> x, std::span<const Complex> y_fixed,
                         double pole_guard = kDefaultPoleGuard);

IdentityReport eval_cbi(Complex x1, Complex x2, Complex a, Complex lambda, int n,
                        double pole_guard = kDefaultPoleGuard);

IdentityReport eval_affp(Complex x1, Complex x2, Complex s, Complex t, Complex u, Complex lambda,
                         int n, double pole_guard = kDefaultPoleGuard);

IdentityReport eval_yl(Complex x1, Complex x2, Complex x3, Complex u, Complex lambda, int n,
                       double pole_guard = kDefaultPoleGuard);

// Self-contained description of one identity evaluation. For GPF and TWPF
// the polynomial is P(t) = prod_j poly(t_j) with poly given by
// `poly_coeffs` (ascending powers).
struct FiniteIdentityInstance {
  FiniteKind kind = FiniteKind::BPF;
  int n = 0;
  std::vector<NamedValue> params;
  std::vector<LinearSymForm> forms;
  std::vector<Complex> x;
  std::vector<Complex> y;
  std::vector<Complex> poly_coeffs;
  std::vector<Complex> bs;

  Complex param(const std::string& name) const;
};

IdentityReport evaluate(const FiniteIdentityInstance& instance);

// Relative-residual bound each identity is held to at well-conditioned points.
double finite_rel_bound(FiniteKind kind);

// Draws a well-conditioned instance: parameters with Re in [0.1, 2],
// |Im| <= 1, resampled until every pole grid is at least 0.05 away and the
// right-hand side cancels by less than a factor 1e6.
// `arity` is used by GPF only (2 or 3). The number of rejected draws is
// stored in `redraws` when given.
FiniteIdentityInstance sample_instance(FiniteKind kind, int n, std::mt19937_64& rng,
                                       int arity = 3, int* redraws = nullptr);

// max_k |Q_k(t_k)| relative to the size of Q_k, with t_k recovered as roots
// and re-expanded. GPF instances only.
double t_vector_residual(const FiniteIdentityInstance& instance);

}  // namespace pfx
