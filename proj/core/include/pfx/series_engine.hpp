#pragma once

// Adaptive summation of the infinite expansions, with domain checks,
// tail estimation and optional per-term tracing.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfx/scalar_kernel.hpp"
#include "pfx/sym_roots.hpp"

namespace pfx {

// Radius of the pole check on k-grids such as x + k = 0.
inline constexpr double kGridPoleRadius = 1e-6;

struct ConvergenceConfig {
  double tol = 1e-10;
  long n_max = 1'000'000;
  int streak = 8;
  bool trace = false;

  // Throws RangeError unless tol > 0, n_max >= 1, streak >= 1.
  void validate() const;
};

enum class SeriesStatus { Converged, CapHit, DomainViolation };

const char* to_string(SeriesStatus status);

struct TraceRow {
  long k = 0;
  Complex term;
  Complex partial;
};

struct SeriesResult {
  Complex value;
  long terms_used = 0;
  double tail_bound = 0.0;
  SeriesStatus status = SeriesStatus::CapHit;
  std::optional<double> decay_exponent_fit;
  std::vector<TraceRow> trace;
  std::string message;
};

// ---- tail estimation ----

using MagnitudeTrace = std::vector<std::pair<long, double>>;

// Least-squares decay exponent p (|term| ~ k^-p) over the trailing half of
// the points with k >= 20. Needs at least 50 such points; throws FitError
// when the log-log residual shows the trace is not a clean power law.
double tail_exponent_estimate(const MagnitudeTrace& trace);

enum class TailKind { Alternating, PowerLaw, Geometric, Unknown };

struct TailEstimate {
  TailKind kind = TailKind::Unknown;
  double bound = 0.0;  // +inf when nothing can be said
  std::optional<double> exponent;
};

// Classifies the recent history of a series and bounds its remainder.
// `alternating` reports whether the last few terms alternate in sign and
// shrink in magnitude; `last` is the final term magnitude at index k_last.
TailEstimate estimate_tail(const MagnitudeTrace& history, bool alternating, long k_last,
                           double last);

// ---- generic driver ----

struct SumOptions {
  // A term that is exactly zero ends the series (all later ones vanish).
  bool terminates_on_zero = false;
  // Report DomainViolation when the terms stop decaying.
  bool detect_divergence = false;
};

using TermFunction = std::function<Complex(long k)>;

SeriesResult sum_series(const TermFunction& term, const ConvergenceConfig& cfg,
                        const SumOptions& options = {});

// ---- term builders (exposed for termwise tests) ----

namespace terms {

// eps_k = (lambda - x1)(lambda - x2)/(lambda + k).
Complex epsilon_shift(Complex x1, Complex x2, Complex lambda, long k);

// 1/(x1 + k) + 1/(x2 + k) - 1/(lambda + k).
Complex bracket2(Complex x1, Complex x2, Complex lambda, long k);
Complex bracket3(const std::array<Complex, 3>& x, Complex lambda, long k);

// (1 - x2)_k / k! * 1/(x1 + k), evaluated directly.
Complex gapf(Complex x1, Complex x2, long k);

// Term k of the symmetric beta expansion; integer a takes the Pochhammer
// route, anything else the gamma ratio.
Complex cdi(Complex x1, Complex x2, Complex a, Complex lambda, long k);
Complex cdi_gamma(Complex x1, Complex x2, Complex a, Complex lambda, long k);
Complex cdi_integer(Complex x1, Complex x2, long a, Complex lambda, long k);

// (-1)^k (x1 + x2)_k / k! (1/(x1 + k) + 1/(x2 + k)).
Complex cdi_lambda_inf(Complex x1, Complex x2, long k);

Complex clf_first(Complex x1, Complex x2, Complex s, Complex t, Complex u, Complex lambda, long k);
Complex clf_second(const RootPair& c, Complex x1, Complex x2, Complex s, Complex t, Complex u,
                   long k);

Complex tvd(const RootPair& eta, const std::array<Complex, 3>& x, Complex u, Complex lambda, long k);

// Integer-a form: (1 - eta+)_{k-a} (1 - eta-)_{k-a} / (a + s)_k / k! times
// the bracket, with the pair given by its sum and product.
Complex tve(Complex pair_sum, Complex pair_product, const std::array<Complex, 3>& x, long a,
            Complex lambda, long k);
Complex tve(const RootPair& eta, const std::array<Complex, 3>& x, long a, Complex lambda, long k);

// (-1)^k (xi+)_k (xi-)_k / (k! (3/2)_k) (6/(2k+1) - 1/(lambda + k)).
Complex pi_squared(Complex pair_sum, Complex pair_product, Complex lambda, long k);
Complex pi_squared(const RootPair& xi, Complex lambda, long k);

}  // namespace terms

// ---- series operations ----

SeriesResult beta_gapf(Complex x1, Complex x2, const ConvergenceConfig& cfg = {});
SeriesResult beta_sym(Complex x1, Complex x2, Complex a, Complex lambda,
                      const ConvergenceConfig& cfg = {});
SeriesResult beta_sym_lambda_inf(Complex x1, Complex x2, const ConvergenceConfig& cfg = {});
SeriesResult closed_asym(Complex x1, Complex x2, Complex s, Complex t, Complex u, Complex lambda,
                         const ConvergenceConfig& cfg = {});
SeriesResult closed_sym(const std::array<Complex, 3>& x, Complex u, Complex lambda,
                        const ConvergenceConfig& cfg = {});

// Sum of the integer-a form itself, whose left side carries an extra
// Gamma(a + s) relative to closed_sym.
SeriesResult closed_sym_integer(const std::array<Complex, 3>& x, long a, Complex lambda,
                                const ConvergenceConfig& cfg = {});

// pi from x1 = 1/2 + m, x2 = 1/2 + n and integer a.
SeriesResult pi_family(int m, int n, int a, Complex lambda, const ConvergenceConfig& cfg = {});
// Same normalisation with the lambda -> infinity form (a must be 0).
SeriesResult pi_family_lambda_inf(int m, int n, const ConvergenceConfig& cfg = {});
// (-1)^a (m + n + a)! 2^(m+n) / ((2m-1)!! (2n-1)!!)
double pi_family_prefactor(int m, int n, int a);

SeriesResult pi_squared_series(Complex lambda, const ConvergenceConfig& cfg = {});

}  // namespace pfx
