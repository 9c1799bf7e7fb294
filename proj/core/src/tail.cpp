#include <algorithm>
#include <cmath>
#include <limits>

#include "pfx/errors.hpp"
#include "pfx/series_engine.hpp"

namespace pfx {

namespace {

constexpr long kFitMinIndex = 20;
constexpr std::size_t kFitMinPoints = 50;
// RMS scatter of log|term| about the fitted line beyond which the trace is
// not treated as a power law.
constexpr double kFitMaxResidual = 0.5;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

template <typename XOf>
LineFit fit_line(const MagnitudeTrace& pts, std::size_t begin, std::size_t end, XOf x_of) {
  const double n = static_cast<double>(end - begin);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    sx += x_of(pts[i].first);
    sy += std::log(pts[i].second);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double dx = x_of(pts[i].first) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(pts[i].second) - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double r = std::log(pts[i].second) - (fit.intercept + fit.slope * x_of(pts[i].first));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double log_k(long k) { return std::log(static_cast<double>(k)); }
double lin_k(long k) { return static_cast<double>(k); }

MagnitudeTrace usable_points(const MagnitudeTrace& trace) {
  MagnitudeTrace pts;
  pts.reserve(trace.size());
  for (const auto& [k, mag] : trace) {
    if (k >= kFitMinIndex && mag > 0.0 && std::isfinite(mag)) pts.emplace_back(k, mag);
  }
  return pts;
}

}  // namespace

double tail_exponent_estimate(const MagnitudeTrace& trace) {
  const MagnitudeTrace pts = usable_points(trace);
  if (pts.size() < kFitMinPoints) {
    throw FitError("tail_exponent_estimate: need at least 50 nonzero points with k >= 20");
  }
  const LineFit fit = fit_line(pts, pts.size() / 2, pts.size(), log_k);
  if (fit.residual > kFitMaxResidual) {
    throw FitError("tail_exponent_estimate: magnitudes too irregular for a power-law fit");
  }
  return -fit.slope;
}

TailEstimate estimate_tail(const MagnitudeTrace& history, bool alternating, long k_last,
                           double last) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  TailEstimate est;
  est.bound = kInf;
  if (alternating) {
    est.kind = TailKind::Alternating;
    est.bound = last;
  }
  const MagnitudeTrace pts = usable_points(history);
  if (pts.size() < kFitMinPoints) return est;

  const std::size_t half = pts.size() / 2;
  const LineFit fit = fit_line(pts, half, pts.size(), log_k);
  if (fit.residual > kFitMaxResidual) return est;
  const double p = -fit.slope;
  est.exponent = p;
  if (est.kind == TailKind::Alternating) return est;

  // A geometric tail shows up as a log-log slope that keeps steepening.
  const std::size_t quarter = half + (pts.size() - half) / 2;
  const double p_early = -fit_line(pts, half, quarter, log_k).slope;
  const double p_late = -fit_line(pts, quarter, pts.size(), log_k).slope;
  if (p_late > 2.0 && p_late > 1.25 * p_early + 0.5) {
    const LineFit lin = fit_line(pts, quarter, pts.size(), lin_k);
    const double r = std::exp(lin.slope);
    est.kind = TailKind::Geometric;
    if (r < 1.0) est.bound = last * r / (1.0 - r);
    return est;
  }

  est.kind = TailKind::PowerLaw;
  if (p > 1.0) {
    const double kk = static_cast<double>(k_last);
    const double fitted = std::exp(fit.intercept + fit.slope * std::log(kk));
    est.bound = std::max(last, fitted) * kk / (p - 1.0);
  }
  return est;
}

}  // namespace pfx
