#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"
#include "fbcalc/measure.hpp"
#include "fbcalc/quadrature.hpp"

namespace fbcalc {

inline constexpr int kMaxDerivativeOrder = 12;
inline constexpr double kMassZeroTolerance = 1e-12;

// Evaluates F = FB(mu), F(z) = \int e^{-z zeta} dmu(zeta), from the
// discretised measure. The node list is built once per evaluator.
class TransformEvaluator {
 public:
  explicit TransformEvaluator(CompactMeasure mu, int refine = 1)
      : measure_(std::move(mu)), nodes_(measure_.nodes(refine)) {}

  const CompactMeasure& measure() const noexcept { return measure_; }
  const std::vector<QuadNode>& nodes() const noexcept { return nodes_; }

  cplx operator()(cplx z) const {
    cplx sum = 0.0;
    for (const auto& n : nodes_) sum += n.weight * std::exp(-z * n.location);
    return sum;
  }

  // F^{(m)}(z) = \int (-zeta)^m e^{-z zeta} dmu(zeta)
  cplx derivative(cplx z, int m) const {
    if (m < 1 || m > kMaxDerivativeOrder)
      fail(ErrorKind::InvalidArgument, "derivative order must lie in [1, 12]");
    cplx sum = 0.0;
    for (const auto& n : nodes_) sum += n.weight * std::pow(-n.location, m) * std::exp(-z * n.location);
    return sum;
  }

  // \int e^{-Re(z zeta)} d|mu|, an upper bound for |F(z)|.
  double decayBound(cplx z) const {
    double sum = 0.0;
    for (const auto& n : nodes_) sum += std::abs(n.weight) * std::exp(-(z * n.location).real());
    return sum;
  }

  cplx mass() const {
    cplx total = 0.0;
    for (const auto& n : nodes_) total += n.weight;
    return total;
  }

 private:
  CompactMeasure measure_;
  std::vector<QuadNode> nodes_;
};

inline cplx evalFB(const CompactMeasure& mu, cplx z) { return TransformEvaluator(mu)(z); }

inline cplx evalFBDeriv(const CompactMeasure& mu, cplx z, int m) {
  return TransformEvaluator(mu).derivative(z, m);
}

// Largest deviation |F(z) - conj(F(conj z))| over the given points.
inline double symmetryDefect(const TransformEvaluator& F, const std::vector<cplx>& points) {
  double worst = 0.0;
  for (const auto z : points) worst = std::max(worst, std::abs(F(z) - std::conj(F(std::conj(z)))));
  return worst;
}

// ---- maxima on rays and sectors -----------------------------------------------

struct RaySearchOptions {
  int grid_points = 256;
  double r_min = 1e-4;
  double r_tol = 1e-10;
  int refine_candidates = 4;
  int theta_points = 33;
  int max_doublings = 60;
};

struct RayMaxResult {
  double r_star = 0.0;
  double value = 0.0;
  cplx location;
};

namespace detail {

inline void requireMassZero(const TransformEvaluator& F) {
  if (std::abs(F.mass()) > kMassZeroTolerance)
    fail(ErrorKind::PreconditionViolation,
         "measure has nonzero mass; the maximum of |F| need not exist");
}

inline void requireRayAngle(double theta, double beta) {
  if (!(std::abs(theta) + beta < kPi / 2))
    fail(ErrorKind::InvalidArgument, "ray angle plus support half-angle must be < pi/2");
}

// Newton polish of a maximum of g(r) = |F(r e^{i theta})|^2 inside [lo, hi].
inline double polishRayMax(const TransformEvaluator& F, cplx dir, double r, double lo, double hi) {
  for (int iter = 0; iter < 30; ++iter) {
    const cplx z = r * dir;
    const cplx f = F(z);
    const cplx fr = F.derivative(z, 1) * dir;
    const cplx frr = F.derivative(z, 2) * dir * dir;
    const double g1 = 2.0 * (std::conj(f) * fr).real();
    const double g2 = 2.0 * (std::norm(fr) + (std::conj(f) * frr).real());
    if (!(g2 < 0.0)) break;
    const double step = -g1 / g2;
    const double next = r + step;
    if (!(next > lo && next < hi)) break;
    r = next;
    if (std::abs(step) <= 1e-15 * std::max(1.0, r)) break;
  }
  return r;
}

inline RayMaxResult rayMaxImpl(const TransformEvaluator& F, double theta, double beta,
                               const RaySearchOptions& opts) {
  requireRayAngle(theta, beta);
  requireMassZero(F);
  const cplx dir = std::polar(1.0, theta);
  auto value = [&](double r) { return std::abs(F(r * dir)); };

  const int n = std::max(opts.grid_points, 8);
  double r_max = 64.0 / std::cos(std::abs(theta) + beta);
  std::vector<double> grid(static_cast<std::size_t>(n));
  std::vector<double> vals(static_cast<std::size_t>(n));
  int doublings = 0;
  for (;;) {
    const double log_lo = std::log(opts.r_min);
    const double log_hi = std::log(r_max);
    for (int i = 0; i < n; ++i) {
      grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
      vals[i] = value(grid[i]);
    }
    const double incumbent = *std::max_element(vals.begin(), vals.end());
    if (F.decayBound(r_max * dir) <= incumbent) break;
    if (++doublings > opts.max_doublings)
      fail(ErrorKind::NumericFailure, "ray search did not bracket the decay of |F|");
    r_max *= 2.0;
  }

  // Refine the best few local maxima of the grid.
  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    const bool left = i == 0 || vals[i] >= vals[i - 1];
    const bool right = i == n - 1 || vals[i] >= vals[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vals[a] > vals[b]; });
  if (static_cast<int>(peaks.size()) > opts.refine_candidates) peaks.resize(opts.refine_candidates);

  RayMaxResult best;
  best.value = -1.0;
  for (const int i : peaks) {
    const double lo = grid[std::max(i - 1, 0)];
    const double hi = grid[std::min(i + 1, n - 1)];
    auto gs = goldenSectionMax(value, lo, hi, opts.r_tol * std::max(1.0, grid[i]));
    if (vals[i] > gs.value) gs = {grid[i], vals[i]};
    const double polished = polishRayMax(F, dir, gs.x, lo, hi);
    const double pv = value(polished);
    // Near the peak |F| is flat to roundoff, so the stationary point wins ties.
    if (pv >= gs.value * (1.0 - 1e-13)) gs = {polished, pv};
    if (gs.value > best.value) best = {gs.x, gs.value, gs.x * dir};
  }
  return best;
}

}  // namespace detail

// Global maximum of r -> |F(r e^{i theta})| over r > 0: log grid, doubling of
// the upper end until the decay bound drops below the incumbent, then golden
// section and Newton polish around the best grid peaks.
inline RayMaxResult rayMax(const TransformEvaluator& F, double theta, const RaySearchOptions& opts = {}) {
  return detail::rayMaxImpl(F, theta, supportHalfAngle(F.measure()), opts);
}

inline RayMaxResult rayMax(const CompactMeasure& mu, double theta, const RaySearchOptions& opts = {}) {
  return rayMax(TransformEvaluator(mu), theta, opts);
}

struct PositiveRealMax {
  double b;
  double value;  // signed F(b)
};

// Maximiser of |F| on (0, inf) for a symmetric mass-zero measure. The value is
// signed; callers negate the measure when it is negative.
inline PositiveRealMax positiveRealMax(const CompactMeasure& mu, const RaySearchOptions& opts = {}) {
  if (!mu.symmetric())
    fail(ErrorKind::PreconditionViolation, "positiveRealMax needs a symmetric measure");
  TransformEvaluator F(mu);
  const auto r = rayMax(F, 0.0, opts);
  return {r.r_star, F(r.r_star).real()};
}

struct SectorSupResult {
  double value = 0.0;
  double theta_star = 0.0;
  std::vector<double> thetas;
  std::vector<RayMaxResult> rays;
};

// Grid of ray angles covering [0, alpha'] for symmetric measures (M_theta =
// M_-theta) and [-alpha', alpha'] otherwise.
inline std::vector<double> sectorThetaGrid(double alpha_prime, bool symmetric, int points) {
  std::vector<double> thetas;
  const int n = std::max(points, 2);
  if (symmetric) {
    for (int i = 0; i < n; ++i) thetas.push_back(alpha_prime * i / (n - 1));
  } else {
    const int m = 2 * n - 1;
    for (int i = 0; i < m; ++i) thetas.push_back(-alpha_prime + 2.0 * alpha_prime * i / (m - 1));
  }
  return thetas;
}

inline SectorSupResult sectorSupDetailed(const CompactMeasure& mu, double alpha_prime,
                                         const RaySearchOptions& opts = {}) {
  const double beta = supportHalfAngle(mu);
  if (!(alpha_prime >= 0.0) || !(alpha_prime + beta < kPi / 2))
    fail(ErrorKind::InvalidArgument, "sector half-angle plus support half-angle must be < pi/2");
  TransformEvaluator F(mu);
  SectorSupResult out;
  out.thetas = sectorThetaGrid(alpha_prime, mu.symmetric(), opts.theta_points);
  out.value = -1.0;
  for (const double th : out.thetas) {
    out.rays.push_back(detail::rayMaxImpl(F, th, beta, opts));
    if (out.rays.back().value > out.value) {
      out.value = out.rays.back().value;
      out.theta_star = th;
    }
  }
  return out;
}

// sup over S_{alpha'} of |F|.
inline double sectorSup(const CompactMeasure& mu, double alpha_prime, const RaySearchOptions& opts = {}) {
  return sectorSupDetailed(mu, alpha_prime, opts).value;
}

// d = max over the theta-grid of Re(location of the ray maximum).
inline double maximizerRealPartBound(const CompactMeasure& mu, const std::vector<double>& theta_grid,
                                     const RaySearchOptions& opts = {}) {
  TransformEvaluator F(mu);
  const double beta = supportHalfAngle(mu);
  double d = 0.0;
  for (const double th : theta_grid) d = std::max(d, detail::rayMaxImpl(F, th, beta, opts).location.real());
  return d;
}

}  // namespace fbcalc
