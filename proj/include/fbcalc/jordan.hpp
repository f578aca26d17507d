#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"
#include "fbcalc/measure.hpp"
#include "fbcalc/transform.hpp"

namespace fbcalc {

struct JordanOptions {
  double max_height = 4.0 * kPi;
  int grid = 200;             // rows and (about) columns of the path graph
  int segment_samples = 200;  // samples of [b, a1] during the direction search
  int density = 1000;         // verification density used to accept a candidate
  int max_vertices = 32;
  double derivative_tolerance = 1e-8;
};

struct JordanCertificate {
  double b = 0.0;
  double f_b = 0.0;  // F(b) after sign normalisation
  int sign = 1;      // -1 when the measure was negated
  int m = 0;
  double delta = 0.0;
  double psi = 0.0;
  double epsilon = 0.0;
  cplx a0, a1, a2, a3;
  Polyline gamma1{std::vector<cplx>{cplx(0.0, 1.0), cplx(1.0, 1.0)}};
  int sample_density = 0;
  double margin_i = 0.0;
  double margin_ii = 0.0;
};

struct CertificateCheck {
  bool ok = false;
  double margin_i = 0.0;
  double margin_ii = 0.0;
  bool simple = false;
  std::vector<std::string> failures;
};

namespace detail {

// Radical inverse in base 2. Prefixes of the sequence are nested, so minima
// over the first n samples can only decrease as n grows.
inline double vanDerCorput(unsigned k) {
  double x = 0.0;
  double f = 0.5;
  while (k != 0) {
    if (k & 1u) x += f;
    k >>= 1;
    f *= 0.5;
  }
  return x;
}

inline std::vector<double> nestedFractions(int density) {
  std::vector<double> t{0.0, 1.0};
  for (unsigned k = 1; t.size() < static_cast<std::size_t>(density); ++k) t.push_back(vanDerCorput(k));
  return t;
}

inline cplx pointAtFraction(const std::vector<cplx>& v, const std::vector<double>& cumulative, double t) {
  const double s = t * cumulative.back();
  auto it = std::lower_bound(cumulative.begin() + 1, cumulative.end(), s);
  if (it == cumulative.end()) return v.back();
  const auto seg = static_cast<std::size_t>(it - cumulative.begin());
  const double len = cumulative[seg] - cumulative[seg - 1];
  return v[seg - 1] + ((s - cumulative[seg - 1]) / len) * (v[seg] - v[seg - 1]);
}

inline std::vector<cplx> nestedSamples(const std::vector<cplx>& v, int density) {
  std::vector<double> cumulative(v.size(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) cumulative[i] = cumulative[i - 1] + std::abs(v[i] - v[i - 1]);
  std::vector<cplx> out;
  for (const double t : nestedFractions(density)) out.push_back(pointAtFraction(v, cumulative, t));
  return out;
}

inline double minAbsOnSegment(const TransformEvaluator& F, cplx p, cplx q, int samples) {
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= samples; ++k) lo = std::min(lo, std::abs(F(p + (static_cast<double>(k) / samples) * (q - p))));
  return lo;
}

inline int chordSamples(cplx p, cplx q, double h) {
  return std::max(8, static_cast<int>(std::ceil(4.0 * std::abs(q - p) / h)));
}

}  // namespace detail

// Whole closed curve: [b, a1], gamma1, [a2, a3], [a3, conj a3] and the mirror image.
inline Polyline fullCurve(const JordanCertificate& cert) {
  std::vector<cplx> v{cplx(cert.b, 0.0)};
  for (const auto z : cert.gamma1.vertices()) v.push_back(z);
  v.push_back(cert.a3);
  v.push_back(std::conj(cert.a3));
  const auto& g = cert.gamma1.vertices();
  for (auto it = g.rbegin(); it != g.rend(); ++it) v.push_back(std::conj(*it));
  v.push_back(cplx(cert.b, 0.0));
  return Polyline(std::move(v));
}

// min over [0, re_max] of |F(x + i y0)| exceeds the threshold
inline bool heightAdmissible(const TransformEvaluator& F, double y0, double re_max, double threshold,
                             int samples = 1024) {
  return detail::minAbsOnSegment(F, cplx(0.0, y0), cplx(re_max, y0), samples) > threshold;
}

inline CertificateCheck verifyCertificate(const CompactMeasure& mu, const JordanCertificate& cert, int density) {
  CertificateCheck out;
  auto& why = out.failures;
  if (density < 100) why.push_back("density must be >= 100");
  if (!(cert.b > 0.0)) why.push_back("b must be positive");
  if (cert.m < 2 || cert.m % 2 != 0) why.push_back("m must be an even integer >= 2");
  if (!(cert.delta > 0.0)) why.push_back("delta must be positive");
  if (!(cert.a1.imag() > 0.0 && cert.a2.imag() > 0.0 && cert.a3.imag() > 0.0))
    why.push_back("a1, a2, a3 must lie in the upper half-plane");
  if (cert.a2.imag() != cert.a3.imag()) why.push_back("Im a2 must equal Im a3");
  if (cert.a3.real() != 0.0) why.push_back("a3 must be purely imaginary");
  if (!(cert.a1.real() > 0.0 && cert.a2.real() > 0.0)) why.push_back("a1 and a2 must have positive real part");
  {
    const cplx seg = cert.a1 - cert.b;
    const cplx rel = cert.a0 - cert.b;
    const double t = std::norm(seg) > 0.0 ? (rel * std::conj(seg)).real() / std::norm(seg) : -1.0;
    const double off = std::abs(rel - t * seg);
    if (!(t > 0.0 && t < 1.0) || off > 1e-12 * std::max(1.0, std::abs(seg)) || cert.a0 == cert.a1)
      why.push_back("a0 must lie strictly between b and a1");
  }
  if (cert.gamma1.front() != cert.a1 || cert.gamma1.back() != cert.a2)
    why.push_back("gamma1 must run from a1 to a2");
  for (const auto z : cert.gamma1.vertices())
    if (!(z.real() > 0.0 && z.imag() > 0.0)) {
      why.push_back("gamma1 leaves the open upper-right quadrant");
      break;
    }

  const CompactMeasure normalized = cert.sign < 0 ? negate(mu) : mu;
  const TransformEvaluator F(normalized);
  const double fb = F(cplx(cert.b, 0.0)).real();
  const int n = std::max(density, 2);

  out.margin_i = std::numeric_limits<double>::infinity();
  for (const auto z : detail::nestedSamples({cplx(cert.b, 0.0), cert.a1}, n))
    out.margin_i = std::min(out.margin_i, std::abs(F(z)) - fb - cert.delta * std::pow(std::abs(z - cert.b), cert.m));

  const double fa0 = std::abs(F(cert.a0));
  std::vector<cplx> upper = cert.gamma1.vertices();
  if (upper.back() != cert.a3) upper.push_back(cert.a3);
  out.margin_ii = std::numeric_limits<double>::infinity();
  for (const auto z : detail::nestedSamples(upper, n)) out.margin_ii = std::min(out.margin_ii, std::abs(F(z)) - fa0);

  try {
    out.simple = isSimplePolyline(fullCurve(cert));
  } catch (const Error&) {
    out.simple = false;
  }
  if (!out.simple) why.push_back("closed curve is not simple");
  if (!(out.margin_i >= 0.0)) why.push_back("condition (i) margin is negative");
  if (!(out.margin_ii >= 0.0)) why.push_back("condition (ii) margin is negative");
  out.ok = why.empty();
  return out;
}

namespace detail {

struct PathGrid {
  double h = 0.0;
  double y_lo = 0.0;
  double dy = 0.0;
  double y_top = 0.0;
  int cols = 0;
  int rows = 0;
  int start_col = 0;
  cplx at(int j, int i) const { return {j * h, i == rows - 1 ? y_top : y_lo + i * dy}; }
};

// Grid nodes on [h, Re a1 + 1] x [Im a1, y0] with a1 a node; returns the node
// sequence of a widest path from a1 to the top row left of Re a1, or empty.
inline std::vector<cplx> widestPath(const TransformEvaluator& F, cplx a1, double y0, int grid, double floor_value,
                                    double& bottleneck) {
  PathGrid g;
  const double span = a1.real() + 1.0;
  g.start_col = std::max(1, static_cast<int>(std::lround(a1.real() / (span / (grid - 1)))));
  g.h = a1.real() / g.start_col;
  g.cols = static_cast<int>(std::floor(span / g.h)) + 1;
  g.rows = grid;
  g.y_lo = a1.imag();
  g.dy = (y0 - a1.imag()) / (grid - 1);
  g.y_top = y0;

  const int total = g.cols * g.rows;
  auto id = [&](int j, int i) { return i * g.cols + j; };
  std::vector<double> value(total, -1.0);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 1; j < g.cols; ++j) value[id(j, i)] = std::abs(F(g.at(j, i)));
  auto terminal = [&](int j, int i) { return i == g.rows - 1 && j >= 1 && j <= g.start_col; };

  // Phase 1: bottleneck (maximin) Dijkstra.
  std::vector<double> best(total, -1.0);
  std::priority_queue<std::pair<double, int>> heap;
  const int start = id(g.start_col, 0);
  best[start] = value[start];
  heap.push({best[start], start});
  bottleneck = -1.0;
  const int di[] = {1, 0, 0, -1};
  const int dj[] = {0, -1, 1, 0};
  while (!heap.empty()) {
    const auto [b, u] = heap.top();
    heap.pop();
    if (b < best[u]) continue;
    const int i = u / g.cols;
    const int j = u % g.cols;
    if (terminal(j, i)) {
      bottleneck = b;
      break;
    }
    for (int k = 0; k < 4; ++k) {
      const int ni = i + di[k];
      const int nj = j + dj[k];
      if (ni < 0 || ni >= g.rows || nj < 1 || nj >= g.cols) continue;
      const int v = id(nj, ni);
      const double nb = std::min(b, value[v]);
      if (nb > best[v]) {
        best[v] = nb;
        heap.push({nb, v});
      }
    }
  }
  if (!(bottleneck > floor_value)) return {};

  // Phase 2: fewest steps through nodes at or above the bottleneck.
  std::vector<int> parent(total, -2);
  std::queue<int> q;
  parent[start] = -1;
  q.push(start);
  int end = -1;
  while (!q.empty() && end < 0) {
    const int u = q.front();
    q.pop();
    const int i = u / g.cols;
    const int j = u % g.cols;
    if (terminal(j, i)) {
      end = u;
      break;
    }
    for (int k = 0; k < 4; ++k) {
      const int ni = i + di[k];
      const int nj = j + dj[k];
      if (ni < 0 || ni >= g.rows || nj < 1 || nj >= g.cols) continue;
      const int v = id(nj, ni);
      if (parent[v] != -2 || value[v] < bottleneck) continue;
      parent[v] = u;
      q.push(v);
    }
  }
  if (end < 0) return {};
  std::vector<cplx> path;
  for (int u = end; u >= 0; u = parent[u]) path.push_back(g.at(u % g.cols, u / g.cols));
  std::reverse(path.begin(), path.end());
  path.front() = a1;  // exact start vertex
  return path;
}

inline std::vector<cplx> mergeCollinear(const std::vector<cplx>& p) {
  if (p.size() < 3) return p;
  std::vector<cplx> out{p.front()};
  for (std::size_t k = 1; k + 1 < p.size(); ++k) {
    const cplx d1 = p[k] - out.back();
    const cplx d2 = p[k + 1] - p[k];
    const double cross = d1.real() * d2.imag() - d1.imag() * d2.real();
    const double dot = d1.real() * d2.real() + d1.imag() * d2.imag();
    if (std::abs(cross) > 1e-12 * std::abs(d1) * std::abs(d2) || dot < 0.0) out.push_back(p[k]);
  }
  out.push_back(p.back());
  return out;
}

// Greedy shortcuts: from each kept vertex jump to the farthest later vertex whose
// chord keeps |F| above the floor at sampled points.
inline std::vector<cplx> shortcutPath(const TransformEvaluator& F, const std::vector<cplx>& p, double floor_value,
                                      double h) {
  std::vector<cplx> out{p.front()};
  std::size_t i = 0;
  while (i + 1 < p.size()) {
    std::size_t next = i + 1;
    for (std::size_t k = p.size() - 1; k > i + 1; --k) {
      if (detail::minAbsOnSegment(F, p[i], p[k], chordSamples(p[i], p[k], h)) > floor_value) {
        next = k;
        break;
      }
    }
    out.push_back(p[next]);
    i = next;
  }
  return out;
}

struct DirectionChoice {
  double psi = 0.0;
  double length = 0.0;
  double min_ratio = -std::numeric_limits<double>::infinity();
};

}  // namespace detail

inline JordanCertificate constructCertificate(const CompactMeasure& mu, const JordanOptions& opts = {}) {
  if (!mu.symmetric()) fail(ErrorKind::PreconditionViolation, "certificate construction needs a symmetric measure");
  if (std::abs(mass(mu)) > kMassZeroTolerance)
    fail(ErrorKind::PreconditionViolation, "certificate construction needs a mass-zero measure");
  if (mu.empty()) fail(ErrorKind::PreconditionViolation, "transform is constant");

  JordanCertificate cert;
  const auto peak = positiveRealMax(mu);
  if (std::abs(peak.value) <= 1e-14) fail(ErrorKind::PreconditionViolation, "transform is constant");
  cert.sign = peak.value < 0.0 ? -1 : 1;
  const CompactMeasure nu = cert.sign < 0 ? negate(mu) : mu;
  const TransformEvaluator F(nu);
  cert.b = peak.b;
  cert.f_b = F(cplx(cert.b, 0.0)).real();

  cplx dm;
  for (int k = 1; k <= kMaxDerivativeOrder; ++k) {
    const cplx d = F.derivative(cplx(cert.b, 0.0), k);
    if (std::abs(d) > opts.derivative_tolerance) {
      cert.m = k;
      dm = d;
      break;
    }
  }
  if (cert.m == 0) fail(ErrorKind::ConstructionFailure, "no nonvanishing derivative up to order 12 at b");
  if (cert.m % 2 != 0) {
    std::ostringstream msg;
    msg << "first nonvanishing derivative at b has odd order " << cert.m;
    fail(ErrorKind::ConstructionFailure, msg.str());
  }
  double factorial = 1.0;
  for (int k = 2; k <= cert.m; ++k) factorial *= k;

  detail::DirectionChoice choice;
  std::ostringstream tried;
  for (int deg = 5; deg <= 85; deg += 5) {
    const double psi = deg * kPi / 180.0;
    const cplx dir = std::polar(1.0, psi);
    const double limit = (dm * std::polar(1.0, cert.m * psi)).real() / factorial;
    for (const double frac : {0.5, 0.25, 0.125}) {
      const double len = frac * cert.b;
      double lo = limit;
      for (int k = 0; k < opts.segment_samples; ++k) {
        const double s = (k + 0.5) * len / opts.segment_samples;
        lo = std::min(lo, (std::abs(F(cert.b + s * dir)) - cert.f_b) / std::pow(s, cert.m));
      }
      if (lo > choice.min_ratio) choice = {psi, len, lo};
    }
    tried << deg << ':' << limit << ' ';
  }
  if (!(choice.min_ratio > 0.0))
    fail(ErrorKind::ConstructionFailure,
         "condition (i) fails in every direction; limit ratios by degree: " + tried.str());
  cert.psi = choice.psi;
  cert.delta = 0.5 * choice.min_ratio;
  cert.a1 = cert.b + std::polar(choice.length, choice.psi);
  cert.sample_density = opts.density;

  for (const double eps : {0.1, 0.05, 0.01}) {
    cert.epsilon = eps;
    cert.a0 = cert.b + eps * (cert.a1 - cert.b);
    const double fa0 = std::abs(F(cert.a0));
    for (int k = 1; k * kPi / 4.0 <= opts.max_height + 1e-12; ++k) {
      const double y0 = k * kPi / 4.0;
      if (!(y0 > cert.a1.imag()) || !heightAdmissible(F, y0, cert.a1.real(), fa0)) continue;
      double bottleneck = 0.0;
      const auto raw = detail::widestPath(F, cert.a1, y0, opts.grid, fa0, bottleneck);
      if (raw.empty()) continue;
      const double h = cert.a1.real() / std::max(1.0, std::round(cert.a1.real() * (opts.grid - 1) / (cert.a1.real() + 1.0)));
      const double chord_floor = 0.5 * (fa0 + bottleneck);
      const auto merged = detail::mergeCollinear(raw);
      std::vector<std::vector<cplx>> candidates{
          detail::mergeCollinear(detail::shortcutPath(F, merged, chord_floor, h)), merged};
      for (const auto& path : candidates) {
        if (path.size() < 2) continue;
        cert.gamma1 = Polyline(path);
        cert.a2 = path.back();
        cert.a3 = cplx(0.0, y0);
        const auto check = verifyCertificate(mu, cert, opts.density);
        if (check.ok) {
          cert.margin_i = check.margin_i;
          cert.margin_ii = check.margin_ii;
          return cert;
        }
      }
    }
  }
  fail(ErrorKind::ConstructionFailure, "no admissible height y0 up to the configured maximum");
}

}  // namespace fbcalc
