#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"

namespace fbcalc {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order mapped to [a, b]. Nodes come from
// Newton iteration on the three-term Legendre recurrence.
inline QuadratureRule gaussLegendre(int order, double a = 0.0, double b = 1.0) {
  if (order < 1) fail(ErrorKind::InvalidArgument, "Gauss-Legendre order must be >= 1");
  const int n = order;
  QuadratureRule rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = mid - half * x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = mid + half * x;
    rule.weights[static_cast<std::size_t>(i)] = half * w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = half * w;
  }
  return rule;
}

struct ScalarMax {
  double x;
  double value;
};

// Golden-section maximisation of a unimodal f on [lo, hi].
inline ScalarMax goldenSectionMax(const std::function<double(double)>& f, double lo, double hi,
                                  double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 400 && (b - a) > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? ScalarMax{c, fc} : ScalarMax{d, fd};
}

}  // namespace fbcalc
