#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fbcalc/errors.hpp"

namespace fbcalc {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Open sector S_alpha = {z in C_+ : |arg z| < alpha} or closed V_beta with <=.
class Sector {
 public:
  explicit Sector(double half_angle, bool closed = false)
      : half_angle_(half_angle), closed_(closed) {
    if (!(half_angle > 0.0 && half_angle < kPi / 2))
      fail(ErrorKind::InvalidArgument, "sector half-angle must lie in (0, pi/2)");
  }

  double halfAngle() const noexcept { return half_angle_; }
  bool closed() const noexcept { return closed_; }

 private:
  double half_angle_;
  bool closed_;
};

// z = 0 never belongs to a sector; arg is taken on the principal branch.
inline bool containsPoint(const Sector& sector, cplx z) {
  if (z == cplx(0.0, 0.0) || !(z.real() > 0.0)) return false;
  const double a = std::abs(std::arg(z));
  return sector.closed() ? a <= sector.halfAngle() : a < sector.halfAngle();
}

class Ray {
 public:
  explicit Ray(double theta) : theta_(theta) {
    if (!(std::abs(theta) < kPi / 2))
      fail(ErrorKind::InvalidArgument, "ray angle must satisfy |theta| < pi/2");
  }

  double theta() const noexcept { return theta_; }
  cplx direction() const { return std::polar(1.0, theta_); }
  cplx point(double r) const { return r * direction(); }

 private:
  double theta_;
};

class Polyline {
 public:
  explicit Polyline(std::vector<cplx> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2)
      fail(ErrorKind::InvalidArgument, "polyline needs at least two vertices");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
      if (vertices_[i] == vertices_[i - 1])
        fail(ErrorKind::InvalidArgument, "consecutive polyline vertices coincide");
      if (!std::isfinite(vertices_[i].real()) || !std::isfinite(vertices_[i].imag()))
        fail(ErrorKind::InvalidArgument, "polyline vertex is not finite");
    }
  }

  const std::vector<cplx>& vertices() const noexcept { return vertices_; }
  std::size_t segmentCount() const noexcept { return vertices_.size() - 1; }
  cplx front() const { return vertices_.front(); }
  cplx back() const { return vertices_.back(); }
  bool isClosed() const { return vertices_.front() == vertices_.back(); }

  double length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < vertices_.size(); ++i)
      len += std::abs(vertices_[i] - vertices_[i - 1]);
    return len;
  }

 private:
  std::vector<cplx> vertices_;
};

// n points spaced uniformly in arclength along the whole curve; both
// endpoints are reproduced exactly.
inline std::vector<cplx> sampleCurve(const Polyline& curve, int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "sampleCurve needs n >= 2");
  const auto& v = curve.vertices();
  std::vector<double> cumulative(v.size(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i)
    cumulative[i] = cumulative[i - 1] + std::abs(v[i] - v[i - 1]);
  const double total = cumulative.back();

  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(v.front());
  std::size_t seg = 1;
  for (int k = 1; k < n - 1; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg < v.size() - 1 && cumulative[seg] < s) ++seg;
    const double seg_len = cumulative[seg] - cumulative[seg - 1];
    const double t = (s - cumulative[seg - 1]) / seg_len;
    out.push_back(v[seg - 1] + t * (v[seg] - v[seg - 1]));
  }
  out.push_back(v.back());
  return out;
}

namespace detail {

inline int orientation(cplx a, cplx b, cplx c) {
  const long double cross =
      static_cast<long double>(b.real() - a.real()) * (c.imag() - a.imag()) -
      static_cast<long double>(b.imag() - a.imag()) * (c.real() - a.real());
  return (cross > 0) - (cross < 0);
}

// c collinear with [a,b] and within its bounding box.
inline bool onSegment(cplx a, cplx b, cplx c) {
  return std::min(a.real(), b.real()) <= c.real() && c.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= c.imag() && c.imag() <= std::max(a.imag(), b.imag());
}

inline bool segmentsIntersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && onSegment(p1, p2, q1)) return true;
  if (o2 == 0 && onSegment(p1, p2, q2)) return true;
  if (o3 == 0 && onSegment(q1, q2, p1)) return true;
  if (o4 == 0 && onSegment(q1, q2, p2)) return true;
  return false;
}

// Adjacent segments [a,b],[b,c] overlap beyond b when c folds back onto [a,b].
inline bool adjacentOverlap(cplx a, cplx b, cplx c) {
  if (orientation(a, b, c) != 0) return false;
  const cplx u = a - b;
  const cplx w = c - b;
  return u.real() * w.real() + u.imag() * w.imag() > 0.0;
}

}  // namespace detail

// Closed polylines (front == back) treat the first and last segments as
// adjacent. Shared vertices between adjacent segments are not intersections.
inline bool isSimplePolyline(const Polyline& curve) {
  const auto& v = curve.vertices();
  const std::size_t m = v.size() - 1;
  const bool closed = curve.isClosed() && m >= 3;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adjacent = (j == i + 1) || (closed && i == 0 && j == m - 1);
      if (adjacent) {
        if (j == i + 1 && detail::adjacentOverlap(v[i], v[i + 1], v[j + 1])) return false;
        if (j != i + 1 && detail::adjacentOverlap(v[j], v[j + 1], v[1])) return false;
        continue;
      }
      if (detail::segmentsIntersect(v[i], v[i + 1], v[j], v[j + 1])) return false;
    }
  }
  return true;
}

}  // namespace fbcalc
