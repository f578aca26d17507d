#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"

namespace fbcalc {

struct Atom {
  cplx location;
  cplx weight;
};

// Rational Cauchy-kernel density coef / (2 pi i (zeta - pole)^order) carried
// on the positively oriented circle |zeta - center| = radius.
struct ContourComponent {
  cplx center;
  double radius = 0.0;
  cplx pole;
  int order = 1;
  cplx coef{1.0, 0.0};
  int nodes = 128;

  bool poleInside() const { return std::abs(pole - center) < radius; }
  cplx density(cplx zeta) const {
    return coef / (cplx(0.0, 2.0 * kPi) * std::pow(zeta - pole, order));
  }
};

// One term of the discretised measure: integrals against the measure are
// approximated by sum(weight * f(location)). Atoms are represented exactly.
struct QuadNode {
  cplx location;
  cplx weight;
};

inline constexpr int kDefaultContourNodes = 128;
inline constexpr int kSupportAngleSamples = 4096;

namespace detail {

inline void checkFinite(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorKind::InvalidArgument, std::string(what) + " is not finite");
}

inline void validateContour(const ContourComponent& c) {
  checkFinite(c.center, "contour center");
  checkFinite(c.pole, "contour pole");
  checkFinite(c.coef, "contour coefficient");
  if (!std::isfinite(c.radius) || !(c.radius > 0.0))
    fail(ErrorKind::InvalidArgument, "contour radius must be finite and > 0");
  if (c.order < 1) fail(ErrorKind::InvalidArgument, "contour kernel order must be >= 1");
  if (c.nodes < 16) fail(ErrorKind::InvalidArgument, "contour needs at least 16 nodes");
  const double gap = std::abs(std::abs(c.pole - c.center) - c.radius);
  if (gap <= 1e-12 * std::max(1.0, c.radius))
    fail(ErrorKind::InvalidArgument, "contour pole lies on its circle");
}

// Trapezoid rule on the circle: zeta_j = c + r e^{i theta_j}, dzeta = i r e^{i theta} dtheta.
inline void appendContourNodes(const ContourComponent& c, int count, std::vector<QuadNode>& out) {
  for (int j = 0; j < count; ++j) {
    const cplx e = std::polar(1.0, 2.0 * kPi * j / count);
    const cplx zeta = c.center + c.radius * e;
    const cplx w = c.coef * c.radius * e / (static_cast<double>(count) * std::pow(zeta - c.pole, c.order));
    out.push_back({zeta, w});
  }
}

}  // namespace detail

// Compactly supported complex measure: finitely many atoms plus contour
// components. `symmetric` declares invariance under conjugation.
class CompactMeasure {
 public:
  CompactMeasure() = default;
  CompactMeasure(std::vector<Atom> atoms, std::vector<ContourComponent> contours,
                 bool symmetric = false, std::string label = {})
      : atoms_(std::move(atoms)),
        contours_(std::move(contours)),
        symmetric_(symmetric),
        label_(std::move(label)) {
    for (const auto& a : atoms_) {
      detail::checkFinite(a.location, "atom location");
      detail::checkFinite(a.weight, "atom weight");
    }
    for (const auto& c : contours_) detail::validateContour(c);
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<ContourComponent>& contours() const noexcept { return contours_; }
  bool symmetric() const noexcept { return symmetric_; }
  const std::string& label() const noexcept { return label_; }
  bool empty() const noexcept { return atoms_.empty() && contours_.empty(); }
  bool purelyAtomic() const noexcept { return contours_.empty(); }

  CompactMeasure withLabel(std::string label) const {
    CompactMeasure out = *this;
    out.label_ = std::move(label);
    return out;
  }

  // Contour node counts are multiplied by `refine` (node doubling uses 2, 4).
  std::vector<QuadNode> nodes(int refine = 1) const {
    std::vector<QuadNode> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back({a.location, a.weight});
    for (const auto& c : contours_) detail::appendContourNodes(c, c.nodes * refine, out);
    return out;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<ContourComponent> contours_;
  bool symmetric_ = false;
  std::string label_;
};

// ---- constructors for the measures used throughout --------------------------

inline CompactMeasure dirac(cplx location, cplx weight = 1.0) {
  const bool real = location.imag() == 0.0 && weight.imag() == 0.0;
  return CompactMeasure({{location, weight}}, {}, real);
}

// delta_1 - delta_{gamma+1}
inline CompactMeasure atomicDifference(double gamma = 1.0) {
  if (!(gamma > 0.0)) fail(ErrorKind::InvalidArgument, "gamma must be > 0");
  return CompactMeasure({{1.0, 1.0}, {1.0 + gamma, -1.0}}, {}, true,
                        "delta_1 - delta_" + std::to_string(1.0 + gamma));
}

// f -> f'(point) as the Cauchy integral (1/2 pi i) \oint f(z) / (z - point)^2 dz.
inline CompactMeasure derivativeFunctional(double point = 1.0, double radius = 0.25,
                                           int nodes = kDefaultContourNodes) {
  ContourComponent c{point, radius, point, 2, 1.0, nodes};
  return CompactMeasure({}, {c}, true, "derivative functional");
}

// ---- mass and moments --------------------------------------------------------

inline cplx mass(const CompactMeasure& mu) {
  cplx total = 0.0;
  for (const auto& n : mu.nodes()) total += n.weight;
  return total;
}

// Residue value of the total mass: a kernel of order 1 enclosing its pole
// contributes its coefficient, everything else on a contour contributes 0.
inline cplx residueMass(const CompactMeasure& mu) {
  cplx total = 0.0;
  for (const auto& a : mu.atoms()) total += a.weight;
  for (const auto& c : mu.contours())
    if (c.order == 1 && c.poleInside()) total += c.coef;
  return total;
}

struct MomentEstimate {
  double value;
  double error;  // |I_N - I_2N|
};

namespace detail {
inline double absMomentAt(const CompactMeasure& mu, int refine) {
  double total = 0.0;
  for (const auto& n : mu.nodes(refine)) total += std::abs(n.location) * std::abs(n.weight);
  return total;
}
}  // namespace detail

// \int |zeta| d|mu|(zeta), with the contour part estimated by node doubling.
inline MomentEstimate absMomentEstimate(const CompactMeasure& mu) {
  const double coarse = detail::absMomentAt(mu, 1);
  if (mu.purelyAtomic()) return {coarse, 0.0};
  const double fine = detail::absMomentAt(mu, 2);
  return {coarse, std::abs(fine - coarse)};
}

inline double absMoment(const CompactMeasure& mu) { return absMomentEstimate(mu).value; }

// ---- support geometry --------------------------------------------------------

// Largest |arg zeta| over atoms and densely sampled contour circles.
inline double supportHalfAngle(const CompactMeasure& mu) {
  if (mu.empty()) fail(ErrorKind::InvalidArgument, "supportHalfAngle of an empty measure");
  double beta = 0.0;
  for (const auto& a : mu.atoms()) beta = std::max(beta, std::abs(std::arg(a.location)));
  for (const auto& c : mu.contours()) {
    for (int j = 0; j < kSupportAngleSamples; ++j) {
      const cplx z = c.center + std::polar(c.radius, 2.0 * kPi * j / kSupportAngleSamples);
      beta = std::max(beta, std::abs(std::arg(z)));
    }
  }
  return beta;
}

// Support points used for sector membership and sup-estimates: atoms and
// the quadrature nodes of every contour.
inline std::vector<cplx> supportSamples(const CompactMeasure& mu, int refine = 1) {
  std::vector<cplx> out;
  for (const auto& n : mu.nodes(refine)) out.push_back(n.location);
  return out;
}

// ---- algebra -----------------------------------------------------------------

namespace detail {

inline bool nearlyEqual(cplx a, cplx b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Atoms at identical locations are merged, exact zeros dropped.
inline std::vector<Atom> mergeAtoms(std::vector<Atom> atoms) {
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Atom& b) { return b.location == a.location; });
    if (it == out.end())
      out.push_back(a);
    else
      it->weight += a.weight;
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == cplx(0.0, 0.0); });
  return out;
}

inline ContourComponent conjugated(const ContourComponent& c) {
  ContourComponent out = c;
  out.center = std::conj(c.center);
  out.pole = std::conj(c.pole);
  out.coef = std::conj(c.coef);
  return out;
}

}  // namespace detail

// Structural conjugation invariance: every atom/contour has its mirror image.
inline bool isStructurallySymmetric(const CompactMeasure& mu, double tol = 1e-13) {
  for (const auto& a : mu.atoms()) {
    const bool found = std::any_of(mu.atoms().begin(), mu.atoms().end(), [&](const Atom& b) {
      return detail::nearlyEqual(b.location, std::conj(a.location), tol) &&
             detail::nearlyEqual(b.weight, std::conj(a.weight), tol);
    });
    if (!found) return false;
  }
  for (const auto& c : mu.contours()) {
    const auto m = detail::conjugated(c);
    const bool found =
        std::any_of(mu.contours().begin(), mu.contours().end(), [&](const ContourComponent& d) {
          return detail::nearlyEqual(d.center, m.center, tol) &&
                 std::abs(d.radius - m.radius) <= tol * std::max(1.0, m.radius) &&
                 detail::nearlyEqual(d.pole, m.pole, tol) && d.order == m.order &&
                 detail::nearlyEqual(d.coef, m.coef, tol) && d.nodes == m.nodes;
        });
    if (!found) return false;
  }
  return true;
}

// mu-bar(S) = conj(mu(conj S)); FB of the result is z -> conj(F(conj z)).
inline CompactMeasure conjugateMeasure(const CompactMeasure& mu) {
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) atoms.push_back({std::conj(a.location), std::conj(a.weight)});
  std::vector<ContourComponent> contours;
  for (const auto& c : mu.contours()) contours.push_back(detail::conjugated(c));
  return CompactMeasure(std::move(atoms), std::move(contours), mu.symmetric(),
                        mu.label().empty() ? std::string{} : "conj(" + mu.label() + ")");
}

// Multiplies every weight (atoms and contour coefficients) by `factor`.
inline CompactMeasure scaleWeights(const CompactMeasure& mu, cplx factor) {
  std::vector<Atom> atoms = mu.atoms();
  for (auto& a : atoms) a.weight *= factor;
  std::vector<ContourComponent> contours = mu.contours();
  for (auto& c : contours) c.coef *= factor;
  const bool sym = mu.symmetric() && factor.imag() == 0.0;
  return CompactMeasure(std::move(atoms), std::move(contours), sym, mu.label());
}

inline CompactMeasure negate(const CompactMeasure& mu) {
  auto out = scaleWeights(mu, -1.0);
  return out.withLabel(mu.label().empty() ? std::string{} : "-(" + mu.label() + ")");
}

inline CompactMeasure add(const CompactMeasure& mu, const CompactMeasure& nu) {
  std::vector<Atom> atoms = mu.atoms();
  atoms.insert(atoms.end(), nu.atoms().begin(), nu.atoms().end());
  std::vector<ContourComponent> contours = mu.contours();
  contours.insert(contours.end(), nu.contours().begin(), nu.contours().end());
  return CompactMeasure(detail::mergeAtoms(std::move(atoms)), std::move(contours),
                        mu.symmetric() && nu.symmetric());
}

// FB(mu * nu) = FB(mu) FB(nu). One factor must be purely atomic; atoms
// translate contours and scale their coefficients.
inline CompactMeasure convolve(const CompactMeasure& mu, const CompactMeasure& nu) {
  if (!mu.purelyAtomic() && !nu.purelyAtomic())
    fail(ErrorKind::UnsupportedCombination, "convolution of two contour components");
  const CompactMeasure& atomic = mu.purelyAtomic() ? mu : nu;
  const CompactMeasure& other = mu.purelyAtomic() ? nu : mu;

  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms())
    for (const auto& b : nu.atoms()) atoms.push_back({a.location + b.location, a.weight * b.weight});

  std::vector<ContourComponent> contours;
  for (const auto& a : atomic.atoms()) {
    for (const auto& c : other.contours()) {
      ContourComponent t = c;
      t.center += a.location;
      t.pole += a.location;
      t.coef *= a.weight;
      contours.push_back(t);
    }
  }
  CompactMeasure out(detail::mergeAtoms(std::move(atoms)), std::move(contours));
  const bool sym = (mu.symmetric() && nu.symmetric()) || isStructurallySymmetric(out);
  std::string label;
  if (!mu.label().empty() && !nu.label().empty()) label = "(" + mu.label() + ")*(" + nu.label() + ")";
  return CompactMeasure(out.atoms(), out.contours(), sym, label);
}

// Pushforward under zeta -> u zeta, so FB(result)(z) = FB(mu)(u z). A kernel
// of order k picks up the factor u^(k-1) under the change of variables.
inline CompactMeasure scaleSupport(const CompactMeasure& mu, cplx u) {
  if (u == cplx(0.0, 0.0)) fail(ErrorKind::InvalidArgument, "scaleSupport by u = 0");
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) atoms.push_back({u * a.location, a.weight});
  std::vector<ContourComponent> contours;
  for (const auto& c : mu.contours()) {
    ContourComponent t = c;
    t.center = u * c.center;
    t.radius = std::abs(u) * c.radius;
    t.pole = u * c.pole;
    t.coef = c.coef * std::pow(u, c.order - 1);
    contours.push_back(t);
  }
  const bool sym = mu.symmetric() && u.imag() == 0.0;
  return CompactMeasure(std::move(atoms), std::move(contours), sym, mu.label());
}

}  // namespace fbcalc
