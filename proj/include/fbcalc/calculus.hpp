#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "fbcalc/errors.hpp"
#include "fbcalc/measure.hpp"
#include "fbcalc/operator.hpp"
#include "fbcalc/quadrature.hpp"
#include "fbcalc/transform.hpp"

namespace fbcalc {

inline constexpr double kCalculusQuadTolerance = 1e-6;

struct CalculusResult {
  Operator matrix;
  double quad_error = 0.0;  // node-doubling estimate, 0 for atomic measures
  cplx u;
  std::string measure_id;
};

namespace detail {

// Every point u * zeta of the support (atoms and densely sampled circles)
// must lie in the model's sector.
inline void requireCalculusDomain(const SemigroupModel& model, const CompactMeasure& mu, cplx u) {
  auto check = [&](cplx zeta) {
    if (!model.admits(u * zeta))
      fail(ErrorKind::DomainViolation, "u * supp(mu) leaves the model's sector");
  };
  for (const auto& a : mu.atoms()) check(a.location);
  for (const auto& c : mu.contours())
    for (int j = 0; j < kSupportAngleSamples; ++j)
      check(c.center + std::polar(c.radius, 2.0 * kPi * j / kSupportAngleSamples));
}

inline Operator calculusSum(const SemigroupModel& model, const std::vector<QuadNode>& nodes, cplx u) {
  Operator acc = Operator::zero(model.dimension(), model.isDiagonal());
  for (const auto& n : nodes) acc.addScaled(n.weight, semigroupAt(model, u * n.location));
  return acc;
}

}  // namespace detail

// F(-uA) = \int T(u zeta) dmu(zeta) as a finite sum of semigroup values.
// Contour parts are checked by node doubling; the returned matrix uses the
// base node count so it matches evalFB.
inline CalculusResult functionalCalculus(const SemigroupModel& model, const CompactMeasure& mu, cplx u) {
  detail::requireCalculusDomain(model, mu, u);
  CalculusResult out;
  out.u = u;
  out.measure_id = mu.label();
  out.matrix = detail::calculusSum(model, mu.nodes(1), u);
  if (mu.purelyAtomic()) return out;

  Operator previous = out.matrix;
  for (int refine = 2; refine <= 4; refine *= 2) {
    Operator finer = detail::calculusSum(model, mu.nodes(refine), u);
    const double err = opNorm(finer - previous);
    if (err <= kCalculusQuadTolerance) {
      out.quad_error = err;
      if (refine > 2) out.matrix = previous;
      return out;
    }
    previous = std::move(finer);
  }
  fail(ErrorKind::NumericFailure, "functional calculus quadrature did not converge");
}

// ---- identity of the resolvent-type factorisation -------------------------------

struct Lemma42Result {
  double residual = 0.0;   // ||F(-uA) - F(lambda) I - (uA + lambda I) J||
  double lhs_norm = 0.0;   // ||F(-uA) - F(lambda) I||
  double order_gap = 0.0;  // ||J_order - J_{order+16}||
};

namespace detail {

// J = \int_0^1 \int T(s zeta u) e^{(s-1) zeta lambda} zeta dmu(zeta) ds
inline Operator lemma42Integral(const SemigroupModel& model, const std::vector<QuadNode>& nodes, cplx u,
                                cplx lambda, int order) {
  const auto rule = gaussLegendre(order, 0.0, 1.0);
  Operator acc = Operator::zero(model.dimension(), model.isDiagonal());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = rule.nodes[k];
    for (const auto& n : nodes) {
      const cplx coef = rule.weights[k] * n.weight * n.location * std::exp((s - 1.0) * n.location * lambda);
      acc.addScaled(coef, semigroupAt(model, s * n.location * u));
    }
  }
  return acc;
}

}  // namespace detail

// Both sides of F(-uA) - F(lambda) I = (uA + lambda I) J in the inverse-free
// product form, with J by Gauss-Legendre in s.
inline Lemma42Result lemma42Check(const SemigroupModel& model, const CompactMeasure& mu, cplx u, cplx lambda,
                                  int quad_order = 32) {
  if (quad_order < 8) fail(ErrorKind::InvalidArgument, "s-integral order must be >= 8");
  const auto calc = functionalCalculus(model, mu, u);
  const cplx f_lambda = evalFB(mu, lambda);
  const auto nodes = mu.nodes(1);
  const Operator j = detail::lemma42Integral(model, nodes, u, lambda, quad_order);
  const Operator j_fine = detail::lemma42Integral(model, nodes, u, lambda, quad_order + 16);

  const Operator a = generator(model);
  const Operator shifted = a * u + Operator::identity(model.dimension(), model.isDiagonal()) * lambda;
  const Operator lhs = calc.matrix - Operator::identity(model.dimension(), model.isDiagonal()) * f_lambda;

  Lemma42Result out;
  out.residual = opNorm(lhs - shifted * j);
  out.lhs_norm = opNorm(lhs);
  out.order_gap = opNorm(j - j_fine);
  return out;
}

inline double lemma42Residual(const SemigroupModel& model, const CompactMeasure& mu, cplx u, cplx lambda,
                              int quad_order = 32) {
  return lemma42Check(model, mu, u, lambda, quad_order).residual;
}

// ---- bound on the divided difference ----------------------------------------------

struct Cor43Result {
  double lhs = 0.0;
  double rhs = 0.0;
  double C = 0.0;
  double B = 0.0;        // sampled sup ||T(s zeta u)||
  double exp_sup = 0.0;  // sup |e^{(s-1) zeta lambda}|
  double abs_moment = 0.0;
  bool pass = false;
};

inline constexpr int kCor43SGrid = 16;
inline constexpr int kCor43SupportSamples = 16;

// lhs = ||(F(-uA) - F(lambda) I)(uA + lambda I)^{-1}||, rhs = C \int |zeta| d|mu|
// with C = B * sup |e^{(s-1) zeta lambda}| computed from samples.
inline Cor43Result cor43Check(const SemigroupModel& model, const CompactMeasure& mu, cplx u, cplx lambda) {
  if (std::abs(lambda) > 1.0 + 1e-12) fail(ErrorKind::InvalidArgument, "cor43Check needs |lambda| <= 1");
  const auto calc = functionalCalculus(model, mu, u);
  const Eigen::Index n = model.dimension();
  const bool diag = model.isDiagonal();
  const Operator a = generator(model);
  const Operator shifted = a * u + Operator::identity(n, diag) * lambda;
  const Operator inv = resolvent(shifted, 0.0);
  const Operator lhs_op = (calc.matrix - Operator::identity(n, diag) * evalFB(mu, lambda)) * inv;

  const auto support = supportSamples(mu);
  std::vector<cplx> thinned;
  const std::size_t stride = std::max<std::size_t>(1, support.size() / kCor43SupportSamples);
  for (std::size_t i = 0; i < support.size() && thinned.size() < kCor43SupportSamples; i += stride)
    thinned.push_back(support[i]);

  std::vector<cplx> points;
  Cor43Result out;
  out.exp_sup = 0.0;
  for (int k = 0; k < kCor43SGrid; ++k) {
    const double s = static_cast<double>(k) / (kCor43SGrid - 1);
    for (const auto zeta : thinned) points.push_back(s * zeta * u);
    for (const auto zeta : support)
      out.exp_sup = std::max(out.exp_sup, std::exp(((s - 1.0) * zeta * lambda).real()));
  }
  out.B = boundConstant(model, points);
  out.C = out.B * out.exp_sup;
  out.abs_moment = absMoment(mu);
  out.lhs = opNorm(lhs_op);
  out.rhs = out.C * out.abs_moment;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-8);
  return out;
}

// ---- resolvent on the exterior region ------------------------------------------------

struct RegionGrid {
  double r_min = 1e-3;
  double r_max = 1e3;
  int radii = 64;
  int angles = 64;
};

struct Lemma44Result {
  double sup = 0.0;
  double formula_sup = std::numeric_limits<double>::quiet_NaN();  // diagonal: max 1/dist(-z, spec)
  double formula_gap = std::numeric_limits<double>::quiet_NaN();  // max pointwise |sampled - formula|
  double continuous_sup = std::numeric_limits<double>::quiet_NaN();
  double inner_ring_ratio = 0.0;
  bool unbounded = false;
  int sampled = 0;
  int skipped = 0;
};

// sup of ||(A + zI)^{-1}|| over a log-polar sample of
// E = {z : pi/2 - gap <= |arg z| <= pi}, each sample used with its conjugate.
inline Lemma44Result lemma44RegionSup(const SemigroupModel& model, double gap, const RegionGrid& grid = {}) {
  if (!(gap > 0.0 && gap < kPi / 2)) fail(ErrorKind::InvalidArgument, "angle gap must lie in (0, pi/2)");
  if (!model.isDiagonal() && !model.isJordan())
    fail(ErrorKind::UnsupportedModel, "region probe needs a diagonal or Jordan model");
  const Operator a = generator(model);
  const auto radii = logGrid(grid.r_min, grid.r_max, grid.radii);
  const double phi_lo = kPi / 2 - gap;

  Lemma44Result out;
  std::vector<double> ring_max(radii.size(), 0.0);
  double formula = 0.0;
  double gap_max = 0.0;
  for (std::size_t ir = 0; ir < radii.size(); ++ir) {
    for (int ia = 0; ia < grid.angles; ++ia) {
      const double phi = phi_lo + (kPi - phi_lo) * ia / std::max(grid.angles - 1, 1);
      for (const double sign : {1.0, -1.0}) {
        const cplx z = std::polar(radii[ir], sign * phi);
        ++out.sampled;
        double value = 0.0;
        try {
          value = opNorm(resolvent(a, z));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::SingularResolvent) throw;
          ++out.skipped;
          continue;
        }
        ring_max[ir] = std::max(ring_max[ir], value);
        out.sup = std::max(out.sup, value);
        if (a.isDiagonal()) {
          const double dist = (a.diagonalEntries().array() + z).abs().minCoeff();
          formula = std::max(formula, 1.0 / dist);
          gap_max = std::max(gap_max, std::abs(value - 1.0 / dist));
        }
      }
    }
  }
  if (a.isDiagonal()) {
    out.formula_sup = formula;
    out.formula_gap = gap_max;
    const auto* d = std::get_if<DiagonalMultiplication>(&model.variant());
    if (d->phase == 0.0) {
      const double nearest = a.diagonalEntries().cwiseAbs().minCoeff();
      out.continuous_sup = nearest > 0.0 ? 1.0 / (nearest * std::cos(gap))
                                         : std::numeric_limits<double>::infinity();
    }
  }
  // A bounded resolvent tends to ||A^{-1}|| as z -> 0; growth like 1/|z|
  // raises the innermost ring by about a decade per decade of radius.
  std::size_t decade = 0;
  while (decade + 1 < radii.size() && radii[decade] < 10.0 * radii.front()) ++decade;
  out.inner_ring_ratio = ring_max[decade] > 0.0 ? ring_max.front() / ring_max[decade] : 0.0;
  out.unbounded = out.skipped > 0 || out.inner_ring_ratio > 5.0;
  return out;
}

// ---- lower-bound probes ---------------------------------------------------------------

struct ProbeRow {
  cplx u;
  double norm_F = 0.0;
  double rho_F = 0.0;
  double norm_product = 0.0;  // ||F(-uA) F~(-uA)||
  double benchmark = 0.0;     // sup_{t>0} |F(t)|
  double benchmark_sq = 0.0;
  double margin = 0.0;          // norm_F - benchmark
  double margin_product = 0.0;  // norm_product - benchmark_sq
};

// No pass/fail here: finite matrices have bounded generators and sit outside
// the hypotheses of the quasinilpotent lower bounds.
inline std::vector<ProbeRow> lowerBoundProbe(const SemigroupModel& model, const CompactMeasure& mu,
                                             const std::vector<cplx>& u_list, const RaySearchOptions& opts = {}) {
  const double benchmark = rayMax(mu, 0.0, opts).value;
  const CompactMeasure mu_bar = conjugateMeasure(mu);
  std::vector<ProbeRow> rows;
  for (const auto u : u_list) {
    const auto f = functionalCalculus(model, mu, u);
    const auto f_tilde = functionalCalculus(model, mu_bar, u);
    ProbeRow row;
    row.u = u;
    row.norm_F = opNorm(f.matrix);
    row.rho_F = specRadius(f.matrix);
    row.norm_product = opNorm(f.matrix * f_tilde.matrix);
    row.benchmark = benchmark;
    row.benchmark_sq = benchmark * benchmark;
    row.margin = row.norm_F - row.benchmark;
    row.margin_product = row.norm_product - row.benchmark_sq;
    rows.push_back(row);
  }
  return rows;
}

// ---- spectral-radius hypothesis -------------------------------------------------------

struct Hyp32Options {
  int angles = 16;
  int radii = 32;
  double tolerance = 5e-4;
  RaySearchOptions ray;
};

struct Hyp32Result {
  double lhs = 0.0;  // max over the t-grid of rho(F(-tA))
  double rhs = 0.0;  // sup over S_{alpha-beta} of |F|
  double margin = 0.0;
  bool satisfied = false;  // margin > tolerance
  cplx t_star;
  bool two_atom_applicable = false;
  double gamma = 0.0;
  double two_atom_lhs = 0.0;
  double two_atom_rhs = 2.0;
  bool two_atom_satisfied = false;
};

namespace detail {

// Returns gamma when mu = delta_1 - delta_{gamma+1}, otherwise NaN.
inline double atomicDifferenceGamma(const CompactMeasure& mu) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!mu.purelyAtomic() || mu.atoms().size() != 2) return nan;
  const Atom* plus = nullptr;
  const Atom* minus = nullptr;
  for (const auto& a : mu.atoms()) {
    if (a.weight == cplx(1.0, 0.0)) plus = &a;
    if (a.weight == cplx(-1.0, 0.0)) minus = &a;
  }
  if (plus == nullptr || minus == nullptr || plus->location != cplx(1.0, 0.0) ||
      minus->location.imag() != 0.0 || !(minus->location.real() > 1.0))
    return nan;
  return minus->location.real() - 1.0;
}

}  // namespace detail

// Checks sup_{t in S_{alpha-beta}, |t| <= t0} rho(F(-tA)) < sup_{S_{alpha-beta}} |F|
// on a grid of angles (boundary angle included) and log-spaced radii in (1e-4 t0, t0].
inline Hyp32Result hypothesisCheck32(const SemigroupModel& model, const CompactMeasure& mu, double alpha,
                                     double beta, double t0, const Hyp32Options& opts = {}) {
  const double support = supportHalfAngle(mu);
  if (!(beta >= support - 1e-15) || !(beta < alpha) || !(alpha < kPi / 2))
    fail(ErrorKind::InvalidArgument, "need supportHalfAngle(mu) <= beta < alpha < pi/2");
  if (!(t0 > 0.0)) fail(ErrorKind::InvalidArgument, "t0 must be > 0");
  const double gap = alpha - beta;

  std::vector<double> thetas;
  const int na = std::max(opts.angles, 2);
  for (int i = 0; i < na; ++i)
    thetas.push_back(mu.symmetric() ? gap * i / (na - 1) : -gap + 2.0 * gap * i / (na - 1));

  Hyp32Result out;
  out.lhs = -1.0;
  for (const double th : thetas) {
    for (int k = 1; k <= opts.radii; ++k) {
      const double r = t0 * std::pow(10.0, -4.0 + 4.0 * k / opts.radii);
      const cplx t = std::polar(r, th);
      const double rho = specRadius(functionalCalculus(model, mu, t).matrix);
      if (rho > out.lhs) {
        out.lhs = rho;
        out.t_star = t;
      }
    }
  }
  out.rhs = sectorSup(mu, gap, opts.ray);
  out.margin = out.rhs - out.lhs;
  out.satisfied = out.margin > opts.tolerance;

  const double gamma = detail::atomicDifferenceGamma(mu);
  if (!std::isnan(gamma)) {
    out.two_atom_applicable = true;
    out.gamma = gamma;
    out.two_atom_lhs = out.lhs;  // same operator T(t) - T((gamma+1)t) on the same t-grid
    out.two_atom_satisfied = out.two_atom_lhs < out.two_atom_rhs;
  }
  return out;
}

}  // namespace fbcalc
