#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"

namespace fbcalc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxDenseDimension = 512;

// Finite-dimensional operator stored either as a diagonal or densely.
// Diagonal-by-diagonal algebra stays diagonal, anything else densifies.
class Operator {
 public:
  Operator() = default;

  static Operator diagonal(Vector d) {
    Operator op;
    op.diag_ = std::move(d);
    op.is_diagonal_ = true;
    return op;
  }
  static Operator dense(Matrix m) {
    Operator op;
    op.dense_ = std::move(m);
    op.is_diagonal_ = false;
    return op;
  }
  static Operator zero(Eigen::Index n, bool diagonal) {
    return diagonal ? Operator::diagonal(Vector::Zero(n)) : Operator::dense(Matrix::Zero(n, n));
  }
  static Operator identity(Eigen::Index n, bool diagonal) {
    return diagonal ? Operator::diagonal(Vector::Ones(n)) : Operator::dense(Matrix::Identity(n, n));
  }

  bool isDiagonal() const noexcept { return is_diagonal_; }
  Eigen::Index size() const noexcept { return is_diagonal_ ? diag_.size() : dense_.rows(); }
  const Vector& diagonalEntries() const { return diag_; }
  const Matrix& denseMatrix() const { return dense_; }

  Matrix toDense() const { return is_diagonal_ ? Matrix(diag_.asDiagonal()) : dense_; }

  Operator& operator+=(const Operator& o) {
    if (is_diagonal_ && o.is_diagonal_) {
      diag_ += o.diag_;
    } else {
      densify();
      if (o.is_diagonal_)
        dense_.diagonal() += o.diag_;
      else
        dense_ += o.dense_;
    }
    return *this;
  }
  Operator& operator-=(const Operator& o) { return *this += o * cplx(-1.0); }
  Operator& operator*=(cplx s) {
    if (is_diagonal_)
      diag_ *= s;
    else
      dense_ *= s;
    return *this;
  }

  // this += s * o
  void addScaled(cplx s, const Operator& o) {
    if (is_diagonal_ && o.is_diagonal_) {
      diag_ += s * o.diag_;
    } else {
      densify();
      if (o.is_diagonal_)
        dense_.diagonal() += s * o.diag_;
      else
        dense_ += s * o.dense_;
    }
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }

  friend Operator operator*(const Operator& a, const Operator& b) {
    if (a.is_diagonal_ && b.is_diagonal_) return Operator::diagonal(a.diag_.cwiseProduct(b.diag_));
    if (a.is_diagonal_) return Operator::dense(a.diag_.asDiagonal() * b.dense_);
    if (b.is_diagonal_) return Operator::dense(a.dense_ * b.diag_.asDiagonal());
    return Operator::dense(a.dense_ * b.dense_);
  }

 private:
  void densify() {
    if (!is_diagonal_) return;
    dense_ = Matrix(diag_.asDiagonal());
    diag_.resize(0);
    is_diagonal_ = false;
  }

  Vector diag_;
  Matrix dense_;
  bool is_diagonal_ = true;
};

// ---- matrix exponential --------------------------------------------------------

namespace detail {

inline double norm1(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade approximant r_m(A) = (V - U)^{-1} (V + U) with U odd, V even in A.
inline Matrix padeApprox(const Matrix& a, int degree) {
  static const double b3[] = {120., 60., 12., 1.};
  static const double b5[] = {30240., 15120., 3360., 420., 30., 1.};
  static const double b7[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
  static const double b9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                              2162160., 110880., 3960., 90., 1.};
  static const double b13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800.,  129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,       1323241920.,
                               40840800.,          960960.,            16380.,
                               182.,               1.};
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix u, v;
  if (degree == 13) {
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) + b13[7] * a6 + b13[5] * a4 +
             b13[3] * a2 + b13[1] * id);
    v = a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) + b13[6] * a6 + b13[4] * a4 +
        b13[2] * a2 + b13[0] * id;
  } else {
    const double* b = degree == 3 ? b3 : degree == 5 ? b5 : degree == 7 ? b7 : b9;
    Matrix power = id;
    Matrix odd = b[1] * id;
    Matrix even = b[0] * id;
    for (int k = 2; k <= degree; k += 2) {
      power = power * a2;
      even += b[k] * power;
      odd += b[k + 1] * power;
    }
    u = a * odd;
    v = even;
  }
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace detail

// Scaling and squaring with Pade degrees 3..13 and the usual 1-norm
// thresholds for double precision.
inline Matrix expm(const Matrix& a) {
  static const double theta[] = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                 2.097847961257068e0, 5.371920351148152e0};
  static const int degrees[] = {3, 5, 7, 9, 13};
  const double norm = detail::norm1(a);
  if (!std::isfinite(norm)) fail(ErrorKind::NumericFailure, "expm of a non-finite matrix");
  for (int i = 0; i < 4; ++i)
    if (norm <= theta[i]) return detail::padeApprox(a, degrees[i]);
  int s = 0;
  if (norm > theta[4]) s = static_cast<int>(std::ceil(std::log2(norm / theta[4])));
  Matrix r = detail::padeApprox(a / std::ldexp(1.0, s), 13);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

// ---- semigroup models ----------------------------------------------------------

// T(t) x = x^{omega t} on a grid of (0, 1], omega = e^{i phase}; the
// generator is diag(omega log x).
struct DiagonalMultiplication {
  std::vector<double> grid;
  double phase = 0.0;
};

// A = -lambda0 I + c N with N the subdiagonal shift.
struct JordanSurrogate {
  int n = 1;
  double c = 1.0;
  double lambda0 = 0.0;
};

struct GeneralMatrix {
  Matrix generator;
};

class SemigroupModel {
 public:
  using Variant = std::variant<DiagonalMultiplication, JordanSurrogate, GeneralMatrix>;

  static SemigroupModel diagonal(std::vector<double> grid, double phase = 0.0) {
    if (grid.empty()) fail(ErrorKind::InvalidArgument, "diagonal model needs a nonempty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i]) || !(grid[i] > 0.0 && grid[i] <= 1.0))
        fail(ErrorKind::InvalidArgument, "diagonal grid points must lie in (0, 1]");
      if (i > 0 && !(grid[i] > grid[i - 1]))
        fail(ErrorKind::InvalidArgument, "diagonal grid must be strictly increasing");
    }
    if (!(std::abs(phase) < kPi / 2)) fail(ErrorKind::InvalidArgument, "diagonal phase must be < pi/2");
    return SemigroupModel(DiagonalMultiplication{std::move(grid), phase}, kPi / 2 - std::abs(phase));
  }

  static SemigroupModel jordan(int n, double c, double lambda0 = 0.0) {
    if (n < 1 || n > kMaxDenseDimension)
      fail(ErrorKind::InvalidArgument, "Jordan surrogate dimension must lie in [1, 512]");
    if (!std::isfinite(c) || !std::isfinite(lambda0) || lambda0 < 0.0)
      fail(ErrorKind::InvalidArgument, "Jordan surrogate needs finite c and lambda0 >= 0");
    return SemigroupModel(JordanSurrogate{n, c, lambda0}, kPi / 2);
  }

  static SemigroupModel matrix(Matrix generator, double sector_half_angle = kPi / 2) {
    if (generator.rows() != generator.cols() || generator.rows() < 1 ||
        generator.rows() > kMaxDenseDimension)
      fail(ErrorKind::InvalidArgument, "generator must be square with dimension in [1, 512]");
    if (!generator.allFinite()) fail(ErrorKind::InvalidArgument, "generator has non-finite entries");
    if (!(sector_half_angle > 0.0 && sector_half_angle <= kPi / 2))
      fail(ErrorKind::InvalidArgument, "declared sector half-angle must lie in (0, pi/2]");
    return SemigroupModel(GeneralMatrix{std::move(generator)}, sector_half_angle);
  }

  const Variant& variant() const noexcept { return variant_; }
  double sectorHalfAngle() const noexcept { return sector_half_angle_; }
  bool isDiagonal() const { return std::holds_alternative<DiagonalMultiplication>(variant_); }
  bool isJordan() const { return std::holds_alternative<JordanSurrogate>(variant_); }

  Eigen::Index dimension() const {
    if (auto d = std::get_if<DiagonalMultiplication>(&variant_)) return static_cast<Eigen::Index>(d->grid.size());
    if (auto j = std::get_if<JordanSurrogate>(&variant_)) return j->n;
    return std::get<GeneralMatrix>(variant_).generator.rows();
  }

  // Open sector of declared analyticity, plus t = 0.
  bool admits(cplx t) const {
    if (t == cplx(0.0, 0.0)) return true;
    return t.real() > 0.0 && std::abs(std::arg(t)) < sector_half_angle_;
  }

 private:
  SemigroupModel(Variant v, double half_angle) : variant_(std::move(v)), sector_half_angle_(half_angle) {}

  Variant variant_;
  double sector_half_angle_;
};

inline Operator generator(const SemigroupModel& model) {
  if (auto d = std::get_if<DiagonalMultiplication>(&model.variant())) {
    const cplx omega = std::polar(1.0, d->phase);
    Vector v(static_cast<Eigen::Index>(d->grid.size()));
    for (std::size_t i = 0; i < d->grid.size(); ++i) v[static_cast<Eigen::Index>(i)] = omega * std::log(d->grid[i]);
    return Operator::diagonal(std::move(v));
  }
  if (auto j = std::get_if<JordanSurrogate>(&model.variant())) {
    Matrix a = Matrix::Zero(j->n, j->n);
    a.diagonal().setConstant(-j->lambda0);
    for (int i = 0; i + 1 < j->n; ++i) a(i + 1, i) = j->c;
    return Operator::dense(std::move(a));
  }
  return Operator::dense(std::get<GeneralMatrix>(model.variant()).generator);
}

// e^{tA}. Diagonal models use scalar exponentials, Jordan surrogates the
// finite series e^{-lambda0 t} sum_{k<n} (tc)^k N^k / k!, general matrices expm.
inline Operator semigroupAt(const SemigroupModel& model, cplx t) {
  if (!model.admits(t)) fail(ErrorKind::DomainViolation, "t lies outside the model's sector");
  if (auto d = std::get_if<DiagonalMultiplication>(&model.variant())) {
    const cplx omega = std::polar(1.0, d->phase);
    Vector v(static_cast<Eigen::Index>(d->grid.size()));
    for (std::size_t i = 0; i < d->grid.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = std::exp(t * omega * std::log(d->grid[i]));
    return Operator::diagonal(std::move(v));
  }
  if (auto j = std::get_if<JordanSurrogate>(&model.variant())) {
    Matrix m = Matrix::Zero(j->n, j->n);
    const cplx scale = std::exp(-j->lambda0 * t);
    cplx term = scale;
    for (int k = 0; k < j->n; ++k) {
      if (k > 0) term *= t * j->c / static_cast<double>(k);
      for (int i = k; i < j->n; ++i) m(i, i - k) = term;
    }
    return Operator::dense(std::move(m));
  }
  return Operator::dense(expm(t * std::get<GeneralMatrix>(model.variant()).generator));
}

// ---- norms and spectra ---------------------------------------------------------

namespace detail {

inline double rayleigh(const Matrix& b, const Vector& v) { return (v.adjoint() * (b * v))(0).real(); }

}  // namespace detail

// Largest singular value by power iteration on M* M. When plain iteration
// stalls, it continues on repeated squares of M* M, which converge at the
// squared rate; the final Rayleigh quotient is always taken with M* M.
inline double opNorm(const Matrix& m, double rel_tol = 1e-10, int max_iter = 10000) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) fail(ErrorKind::NumericFailure, "opNorm of a non-finite matrix");
  const Matrix b = m.adjoint() * m;
  const double scale = b.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const Eigen::Index n = b.rows();

  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.1 * std::sin(1.0 + i), 0.05 * std::cos(2.0 + i));
  v.normalize();

  auto converged = [&](const Vector& x, double lambda) {
    return (b * x - lambda * x).norm() <= rel_tol * std::max(lambda, 1e-300);
  };

  Matrix power = b / scale;
  double lambda = 0.0;
  int iter = 0;
  int squarings = 0;
  const int plain_budget = 200;
  while (iter < max_iter) {
    for (int k = 0; k < plain_budget && iter < max_iter; ++k, ++iter) {
      Vector w = power * v;
      const double nw = w.norm();
      if (nw == 0.0) return 0.0;
      v = w / nw;
      lambda = detail::rayleigh(b, v);
      if (converged(v, lambda)) return std::sqrt(std::max(lambda, 0.0));
    }
    if (squarings < 60) {
      power = power * power;
      const double s = power.cwiseAbs().maxCoeff();
      if (s == 0.0 || !std::isfinite(s)) break;
      power /= s;
      ++squarings;
    }
  }
  throw Error(ErrorKind::NumericFailure, "power iteration did not converge",
              std::sqrt(std::max(lambda, 0.0)));
}

inline double opNorm(const Operator& op) {
  if (op.isDiagonal()) return op.size() == 0 ? 0.0 : op.diagonalEntries().cwiseAbs().maxCoeff();
  return opNorm(op.denseMatrix());
}

inline bool isTriangular(const Matrix& m) {
  return m.isUpperTriangular(0.0) || m.isLowerTriangular(0.0);
}

inline double specRadius(const Matrix& m) {
  if (m.rows() > kMaxDenseDimension)
    fail(ErrorKind::InvalidArgument, "specRadius is limited to dimension 512");
  if (m.size() == 0) return 0.0;
  if (isTriangular(m)) return m.diagonal().cwiseAbs().maxCoeff();
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::NumericFailure, "eigensolver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

inline double specRadius(const Operator& op) {
  if (op.isDiagonal()) return op.size() == 0 ? 0.0 : op.diagonalEntries().cwiseAbs().maxCoeff();
  return specRadius(op.denseMatrix());
}

// ---- resolvent ------------------------------------------------------------------

inline constexpr double kSingularConditionLimit = 1e14;

// (A + zI)^{-1}.
inline Operator resolvent(const Operator& a, cplx z) {
  if (a.isDiagonal()) {
    const Vector shifted = a.diagonalEntries().array() + z;
    const double lo = shifted.cwiseAbs().minCoeff();
    const double hi = shifted.cwiseAbs().maxCoeff();
    if (lo == 0.0 || hi / lo > kSingularConditionLimit)
      fail(ErrorKind::SingularResolvent, "-z is (numerically) an eigenvalue of A");
    return Operator::diagonal(shifted.cwiseInverse());
  }
  Matrix shifted = a.denseMatrix();
  shifted.diagonal().array() += z;
  Eigen::PartialPivLU<Matrix> lu(shifted);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || 1.0 / rcond > kSingularConditionLimit)
    fail(ErrorKind::SingularResolvent, "A + zI is singular or numerically singular");
  const Eigen::Index n = shifted.rows();
  Matrix x = lu.solve(Matrix::Identity(n, n));
  const double residual = detail::norm1(shifted * x - Matrix::Identity(n, n));
  if (!(residual <= 1e-10 * std::max(1.0, 1.0 / rcond)))
    fail(ErrorKind::SingularResolvent, "resolvent residual too large");
  return Operator::dense(std::move(x));
}

inline Operator resolvent(const SemigroupModel& model, cplx z) { return resolvent(generator(model), z); }

// ---- characters -----------------------------------------------------------------

struct CharacterData {
  std::vector<cplx> a;  // chi(T(t)) = e^{-t a}
};

inline CharacterData characterData(const SemigroupModel& model) {
  const auto* d = std::get_if<DiagonalMultiplication>(&model.variant());
  if (d == nullptr) fail(ErrorKind::UnsupportedModel, "character data needs a diagonal model");
  const cplx omega = std::polar(1.0, d->phase);
  CharacterData out;
  for (const double x : d->grid) out.a.push_back(-omega * std::log(x));
  return out;
}

// sup of ||T(t)|| over the given sample points.
inline double boundConstant(const SemigroupModel& model, const std::vector<cplx>& points) {
  double bound = 0.0;
  for (const auto t : points) bound = std::max(bound, opNorm(semigroupAt(model, t)));
  return bound;
}

// Log-spaced grid of `count` points on [lo, hi] (lo > 0).
inline std::vector<double> logGrid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi >= lo) || count < 1) fail(ErrorKind::InvalidArgument, "bad log grid");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = hi;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace fbcalc
