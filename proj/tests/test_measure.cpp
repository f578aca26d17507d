#include <gtest/gtest.h>

#include <map>
#include <random>

#include "fbcalc/json_io.hpp"
#include "fbcalc/measure.hpp"
#include "fbcalc/transform.hpp"

using namespace fbcalc;

namespace {

// Oracle: FB by direct summation of the closed forms e^{-z zeta}.
cplx atomicFB(const std::vector<std::pair<cplx, cplx>>& atoms, cplx z) {
  cplx s = 0.0;
  for (const auto& [loc, w] : atoms) s += w * std::exp(-z * loc);
  return s;
}

std::vector<cplx> randomDisk(int count, double radius, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
  return out;
}

}  // namespace

TEST(Mass, Examples) {
  EXPECT_EQ(mass(atomicDifference()), cplx(0.0));
  EXPECT_EQ(mass(dirac(1.0)), cplx(1.0));
  const auto d = derivativeFunctional();
  EXPECT_LT(std::abs(mass(d)), 1e-14);
  EXPECT_EQ(residueMass(d), cplx(0.0));
}

TEST(Mass, OrderOneKernelContributesCoefficient) {
  const ContourComponent inside{cplx(1.0, 0.5), 0.3, cplx(1.1, 0.5), 1, cplx(2.0, -1.0), 64};
  const ContourComponent outside{cplx(1.0, 0.0), 0.3, cplx(2.0, 0.0), 1, cplx(2.0, -1.0), 64};
  const CompactMeasure mu({}, {inside, outside});
  EXPECT_LT(std::abs(mass(mu) - residueMass(mu)), 1e-13);
  EXPECT_LT(std::abs(mass(mu) - cplx(2.0, -1.0)), 1e-13);
}

TEST(Mass, ConvolutionIsMultiplicative) {
  const CompactMeasure mu({{1.0, 2.0}, {cplx(1, 1), cplx(0.5, 1)}}, {});
  const CompactMeasure nu({{0.5, cplx(0, 1)}, {2.0, -3.0}}, {});
  EXPECT_LT(std::abs(mass(convolve(mu, nu)) - mass(mu) * mass(nu)), 1e-14);
}

TEST(AbsMoment, Examples) {
  EXPECT_DOUBLE_EQ(absMoment(atomicDifference()), 3.0);
  EXPECT_EQ(absMoment(CompactMeasure()), 0.0);
}

TEST(AbsMoment, DerivativeFunctionalAgainstRefinedOracle) {
  // |density| = 1/(2 pi r^2) on the circle |zeta - 1| = r, |d zeta| = r d theta,
  // so the moment is the mean of |1 + r e^{i theta}| divided by r.
  const double r = 0.25;
  const int n = 200000;
  double mean = 0.0;
  for (int k = 0; k < n; ++k) mean += std::abs(1.0 + std::polar(r, 2.0 * kPi * (k + 0.5) / n));
  mean /= n;
  const auto est = absMomentEstimate(derivativeFunctional());
  EXPECT_NEAR(est.value, mean / r, 1e-10);
  EXPECT_LT(est.error, 1e-12);
}

TEST(SupportHalfAngle, Examples) {
  EXPECT_EQ(supportHalfAngle(atomicDifference()), 0.0);
  EXPECT_NEAR(supportHalfAngle(dirac(std::polar(1.0, kPi / 6))), kPi / 6, 1e-15);
  // the tangent from 0 to the circle |z - 1| = 1/4 makes angle arcsin(1/4)
  EXPECT_NEAR(supportHalfAngle(derivativeFunctional()), std::asin(0.25), 1e-6);
  EXPECT_LE(supportHalfAngle(derivativeFunctional()), std::asin(0.25) + 1e-15);
  EXPECT_THROW(supportHalfAngle(CompactMeasure()), Error);
}

TEST(Conjugate, Examples) {
  const auto mu = dirac(cplx(1, 1), cplx(2, 3));
  const auto c = conjugateMeasure(mu);
  ASSERT_EQ(c.atoms().size(), 1u);
  EXPECT_EQ(c.atoms()[0].location, cplx(1, -1));
  EXPECT_EQ(c.atoms()[0].weight, cplx(2, -3));
  const auto d = conjugateMeasure(atomicDifference());
  EXPECT_EQ(d.atoms().size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(d.atoms()[i].location, atomicDifference().atoms()[i].location);
    EXPECT_EQ(d.atoms()[i].weight, atomicDifference().atoms()[i].weight);
  }
}

TEST(Conjugate, InvolutionAndTransformIdentity) {
  ContourComponent k{cplx(1.2, 0.4), 0.2, cplx(1.25, 0.4), 3, cplx(0.3, -0.7), 96};
  const CompactMeasure mu({{cplx(2, 0.5), cplx(1, -2)}, {1.0, 0.5}}, {k});
  const auto back = conjugateMeasure(conjugateMeasure(mu));
  for (const auto z : randomDisk(40, 4.0, 1)) {
    EXPECT_EQ(evalFB(back, z), evalFB(mu, z));
    const cplx lhs = evalFB(conjugateMeasure(mu), z);
    const cplx rhs = std::conj(evalFB(mu, std::conj(z)));
    EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(rhs)));
  }
  for (const double x : {0.1, 0.7, 2.0, 5.0})
    EXPECT_LT(std::abs(evalFB(conjugateMeasure(mu), x) - std::conj(evalFB(mu, x))), 1e-13);
}

TEST(Convolve, AtomicExamples) {
  const auto d3 = convolve(dirac(1.0), dirac(2.0));
  ASSERT_EQ(d3.atoms().size(), 1u);
  EXPECT_EQ(d3.atoms()[0].location, cplx(3.0));
  EXPECT_EQ(d3.atoms()[0].weight, cplx(1.0));

  const auto sq = convolve(atomicDifference(), atomicDifference());
  // delta_2 - 2 delta_3 + delta_4
  std::map<double, double> expect{{2.0, 1.0}, {3.0, -2.0}, {4.0, 1.0}};
  ASSERT_EQ(sq.atoms().size(), 3u);
  for (const auto& a : sq.atoms()) EXPECT_EQ(a.weight.real(), expect.at(a.location.real()));
  EXPECT_TRUE(sq.symmetric());
}

TEST(Convolve, TransformProductProperty) {
  const CompactMeasure mu({{cplx(1, 0.2), 1.0}, {cplx(1, -0.2), 1.0}, {2.0, -2.0}}, {});
  const CompactMeasure nu({{0.5, cplx(0, 1)}, {cplx(1.5, 1), -0.5}}, {});
  const auto munu = convolve(mu, nu);
  const std::vector<std::pair<cplx, cplx>> oracle_mu{{cplx(1, 0.2), 1.0}, {cplx(1, -0.2), 1.0}, {2.0, -2.0}};
  const std::vector<std::pair<cplx, cplx>> oracle_nu{{0.5, cplx(0, 1)}, {cplx(1.5, 1), -0.5}};
  for (const auto z : randomDisk(100, 5.0, 2)) {
    const cplx expect = atomicFB(oracle_mu, z) * atomicFB(oracle_nu, z);
    EXPECT_LT(std::abs(evalFB(munu, z) - expect), 1e-10 * std::max(1.0, std::abs(expect)));
  }
}

TEST(Convolve, AtomTimesContour) {
  const auto dd = derivativeFunctional();
  const auto prod = convolve(atomicDifference(), dd);
  EXPECT_EQ(prod.contours().size(), 2u);
  EXPECT_TRUE(prod.symmetric());
  for (const auto z : randomDisk(100, 5.0, 3)) {
    // derivative functional transform is -z e^{-z}
    const cplx expect = (std::exp(-z) - std::exp(-2.0 * z)) * (-z * std::exp(-z));
    EXPECT_LT(std::abs(evalFB(prod, z) - expect), 1e-10 * std::max(1.0, std::abs(expect)));
  }
  EXPECT_THROW(convolve(dd, dd), Error);
  try {
    convolve(dd, dd);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedCombination);
  }
}

TEST(ScaleSupport, Examples) {
  const auto d2 = scaleSupport(dirac(1.0), 2.0);
  EXPECT_EQ(d2.atoms()[0].location, cplx(2.0));
  const auto same = scaleSupport(atomicDifference(), 1.0);
  for (const auto z : randomDisk(10, 3.0, 4)) EXPECT_EQ(evalFB(same, z), evalFB(atomicDifference(), z));
  const auto rot = scaleSupport(atomicDifference(), std::polar(1.0, kPi / 6));
  EXPECT_NEAR(supportHalfAngle(rot), kPi / 6, 1e-15);
  EXPECT_FALSE(rot.symmetric());
  EXPECT_THROW(scaleSupport(dirac(1.0), 0.0), Error);
}

TEST(ScaleSupport, PushforwardProperty) {
  const auto dd = derivativeFunctional();
  for (const cplx u : {cplx(2.0), cplx(0.5, 0.3), std::polar(1.3, -0.4)}) {
    const auto s = scaleSupport(dd, u);
    const auto back = scaleSupport(s, 1.0 / u);
    for (const auto z : randomDisk(30, 3.0, 5)) {
      const cplx ref = evalFB(dd, u * z);
      EXPECT_LT(std::abs(evalFB(s, z) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
      EXPECT_LT(std::abs(evalFB(back, z) - evalFB(dd, z)), 1e-10 * std::max(1.0, std::abs(evalFB(dd, z))));
    }
    EXPECT_LT(std::abs(mass(s)), 1e-13);
  }
}

TEST(Symmetric, DeclaredSymmetricMeansRealOnPositiveAxis) {
  for (const auto& mu : {atomicDifference(), derivativeFunctional(), convolve(atomicDifference(), derivativeFunctional())}) {
    ASSERT_TRUE(mu.symmetric());
    EXPECT_LT(std::abs(mass(mu).imag()), 1e-15);
    for (const double x : {0.01, 0.5, 1.0, 3.0}) EXPECT_LT(std::abs(evalFB(mu, x).imag()), 1e-14);
  }
}

TEST(Validation, RejectsMalformedComponents) {
  EXPECT_THROW(CompactMeasure({}, {ContourComponent{1.0, 0.0, 1.0, 1, 1.0, 64}}), Error);
  EXPECT_THROW(CompactMeasure({}, {ContourComponent{1.0, 0.5, 1.0, 0, 1.0, 64}}), Error);
  EXPECT_THROW(CompactMeasure({}, {ContourComponent{1.0, 0.5, 1.0, 1, 1.0, 8}}), Error);
  EXPECT_THROW(CompactMeasure({}, {ContourComponent{1.0, 0.5, 1.5, 1, 1.0, 64}}), Error);  // pole on the circle
  EXPECT_THROW(dirac(cplx(std::nan(""), 0.0)), Error);
}

TEST(Json, MeasureRoundTrip) {
  ContourComponent k{cplx(1.2, 0.4), 0.2, cplx(1.25, 0.4), 3, cplx(0.3, -0.7), 96};
  const CompactMeasure mu({{cplx(2, 0.5), cplx(1, -2)}}, {k}, false, "mixed");
  const auto back = measureFromJson(json::parse(toJson(mu).dump()));
  EXPECT_EQ(toJson(back), toJson(mu));
  EXPECT_EQ(evalFB(back, cplx(0.3, 0.2)), evalFB(mu, cplx(0.3, 0.2)));
}

TEST(Json, MeasureRejectsBadInput) {
  EXPECT_THROW(measureFromJson(json::parse(R"({"contours":[{"center_re":1,"radius":0}]})")), Error);
  EXPECT_THROW(measureFromJson(json::parse(R"({"contours":[{"center_re":1,"radius":-1}]})")), Error);
  EXPECT_THROW(measureFromJson(json::parse(R"({"atoms":[{"re":"x"}]})")), Error);
  EXPECT_THROW(json::parse(R"({"atoms":[{"re":NaN}]})"), json::exception);
  EXPECT_THROW(json::parse(R"({"atoms":[{"re":1e999}]})"), json::exception);
  EXPECT_THROW(measureFromJson(json::parse(R"({"atoms":[{"re":1,"w_re":[1]}]})")), Error);
  EXPECT_THROW(measureFromJson(json::parse(R"({"atoms":[{"re":1,"im":1}],"symmetric":true})")), Error);
  const auto ok = measureFromJson(json::parse(R"({"atoms":[{"re":1,"w_re":1},{"re":2,"w_re":-1}],"symmetric":true})"));
  EXPECT_TRUE(ok.symmetric());
  EXPECT_EQ(ok.atoms().size(), 2u);
}
