#include <gtest/gtest.h>

#include "fbcalc/jordan.hpp"
#include "fbcalc/json_io.hpp"

using namespace fbcalc;

namespace {

const JordanCertificate& differenceCert() {
  static const auto cert = constructCertificate(atomicDifference());
  return cert;
}

template <class E>
ErrorKind kindOf(E&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  return static_cast<ErrorKind>(-1);
}

}  // namespace

TEST(Jordan, DifferenceCertificate) {
  const auto& c = differenceCert();
  EXPECT_NEAR(c.b, std::log(2.0), 1e-8);
  EXPECT_NEAR(c.f_b, 0.25, 1e-12);
  EXPECT_EQ(c.m, 2);
  EXPECT_EQ(c.sign, 1);
  EXPECT_GT(c.delta, 0.0);
  const auto check = verifyCertificate(atomicDifference(), c, 1000);
  EXPECT_TRUE(check.ok) << (check.failures.empty() ? "" : check.failures.front());
  EXPECT_GE(check.margin_i, 0.0);
  EXPECT_GE(check.margin_ii, 0.0);
  EXPECT_TRUE(check.simple);
}

TEST(Jordan, DoubledDeltaFails) {
  auto c = differenceCert();
  c.delta *= 2.0;
  const auto check = verifyCertificate(atomicDifference(), c, 1000);
  EXPECT_LT(check.margin_i, 0.0);
  EXPECT_FALSE(check.ok);
}

TEST(Jordan, MarginsNonincreasingInDensity) {
  double prev_i = std::numeric_limits<double>::infinity();
  double prev_ii = prev_i;
  for (const int d : {100, 300, 1000, 3000}) {
    const auto check = verifyCertificate(atomicDifference(), differenceCert(), d);
    EXPECT_LE(check.margin_i, prev_i);
    EXPECT_LE(check.margin_ii, prev_ii);
    prev_i = check.margin_i;
    prev_ii = check.margin_ii;
  }
}

TEST(Jordan, NegatedMeasure) {
  const auto flipped = constructCertificate(negate(atomicDifference()));
  const auto& c = differenceCert();
  EXPECT_EQ(flipped.sign, -1);
  EXPECT_EQ(flipped.b, c.b);
  EXPECT_EQ(flipped.delta, c.delta);
  EXPECT_EQ(flipped.a1, c.a1);
  EXPECT_EQ(flipped.a3, c.a3);
  EXPECT_TRUE(verifyCertificate(negate(atomicDifference()), flipped, 1000).ok);
}

TEST(Jordan, CertificateInvariants) {
  const auto& c = differenceCert();
  EXPECT_GT(c.psi, 0.0);
  EXPECT_LT(c.psi, kPi / 2);
  EXPECT_NEAR(std::arg(c.a1 - c.b), c.psi, 1e-12);
  EXPECT_GT(c.a1.real(), 0.0);
  EXPECT_GT(c.a1.imag(), 0.0);
  EXPECT_EQ(c.a2.imag(), c.a3.imag());
  EXPECT_EQ(c.a3.real(), 0.0);
  EXPECT_EQ(c.gamma1.front(), c.a1);
  EXPECT_EQ(c.gamma1.back(), c.a2);
  EXPECT_LE(c.gamma1.vertices().size(), 32u);

  // a0 strictly between b and a1
  const cplx seg = c.a1 - c.b;
  const double t = ((c.a0 - c.b) * std::conj(seg)).real() / std::norm(seg);
  EXPECT_GT(t, 0.0);
  EXPECT_LT(t, 1.0);

  const TransformEvaluator F(atomicDifference());
  const double s = std::abs(c.a0 - c.b);
  EXPECT_GE(std::abs(F(c.a0)) - c.f_b, c.delta * s * s);
}

TEST(Jordan, FullCurveMirrorIsExactConjugate) {
  const auto& c = differenceCert();
  const auto curve = fullCurve(c);
  const auto& v = curve.vertices();
  ASSERT_EQ(v.size() % 2, 0u);
  EXPECT_EQ(v.front(), v.back());
  const std::size_t n = v.size() - 1;
  for (std::size_t i = 1; i < n; ++i) EXPECT_EQ(v[i], std::conj(v[n - i]));
  EXPECT_TRUE(isSimplePolyline(fullCurve(c)));
}

TEST(Jordan, HeightAdmissibility) {
  const TransformEvaluator F(atomicDifference());
  // F(x + i pi) = e^{-x}(-1 - e^{-x}) has modulus >= 2 e^{-x} > 0
  EXPECT_TRUE(heightAdmissible(F, kPi, 5.0, 1e-3));
  // F(i 2pi) = 0
  EXPECT_FALSE(heightAdmissible(F, 2.0 * kPi, 5.0, 1e-3));
}

TEST(Jordan, Preconditions) {
  EXPECT_EQ(kindOf([] { constructCertificate(CompactMeasure({}, {}, true)); }), ErrorKind::PreconditionViolation);
  EXPECT_EQ(kindOf([] { constructCertificate(CompactMeasure({{1.0, 1.0}, {2.0, -1.0}}, {}, false)); }),
            ErrorKind::PreconditionViolation);
  EXPECT_EQ(kindOf([] { constructCertificate(dirac(1.0).withLabel("x")); }), ErrorKind::PreconditionViolation);
}

TEST(Jordan, VerifyRejectsBrokenCertificates) {
  const auto mu = atomicDifference();
  auto a = differenceCert();
  a.a0 = a.a1;
  EXPECT_FALSE(verifyCertificate(mu, a, 1000).ok);
  auto b = differenceCert();
  b.m = 3;
  EXPECT_FALSE(verifyCertificate(mu, b, 1000).ok);
  auto c = differenceCert();
  c.a3 = cplx(0.1, c.a3.imag());
  EXPECT_FALSE(verifyCertificate(mu, c, 1000).ok);
  EXPECT_FALSE(verifyCertificate(mu, differenceCert(), 50).ok);
  EXPECT_FALSE(verifyCertificate(mu, differenceCert(), 50).failures.empty());
}

TEST(Jordan, JsonRoundTrip) {
  const auto& c = differenceCert();
  const auto back = certificateFromJson(nlohmann::json::parse(toJson(c).dump()));
  EXPECT_EQ(toJson(back).dump(), toJson(c).dump());
  const auto v1 = verifyCertificate(atomicDifference(), c, 300);
  const auto v2 = verifyCertificate(atomicDifference(), back, 300);
  EXPECT_EQ(v1.margin_i, v2.margin_i);
  EXPECT_EQ(v1.margin_ii, v2.margin_ii);
}

TEST(Jordan, NestedSamplesArePrefixes) {
  const std::vector<cplx> path{0.0, cplx(1.0, 0.0), cplx(1.0, 2.0)};
  const auto small = detail::nestedSamples(path, 100);
  const auto large = detail::nestedSamples(path, 1000);
  ASSERT_EQ(small.size(), 100u);
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i], large[i]);
  EXPECT_EQ(small[0], path.front());
  EXPECT_EQ(small[1], path.back());
}
