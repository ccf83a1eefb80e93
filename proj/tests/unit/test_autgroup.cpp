#include <gtest/gtest.h>

#include "keller/autgroup/compiled_word.hpp"
#include "keller/error.hpp"
#include "keller/polycore/operations.hpp"
#include "support/generators.hpp"

using namespace keller;
using namespace keller::aut;
using keller::testing::Gen;

namespace {

const BivariatePolynomial X = BivariatePolynomial::x();
const BivariatePolynomial Y = BivariatePolynomial::y();

ElementaryFactor addToX(const GaussianUnivariate& p) { return {Axis::AddToX, p}; }

ErrorCode codeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(TameWord, OutermostFactorFirst) {
  const AffineFactor rot = AffineFactor::make(0, 1, 0, -1, 0, 0);
  const TameWord w{{addToX(GaussianUnivariate::monomial(1, 2)), rot}};
  EXPECT_EQ(expandWord(w), (PlanarPolyMap{Y + X * X, -X}));
  EXPECT_EQ(expandWord(TameWord{}), PlanarPolyMap::identity());
}

TEST(TameWord, AffineInverseExample) {
  const AffineFactor a = AffineFactor::make(2, 3, 1, 1, 2, 0);
  const PlanarPolyMap inv = expandWord(invertWord(TameWord{{a}}));
  EXPECT_EQ(inv, (PlanarPolyMap{2 * X - 3 * Y - 2, -X + 2 * Y + 1}));
}

TEST(TameWord, AffineFactorValidatesDeterminant) {
  EXPECT_THROW(AffineFactor::make(2, 0, 0, 0, 1, 0), Error);
}

TEST(TameWord, DecomposeRejectsNonKeller) {
  EXPECT_EQ(codeOf([] { decomposeAutomorphism({X * X, Y}); }), ErrorCode::NotKeller);
}

TEST(TameWord, DecomposeSimpleShear) {
  const PlanarPolyMap f{X + Y * Y, Y};
  const TameWord w = decomposeAutomorphism(f);
  EXPECT_EQ(expandWord(w), f);
  for (const auto& factor : w.factors) {
    if (const auto* e = std::get_if<ElementaryFactor>(&factor)) {
      EXPECT_TRUE(e->isCanonical());
    }
  }
}

TEST(TameWord, NormalizeFoldsLowDegreeFactors) {
  const TameWord w{{addToX(GaussianUnivariate::monomial(3, 1)), AffineFactor::identity(),
                    ElementaryFactor{Axis::AddToY, GaussianUnivariate::constant(2)}}};
  const TameWord n = normalizeWord(w);
  ASSERT_EQ(n.factors.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<AffineFactor>(n.factors[0]));
  EXPECT_EQ(expandWord(n), expandWord(w));
}

TEST(TameWord, JsonRoundTrip) {
  Gen g(31);
  for (int trial = 0; trial < 30; ++trial) {
    const TameWord w = g.word(5, 9);
    EXPECT_EQ(wordFromJson(nlohmann::json::parse(wordToJson(w).dump())), w);
  }
}

TEST(TameWordProperty, RandomWordsAreKeller) {
  Gen g(32);
  for (int trial = 0; trial < 200; ++trial) {
    const TameWord w = g.word(5, 8);
    EXPECT_EQ(jacobianDeterminant(expandWord(w)), BivariatePolynomial(1)) << "trial " << trial;
  }
}

TEST(TameWordProperty, DecompositionRoundTrip) {
  Gen g(33);
  for (int trial = 0; trial < 100; ++trial) {
    const PlanarPolyMap f = expandWord(g.word(5, 8));
    EXPECT_EQ(expandWord(decomposeAutomorphism(f)), f) << "trial " << trial;
  }
}

TEST(TameWordProperty, InverseComposesToIdentity) {
  Gen g(34);
  for (int trial = 0; trial < 60; ++trial) {
    const TameWord w = g.word(4, 6);
    const PlanarPolyMap f = expandWord(w);
    const PlanarPolyMap finv = expandWord(invertWord(w));
    EXPECT_EQ(composeMaps(finv, f), PlanarPolyMap::identity());
    EXPECT_EQ(composeMaps(f, finv), PlanarPolyMap::identity());
  }
}

TEST(TameWordProperty, WordEvaluationMatchesExpansion) {
  Gen g(35);
  for (int trial = 0; trial < 50; ++trial) {
    const TameWord w = g.word(4, 6);
    const PlanarPolyMap f = expandWord(w);
    const CompiledWord cw(w);
    const ComplexPoint p = g.point(0.8);
    const ComplexPoint a = cw.evaluate(p);
    const ComplexPoint b = evaluate(f, p);
    const double scale = std::max(1.0, b.norm());
    EXPECT_LE(std::abs(a.z - b.z) + std::abs(a.w - b.w), 1e-9 * scale) << "trial " << trial;
  }
}

TEST(CompiledWord, BatchMatchesSinglePointOnEveryIsa) {
  Gen g(36);
  const TameWord w = g.word(5, 9);
  const CompiledWord cw(w);
  const std::size_t n = 37;
  std::vector<double> zr(n), zi(n), wr(n), wi(n);
  for (std::size_t k = 0; k < n; ++k) {
    zr[k] = g.real(-1, 1);
    zi[k] = g.real(-1, 1);
    wr[k] = g.real(-1, 1);
    wi[k] = g.real(-1, 1);
  }
  std::vector<ComplexPoint> expected;
  for (std::size_t k = 0; k < n; ++k) expected.push_back(cw.evaluate({{zr[k], zi[k]}, {wr[k], wi[k]}}));
  cw.evaluateBatch(zr, zi, wr, wi, simd::detectIsa());
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_EQ(ComplexPoint({zr[k], zi[k]}, {wr[k], wi[k]}), expected[k]);
  }
}

TEST(Approximation, ExactCoefficientsAreKept) {
  Gen g(37);
  const TameWord w = g.word(4, 6);
  EXPECT_EQ(rationalApproximateWord(ApproxTameWord::fromExact(w), 1e-3), w);
}

TEST(Approximation, RepairsDeterminantAndConverges) {
  ApproxAffineFactor a;
  a.a = std::complex<double>(std::sqrt(2.0), 0.0);
  a.b = std::complex<double>(0.3, 0.1);
  a.d = std::complex<double>(std::numbers::pi / 7, 0.0);
  a.e = (1.0 + std::complex<double>(0.3, 0.1) * (std::numbers::pi / 7)) / std::sqrt(2.0);
  a.c = std::complex<double>(0.123456789, -1.0 / 3.0);
  ApproxElementaryFactor e{Axis::AddToY, {GaussianRational(0), std::complex<double>(1.0 / 3.0, 0.0), std::complex<double>(0.7071, 0.25)}};
  const ApproxTameWord w{{e, a}};
  double previous = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const TameWord q = rationalApproximateWord(w, eps);
    EXPECT_TRUE(isKeller(expandWord(q)));
    double err = 0.0;
    Gen g(38);
    for (int k = 0; k < 20; ++k) {
      const ComplexPoint p = g.point(1.0);
      const ComplexPoint u = evaluateWord(q, p);
      const ComplexPoint v = evaluateWord(w, p);
      err = std::max(err, std::abs(u.z - v.z) + std::abs(u.w - v.w));
    }
    EXPECT_LE(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(Approximation, DegenerateAffine) {
  ApproxAffineFactor a;
  a.a = std::complex<double>(1e-4, 0);
  a.d = std::complex<double>(-1e-4, 0);
  a.b = std::complex<double>(1e4, 0);
  a.e = std::complex<double>(0, 0);
  EXPECT_EQ(codeOf([&] { rationalApproximateWord(ApproxTameWord{{a}}, 1e-2); }), ErrorCode::DegenerateAffine);
}
