#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "keller/error.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/volmetric/volume.hpp"
#include "support/generators.hpp"

using namespace keller;
using namespace keller::vol;

namespace {

const BivariatePolynomial X = BivariatePolynomial::x();
const BivariatePolynomial Y = BivariatePolynomial::y();

// rho(identity, (X + Y, Y)) on the unit ball from 1e7 plain Monte Carlo
// samples (tests/oracles/rho_shear_oracle.cpp).
constexpr double kShearRho = 4.4086208;
constexpr double kShearRhoStderr = 0.0051255811;

// Integral over the unit ball of |2z|^2, by midpoint quadrature in the
// radii s = |z|, u = |w| with the angular factors (2 pi)^2 integrated out.
double squareJacobianQuadrature() {
  const int n = 2000;
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int a = 0; a < n; ++a) {
    const double s = (a + 0.5) * h;
    for (int b = 0; b < n; ++b) {
      const double u = (b + 0.5) * h;
      if (s * s + u * u <= 1.0) sum += 4.0 * s * s * s * u;
    }
  }
  return 4.0 * std::numbers::pi * std::numbers::pi * sum * h * h;
}

bool avx2Usable() {
#ifdef KELLER_HAVE_AVX2_KERNEL
  return simd::detectIsa() == simd::Isa::Avx2;
#else
  return false;
#endif
}

}  // namespace

TEST(Volmetric, StrataAdaptToSampleCount) {
  EXPECT_EQ(strataPerAxis(1000000), 16);
  EXPECT_EQ(strataPerAxis(131072), 16);
  EXPECT_EQ(strataPerAxis(131071), 15);
  EXPECT_EQ(strataPerAxis(10000), 8);
  EXPECT_EQ(strataPerAxis(2), 1);
}

TEST(Volmetric, BoxGeometry) {
  const Box a{{0, 0, 0, 0}, {1, 2, 3, 4}};
  const Box b{{-1, 0, 0, 0}, {1, 1, 1, 1}};
  EXPECT_DOUBLE_EQ(a.volume(), 24.0);
  const Box h = a.hull(b);
  EXPECT_EQ(h.lo[0], -1.0);
  EXPECT_EQ(h.hi[3], 4.0);
  EXPECT_TRUE(a.contains({{0.5, 1.0}, {2.0, 3.0}}));
  EXPECT_FALSE(a.contains({{1.5, 1.0}, {2.0, 3.0}}));
}

TEST(Volmetric, BallVolume) {
  for (double r : {1.0, 2.0}) {
    const auto d = SamplingDomain::ball(r);
    const auto e = domainVolume(d, 200000, 7);
    const double exact = std::numbers::pi * std::numbers::pi * std::pow(r, 4) / 2.0;
    EXPECT_NEAR(e.value, exact, 3.0 * e.standardError) << "r = " << r;
    EXPECT_GT(e.standardError, 0.0);
    EXPECT_DOUBLE_EQ(d.ballVolume(), exact);
  }
}

TEST(Volmetric, SquareMapMatchesQuadrature) {
  const double oracle = squareJacobianQuadrature();
  EXPECT_NEAR(oracle, 2.0 * std::numbers::pi * std::numbers::pi / 3.0, 1e-4);
  const auto e = multiplicityVolume({X.pow(2), Y}, SamplingDomain::ball(1.0), 400000, 11);
  EXPECT_NEAR(e.value, oracle, 3.0 * e.standardError + 1e-4);
}

TEST(Volmetric, KellerMapsPreserveVolume) {
  const double exact = std::numbers::pi * std::numbers::pi / 2.0;
  for (const PlanarPolyMap& f : {PlanarPolyMap::identity(), PlanarPolyMap{X + Y.pow(2), Y}}) {
    const auto e = multiplicityVolume(f, SamplingDomain::ball(1.0), 200000, 13);
    EXPECT_NEAR(e.value, exact, 3.0 * e.standardError) << f.toString();
  }
}

TEST(Volmetric, DisjointTranslateIsTwoBalls) {
  const auto e = rhoD(PlanarPolyMap::identity(), {X + 3, Y}, SamplingDomain::ball(1.0), 400000, 6);
  EXPECT_NEAR(e.value, std::numbers::pi * std::numbers::pi, 3.0 * e.standardError);
  EXPECT_EQ(imageMembership(PlanarPolyMap::identity(), SamplingDomain::ball(1.0), {{0.5, 0.0}, {0.0, 0.0}}), 1);
  EXPECT_EQ(imageMembership(PlanarPolyMap::identity(), SamplingDomain::ball(1.0), {{2.0, 0.0}, {0.0, 0.0}}), 0);
}

TEST(Volmetric, OffCentreBall) {
  const auto d = SamplingDomain::ball(0.5, {{1.0, -1.0}, {0.0, 2.0}});
  EXPECT_TRUE(d.contains({{1.2, -1.0}, {0.0, 2.1}}));
  EXPECT_FALSE(d.contains({{0.0, 0.0}, {0.0, 0.0}}));
  const auto e = domainVolume(d, 100000, 3);
  EXPECT_NEAR(e.value, d.ballVolume(), 3.0 * e.standardError);
}

TEST(Volmetric, WorkerCountDoesNotChangeResult) {
  const PlanarPolyMap f{X + Y.pow(2), Y};
  const auto d = SamplingDomain::ball(1.0);
  const auto one = rhoD(PlanarPolyMap::identity(), f, d, 50000, 5, {1, simd::Isa::Scalar});
  const auto three = rhoD(PlanarPolyMap::identity(), f, d, 50000, 5, {3, simd::Isa::Scalar});
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.standardError, three.standardError);
}

TEST(Volmetric, IsaDoesNotChangeResult) {
  if (!avx2Usable()) GTEST_SKIP() << "AVX2 not available";
  const PlanarPolyMap f{X + Y.pow(3) + 2 * Y, Y};
  const auto d = SamplingDomain::ball(1.5);
  const auto scalar = rhoD(f, PlanarPolyMap::identity(), d, 30000, 9, {1, simd::Isa::Scalar});
  const auto vec = rhoD(f, PlanarPolyMap::identity(), d, 30000, 9, {1, simd::Isa::Avx2});
  EXPECT_EQ(scalar.value, vec.value);
  const auto js = multiplicityVolume({X.pow(3), Y}, d, 20000, 2, {1, simd::Isa::Scalar});
  const auto jv = multiplicityVolume({X.pow(3), Y}, d, 20000, 2, {1, simd::Isa::Avx2});
  EXPECT_EQ(js.value, jv.value);
}

TEST(Volmetric, SeedDeterminism) {
  const auto d = SamplingDomain::ball(1.0);
  const auto a = domainVolume(d, 20000, 42);
  const auto b = domainVolume(d, 20000, 42);
  const auto c = domainVolume(d, 20000, 43);
  EXPECT_EQ(a.value, b.value);
  EXPECT_NE(a.value, c.value);
}

TEST(Volmetric, RhoOfEqualMapsIsZero) {
  const PlanarPolyMap f{X + Y.pow(2), Y};
  const auto e = rhoD(f, f, SamplingDomain::ball(1.0), 20000, 1);
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.standardError, 0.0);
}

TEST(Volmetric, RhoShearMatchesOracle) {
  const auto e = rhoD(PlanarPolyMap::identity(), {X + Y, Y}, SamplingDomain::ball(1.0), 1000000, 2024);
  const double tol = 3.0 * std::hypot(e.standardError, kShearRhoStderr);
  EXPECT_NEAR(e.value, kShearRho, tol);
}

TEST(Volmetric, RhoIsSymmetric) {
  const PlanarPolyMap f{X + Y, Y}, g{X, Y + X.pow(2)};
  const auto d = SamplingDomain::ball(1.0);
  const auto fg = rhoD(f, g, d, 20000, 4);
  const auto gf = rhoD(g, f, d, 20000, 4);
  EXPECT_EQ(fg.value, gf.value);
}

TEST(Volmetric, GeometricBelowMultiplicity) {
  const PlanarPolyMap sq{X.pow(2), Y};
  const auto d = SamplingDomain::ball(1.0);
  const auto m = rhoD(sq, PlanarPolyMap::identity(), d, 20000, 8);
  const auto g = rhoD(sq, PlanarPolyMap::identity(), d, 20000, 8, {}, RhoMode::Geometric);
  EXPECT_LE(g.value, m.value);
  EXPECT_GT(g.value, 0.0);
}

TEST(Volmetric, ImageMembership) {
  const auto d = SamplingDomain::ball(1.0);
  EXPECT_EQ(imageMembership({X.pow(2), Y}, d, {{0.25, 0.0}, {0.0, 0.0}}), 2);
  EXPECT_EQ(imageMembership({X.pow(2), Y}, d, {{4.0, 0.0}, {0.0, 0.0}}), 0);
  EXPECT_EQ(imageMembership({X + Y, Y}, d, {{0.5, 0.0}, {0.5, 0.0}}), 1);
  EXPECT_EQ(imageMembership({X + Y, Y}, d, {{3.0, 0.0}, {0.5, 0.0}}), 0);
}

TEST(Volmetric, ImageBoxContainsImages) {
  keller::testing::Gen gen(77);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const PlanarPolyMap f = gen.map(3, 4);
    const double r = gen.real(0.3, 2.0);
    const auto d = SamplingDomain::ball(r);
    Box box;
    try {
      box = imageBox(f, d);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::BoxOverflow);
      continue;
    }
    for (int k = 0; k < 50; ++k) {
      const ComplexPoint x = gen.point(r);
      if (!d.contains(x)) continue;
      EXPECT_TRUE(box.contains(evaluate(f, x))) << f.toString();
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Volmetric, DegenerateBoxRejected) {
  try {
    imageBox({X, BivariatePolynomial(1)}, SamplingDomain::ball(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoxOverflow);
  }
  const auto huge = BivariatePolynomial::monomial(GaussianRational(1), 200, 0);
  EXPECT_THROW(imageBox({huge, Y}, SamplingDomain::ball(100.0)), Error);
}

TEST(Volmetric, TooFewSamples) {
  try {
    domainVolume(SamplingDomain::ball(1.0), 9999, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Volmetric, IdentityContractionIsExactlyOne) {
  const PlanarPolyMap g1 = PlanarPolyMap::identity(), g2{X + 1, Y};
  const auto s = contractionRatio(PlanarPolyMap::identity(), g1, g2, {1, 2}, SamplingDomain::ball(1.0), 20000, 3);
  ASSERT_EQ(s.ratios.size(), 2u);
  for (double r : s.ratios) EXPECT_EQ(r, 1.0);
  EXPECT_NE(s.toCsv().find("scale,ratio"), std::string::npos);
}

TEST(Volmetric, ContractionNeedsDistinctMaps) {
  try {
    contractionRatio({X + Y, Y}, {X, Y}, {X, Y}, {1}, SamplingDomain::ball(1.0), 20000, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZeroDistance);
  }
}

TEST(Volmetric, CharacteristicDomain) {
  auto set = std::make_shared<const charset::CharacteristicSet>(
      charset::buildCharacteristicSet({2.0, 1, 2, 0.05, 0}));
  const auto d = SamplingDomain::characteristic(set);
  const auto& star = set->slices[0].stars[0];
  EXPECT_FALSE(d.contains(star.center()));
  EXPECT_TRUE(d.contains({{0.0, 0.0}, {0.0, 1.5}}));
  const auto dd = d.dilated(2.0);
  EXPECT_FALSE(dd.contains({2.0 * star.center().z, 2.0 * star.center().w}));
  EXPECT_DOUBLE_EQ(dd.radius(), 4.0);
  const auto e = domainVolume(d, 200000, 5);
  EXPECT_NEAR(e.value, d.ballVolume() - charset::removedVolume(*set), 3.0 * e.standardError);
}

TEST(Volmetric, ReportShape) {
  const auto e = domainVolume(SamplingDomain::ball(1.0), 10000, 1);
  const auto j = operationReport("volume", {{"radius", 1.0}}, e, 1.5);
  for (const char* key : {"operation", "inputs", "seed", "samples", "value", "stderr", "wall_time_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
}
