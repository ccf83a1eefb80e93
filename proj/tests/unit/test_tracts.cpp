#include <gtest/gtest.h>

#include <algorithm>

#include "keller/error.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/tracts/tracts.hpp"
#include "support/generators.hpp"

using namespace keller;
using namespace keller::tracts;

namespace {

const BivariatePolynomial X = BivariatePolynomial::x();
const BivariatePolynomial Y = BivariatePolynomial::y();
// Implicit equations use X for U and Y for V.
const BivariatePolynomial& U = X;
const BivariatePolynomial& V = Y;

CanonicalRationalMap tract(int a, int b, std::vector<GaussianRational> phi = {}) {
  return {a, b, GaussianUnivariate(std::move(phi))};
}

GaussianUnivariate uni(std::vector<GaussianRational> c) { return GaussianUnivariate(std::move(c)); }

LaurentPolynomial laurent(std::initializer_list<std::tuple<int, int, long>> terms) {
  LaurentPolynomial p;
  for (auto [i, j, c] : terms) p.terms.emplace(Monomial{i, j}, GaussianRational(c));
  return p;
}

ErrorCode codeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

bool proportional(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
  const auto& [m, c] = *a.terms().begin();
  const GaussianRational other = b.coefficient(m.x, m.y);
  if (other.isZero()) return false;
  return (other / c) * a == b;
}

bool containsTract(const TractSearchResult& r, const CanonicalRationalMap& t) {
  return std::any_of(r.tracts.begin(), r.tracts.end(), [&](const TractCandidate& c) { return c.map == t; });
}

}  // namespace

TEST(Canonical, ValidationExamples) {
  EXPECT_TRUE(validateCanonical(tract(1, 3, {0, 1})).canonical());
  EXPECT_EQ(validateCanonical(tract(1, 1)).flags,
            (std::set<CanonicalFlag>{CanonicalFlag::GcdNotOne, CanonicalFlag::GammaRangeEmpty}));
  const auto v = validateCanonical(tract(1, 0, {0, 1}));
  EXPECT_TRUE(v.flags.contains(CanonicalFlag::DegPhiTooLarge));
  EXPECT_TRUE(v.flags.contains(CanonicalFlag::GammaRangeEmpty));
}

TEST(Compose, Examples) {
  const auto r = tract(1, 1);
  EXPECT_EQ(composeWithTract(PlanarPolyMap::identity(), r), (LaurentMap{laurent({{-1, 0, 1}}), laurent({{1, 1, 1}})}));
  EXPECT_EQ(composeWithTract({X * Y, Y}, r), (LaurentMap{laurent({{0, 1, 1}}), laurent({{1, 1, 1}})}));
  EXPECT_EQ(composeWithTract({X + Y * Y, Y}, r), (LaurentMap{laurent({{-1, 0, 1}, {2, 2, 1}}), laurent({{1, 1, 1}})}));
}

TEST(Dual, Examples) {
  const auto r = tract(1, 1);
  EXPECT_EQ(dualMap({X * Y, Y}, r), (PlanarPolyMap{Y, X * Y}));
  EXPECT_EQ(codeOf([&] { dualMap(PlanarPolyMap::identity(), r); }), ErrorCode::NotPolynomial);
  EXPECT_EQ(dualMap({X * Y * Y, Y}, r), (PlanarPolyMap{X * Y * Y, X * Y}));
}

TEST(Dual, SucceedsIffNoNegativeExponent) {
  keller::testing::Gen g(51);
  for (int trial = 0; trial < 60; ++trial) {
    const PlanarPolyMap f = g.map(3, 4);
    const auto r = tract(g.integer(1, 2), g.integer(0, 3), {g.coefficient(), g.coefficient()});
    const bool polynomial = composeWithTract(f, r).minXExponent() >= 0;
    bool succeeded = true;
    try {
      dualMap(f, r);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotPolynomial);
      succeeded = false;
    }
    EXPECT_EQ(polynomial, succeeded);
  }
}

TEST(Parametrization, Examples) {
  EXPECT_EQ(componentParametrization({Y, X * Y}), std::make_pair(GaussianUnivariate::variable(), GaussianUnivariate()));
  EXPECT_EQ(componentParametrization({X * Y * Y, X * Y}), std::make_pair(GaussianUnivariate(), GaussianUnivariate()));
  EXPECT_EQ(componentParametrization({Y + X * X, -X}), std::make_pair(GaussianUnivariate::variable(), GaussianUnivariate()));
}

TEST(Implicitize, Examples) {
  const auto t = GaussianUnivariate::variable();
  EXPECT_TRUE(proportional(implicitize({t, {}}), V));
  EXPECT_TRUE(proportional(implicitize({t, t * t}), V - U * U));
  EXPECT_TRUE(proportional(implicitize({t * t, t * t * t}), V * V - U.pow(3)));
  EXPECT_EQ(codeOf([] { implicitize({GaussianUnivariate::constant(2), {}}); }), ErrorCode::BothConstant);
}

TEST(Implicitize, VanishesOnParametrization) {
  keller::testing::Gen g(52);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GaussianRational> a, b;
    for (int k = 0; k <= g.integer(1, 3); ++k) a.push_back(g.coefficient());
    for (int k = 0; k <= g.integer(1, 3); ++k) b.push_back(g.coefficient());
    const auto p1 = uni(a), p2 = uni(b);
    if (p1.degree().value_or(0) == 0 && p2.degree().value_or(0) == 0) continue;
    const BivariatePolynomial h = implicitize({p1, p2});
    for (int k = 0; k < 64; ++k) {
      const GaussianRational t = GaussianRational(mpq_class(k - 32, 7), mpq_class(k % 5, 3));
      EXPECT_TRUE(h.evaluateExact(p1.evaluate(t), p2.evaluate(t)).isZero());
    }
  }
}

TEST(Phantom, Examples) {
  auto p = phantomExtract(V, {Y, X * Y});
  EXPECT_EQ(p.gamma, 1);
  EXPECT_EQ(p.s, Y);
  EXPECT_FALSE(p.e().isZero());
  p = phantomExtract(V * V, {Y, X * Y});
  EXPECT_EQ(p.gamma, 2);
  EXPECT_EQ(p.s, Y * Y);
  EXPECT_EQ(codeOf([] { phantomExtract(V - U * U, {Y, X * Y * Y}); }), ErrorCode::NoPositiveValuation);
  EXPECT_EQ(codeOf([] { phantomExtract(V - U * U, {Y, Y * Y}); }), ErrorCode::IdenticallyZero);
}

TEST(Search, Examples) {
  const auto xy = tractSearch({X * Y, Y}, 2, 2, 1);
  EXPECT_TRUE(containsTract(xy, tract(1, 1)));
  EXPECT_TRUE(xy.unresolved.empty());
  const auto shear = tractSearch({X + Y * Y, Y}, 2, 3, 2);
  EXPECT_TRUE(shear.tracts.empty());
  EXPECT_TRUE(containsTract(tractSearch({X * Y * Y, Y}, 2, 2, 1), tract(1, 1)));
}

TEST(Search, EveryTractIsImplicitizable) {
  for (const PlanarPolyMap& f : {PlanarPolyMap{X * Y, Y}, PlanarPolyMap{X * Y * Y, Y}, PlanarPolyMap{X * X * Y + Y, X * Y}}) {
    const auto found = tractSearch(f, 2, 3, 2);
    for (const auto& t : found.tracts) {
      const auto param = componentParametrization(dualMap(f, t.map));
      if (param.first.degree().value_or(0) == 0 && param.second.degree().value_or(0) == 0) continue;
      const auto h = implicitize(param);
      for (int k = 0; k < 64; ++k) {
        const std::complex<double> s = std::polar(0.1 + k / 32.0, 0.7 * k);
        ComplexPoint y{0, 0};
        for (int d = static_cast<int>(param.first.degree().value_or(0)); d >= 0; --d) y.z = y.z * s + param.first.coefficient(d).toComplex();
        for (int d = static_cast<int>(param.second.degree().value_or(0)); d >= 0; --d) y.w = y.w * s + param.second.coefficient(d).toComplex();
        EXPECT_LE(std::abs(evaluate(h, y)), 1e-9 * std::max(1.0, std::pow(std::abs(s), 6)));
      }
    }
  }
}

TEST(Search, NonlinearConditionsAreSolved) {
  // (X + Y^2) o R has a phi^2 term; the conditions are not linear in phi.
  const PlanarPolyMap f{X * Y * Y + X * X * Y, Y};
  const auto found = tractSearch(f, 2, 2, 2);
  for (const auto& t : found.tracts) EXPECT_TRUE(isTract(f, t.map));
}

TEST(UnionCheck, Examples) {
  const PlanarPolyMap xy{X * Y, Y};
  const auto same = asymptoticUnionCheck(xy, xy, {2, 2, 1});
  EXPECT_FALSE(same.samples.empty());
  EXPECT_TRUE(same.verdict);
  for (bool b : same.recurrence) EXPECT_TRUE(b);

  const auto vacuous = asymptoticUnionCheck(xy, {X + Y * Y, Y}, {2, 2, 1});
  EXPECT_TRUE(vacuous.samples.empty());
  EXPECT_TRUE(vacuous.verdict);

  const auto outer = asymptoticUnionCheck({Y + X * X, -X}, xy, {2, 2, 1});
  EXPECT_TRUE(outer.verdict);
  for (bool b : outer.recurrence) EXPECT_TRUE(b);
}
