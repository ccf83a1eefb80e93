#pragma once

#include <complex>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "keller/polycore/polynomial.hpp"

namespace keller::tracts {

/// R(X, Y) = (X^-alpha, X^beta Y + X^-alpha phi(X)).
struct CanonicalRationalMap {
  int alpha = 1;
  int beta = 0;
  GaussianUnivariate phi;

  std::string toString() const;
  friend bool operator==(const CanonicalRationalMap&, const CanonicalRationalMap&) = default;
};

/// Polynomial in X^-1, X, Y: the X exponent of a term may be negative.
struct LaurentPolynomial {
  std::map<Monomial, GaussianRational> terms;

  bool isZero() const { return terms.empty(); }
  /// Smallest X exponent; 0 for the zero polynomial.
  int minXExponent() const;
  BivariatePolynomial toPolynomial() const;  // requires minXExponent() >= 0
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;
};

struct LaurentMap {
  LaurentPolynomial first;
  LaurentPolynomial second;
  int minXExponent() const { return std::min(first.minXExponent(), second.minXExponent()); }
  friend bool operator==(const LaurentMap&, const LaurentMap&) = default;
};

enum class CanonicalFlag { DegPhiTooLarge, GcdNotOne, GammaRangeEmpty };
std::string toString(CanonicalFlag flag);

struct CanonicalValidation {
  std::set<CanonicalFlag> flags;
  bool canonical() const { return flags.empty(); }
};

CanonicalValidation validateCanonical(const CanonicalRationalMap& r);

/// Exact Laurent expansion of f o R.
LaurentMap composeWithTract(const PlanarPolyMap& f, const CanonicalRationalMap& r);

/// f o R when it is polynomial; NotPolynomial otherwise.
PlanarPolyMap dualMap(const PlanarPolyMap& f, const CanonicalRationalMap& r);
bool isTract(const PlanarPolyMap& f, const CanonicalRationalMap& r);

/// (G(0, Y), ...) as polynomials in Y.
std::pair<GaussianUnivariate, GaussianUnivariate> componentParametrization(const PlanarPolyMap& gr);

/// H(U, V) = Res_Y(U - g1(Y), V - g2(Y)), written with U as X and V as Y,
/// scaled so its canonically last term has coefficient 1. Throws
/// BothConstant.
BivariatePolynomial implicitize(const std::pair<GaussianUnivariate, GaussianUnivariate>& param);

struct PhantomExtraction {
  int gamma = 0;
  BivariatePolynomial s;
  /// S(0, Y).
  GaussianUnivariate e() const { return s.restrictX(GaussianRational()); }
};

/// h(G) = X^gamma S with gamma >= 1 maximal. Throws IdenticallyZero or
/// NoPositiveValuation.
PhantomExtraction phantomExtract(const BivariatePolynomial& h, const PlanarPolyMap& gr);

struct TractCandidate {
  CanonicalRationalMap map;
  CanonicalValidation validation;
  /// Dimension of the solution family this representative was drawn from.
  int familyDimension = 0;
};

struct TractSearchResult {
  std::vector<TractCandidate> tracts;
  /// (alpha, beta) pairs whose conditions had solutions over C that are not
  /// Gaussian rational, or that the elimination could not finish.
  std::vector<std::pair<int, int>> unresolved;
};

/// For each 1 <= alpha <= alphaMax, 0 <= beta <= betaMax, solves exactly for
/// phi of degree <= min(phiDegMax, alpha + beta - 1) making f o R
/// polynomial. Families are reported by their value at the origin and at
/// each unit vector of the free parameters.
TractSearchResult tractSearch(const PlanarPolyMap& f, int alphaMax, int betaMax, int phiDegMax);

struct TractBounds {
  int alphaMax = 2;
  int betaMax = 2;
  int phiDegMax = 1;
};

struct ContainmentSample {
  CanonicalRationalMap gTract;
  std::complex<double> t;
  ComplexPoint point;  // f(G_R(0, t))
  bool contained = false;
};

struct UnionCheckReport {
  TractSearchResult fTracts, gTracts, fgTracts;
  /// Per tract of g: it is also a tract of f o g and its (alpha, beta)
  /// appears in the search over f o g.
  std::vector<bool> recurrence;
  std::vector<ContainmentSample> samples;
  bool verdict = true;
};

inline constexpr int kUnionSamples = 32;
inline constexpr double kUnionTolerance = 1e-6;

/// Checks F(A(G)) within A(F o G) on sampled parametrization points.
UnionCheckReport asymptoticUnionCheck(const PlanarPolyMap& f, const PlanarPolyMap& g, const TractBounds& bounds,
                                      double tolerance = kUnionTolerance);

nlohmann::json toJson(const CanonicalRationalMap& r);
nlohmann::json toJson(const TractSearchResult& r);
nlohmann::json toJson(const UnionCheckReport& r);

}  // namespace keller::tracts
