#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "keller/polycore/gaussian_rational.hpp"
#include "keller/polycore/univariate.hpp"

namespace keller {

/// Exponent pair (i, j) of X^i Y^j. Ordered lexicographically, which is the
/// storage and floating-point summation order.
struct Monomial {
  int x = 0;
  int y = 0;
  int degree() const { return x + y; }
  auto operator<=>(const Monomial&) const = default;
};

/// Serialization order: ascending total degree, and within one degree the
/// higher power of X first (X^2, XY, Y^2).
bool canonicalLess(const Monomial& a, const Monomial& b);

/// Point of C^2.
struct ComplexPoint {
  std::complex<double> z;
  std::complex<double> w;
  bool isFinite() const;
  double norm() const { return std::sqrt(std::norm(z) + std::norm(w)); }
  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

/// Sparse exact polynomial in X, Y over Q + iQ. Zero coefficients are never
/// stored; the empty table is the zero polynomial, whose degree is absent.
class BivariatePolynomial {
 public:
  using TermMap = std::map<Monomial, GaussianRational>;

  BivariatePolynomial() = default;
  BivariatePolynomial(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  BivariatePolynomial(long c) : BivariatePolynomial(GaussianRational(c)) {}  // NOLINT

  static BivariatePolynomial x() { return monomial(GaussianRational(1), 1, 0); }
  static BivariatePolynomial y() { return monomial(GaussianRational(1), 0, 1); }
  static BivariatePolynomial monomial(const GaussianRational& c, int i, int j);
  /// Embeds p(T) as p(X) (or p(Y) when `inY`).
  static BivariatePolynomial fromUnivariate(const GaussianUnivariate& p, bool inY);

  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  const TermMap& terms() const { return terms_; }
  std::size_t termCount() const { return terms_.size(); }

  std::optional<int> totalDegree() const;
  /// Degree in one variable; absent for the zero polynomial.
  std::optional<int> degreeInX() const;
  std::optional<int> degreeInY() const;

  GaussianRational coefficient(int i, int j) const;
  void setCoefficient(int i, int j, const GaussianRational& c);
  void addTerm(int i, int j, const GaussianRational& c);

  /// Homogeneous part of top total degree.
  BivariatePolynomial leadingForm() const;
  BivariatePolynomial derivativeX() const;
  BivariatePolynomial derivativeY() const;
  /// Coefficient of Y^k, as a polynomial in X.
  GaussianUnivariate coefficientOfY(int k) const;
  /// p(X, 0 ... ) etc: substitute a constant for one variable.
  GaussianUnivariate restrictX(const GaussianRational& xValue) const;
  GaussianUnivariate restrictY(const GaussianRational& yValue) const;

  GaussianRational evaluateExact(const GaussianRational& xv, const GaussianRational& yv) const;
  /// p(xv, yv) with polynomial arguments.
  BivariatePolynomial substitute(const BivariatePolynomial& xv, const BivariatePolynomial& yv) const;

  BivariatePolynomial pow(unsigned exponent) const;

  BivariatePolynomial& operator+=(const BivariatePolynomial& o);
  BivariatePolynomial& operator-=(const BivariatePolynomial& o);
  BivariatePolynomial& operator*=(const GaussianRational& s);
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(const GaussianRational& s, BivariatePolynomial p) { return p *= s; }
  friend BivariatePolynomial operator*(long s, BivariatePolynomial p) { return p *= GaussianRational(s); }
  BivariatePolynomial operator-() const;
  friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a.terms_ == b.terms_; }

  /// Terms in canonical serialization order.
  std::vector<std::pair<Monomial, GaussianRational>> canonicalTerms() const;
  std::string toString(char xName = 'X', char yName = 'Y') const;

 private:
  TermMap terms_;
};

/// F = (P, Q), an element of C[X,Y]^2.
struct PlanarPolyMap {
  BivariatePolynomial first;
  BivariatePolynomial second;

  static PlanarPolyMap identity() { return {BivariatePolynomial::x(), BivariatePolynomial::y()}; }
  /// max of the component degrees; absent if both components are zero.
  std::optional<int> degree() const;
  std::string toString() const;
  friend bool operator==(const PlanarPolyMap&, const PlanarPolyMap&) = default;
};

}  // namespace keller
