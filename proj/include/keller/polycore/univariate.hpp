#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "keller/polycore/gaussian_rational.hpp"

namespace keller {

/// Dense exact polynomial in one variable over Q + iQ, ascending degree.
/// The coefficient vector never carries trailing zeros.
class GaussianUnivariate {
 public:
  GaussianUnivariate() = default;
  explicit GaussianUnivariate(std::vector<GaussianRational> coefficients);

  static GaussianUnivariate constant(const GaussianRational& c);
  static GaussianUnivariate monomial(const GaussianRational& c, unsigned degree);
  static GaussianUnivariate variable() { return monomial(GaussianRational(1), 1); }

  bool isZero() const { return coeffs_.empty(); }
  /// Empty for the zero polynomial.
  std::optional<unsigned> degree() const;
  const std::vector<GaussianRational>& coefficients() const { return coeffs_; }
  GaussianRational coefficient(unsigned k) const;
  const GaussianRational& leading() const { return coeffs_.back(); }

  GaussianRational evaluate(const GaussianRational& t) const;
  GaussianUnivariate derivative() const;
  GaussianUnivariate monic() const;

  GaussianUnivariate& operator+=(const GaussianUnivariate& o);
  GaussianUnivariate& operator-=(const GaussianUnivariate& o);
  friend GaussianUnivariate operator+(GaussianUnivariate a, const GaussianUnivariate& b) { return a += b; }
  friend GaussianUnivariate operator-(GaussianUnivariate a, const GaussianUnivariate& b) { return a -= b; }
  friend GaussianUnivariate operator*(const GaussianUnivariate& a, const GaussianUnivariate& b);
  friend GaussianUnivariate operator*(const GaussianRational& s, const GaussianUnivariate& p);
  GaussianUnivariate operator-() const;
  friend bool operator==(const GaussianUnivariate& a, const GaussianUnivariate& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<GaussianUnivariate, GaussianUnivariate> divmod(const GaussianUnivariate& divisor) const;

  std::string toString(char variable = 'T') const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Monic greatest common divisor (zero only if both inputs are zero).
GaussianUnivariate gcd(GaussianUnivariate a, GaussianUnivariate b);

/// p / gcd(p, p'), monic.
GaussianUnivariate squarefreePart(const GaussianUnivariate& p);

/// Interpolant through (k, values[k]) for k = 0..n-1, exact.
GaussianUnivariate interpolateAtIntegers(const std::vector<GaussianRational>& values);

}  // namespace keller
