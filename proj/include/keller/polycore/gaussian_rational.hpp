#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace keller {

/// Exact element of Q + iQ. Both parts are kept canonical by GMP, so
/// equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return GaussianRational(0, 1); }
  static GaussianRational fraction(long num, long den) { return GaussianRational(mpq_class(num, den)); }
  /// Exact conversion: every finite double is a dyadic rational.
  static GaussianRational fromDouble(double re, double im = 0.0);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool isZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool isOne() const { return re_ == 1 && sgn(im_) == 0; }
  bool isReal() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  /// |z|^2, exact.
  mpq_class normSquared() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  std::complex<double> toComplex() const { return {re_.get_d(), im_.get_d()}; }
  double modulus() const { return std::abs(toComplex()); }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussianRational pow(unsigned exponent) const;

  /// Human-readable form such as "3/2", "-i", "(1/2+3i)".
  std::string toString() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace keller
