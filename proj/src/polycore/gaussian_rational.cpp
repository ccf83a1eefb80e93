#include "keller/polycore/gaussian_rational.hpp"

#include <cmath>

#include "keller/error.hpp"

namespace keller {

namespace {

mpq_class exactFromDouble(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "non-finite value cannot be made rational");
  }
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

}  // namespace

GaussianRational GaussianRational::fromDouble(double re, double im) {
  return GaussianRational(exactFromDouble(re), exactFromDouble(im));
}

GaussianRational GaussianRational::inverse() const {
  if (isZero()) throw Error(ErrorCode::InvalidArgument, "division by zero Gaussian rational");
  mpq_class n = normSquared();
  return GaussianRational(re_ / n, -im_ / n);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.isZero()) throw Error(ErrorCode::InvalidArgument, "division by zero Gaussian rational");
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(unsigned exponent) const {
  GaussianRational result(1);
  GaussianRational base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

std::string GaussianRational::toString() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return imag;
  std::string sep = sgn(im_) > 0 ? "+" : "";
  return "(" + re_.get_str() + sep + imag + ")";
}

}  // namespace keller
