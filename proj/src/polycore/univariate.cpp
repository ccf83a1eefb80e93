#include "keller/polycore/univariate.hpp"

#include "keller/error.hpp"

namespace keller {

GaussianUnivariate::GaussianUnivariate(std::vector<GaussianRational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

GaussianUnivariate GaussianUnivariate::constant(const GaussianRational& c) {
  return GaussianUnivariate(std::vector<GaussianRational>{c});
}

GaussianUnivariate GaussianUnivariate::monomial(const GaussianRational& c, unsigned degree) {
  std::vector<GaussianRational> v(degree + 1);
  v[degree] = c;
  return GaussianUnivariate(std::move(v));
}

void GaussianUnivariate::trim() {
  while (!coeffs_.empty() && coeffs_.back().isZero()) coeffs_.pop_back();
}

std::optional<unsigned> GaussianUnivariate::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<unsigned>(coeffs_.size() - 1);
}

GaussianRational GaussianUnivariate::coefficient(unsigned k) const {
  return k < coeffs_.size() ? coeffs_[k] : GaussianRational();
}

GaussianRational GaussianUnivariate::evaluate(const GaussianRational& t) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

GaussianUnivariate GaussianUnivariate::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<GaussianRational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
  }
  return GaussianUnivariate(std::move(d));
}

GaussianUnivariate GaussianUnivariate::monic() const {
  if (isZero()) return {};
  GaussianRational inv = leading().inverse();
  return inv * *this;
}

GaussianUnivariate& GaussianUnivariate::operator+=(const GaussianUnivariate& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

GaussianUnivariate& GaussianUnivariate::operator-=(const GaussianUnivariate& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

GaussianUnivariate operator*(const GaussianUnivariate& a, const GaussianUnivariate& b) {
  if (a.isZero() || b.isZero()) return {};
  std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].isZero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return GaussianUnivariate(std::move(out));
}

GaussianUnivariate operator*(const GaussianRational& s, const GaussianUnivariate& p) {
  if (s.isZero()) return {};
  std::vector<GaussianRational> out = p.coeffs_;
  for (auto& c : out) c *= s;
  return GaussianUnivariate(std::move(out));
}

GaussianUnivariate GaussianUnivariate::operator-() const {
  return GaussianRational(-1) * *this;
}

std::pair<GaussianUnivariate, GaussianUnivariate> GaussianUnivariate::divmod(
    const GaussianUnivariate& divisor) const {
  if (divisor.isZero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<GaussianRational> rem = coeffs_;
  const std::size_t dn = divisor.coeffs_.size();
  if (rem.size() < dn) return {GaussianUnivariate(), *this};
  std::vector<GaussianRational> quot(rem.size() - dn + 1);
  GaussianRational lead_inv = divisor.leading().inverse();
  for (std::size_t k = rem.size() - 1; k + 1 >= dn; --k) {
    GaussianRational q = rem[k] * lead_inv;
    if (!q.isZero()) {
      for (std::size_t j = 0; j < dn; ++j) rem[k + 1 - dn + j] -= q * divisor.coeffs_[j];
    }
    quot[k + 1 - dn] = q;
    if (k + 1 == dn) break;
  }
  rem.resize(dn - 1);
  return {GaussianUnivariate(std::move(quot)), GaussianUnivariate(std::move(rem))};
}

std::string GaussianUnivariate::toString(char variable) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].isZero()) continue;
    if (!out.empty()) out += " + ";
    out += coeffs_[k].toString();
    if (k >= 1) out += std::string("*") + variable;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

GaussianUnivariate gcd(GaussianUnivariate a, GaussianUnivariate b) {
  while (!b.isZero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

GaussianUnivariate squarefreePart(const GaussianUnivariate& p) {
  if (p.isZero()) return {};
  GaussianUnivariate g = gcd(p, p.derivative());
  if (g.isZero()) return p.monic();
  return p.divmod(g).first.monic();
}

GaussianUnivariate interpolateAtIntegers(const std::vector<GaussianRational>& values) {
  // Newton divided differences on nodes 0..n-1, then expansion to the
  // monomial basis.
  const std::size_t n = values.size();
  std::vector<GaussianRational> dd = values;
  for (std::size_t level = 1; level < n; ++level) {
    GaussianRational inv = GaussianRational::fraction(1, static_cast<long>(level));
    for (std::size_t k = n - 1; k >= level; --k) {
      dd[k] = (dd[k] - dd[k - 1]) * inv;
      if (k == level) break;
    }
  }
  GaussianUnivariate result;
  for (std::size_t k = n; k-- > 0;) {
    // result = result * (T - k) + dd[k]
    GaussianUnivariate factor(std::vector<GaussianRational>{GaussianRational(-static_cast<long>(k)), 1});
    result = result * factor + GaussianUnivariate::constant(dd[k]);
  }
  return result;
}

}  // namespace keller
