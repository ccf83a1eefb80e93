#include "keller/polycore/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "keller/error.hpp"

namespace keller {

bool canonicalLess(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.x > b.x;
}

bool ComplexPoint::isFinite() const {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::isfinite(w.real()) &&
         std::isfinite(w.imag());
}

BivariatePolynomial::BivariatePolynomial(const GaussianRational& c) {
  if (!c.isZero()) terms_.emplace(Monomial{0, 0}, c);
}

BivariatePolynomial BivariatePolynomial::monomial(const GaussianRational& c, int i, int j) {
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in polynomial");
  BivariatePolynomial p;
  if (!c.isZero()) p.terms_.emplace(Monomial{i, j}, c);
  return p;
}

BivariatePolynomial BivariatePolynomial::fromUnivariate(const GaussianUnivariate& p, bool inY) {
  BivariatePolynomial out;
  const auto& c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].isZero()) continue;
    int e = static_cast<int>(k);
    out.terms_.emplace(inY ? Monomial{0, e} : Monomial{e, 0}, c[k]);
  }
  return out;
}

bool BivariatePolynomial::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

std::optional<int> BivariatePolynomial::totalDegree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<int> BivariatePolynomial::degreeInX() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.x;
}

std::optional<int> BivariatePolynomial::degreeInY() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.y);
  return d;
}

GaussianRational BivariatePolynomial::coefficient(int i, int j) const {
  auto it = terms_.find(Monomial{i, j});
  return it == terms_.end() ? GaussianRational() : it->second;
}

void BivariatePolynomial::setCoefficient(int i, int j, const GaussianRational& c) {
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in polynomial");
  if (c.isZero()) {
    terms_.erase(Monomial{i, j});
  } else {
    terms_[Monomial{i, j}] = c;
  }
}

void BivariatePolynomial::addTerm(int i, int j, const GaussianRational& c) {
  if (c.isZero()) return;
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in polynomial");
  auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

BivariatePolynomial BivariatePolynomial::leadingForm() const {
  BivariatePolynomial out;
  auto d = totalDegree();
  if (!d) return out;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == *d) out.terms_.emplace(m, c);
  }
  return out;
}

BivariatePolynomial BivariatePolynomial::derivativeX() const {
  BivariatePolynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.x == 0) continue;
    out.terms_.emplace(Monomial{m.x - 1, m.y}, c * GaussianRational(m.x));
  }
  return out;
}

BivariatePolynomial BivariatePolynomial::derivativeY() const {
  BivariatePolynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.y == 0) continue;
    out.terms_.emplace(Monomial{m.x, m.y - 1}, c * GaussianRational(m.y));
  }
  return out;
}

GaussianUnivariate BivariatePolynomial::coefficientOfY(int k) const {
  std::vector<GaussianRational> c;
  for (const auto& [m, v] : terms_) {
    if (m.y != k) continue;
    if (c.size() <= static_cast<std::size_t>(m.x)) c.resize(m.x + 1);
    c[m.x] = v;
  }
  return GaussianUnivariate(std::move(c));
}

GaussianUnivariate BivariatePolynomial::restrictX(const GaussianRational& xValue) const {
  // Result is a polynomial in Y.
  std::vector<GaussianRational> c;
  for (const auto& [m, v] : terms_) {
    if (c.size() <= static_cast<std::size_t>(m.y)) c.resize(m.y + 1);
    c[m.y] += v * xValue.pow(static_cast<unsigned>(m.x));
  }
  return GaussianUnivariate(std::move(c));
}

GaussianUnivariate BivariatePolynomial::restrictY(const GaussianRational& yValue) const {
  std::vector<GaussianRational> c;
  for (const auto& [m, v] : terms_) {
    if (c.size() <= static_cast<std::size_t>(m.x)) c.resize(m.x + 1);
    c[m.x] += v * yValue.pow(static_cast<unsigned>(m.y));
  }
  return GaussianUnivariate(std::move(c));
}

GaussianRational BivariatePolynomial::evaluateExact(const GaussianRational& xv,
                                                    const GaussianRational& yv) const {
  GaussianRational acc;
  for (const auto& [m, c] : terms_) {
    acc += c * xv.pow(static_cast<unsigned>(m.x)) * yv.pow(static_cast<unsigned>(m.y));
  }
  return acc;
}

BivariatePolynomial BivariatePolynomial::substitute(const BivariatePolynomial& xv,
                                                    const BivariatePolynomial& yv) const {
  if (terms_.empty()) return {};
  const int dx = *degreeInX();
  const int dy = *degreeInY();
  std::vector<BivariatePolynomial> ypow(dy + 1);
  ypow[0] = BivariatePolynomial(1);
  for (int j = 1; j <= dy; ++j) ypow[j] = ypow[j - 1] * yv;

  // Horner in the substituted X: sum_i xv^i * (sum_j a_ij yv^j).
  BivariatePolynomial acc;
  for (int i = dx; i >= 0; --i) {
    BivariatePolynomial inner;
    auto lo = terms_.lower_bound(Monomial{i, 0});
    auto hi = terms_.lower_bound(Monomial{i + 1, 0});
    for (auto it = lo; it != hi; ++it) inner += it->second * ypow[it->first.y];
    acc = (i == dx) ? inner : acc * xv + inner;
  }
  return acc;
}

BivariatePolynomial BivariatePolynomial::pow(unsigned exponent) const {
  BivariatePolynomial result(1);
  BivariatePolynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m.x, m.y, c);
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m.x, m.y, -c);
  return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(const GaussianRational& s) {
  if (s.isZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.isZero() || b.isZero()) return {};
  // Dense accumulation over the exponent rectangle of the product.
  const int dx = *a.degreeInX() + *b.degreeInX();
  const int dy = *a.degreeInY() + *b.degreeInY();
  const std::size_t stride = static_cast<std::size_t>(dy) + 1;
  std::vector<GaussianRational> acc((static_cast<std::size_t>(dx) + 1) * stride);
  std::vector<char> touched(acc.size(), 0);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      std::size_t idx = static_cast<std::size_t>(ma.x + mb.x) * stride + static_cast<std::size_t>(ma.y + mb.y);
      acc[idx] += ca * cb;
      touched[idx] = 1;
    }
  }
  BivariatePolynomial out;
  for (std::size_t idx = 0; idx < acc.size(); ++idx) {
    if (!touched[idx] || acc[idx].isZero()) continue;
    out.terms_.emplace_hint(out.terms_.end(),
                            Monomial{static_cast<int>(idx / stride), static_cast<int>(idx % stride)},
                            std::move(acc[idx]));
  }
  return out;
}

BivariatePolynomial BivariatePolynomial::operator-() const {
  BivariatePolynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

std::vector<std::pair<Monomial, GaussianRational>> BivariatePolynomial::canonicalTerms() const {
  std::vector<std::pair<Monomial, GaussianRational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return canonicalLess(l.first, r.first); });
  return out;
}

std::string BivariatePolynomial::toString(char xName, char yName) const {
  if (terms_.empty()) return "0";
  auto sorted = canonicalTerms();
  std::string out;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    auto power = [&](char name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    power(xName, m.x);
    power(yName, m.y);
    std::string coeff = c.toString();
    bool negative = c.isReal() && sgn(c.re()) < 0;
    if (negative) coeff = (-c).toString();
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

std::optional<int> PlanarPolyMap::degree() const {
  auto a = first.totalDegree();
  auto b = second.totalDegree();
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

std::string PlanarPolyMap::toString() const {
  return "(" + first.toString() + ", " + second.toString() + ")";
}

}  // namespace keller
