#include "sparse_poly.hpp"

#include <algorithm>
#include <limits>

namespace keller::tracts::detail {

SparsePoly SparsePoly::constant(int variables, const GaussianRational& c) {
  SparsePoly p(variables);
  p.addTerm(Exponents(variables, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(int variables, int index, int power) {
  SparsePoly p(variables);
  Exponents e(variables, 0);
  e[index] = power;
  p.addTerm(e, GaussianRational(1));
  return p;
}

bool SparsePoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                             terms_.begin()->first.end(), [](int e) { return e == 0; }));
}

GaussianRational SparsePoly::constantTerm() const {
  auto it = terms_.find(Exponents(n_, 0));
  return it == terms_.end() ? GaussianRational() : it->second;
}

int SparsePoly::maxExponent(int var) const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
  return terms_.empty() ? 0 : m;
}

int SparsePoly::minExponent(int var) const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
  return terms_.empty() ? 0 : m;
}

bool SparsePoly::dependsOn(int var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] != 0; });
}

int SparsePoly::totalDegree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

std::vector<int> SparsePoly::support() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v) {
    if (dependsOn(v)) out.push_back(v);
  }
  return out;
}

void SparsePoly::addTerm(const Exponents& e, const GaussianRational& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

SparsePoly SparsePoly::coefficientOf(int var, int k) const {
  SparsePoly out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponents f = e;
    f[var] = 0;
    out.addTerm(f, c);
  }
  return out;
}

SparsePoly SparsePoly::shifted(int var, int k) const {
  SparsePoly out(n_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[var] -= k;
    out.addTerm(f, c);
  }
  return out;
}

SparsePoly SparsePoly::substitute(int var, const SparsePoly& value) const {
  const int top = maxExponent(var);
  std::vector<SparsePoly> powers{constant(n_, GaussianRational(1))};
  for (int k = 1; k <= top; ++k) powers.push_back(powers.back() * value);
  SparsePoly out(n_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    SparsePoly mono(n_);
    mono.addTerm(rest, c);
    out += mono * powers[e[var]];
  }
  return out;
}

SparsePoly SparsePoly::pow(unsigned k) const {
  SparsePoly result = constant(n_, GaussianRational(1));
  SparsePoly base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [e, c] : o.terms_) addTerm(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out(std::max(a.n_, b.n_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      SparsePoly::Exponents e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      out.addTerm(e, ca * cb);
    }
  }
  return out;
}

SparsePoly operator*(const GaussianRational& s, const SparsePoly& p) {
  SparsePoly out(p.n_);
  for (const auto& [e, c] : p.terms_) out.addTerm(e, s * c);
  return out;
}

}  // namespace keller::tracts::detail
