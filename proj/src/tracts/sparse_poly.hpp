#pragma once

// Sparse multivariate polynomials over Q + iQ used by the tract solver.
// Exponents are signed so that variable 0 can carry X^-1.

#include <map>
#include <vector>

#include "keller/polycore/gaussian_rational.hpp"

namespace keller::tracts::detail {

class SparsePoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, GaussianRational>;

  explicit SparsePoly(int variables = 0) : n_(variables) {}
  static SparsePoly constant(int variables, const GaussianRational& c);
  static SparsePoly variable(int variables, int index, int power = 1);

  int variables() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  GaussianRational constantTerm() const;

  int maxExponent(int var) const;
  int minExponent(int var) const;
  bool dependsOn(int var) const;
  int totalDegree() const;
  std::vector<int> support() const;  // variables that occur

  void addTerm(const Exponents& e, const GaussianRational& c);
  /// Coefficient of var^k as a polynomial in the remaining variables.
  SparsePoly coefficientOf(int var, int k) const;
  /// Divides every term by var^k (exponents shift down).
  SparsePoly shifted(int var, int k) const;
  /// Replaces var by value (var must not occur in value). Nonnegative
  /// exponents only.
  SparsePoly substitute(int var, const SparsePoly& value) const;
  SparsePoly pow(unsigned k) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const GaussianRational& s, const SparsePoly& p);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

 private:
  int n_;
  TermMap terms_;
};

}  // namespace keller::tracts::detail
