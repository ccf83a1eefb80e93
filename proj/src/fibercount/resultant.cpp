#include <algorithm>

#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"

namespace keller::fiber {

namespace {

/// Exact determinant by Gaussian elimination over Q + iQ.
GaussianRational determinant(std::vector<std::vector<GaussianRational>> m) {
  const std::size_t n = m.size();
  GaussianRational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].isZero()) ++pivot;
    if (pivot == n) return GaussianRational();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const GaussianRational inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].isZero()) continue;
      const GaussianRational factor = m[r][col] * inv;
      for (std::size_t c = col + 1; c < n; ++c) {
        if (!m[col][c].isZero()) m[r][c] -= factor * m[col][c];
      }
    }
  }
  return det;
}

/// Sylvester determinant for p = sum p[i] Y^i, q = sum q[j] Y^j with the
/// given formal degrees (coefficient vectors may carry zero leads).
GaussianRational sylvester(const std::vector<GaussianRational>& p, const std::vector<GaussianRational>& q) {
  const std::size_t m = p.size() - 1;
  const std::size_t n = q.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<GaussianRational>> s(size, std::vector<GaussianRational>(size));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s[r][r + m - i] = p[i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j <= n; ++j) s[n + r][r + n - j] = q[j];
  }
  return determinant(std::move(s));
}

struct YCoefficients {
  std::vector<GaussianUnivariate> coeffs;  // coefficient of Y^k, polynomial in X
  int degreeY = 0;
  int degreeX = 0;
};

YCoefficients splitInY(const BivariatePolynomial& p) {
  YCoefficients out;
  out.degreeY = p.degreeInY().value_or(0);
  out.degreeX = p.degreeInX().value_or(0);
  for (int k = 0; k <= out.degreeY; ++k) out.coeffs.push_back(p.coefficientOfY(k));
  return out;
}

std::vector<GaussianRational> specialize(const YCoefficients& c, const GaussianRational& x,
                                         const GaussianRational& constantShift) {
  std::vector<GaussianRational> v;
  v.reserve(c.coeffs.size());
  for (const auto& k : c.coeffs) v.push_back(k.evaluate(x));
  v[0] -= constantShift;
  return v;
}

void checkInputs(const BivariatePolynomial& p, const BivariatePolynomial& q, bool allowZero) {
  if (!allowZero && (p.isZero() || q.isZero())) throw Error(ErrorCode::InvalidArgument, "resultant of a zero polynomial");
  if (p.degreeInY().value_or(0) == 0 && q.degreeInY().value_or(0) == 0) {
    throw Error(ErrorCode::BothConstantInY, "neither polynomial depends on Y");
  }
}

int xDegreeBound(const YCoefficients& p, const YCoefficients& q, int totalP, int totalQ) {
  return std::min(q.degreeY * p.degreeX + p.degreeY * q.degreeX, totalP * totalQ);
}

}  // namespace

GaussianUnivariate exactResultantY(const BivariatePolynomial& p, const BivariatePolynomial& q) {
  checkInputs(p, q, false);
  const YCoefficients cp = splitInY(p);
  const YCoefficients cq = splitInY(q);
  const int bound = xDegreeBound(cp, cq, *p.totalDegree(), *q.totalDegree());
  std::vector<GaussianRational> values;
  for (int x = 0; x <= bound; ++x) {
    const GaussianRational xv(x);
    values.push_back(sylvester(specialize(cp, xv, {}), specialize(cq, xv, {})));
  }
  return interpolateAtIntegers(values);
}

UnivariatePolynomial resultantEliminateY(const BivariatePolynomial& p, const BivariatePolynomial& q) {
  return UnivariatePolynomial::fromExact(exactResultantY(p, q));
}

SymbolicResultant::SymbolicResultant(const BivariatePolynomial& p, const BivariatePolynomial& q) {
  // P - A is never zero, so a zero component is allowed here.
  checkInputs(p, q, true);
  const YCoefficients cp = splitInY(p);
  const YCoefficients cq = splitInY(q);
  // A enters the n = deg_Y(q) rows built from p - A, B the m rows from q - B.
  degA_ = cq.degreeY;
  degB_ = cp.degreeY;
  degX_ = xDegreeBound(cp, cq, p.totalDegree().value_or(0), q.totalDegree().value_or(0));
  exact_.assign(static_cast<std::size_t>(degX_ + 1) * (degA_ + 1) * (degB_ + 1), GaussianRational());

  // values[s][t] = Res_Y(p - s, q - t) as a polynomial in X.
  std::vector<std::vector<GaussianUnivariate>> values(degA_ + 1, std::vector<GaussianUnivariate>(degB_ + 1));
  for (int s = 0; s <= degA_; ++s) {
    for (int t = 0; t <= degB_; ++t) {
      std::vector<GaussianRational> nodes;
      for (int x = 0; x <= degX_; ++x) {
        const GaussianRational xv(x);
        nodes.push_back(sylvester(specialize(cp, xv, GaussianRational(s)), specialize(cq, xv, GaussianRational(t))));
      }
      values[s][t] = interpolateAtIntegers(nodes);
    }
  }
  for (int k = 0; k <= degX_; ++k) {
    // Interpolate in B for each s, then in A for each power of B.
    std::vector<GaussianUnivariate> inB(degA_ + 1);
    for (int s = 0; s <= degA_; ++s) {
      std::vector<GaussianRational> row;
      for (int t = 0; t <= degB_; ++t) row.push_back(values[s][t].coefficient(k));
      inB[s] = interpolateAtIntegers(row);
    }
    for (int t = 0; t <= degB_; ++t) {
      std::vector<GaussianRational> column;
      for (int s = 0; s <= degA_; ++s) column.push_back(inB[s].coefficient(t));
      const GaussianUnivariate inA = interpolateAtIntegers(column);
      for (int s = 0; s <= degA_; ++s) {
        exact_[index(k, s, t)] = inA.coefficient(s);
        if (!exact_[index(k, s, t)].isZero()) zero_ = false;
      }
    }
  }
  approx_.reserve(exact_.size());
  for (const auto& c : exact_) approx_.push_back(c.toComplex());
}

UnivariatePolynomial SymbolicResultant::at(std::complex<double> a, std::complex<double> b) const {
  std::vector<std::complex<double>> coeffs(degX_ + 1);
  for (int k = 0; k <= degX_; ++k) {
    std::complex<double> acc = 0.0;
    for (int s = degA_; s >= 0; --s) {
      std::complex<double> inner = 0.0;
      for (int t = degB_; t >= 0; --t) inner = inner * b + approx_[index(k, s, t)];
      acc = acc * a + inner;
    }
    coeffs[k] = acc;
  }
  return UnivariatePolynomial(std::move(coeffs));
}

}  // namespace keller::fiber
