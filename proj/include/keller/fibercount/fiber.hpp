#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "keller/autgroup/compiled_word.hpp"
#include "keller/polycore/polynomial.hpp"

namespace keller::fiber {

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr int kDefaultTrials = 16;

/// Dense complex polynomial, ascending degree, no trailing zeros.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<std::complex<double>> coefficients);
  static UnivariatePolynomial fromExact(const GaussianUnivariate& p);

  bool isZero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
  std::complex<double> evaluate(std::complex<double> z) const;
  /// Drops leading coefficients below relative * max |c|.
  UnivariatePolynomial trimmed(double relative) const;

 private:
  std::vector<std::complex<double>> coeffs_;
};

struct RootCluster {
  std::complex<double> value;
  int multiplicity = 1;
};

/// Res_Y(p, q) as an exact polynomial in X (Sylvester determinant at
/// integer nodes, then exact interpolation). Throws BothConstantInY.
GaussianUnivariate exactResultantY(const BivariatePolynomial& p, const BivariatePolynomial& q);
UnivariatePolynomial resultantEliminateY(const BivariatePolynomial& p, const BivariatePolynomial& q);

/// Res_Y(P - A, Q - B) as an exact polynomial in X, A, B.
class SymbolicResultant {
 public:
  SymbolicResultant(const BivariatePolynomial& p, const BivariatePolynomial& q);

  int degreeX() const { return degX_; }
  int degreeA() const { return degA_; }
  int degreeB() const { return degB_; }
  bool isZero() const { return zero_; }
  const GaussianRational& coefficient(int k, int s, int t) const { return exact_[index(k, s, t)]; }
  /// Specializes A = a, B = b in floating point.
  UnivariatePolynomial at(std::complex<double> a, std::complex<double> b) const;

 private:
  std::size_t index(int k, int s, int t) const {
    return (static_cast<std::size_t>(k) * (degA_ + 1) + s) * (degB_ + 1) + t;
  }
  int degX_ = 0, degA_ = 0, degB_ = 0;
  bool zero_ = true;
  std::vector<GaussianRational> exact_;
  std::vector<std::complex<double>> approx_;
};

/// Roots clustered at distance tol; multiplicities sum to deg u.
std::vector<RootCluster> univariateRootClusters(const UnivariatePolynomial& u, double tol);
/// Cluster centroids, each reported once.
std::vector<std::complex<double>> univariateRoots(const UnivariatePolynomial& u, double tol);

struct FiberResult {
  ComplexPoint target;
  std::vector<ComplexPoint> points;
  std::vector<double> residuals;
  int cardinality = 0;
};

/// Reusable solver for one map. Keller maps that decompose into a tame
/// word are solved by evaluating the inverse word; everything else goes
/// through the symbolic resultant.
class FiberSolver {
 public:
  explicit FiberSolver(const PlanarPolyMap& f);

  const PlanarPolyMap& map() const { return f_; }
  bool isAutomorphism() const { return inverse_.has_value(); }
  /// deg P * deg Q.
  int bezoutBound() const { return bezout_; }
  const aut::CompiledWord* inverseWord() const { return inverse_ ? &*inverse_ : nullptr; }

  FiberResult solve(const ComplexPoint& target, double tol = kDefaultTolerance) const;

 private:
  FiberResult solveGeneric(const ComplexPoint& target, double tol) const;
  std::optional<ComplexPoint> newtonPolish(ComplexPoint x, const ComplexPoint& target) const;
  double residual(const ComplexPoint& x, const ComplexPoint& target) const;

  PlanarPolyMap f_;
  int bezout_ = 0;
  std::optional<aut::CompiledWord> inverse_;
  std::optional<SymbolicResultant> resultant_;
  // P, Q, dP/dX, dP/dY, dQ/dX, dQ/dY
  std::array<simd::CompiledPolynomial, 6> compiled_;
  // Coefficient of Y^k in P (resp. Q) as a floating polynomial in X.
  std::vector<UnivariatePolynomial> pInY_, qInY_;
};

FiberResult solveFiber(const PlanarPolyMap& f, const ComplexPoint& target, double tol = kDefaultTolerance);

struct DegreeSurvey {
  std::vector<ComplexPoint> targets;
  std::vector<int> cardinalities;
  int degree = 0;
  /// Fraction of trials reporting the maximal cardinality.
  double agreement = 0.0;
};

/// Trial i draws a point of the bidisk of radius 2 from stream (seed, i)
/// and solves the fiber over its image. Independent of `workers`.
DegreeSurvey surveyDegree(const PlanarPolyMap& f, int trials = kDefaultTrials, std::uint64_t seed = 0,
                          int workers = 1, double tol = kDefaultTolerance);
int geometricDegree(const PlanarPolyMap& f, int trials = kDefaultTrials, std::uint64_t seed = 0, int workers = 1);

/// Process-wide counters over every FiberSolver::solve call.
struct SolveStatistics {
  std::uint64_t solves = 0;
  std::uint64_t bezoutViolations = 0;
};
SolveStatistics solveStatistics();
void resetSolveStatistics();
/// Accounts for fibers resolved outside FiberSolver::solve (batched
/// inverse-word evaluation).
void recordSolves(std::uint64_t solves, std::uint64_t violations);

}  // namespace keller::fiber
