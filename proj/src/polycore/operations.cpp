#include "keller/polycore/operations.hpp"

#include <array>
#include <cmath>
#include <string>

#include "keller/error.hpp"
#include "keller/simd/kernels.hpp"

namespace keller {

std::complex<double> evaluate(const BivariatePolynomial& p, const ComplexPoint& at) {
  if (!at.isFinite()) throw Error(ErrorCode::InvalidArgument, "evaluation point is not finite");
  if (p.isZero()) return {0.0, 0.0};
  const auto compiled = simd::CompiledPolynomial::compile(p);
  const std::array<double, 1> zr{at.z.real()}, zi{at.z.imag()}, wr{at.w.real()}, wi{at.w.imag()};
  std::array<double, 1> outr{}, outi{};
  simd::detail::evaluateBatchScalar(compiled, simd::PointsView{zr, zi, wr, wi}, simd::OutputView{outr, outi}, 0, 1);
  std::complex<double> v{outr[0], outi[0]};
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(ErrorCode::EvaluationOverflow, "polynomial value is not finite");
  }
  return v;
}

ComplexPoint evaluate(const PlanarPolyMap& f, const ComplexPoint& at) {
  return {evaluate(f.first, at), evaluate(f.second, at)};
}

PlanarPolyMap composeMaps(const PlanarPolyMap& f, const PlanarPolyMap& g) {
  return {f.first.substitute(g.first, g.second), f.second.substitute(g.first, g.second)};
}

BivariatePolynomial jacobianDeterminant(const PlanarPolyMap& f) {
  return f.first.derivativeX() * f.second.derivativeY() - f.first.derivativeY() * f.second.derivativeX();
}

bool isKeller(const PlanarPolyMap& f) {
  return jacobianDeterminant(f) == BivariatePolynomial(1);
}

bool isYDegreeDominant(const PlanarPolyMap& f) {
  auto dominant = [](const BivariatePolynomial& p) {
    return !p.isZero() && p.totalDegree() == p.degreeInY();
  };
  return dominant(f.first) && dominant(f.second);
}

double uniformBoundOnCompact(const PlanarPolyMap& f, const PlanarPolyMap& g, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "uniformBoundOnCompact: radius must be positive");
  }
  double bound = 0.0;
  for (const BivariatePolynomial& d : {f.first - g.first, f.second - g.second}) {
    for (const auto& [m, c] : d.terms()) bound += c.modulus() * std::pow(radius, m.degree());
  }
  return bound * (1.0 + 1e-12);
}

bool equalByGrid(const BivariatePolynomial& p, const BivariatePolynomial& q, int degreeBound) {
  if (degreeBound < 0) throw Error(ErrorCode::InvalidArgument, "equalByGrid: negative degree bound");
  for (const auto* poly : {&p, &q}) {
    auto d = poly->totalDegree();
    if (d && *d > degreeBound) {
      throw Error(ErrorCode::DegreeBoundViolated,
                  "degree " + std::to_string(*d) + " exceeds bound " + std::to_string(degreeBound));
    }
  }
  const BivariatePolynomial diff = p - q;
  for (int a = 0; a <= degreeBound; ++a) {
    // Restrict to X = a, then check the Y-polynomial at every grid Y.
    GaussianUnivariate slice = diff.restrictX(GaussianRational(a));
    for (int b = 0; b <= degreeBound; ++b) {
      if (!slice.evaluate(GaussianRational(b)).isZero()) return false;
    }
  }
  return true;
}

}  // namespace keller
