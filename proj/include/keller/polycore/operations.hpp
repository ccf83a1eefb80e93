#pragma once

#include <complex>

#include "keller/polycore/polynomial.hpp"

namespace keller {

/// Floating evaluation in ascending (i, j) order; throws EvaluationOverflow
/// when the result is not finite.
std::complex<double> evaluate(const BivariatePolynomial& p, const ComplexPoint& at);
ComplexPoint evaluate(const PlanarPolyMap& f, const ComplexPoint& at);

/// f o g, expanded exactly.
PlanarPolyMap composeMaps(const PlanarPolyMap& f, const PlanarPolyMap& g);

/// dP/dX * dQ/dY - dP/dY * dQ/dX, exact.
BivariatePolynomial jacobianDeterminant(const PlanarPolyMap& f);

/// det J_f is exactly the constant 1.
bool isKeller(const PlanarPolyMap& f);

/// Advisory membership check for the normalized family: each component's
/// total degree equals its Y-degree. Not enforced anywhere.
bool isYDegreeDominant(const PlanarPolyMap& f);

/// Upper bound for sup over the closed polydisk |X|,|Y| <= radius of
/// |f1 - g1| + |f2 - g2|, from coefficient moduli. Includes a relative
/// 1e-12 upward slack for the floating moduli.
double uniformBoundOnCompact(const PlanarPolyMap& f, const PlanarPolyMap& g, double radius);

/// Exact comparison of p and q through their values on {0..bound}^2.
/// Throws DegreeBoundViolated if either degree exceeds the bound.
bool equalByGrid(const BivariatePolynomial& p, const BivariatePolynomial& q, int degreeBound);

}  // namespace keller
