#pragma once

// Exact solver for the small polynomial systems produced by the tract
// conditions: linear pivoting, Gaussian-rational root branching, monomial
// factor splitting and resultant elimination.

#include <optional>
#include <vector>

#include "keller/polycore/univariate.hpp"
#include "sparse_poly.hpp"

namespace keller::tracts::detail {

struct SolutionFamily {
  /// Value of each variable in terms of the free ones; free variables hold
  /// nullopt.
  std::vector<std::optional<SparsePoly>> values;
};

struct SolveOutcome {
  std::vector<SolutionFamily> families;
  bool unresolved = false;
};

/// `unknowns` lists the variables to solve for; the others must not occur.
SolveOutcome solveSystem(const std::vector<SparsePoly>& equations, const std::vector<int>& unknowns);

/// Gaussian-rational roots of p; `complete` reports whether they account
/// for every root of the squarefree part.
std::vector<GaussianRational> gaussianRationalRoots(const GaussianUnivariate& p, bool& complete);

}  // namespace keller::tracts::detail
