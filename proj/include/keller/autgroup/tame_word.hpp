#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "keller/polycore/polynomial.hpp"

namespace keller::aut {

/// (aX + bY + c, dX + eY + f) with ae - bd = 1 exactly.
struct AffineFactor {
  GaussianRational a{1}, b, c, d, e{1}, f;

  /// Validates the determinant; throws InvalidArgument otherwise.
  static AffineFactor make(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d,
                           GaussianRational e, GaussianRational f);
  static AffineFactor identity() { return {}; }

  bool isIdentity() const;
  AffineFactor inverse() const;
  PlanarPolyMap toMap() const;
  friend bool operator==(const AffineFactor&, const AffineFactor&) = default;
};

enum class Axis { AddToX, AddToY };

/// AddToX: (X + p(Y), Y).  AddToY: (X, Y + p(X)).
struct ElementaryFactor {
  Axis axis = Axis::AddToX;
  GaussianUnivariate poly;

  /// Canonical decompositions only emit degree >= 2; lower degrees overlap
  /// the affine group and are merged away by normalizeWord.
  bool isCanonical() const { return poly.degree().value_or(0) >= 2; }
  ElementaryFactor inverse() const { return {axis, -poly}; }
  PlanarPolyMap toMap() const;
  friend bool operator==(const ElementaryFactor&, const ElementaryFactor&) = default;
};

using Factor = std::variant<AffineFactor, ElementaryFactor>;

/// factors[0] o factors[1] o ... o factors[n-1]; the rightmost factor acts
/// first. The empty word is the identity.
struct TameWord {
  std::vector<Factor> factors;

  /// Product of factor degrees, an upper bound for the expansion degree.
  int degreeBound() const;
  friend bool operator==(const TameWord&, const TameWord&) = default;
};

PlanarPolyMap expandWord(const TameWord& w);

/// Reversed sequence of factor inverses.
TameWord invertWord(const TameWord& w);

/// Concatenation u . v, expanding to expand(u) o expand(v).
TameWord concatenate(const TameWord& u, const TameWord& v);

/// Merges adjacent affine factors, folds elementary factors of degree <= 1
/// into affine ones, and drops identity affine factors.
TameWord normalizeWord(const TameWord& w);

/// Degree-reduction decomposition of a Keller automorphism. Throws NotKeller
/// or NotAnAutomorphism. Only the expansion of the result is contractual.
TameWord decomposeAutomorphism(const PlanarPolyMap& f);

/// Floating evaluation of the word, factor by factor.
ComplexPoint evaluateWord(const TameWord& w, const ComplexPoint& at);

nlohmann::json wordToJson(const TameWord& w);
TameWord wordFromJson(const nlohmann::json& j, const std::string& where = "word");

// ---------------------------------------------------------------------------
// Words whose coefficients may be floating complex numbers.

using ApproxCoefficient = std::variant<GaussianRational, std::complex<double>>;

struct ApproxAffineFactor {
  ApproxCoefficient a{GaussianRational(1)}, b{GaussianRational()}, c{GaussianRational()};
  ApproxCoefficient d{GaussianRational()}, e{GaussianRational(1)}, f{GaussianRational()};
};

struct ApproxElementaryFactor {
  Axis axis = Axis::AddToX;
  std::vector<ApproxCoefficient> poly;  // ascending degree
};

using ApproxFactor = std::variant<ApproxAffineFactor, ApproxElementaryFactor>;

struct ApproxTameWord {
  std::vector<ApproxFactor> factors;
  static ApproxTameWord fromExact(const TameWord& w);
};

/// Replaces every floating coefficient by a Gaussian rational within
/// epsilon (nested dyadic grids), keeping exact coefficients unchanged.
/// Affine factors are repaired so ae - bd = 1 holds exactly. Throws
/// DegenerateAffine if a and d both round to zero.
TameWord rationalApproximateWord(const ApproxTameWord& w, double epsilon);

/// Floating evaluation of an approximate word.
ComplexPoint evaluateWord(const ApproxTameWord& w, const ComplexPoint& at);

}  // namespace keller::aut
