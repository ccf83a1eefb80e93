#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "keller/polycore/gaussian_rational.hpp"
#include "keller/polycore/polynomial.hpp"

namespace keller::charset {

inline constexpr int kStarsPerBundle = 5;

using Triangle = std::array<std::complex<double>, 3>;  // W-plane, vertex 0 is the star centre

struct ThickStar {
  int slice = 0;                 // 1-based slice index k
  mpq_class centerW;             // dyadic point of l = [0, 1]
  int valence = 2;               // m
  int bundle = 0;
  mpq_class rayLength;           // exact
  double rotation = 0.0;         // radians
  std::vector<Triangle> triangles;  // 2m triangles

  ComplexPoint center() const;
  double area() const;
  friend bool operator==(const ThickStar&, const ThickStar&) = default;
};

struct StaredSegment {
  int slice = 0;
  mpq_class z;                        // Z_k = 1/k
  std::vector<ThickStar> stars;
  std::vector<mpq_class> bundleMaxRay;  // per bundle
  friend bool operator==(const StaredSegment&, const StaredSegment&) = default;
};

struct BuildParameters {
  double radius = 2.0;
  int slices = 1;
  int bundlesPerSlice = 2;
  double fatteningRadius = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const BuildParameters&, const BuildParameters&) = default;
};

/// D = B(0, R) - E, with E the union over slices k of {Z_k} x (l plus its
/// stars), optionally fattened to {|z - Z_k| <= r} x (l plus its stars).
struct CharacteristicSet {
  BuildParameters params;
  std::vector<StaredSegment> slices;

  std::size_t starCount() const;
  std::vector<int> valences() const;
  friend bool operator==(const CharacteristicSet&, const CharacteristicSet&) = default;
};

/// Deterministic construction. Throws InvariantViolation when the
/// parameters break disjointness or containment in the ball.
CharacteristicSet buildCharacteristicSet(const BuildParameters& params);

/// Rechecks every build invariant; throws InvariantViolation naming the
/// first failure.
void verifyInvariants(const CharacteristicSet& d);

bool containsPoint(const CharacteristicSet& d, const ComplexPoint& p);

/// Sum of triangle areas times pi r^2; 0 when r = 0.
double removedVolume(const CharacteristicSet& d);

/// Dyadic rationals of (0, 1) in breadth-first order: 1/2, 1/4, 3/4, 1/8, ...
mpq_class dyadicCenter(int index);

nlohmann::json toJson(const CharacteristicSet& d);
CharacteristicSet fromJson(const nlohmann::json& j);

}  // namespace keller::charset
