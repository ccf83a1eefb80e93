#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace keller {
class BivariatePolynomial;
}

namespace keller::simd {

enum class Isa { Scalar, Avx2 };

std::string_view toString(Isa isa);

/// Best instruction set the running CPU supports.
Isa detectIsa();

/// Instruction set used by default dispatch: detectIsa(), unless the
/// environment variable KELLER_SIMD=scalar forces the reference path.
Isa activeIsa();

/// Floating-point image of a polynomial: terms in ascending (i, j)
/// lexicographic order with split real/imaginary coefficients.
struct CompiledPolynomial {
  std::vector<int> expX;
  std::vector<int> expY;
  std::vector<double> coeffRe;
  std::vector<double> coeffIm;
  int maxX = 0;
  int maxY = 0;

  static CompiledPolynomial compile(const BivariatePolynomial& p);
  std::size_t size() const { return expX.size(); }
};

/// Structure-of-arrays batch of points (z, w) in C^2.
struct PointsView {
  std::span<const double> zRe;
  std::span<const double> zIm;
  std::span<const double> wRe;
  std::span<const double> wIm;
  std::size_t size() const { return zRe.size(); }
};

struct OutputView {
  std::span<double> re;
  std::span<double> im;
};

/// out[k] = sum over terms t (in stored order) of c_t * (z_k^i * w_k^j).
/// Powers are built by repeated multiplication and every complex product is
/// formed as (ar*br - ai*bi, ar*bi + ai*br), so the scalar and vector
/// variants agree bit for bit.
void evaluateBatch(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out,
                   Isa isa);

inline void evaluateBatch(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out) {
  evaluateBatch(poly, points, out, activeIsa());
}

namespace detail {
void evaluateBatchScalar(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out,
                         std::size_t begin, std::size_t end);
void evaluateBatchAvx2(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out,
                       std::size_t begin, std::size_t end);
}  // namespace detail

}  // namespace keller::simd
