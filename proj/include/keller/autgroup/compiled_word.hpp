#pragma once

#include <complex>
#include <span>
#include <vector>

#include "keller/autgroup/tame_word.hpp"
#include "keller/simd/kernels.hpp"

namespace keller::aut {

/// Floating image of a TameWord for repeated evaluation. Batch evaluation
/// runs each elementary factor through the SIMD polynomial kernel.
class CompiledWord {
 public:
  CompiledWord() = default;
  explicit CompiledWord(const TameWord& w);

  ComplexPoint evaluate(const ComplexPoint& at) const;

  /// In-place evaluation over a structure-of-arrays batch.
  void evaluateBatch(std::span<double> zRe, std::span<double> zIm, std::span<double> wRe,
                     std::span<double> wIm, simd::Isa isa) const;

 private:
  struct Step {
    bool affine = true;
    std::complex<double> a, b, c, d, e, f;
    Axis axis = Axis::AddToX;
    std::vector<std::complex<double>> poly;
    simd::CompiledPolynomial kernel;  // p(Y) for AddToX, p(X) for AddToY, as a bivariate in the moving slot
  };
  std::vector<Step> steps_;  // in application order (rightmost factor first)
};

}  // namespace keller::aut
