#include "keller/autgroup/compiled_word.hpp"

#include <array>

namespace keller::aut {

CompiledWord::CompiledWord(const TameWord& w) {
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    Step s;
    if (const auto* af = std::get_if<AffineFactor>(&*it)) {
      s.affine = true;
      s.a = af->a.toComplex();
      s.b = af->b.toComplex();
      s.c = af->c.toComplex();
      s.d = af->d.toComplex();
      s.e = af->e.toComplex();
      s.f = af->f.toComplex();
    } else {
      const auto& ef = std::get<ElementaryFactor>(*it);
      s.affine = false;
      s.axis = ef.axis;
      for (const auto& c : ef.poly.coefficients()) s.poly.push_back(c.toComplex());
      s.kernel = simd::CompiledPolynomial::compile(BivariatePolynomial::fromUnivariate(ef.poly, ef.axis == Axis::AddToX));
    }
    steps_.push_back(std::move(s));
  }
}

ComplexPoint CompiledWord::evaluate(const ComplexPoint& at) const {
  std::array<double, 4> buf{at.z.real(), at.z.imag(), at.w.real(), at.w.imag()};
  evaluateBatch(std::span(&buf[0], 1), std::span(&buf[1], 1), std::span(&buf[2], 1), std::span(&buf[3], 1),
                simd::Isa::Scalar);
  return {{buf[0], buf[1]}, {buf[2], buf[3]}};
}

void CompiledWord::evaluateBatch(std::span<double> zRe, std::span<double> zIm, std::span<double> wRe,
                                 std::span<double> wIm, simd::Isa isa) const {
  const std::size_t n = zRe.size();
  std::vector<double> outRe, outIm;
  for (const Step& s : steps_) {
    if (s.affine) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> z(zRe[k], zIm[k]);
        const std::complex<double> w(wRe[k], wIm[k]);
        const auto nz = s.a * z + s.b * w + s.c;
        const auto nw = s.d * z + s.e * w + s.f;
        zRe[k] = nz.real();
        zIm[k] = nz.imag();
        wRe[k] = nw.real();
        wIm[k] = nw.imag();
      }
      continue;
    }
    outRe.assign(n, 0.0);
    outIm.assign(n, 0.0);
    simd::evaluateBatch(s.kernel, simd::PointsView{zRe, zIm, wRe, wIm}, simd::OutputView{outRe, outIm}, isa);
    auto& tRe = s.axis == Axis::AddToX ? zRe : wRe;
    auto& tIm = s.axis == Axis::AddToX ? zIm : wIm;
    for (std::size_t k = 0; k < n; ++k) {
      tRe[k] += outRe[k];
      tIm[k] += outIm[k];
    }
  }
}

}  // namespace keller::aut
