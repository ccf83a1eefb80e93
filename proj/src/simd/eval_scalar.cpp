#include <vector>

#include "keller/simd/kernels.hpp"

namespace keller::simd::detail {

void evaluateBatchScalar(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out,
                         std::size_t begin, std::size_t end) {
  const std::size_t nx = static_cast<std::size_t>(poly.maxX) + 1;
  const std::size_t ny = static_cast<std::size_t>(poly.maxY) + 1;
  std::vector<double> pzr(nx), pzi(nx), pwr(ny), pwi(ny);
  for (std::size_t k = begin; k < end; ++k) {
    const double zr = points.zRe[k], zi = points.zIm[k];
    const double wr = points.wRe[k], wi = points.wIm[k];
    pzr[0] = 1.0;
    pzi[0] = 0.0;
    for (std::size_t e = 1; e < nx; ++e) {
      pzr[e] = pzr[e - 1] * zr - pzi[e - 1] * zi;
      pzi[e] = pzr[e - 1] * zi + pzi[e - 1] * zr;
    }
    pwr[0] = 1.0;
    pwi[0] = 0.0;
    for (std::size_t e = 1; e < ny; ++e) {
      pwr[e] = pwr[e - 1] * wr - pwi[e - 1] * wi;
      pwi[e] = pwr[e - 1] * wi + pwi[e - 1] * wr;
    }
    double accr = 0.0, acci = 0.0;
    for (std::size_t t = 0; t < poly.size(); ++t) {
      const std::size_t i = static_cast<std::size_t>(poly.expX[t]);
      const std::size_t j = static_cast<std::size_t>(poly.expY[t]);
      const double mr = pzr[i] * pwr[j] - pzi[i] * pwi[j];
      const double mi = pzr[i] * pwi[j] + pzi[i] * pwr[j];
      const double cr = poly.coeffRe[t], ci = poly.coeffIm[t];
      accr += cr * mr - ci * mi;
      acci += cr * mi + ci * mr;
    }
    out.re[k] = accr;
    out.im[k] = acci;
  }
}

}  // namespace keller::simd::detail
