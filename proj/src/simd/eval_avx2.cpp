// Compiled with -mavx2 (no FMA); only reached after a runtime CPU check.
#include <immintrin.h>

#include <vector>

#include "keller/simd/kernels.hpp"

namespace keller::simd::detail {

namespace {

struct alignas(32) Lane {
  __m256d re;
  __m256d im;
};

inline Lane mul(const Lane& a, const Lane& b) {
  return {_mm256_sub_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im)),
          _mm256_add_pd(_mm256_mul_pd(a.re, b.im), _mm256_mul_pd(a.im, b.re))};
}

}  // namespace

void evaluateBatchAvx2(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out,
                       std::size_t begin, std::size_t end) {
  const std::size_t nx = static_cast<std::size_t>(poly.maxX) + 1;
  const std::size_t ny = static_cast<std::size_t>(poly.maxY) + 1;
  std::vector<Lane> pz(nx), pw(ny);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();

  std::size_t k = begin;
  for (; k + 4 <= end; k += 4) {
    const Lane z{_mm256_loadu_pd(&points.zRe[k]), _mm256_loadu_pd(&points.zIm[k])};
    const Lane w{_mm256_loadu_pd(&points.wRe[k]), _mm256_loadu_pd(&points.wIm[k])};
    pz[0] = {one, zero};
    for (std::size_t e = 1; e < nx; ++e) pz[e] = mul(pz[e - 1], z);
    pw[0] = {one, zero};
    for (std::size_t e = 1; e < ny; ++e) pw[e] = mul(pw[e - 1], w);

    __m256d accr = zero, acci = zero;
    for (std::size_t t = 0; t < poly.size(); ++t) {
      const Lane m = mul(pz[static_cast<std::size_t>(poly.expX[t])], pw[static_cast<std::size_t>(poly.expY[t])]);
      const __m256d cr = _mm256_set1_pd(poly.coeffRe[t]);
      const __m256d ci = _mm256_set1_pd(poly.coeffIm[t]);
      accr = _mm256_add_pd(accr, _mm256_sub_pd(_mm256_mul_pd(cr, m.re), _mm256_mul_pd(ci, m.im)));
      acci = _mm256_add_pd(acci, _mm256_add_pd(_mm256_mul_pd(cr, m.im), _mm256_mul_pd(ci, m.re)));
    }
    _mm256_storeu_pd(&out.re[k], accr);
    _mm256_storeu_pd(&out.im[k], acci);
  }
  if (k < end) evaluateBatchScalar(poly, points, out, k, end);
}

}  // namespace keller::simd::detail
