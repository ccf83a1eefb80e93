#include <cstdlib>
#include <cstring>

#include "keller/error.hpp"
#include "keller/polycore/polynomial.hpp"
#include "keller/simd/kernels.hpp"

namespace keller::simd {

std::string_view toString(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

Isa detectIsa() {
#if defined(KELLER_HAVE_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa activeIsa() {
  static const Isa isa = [] {
    const char* forced = std::getenv("KELLER_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::Scalar;
    return detectIsa();
  }();
  return isa;
}

CompiledPolynomial CompiledPolynomial::compile(const BivariatePolynomial& p) {
  CompiledPolynomial c;
  for (const auto& [m, v] : p.terms()) {
    c.expX.push_back(m.x);
    c.expY.push_back(m.y);
    auto z = v.toComplex();
    c.coeffRe.push_back(z.real());
    c.coeffIm.push_back(z.imag());
    c.maxX = std::max(c.maxX, m.x);
    c.maxY = std::max(c.maxY, m.y);
  }
  return c;
}

void evaluateBatch(const CompiledPolynomial& poly, const PointsView& points, const OutputView& out, Isa isa) {
  const std::size_t n = points.size();
  if (points.zIm.size() != n || points.wRe.size() != n || points.wIm.size() != n || out.re.size() < n ||
      out.im.size() < n) {
    throw Error(ErrorCode::InvalidArgument, "evaluateBatch: mismatched batch sizes");
  }
#if defined(KELLER_HAVE_AVX2_KERNEL)
  if (isa == Isa::Avx2) {
    if (detectIsa() != Isa::Avx2) throw Error(ErrorCode::InvalidArgument, "AVX2 kernel requested on a CPU without AVX2");
    detail::evaluateBatchAvx2(poly, points, out, 0, n);
    return;
  }
#else
  if (isa == Isa::Avx2) throw Error(ErrorCode::InvalidArgument, "AVX2 kernel not built");
#endif
  detail::evaluateBatchScalar(poly, points, out, 0, n);
}

}  // namespace keller::simd
