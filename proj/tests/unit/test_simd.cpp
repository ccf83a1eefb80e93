#include <gtest/gtest.h>

#include <cstring>

#include "keller/polycore/operations.hpp"
#include "keller/rng.hpp"
#include "keller/simd/kernels.hpp"
#include "support/generators.hpp"

using namespace keller;

TEST(Philox, KnownAnswerVectors) {
  using rng::philox4x32;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsArePureFunctions) {
  rng::CounterStream a(7, 3), b(7, 3), c(7, 4);
  for (int k = 0; k < 100; ++k) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_NE(u, c.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (simd::detectIsa() != simd::Isa::Avx2) GTEST_SKIP() << "AVX2 not available";
  }
};

TEST_F(SimdEquivalence, BitIdenticalToScalar) {
  keller::testing::Gen g(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto poly = simd::CompiledPolynomial::compile(g.polynomial(8, 12));
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 67));
    std::vector<double> zr(n), zi(n), wr(n), wi(n);
    for (std::size_t k = 0; k < n; ++k) {
      zr[k] = g.real(-2, 2);
      zi[k] = g.real(-2, 2);
      wr[k] = g.real(-2, 2);
      wi[k] = g.real(-2, 2);
    }
    std::vector<double> sr(n), si(n), vr(n), vi(n);
    const simd::PointsView pts{zr, zi, wr, wi};
    simd::evaluateBatch(poly, pts, {sr, si}, simd::Isa::Scalar);
    simd::evaluateBatch(poly, pts, {vr, vi}, simd::Isa::Avx2);
    EXPECT_EQ(std::memcmp(sr.data(), vr.data(), n * sizeof(double)), 0) << "trial " << trial;
    EXPECT_EQ(std::memcmp(si.data(), vi.data(), n * sizeof(double)), 0) << "trial " << trial;
  }
}

TEST(SimdKernel, MatchesSinglePointEvaluate) {
  keller::testing::Gen g(22);
  const auto p = g.polynomial(6, 10);
  const auto poly = simd::CompiledPolynomial::compile(p);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pt = g.point(1.5);
    std::array<double, 1> zr{pt.z.real()}, zi{pt.z.imag()}, wr{pt.w.real()}, wi{pt.w.imag()}, o1{}, o2{};
    simd::evaluateBatch(poly, {zr, zi, wr, wi}, {o1, o2});
    const auto v = evaluate(p, pt);
    EXPECT_EQ(o1[0], v.real());
    EXPECT_EQ(o2[0], v.imag());
  }
}
