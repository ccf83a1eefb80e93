#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <set>

#include "keller/charset/charset.hpp"
#include "keller/error.hpp"
#include "support/generators.hpp"

using namespace keller;
using namespace keller::charset;

TEST(Charset, DyadicCenters) {
  const std::vector<mpq_class> expected{mpq_class(1, 2), mpq_class(1, 4), mpq_class(3, 4), mpq_class(1, 8),
                                        mpq_class(3, 8), mpq_class(5, 8), mpq_class(7, 8), mpq_class(1, 16)};
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(dyadicCenter(static_cast<int>(k)), expected[k]);
}

TEST(Charset, StarCount) {
  const auto d = buildCharacteristicSet({2.0, 1, 2, 0.0, 0});
  EXPECT_EQ(d.starCount(), 10u);
}

TEST(Charset, SliceValencesDisjoint) {
  const auto d = buildCharacteristicSet({2.0, 2, 1, 0.0, 0});
  std::set<int> first, second;
  for (const auto& s : d.slices[0].stars) first.insert(s.valence);
  for (const auto& s : d.slices[1].stars) second.insert(s.valence);
  for (int v : first) EXPECT_FALSE(second.contains(v));
  for (int v : first) EXPECT_EQ(v % 2, 0);
  for (int v : second) EXPECT_EQ(v % 2, 1);
}

TEST(Charset, BundleDecay) {
  const auto d = buildCharacteristicSet({2.0, 1, 3, 0.0, 0});
  ASSERT_EQ(d.slices[0].bundleMaxRay.size(), 3u);
  EXPECT_EQ(d.slices[0].bundleMaxRay[2], mpq_class(1, 2000));
  for (std::size_t b = 0; b + 1 < 3; ++b) EXPECT_EQ(d.slices[0].bundleMaxRay[b + 1] * 10, d.slices[0].bundleMaxRay[b]);
}

TEST(Charset, StarsAreThick) {
  const auto d = buildCharacteristicSet({2.0, 2, 2, 0.0, 3});
  for (const auto& seg : d.slices) {
    for (const auto& st : seg.stars) {
      EXPECT_EQ(static_cast<int>(st.triangles.size()), 2 * st.valence);
      for (const auto& t : st.triangles) {
        EXPECT_EQ(t[0], std::complex<double>(st.centerW.get_d(), 0.0));
        EXPECT_LE(std::abs(t[1] - t[0]), st.rayLength.get_d() + 1e-15);
        EXPECT_LE(std::abs(t[2] - t[1]), st.rayLength.get_d() + 1e-15);
      }
    }
  }
  const auto v = d.valences();
  EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), v.size());
}

TEST(Charset, ContainsPointExamples) {
  const auto d0 = buildCharacteristicSet({2.0, 1, 2, 0.0, 0});
  EXPECT_FALSE(containsPoint(d0, {{10, 0}, {0, 0}}));
  EXPECT_FALSE(containsPoint(d0, {{1, 0}, {0.5, 0}}));
  EXPECT_TRUE(containsPoint(d0, {{1, 0}, {0.5, 0.2}}));
  const auto d1 = buildCharacteristicSet({2.0, 1, 2, 0.01, 0});
  EXPECT_TRUE(containsPoint(d1, {{-0.5, 0}, {0, 0.5}}));
  // Inside the fattened segment.
  EXPECT_FALSE(containsPoint(d1, {{1.005, 0.001}, {0.3, 0}}));
}

TEST(Charset, StarInteriorIsRemoved) {
  const auto d = buildCharacteristicSet({2.0, 1, 1, 0.0, 0});
  const auto& st = d.slices[0].stars[0];
  const auto& t = st.triangles[0];
  const std::complex<double> centroid = (t[0] + t[1] + t[2]) / 3.0;
  EXPECT_FALSE(containsPoint(d, {{1, 0}, centroid}));
  EXPECT_TRUE(containsPoint(d, {{0.999, 0}, centroid}));
}

TEST(Charset, RemovedVolume) {
  EXPECT_EQ(removedVolume(buildCharacteristicSet({2.0, 1, 2, 0.0, 0})), 0.0);
  const auto a = buildCharacteristicSet({2.0, 2, 2, 0.05, 4});
  const auto b = buildCharacteristicSet({2.0, 2, 2, 0.1, 4});
  EXPECT_EQ(removedVolume(b), 4.0 * removedVolume(a));
  double area = 0.0;
  for (const auto& seg : a.slices) {
    for (const auto& st : seg.stars) area += st.area();
  }
  EXPECT_NEAR(removedVolume(a), area * std::numbers::pi * 0.05 * 0.05, 1e-18);
}

TEST(Charset, SingleStarVolume) {
  // One star: area A, radius r gives A pi r^2.
  auto d = buildCharacteristicSet({2.0, 1, 1, 0.02, 0});
  d.slices[0].stars.resize(1);
  const double a = d.slices[0].stars[0].area();
  EXPECT_DOUBLE_EQ(removedVolume(d), a * std::numbers::pi * 0.02 * 0.02);
}

TEST(Charset, InvariantViolations) {
  EXPECT_THROW(buildCharacteristicSet({2.0, 3, 1, 0.2, 0}), Error);
  EXPECT_THROW(buildCharacteristicSet({1.1, 1, 1, 0.0, 0}), Error);
}

TEST(Charset, JsonRoundTripIsExact) {
  const auto d = buildCharacteristicSet({2.5, 3, 2, 0.01, 17});
  const std::string text = toJson(d).dump();
  const auto back = fromJson(nlohmann::json::parse(text));
  EXPECT_EQ(back, d);
  EXPECT_EQ(toJson(back).dump(), text);
}

TEST(Charset, ContainsPointIsDeterministic) {
  const auto d = buildCharacteristicSet({2.0, 2, 2, 0.01, 1});
  keller::testing::Gen g(61);
  for (int k = 0; k < 1000; ++k) {
    const ComplexPoint p = g.point(1.2);
    EXPECT_EQ(containsPoint(d, p), containsPoint(d, p));
  }
}
