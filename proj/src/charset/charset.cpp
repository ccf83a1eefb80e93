#include "keller/charset/charset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "keller/error.hpp"
#include "keller/polycore/serialization.hpp"
#include "keller/rng.hpp"

namespace keller::charset {

namespace {

constexpr double kConeHalfAngle = std::numbers::pi / 9;      // 20 degrees
constexpr double kMaxRotation = std::numbers::pi / 36;       // 5 degrees

double cross(std::complex<double> o, std::complex<double> a, std::complex<double> b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

bool inTriangle(const Triangle& t, std::complex<double> w) {
  const double d0 = cross(t[0], t[1], w);
  const double d1 = cross(t[1], t[2], w);
  const double d2 = cross(t[2], t[0], w);
  const bool hasNeg = d0 < 0 || d1 < 0 || d2 < 0;
  const bool hasPos = d0 > 0 || d1 > 0 || d2 > 0;
  return !(hasNeg && hasPos);
}

bool segmentsIntersect(std::complex<double> a, std::complex<double> b, std::complex<double> c, std::complex<double> d) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

/// Closed triangles of different stars share no point.
bool trianglesMeet(const Triangle& a, const Triangle& b) {
  for (int i = 0; i < 3; ++i) {
    if (inTriangle(a, b[i]) || inTriangle(b, a[i])) return true;
    for (int j = 0; j < 3; ++j) {
      if (segmentsIntersect(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3])) return true;
    }
  }
  return false;
}

double triangleArea(const Triangle& t) { return 0.5 * std::abs(cross(t[0], t[1], t[2])); }

std::vector<Triangle> starTriangles(double center, int valence, double length, double rotation) {
  std::vector<Triangle> out;
  const double width = 2.0 * kConeHalfAngle / valence;
  for (double axis : {std::numbers::pi / 2, -std::numbers::pi / 2}) {
    for (int j = 0; j < valence; ++j) {
      const double a = axis - kConeHalfAngle + rotation + j * width + 0.25 * width;
      const double b = a + 0.5 * width;
      const std::complex<double> c(center, 0.0);
      out.push_back({c, c + std::polar(length, a), c + std::polar(length, b)});
    }
  }
  return out;
}

void fail(const std::string& what) { throw Error(ErrorCode::InvariantViolation, what); }

}  // namespace

ComplexPoint ThickStar::center() const { return {{1.0 / slice, 0.0}, {centerW.get_d(), 0.0}}; }

double ThickStar::area() const {
  double a = 0.0;
  for (const auto& t : triangles) a += triangleArea(t);
  return a;
}

std::size_t CharacteristicSet::starCount() const {
  std::size_t n = 0;
  for (const auto& s : slices) n += s.stars.size();
  return n;
}

std::vector<int> CharacteristicSet::valences() const {
  std::vector<int> v;
  for (const auto& s : slices) {
    for (const auto& st : s.stars) v.push_back(st.valence);
  }
  return v;
}

mpq_class dyadicCenter(int index) {
  if (index < 0) throw Error(ErrorCode::InvalidArgument, "dyadic index must be >= 0");
  // index + 1 = 2^level + offset
  const unsigned n = static_cast<unsigned>(index) + 1U;
  int level = 0;
  while ((2U << level) <= n) ++level;
  const unsigned offset = n - (1U << level);
  mpq_class q(2 * offset + 1, 1UL << (level + 1));
  q.canonicalize();
  return q;
}

CharacteristicSet buildCharacteristicSet(const BuildParameters& params) {
  if (!(params.radius > 1.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must exceed 1");
  if (params.slices < 1 || params.bundlesPerSlice < 1) throw Error(ErrorCode::InvalidArgument, "slices and bundles must be positive");
  if (!(params.fatteningRadius >= 0.0) || !std::isfinite(params.fatteningRadius)) {
    throw Error(ErrorCode::InvalidArgument, "fattening radius must be finite and >= 0");
  }
  CharacteristicSet d;
  d.params = params;
  const int K = params.slices;
  std::uint64_t globalStar = 0;
  for (int k = 1; k <= K; ++k) {
    StaredSegment seg;
    seg.slice = k;
    seg.z = mpq_class(1, k);
    mpq_class length(1, 20);
    for (int b = 0; b < params.bundlesPerSlice; ++b) {
      seg.bundleMaxRay.push_back(length);
      for (int s = 0; s < kStarsPerBundle; ++s) {
        const int index = b * kStarsPerBundle + s;
        ThickStar st;
        st.slice = k;
        st.centerW = dyadicCenter(index);
        // Residue class k - 1 mod K, starting at valence 2.
        st.valence = 2 + (k - 1) + K * index;
        st.bundle = b;
        st.rayLength = length;
        rng::CounterStream stream(params.seed, globalStar++);
        st.rotation = (2.0 * stream.uniform() - 1.0) * kMaxRotation;
        st.triangles = starTriangles(st.centerW.get_d(), st.valence, st.rayLength.get_d(), st.rotation);
        seg.stars.push_back(std::move(st));
      }
      length /= 10;
    }
    d.slices.push_back(std::move(seg));
  }
  verifyInvariants(d);
  return d;
}

void verifyInvariants(const CharacteristicSet& d) {
  const double r = d.params.fatteningRadius;
  // Fattened slices must not touch: 2r below the smallest gap 1/(K(K-1)).
  if (d.slices.size() >= 2) {
    const double gap = 1.0 / (static_cast<double>(d.slices.size()) * (d.slices.size() - 1));
    if (!(2.0 * r < gap)) fail("fattening radius " + std::to_string(r) + " joins neighbouring slices");
  }
  std::vector<int> seen;
  for (const auto& seg : d.slices) {
    for (std::size_t b = 0; b + 1 < seg.bundleMaxRay.size(); ++b) {
      if (seg.bundleMaxRay[b + 1] * 10 > seg.bundleMaxRay[b]) fail("bundle decay chain broken in slice " + std::to_string(seg.slice));
    }
    double reachW = 1.0;
    for (std::size_t i = 0; i < seg.stars.size(); ++i) {
      const ThickStar& a = seg.stars[i];
      if (static_cast<int>(a.triangles.size()) != 2 * a.valence) fail("star does not carry 2m triangles");
      if (a.rayLength > seg.bundleMaxRay[a.bundle]) fail("ray longer than its bundle budget");
      for (const auto& t : a.triangles) {
        for (int v = 1; v < 3; ++v) {
          if (t[v].imag() == 0.0) fail("triangle touches the segment away from its centre");
          reachW = std::max(reachW, std::abs(t[v]));
        }
      }
      seen.push_back(a.valence);
      for (std::size_t j = i + 1; j < seg.stars.size(); ++j) {
        const ThickStar& b = seg.stars[j];
        const double separation = std::abs(a.centerW.get_d() - b.centerW.get_d());
        if (separation > a.rayLength.get_d() + b.rayLength.get_d()) continue;
        for (const auto& ta : a.triangles) {
          for (const auto& tb : b.triangles) {
            if (trianglesMeet(ta, tb)) {
              fail("stars at " + a.centerW.get_str() + " and " + b.centerW.get_str() + " intersect");
            }
          }
        }
      }
    }
    const double reachZ = seg.z.get_d() + r;
    if (!(std::sqrt(reachZ * reachZ + reachW * reachW) < d.params.radius)) fail("E leaves the ball");
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) fail("two stars share a valence");
}

bool containsPoint(const CharacteristicSet& d, const ComplexPoint& p) {
  if (!(p.norm() < d.params.radius)) return false;
  const double r = d.params.fatteningRadius;
  for (const auto& seg : d.slices) {
    const std::complex<double> zk(seg.z.get_d(), 0.0);
    const double dz = std::abs(p.z - zk);
    if (r == 0.0 ? p.z != zk : dz > r) continue;
    if (p.w.imag() == 0.0 && p.w.real() >= 0.0 && p.w.real() <= 1.0) return false;
    for (const auto& st : seg.stars) {
      if (std::abs(p.w - std::complex<double>(st.centerW.get_d(), 0.0)) > st.rayLength.get_d()) continue;
      for (const auto& t : st.triangles) {
        if (inTriangle(t, p.w)) return false;
      }
    }
  }
  return true;
}

double removedVolume(const CharacteristicSet& d) {
  const double r = d.params.fatteningRadius;
  if (r == 0.0) return 0.0;
  double area = 0.0;
  for (const auto& seg : d.slices) {
    for (const auto& st : seg.stars) area += st.area();
  }
  return (area * std::numbers::pi) * (r * r);
}

nlohmann::json toJson(const CharacteristicSet& d) {
  using nlohmann::json;
  json slices = json::array();
  for (const auto& seg : d.slices) {
    json stars = json::array();
    for (const auto& st : seg.stars) {
      json tris = json::array();
      for (const auto& t : st.triangles) {
        json tri = json::array();
        for (const auto& v : t) tri.push_back({v.real(), v.imag()});
        tris.push_back(tri);
      }
      stars.push_back({{"center_w", io::rationalToJson(st.centerW)},
                       {"valence", st.valence},
                       {"bundle", st.bundle},
                       {"ray_length", io::rationalToJson(st.rayLength)},
                       {"rotation", st.rotation},
                       {"triangles", tris}});
    }
    json decay = json::array();
    for (const auto& q : seg.bundleMaxRay) decay.push_back(io::rationalToJson(q));
    slices.push_back({{"slice", seg.slice}, {"z", io::rationalToJson(seg.z)}, {"bundle_max_ray", decay}, {"stars", stars}});
  }
  return {{"radius", d.params.radius},
          {"slices", d.params.slices},
          {"bundles_per_slice", d.params.bundlesPerSlice},
          {"fattening_radius", d.params.fatteningRadius},
          {"seed", d.params.seed},
          {"segment", {{"from", io::rationalToJson(0)}, {"to", io::rationalToJson(1)}}},
          {"stared_segments", slices}};
}

CharacteristicSet fromJson(const nlohmann::json& j) {
  try {
    CharacteristicSet d;
    d.params.radius = j.at("radius").get<double>();
    d.params.slices = j.at("slices").get<int>();
    d.params.bundlesPerSlice = j.at("bundles_per_slice").get<int>();
    d.params.fatteningRadius = j.at("fattening_radius").get<double>();
    d.params.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& s : j.at("stared_segments")) {
      StaredSegment seg;
      seg.slice = s.at("slice").get<int>();
      seg.z = io::rationalFromJson(s.at("z"), "z");
      for (const auto& q : s.at("bundle_max_ray")) seg.bundleMaxRay.push_back(io::rationalFromJson(q, "bundle_max_ray"));
      for (const auto& st : s.at("stars")) {
        ThickStar star;
        star.slice = seg.slice;
        star.centerW = io::rationalFromJson(st.at("center_w"), "center_w");
        star.valence = st.at("valence").get<int>();
        star.bundle = st.at("bundle").get<int>();
        star.rayLength = io::rationalFromJson(st.at("ray_length"), "ray_length");
        star.rotation = st.at("rotation").get<double>();
        for (const auto& t : st.at("triangles")) {
          Triangle tri;
          for (int v = 0; v < 3; ++v) tri[v] = {t.at(v).at(0).get<double>(), t.at(v).at(1).get<double>()};
          star.triangles.push_back(tri);
        }
        seg.stars.push_back(std::move(star));
      }
      d.slices.push_back(std::move(seg));
    }
    verifyInvariants(d);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("characteristic set: ") + e.what());
  }
}

}  // namespace keller::charset
