// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if
// any criterion fails.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "keller/autgroup/tame_word.hpp"
#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"
#include "keller/labcli/catalog.hpp"
#include "keller/labcli/experiment.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/tracts/tracts.hpp"
#include "keller/volmetric/volume.hpp"
#include "support/generators.hpp"

using namespace keller;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 0;
constexpr std::uint64_t kSamples = 1000000;
constexpr std::uint64_t kRatioSamples = 4000000;
constexpr double kSigmas = 3.0;
constexpr double kRatioLow = 0.9;
constexpr double kRatioHigh = 1.1;
constexpr int kClosureWords = 200;
constexpr int kRoundtripWords = 100;
constexpr int kBoundPairs = 50;

const BivariatePolynomial X = BivariatePolynomial::x();
const BivariatePolynomial Y = BivariatePolynomial::y();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json readJson(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

class Suite {
 public:
  explicit Suite(std::string root) : root_(std::move(root)), catalog_(lab::parseCatalog(root_ + "/data/catalog.json")) {}

  lab::ExperimentReport experiment(const std::string& file, std::function<void(json&)> adjust = {}) {
    json raw = readJson(root_ + "/data/experiments/" + file);
    if (adjust) adjust(raw);
    auto report = lab::runExperiment(lab::ExperimentConfig::fromJson(raw), catalog_);
    reports_.push_back(report.document);
    return report;
  }

  static Outcome summarize(const lab::ExperimentReport& r, const std::string& prefix = "") {
    int total = 0, passed = 0;
    std::string firstFailure;
    for (const auto& a : r.document.value("assertions", json::array())) {
      const auto name = a.at("name").get<std::string>();
      if (!prefix.empty() && !name.starts_with(prefix)) continue;
      ++total;
      if (a.at("pass").get<bool>()) ++passed;
      else if (firstFailure.empty()) firstFailure = name;
    }
    std::string detail = std::to_string(passed) + "/" + std::to_string(total) + " checks";
    if (r.document.contains("error")) detail += ", error " + r.document.at("error").at("message").get<std::string>();
    if (!firstFailure.empty()) detail += ", first failure: " + firstFailure;
    return {total > 0 && passed == total && !r.document.contains("error"), detail};
  }

  const lab::MapCatalog& catalog() const { return catalog_; }
  const std::vector<json>& reports() const { return reports_; }
  void note(json report) { reports_.push_back(std::move(report)); }

 private:
  std::string root_;
  lab::MapCatalog catalog_;
  std::vector<json> reports_;
};

Outcome jacobianClosure() {
  keller::testing::Gen gen(101);
  for (int k = 0; k < kClosureWords; ++k) {
    const auto w = gen.word(4, 4);
    if (!isKeller(aut::expandWord(w))) return {false, "word " + std::to_string(k) + " has det J != 1"};
  }
  return {true, std::to_string(kClosureWords) + " words, det J = 1 exactly"};
}

std::vector<aut::TameWord> roundtripWords() {
  keller::testing::Gen gen(202);
  std::vector<aut::TameWord> words;
  for (int k = 0; k < kRoundtripWords; ++k) words.push_back(gen.word(4, 4));
  return words;
}

Outcome decompositionRoundtrip(const std::vector<aut::TameWord>& words) {
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto f = aut::expandWord(words[k]);
    if (aut::expandWord(aut::decomposeAutomorphism(f)) != f)
      return {false, "word " + std::to_string(k) + " does not round-trip"};
  }
  try {
    aut::decomposeAutomorphism({X.pow(2), Y});
    return {false, "(X^2, Y) was decomposed"};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotKeller) return {false, std::string("(X^2, Y) raised ") + e.what()};
  }
  return {true, std::to_string(words.size()) + " words round-trip exactly, (X^2, Y) rejected as NotKeller"};
}

Outcome groupInverse(const std::vector<aut::TameWord>& words) {
  for (std::size_t k = 0; k < words.size(); ++k)
    if (composeMaps(aut::expandWord(words[k]), aut::expandWord(aut::invertWord(words[k]))) != PlanarPolyMap::identity())
      return {false, "word " + std::to_string(k) + " times its inverse is not the identity"};
  return {true, std::to_string(words.size()) + " words, w o w^-1 = identity exactly"};
}

Outcome geometricDegrees(Suite& suite) {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      const int d = fiber::geometricDegree({X.pow(a), Y.pow(b)}, fiber::kDefaultTrials, kSeed);
      if (d != a * b) return {false, "(X^" + std::to_string(a) + ", Y^" + std::to_string(b) + ") gave " + std::to_string(d)};
    }
  auto out = Suite::summarize(suite.experiment("degree.json"));
  out.detail = "power maps a*b for a, b <= 3; 20 composed pairs: " + out.detail;
  return out;
}

Outcome rhoCriterion(Suite& suite, const std::string& file, const std::string& prefix, const std::string& label,
                     std::function<void(json&)> adjust = {}) {
  auto out = Suite::summarize(suite.experiment(file, std::move(adjust)), prefix);
  out.detail = label + ": " + out.detail;
  return out;
}

Outcome metricAxioms(Suite& suite) {
  const auto r = suite.experiment("metric_axioms.json");
  const auto identity = Suite::summarize(r, "identity");
  const auto triangle = Suite::summarize(r, "triangle");
  const auto symmetry = Suite::summarize(r, "symmetry");
  return {identity.pass && triangle.pass && symmetry.pass,
          "rho(F, F) = 0 " + identity.detail + "; triangle " + triangle.detail + "; symmetry " + symmetry.detail};
}

Outcome ratioLimit(Suite& suite) {
  const auto r = suite.experiment("ratio.json", [](json& j) {
    j["params"]["samples"] = kRatioSamples;
    j["params"]["triples"] = json::array({json::array({"swap_neg", "identity", "translate"})});
  });
  auto out = Suite::summarize(r, "ratio");
  if (r.document.contains("results") && !r.document.at("results").empty()) {
    std::string ratios;
    for (const auto& row : r.document.at("results")[0].at("series"))
      ratios += " " + fmt(row.at("ratio").get<double>()) + "+-" + fmt(row.at("stderr").get<double>());
    out.detail += ", ratios at t = 1, 2, 4, 8:" + ratios;
  }
  return out;
}

Outcome multiplicityVolumes(Suite& suite) {
  const auto ball = vol::SamplingDomain::ball(1.0);
  const double ballVolume = std::numbers::pi * std::numbers::pi / 2.0;
  // Closed form: integral of 4|z|^2 over the unit 4-ball.
  const double squareVolume = 2.0 * std::numbers::pi * std::numbers::pi / 3.0;
  int checked = 0;
  for (const auto& e : suite.catalog().entries()) {
    if (!e.has(lab::Tag::Keller)) continue;
    const auto est = vol::multiplicityVolume(e.map, ball, kSamples, kSeed);
    ++checked;
    if (std::abs(est.value - ballVolume) > kSigmas * est.standardError)
      return {false, e.name + ": " + fmt(est.value) + " +- " + fmt(est.standardError)};
  }
  const auto sq = vol::multiplicityVolume({X.pow(2), Y}, ball, kSamples, kSeed);
  const bool ok = std::abs(sq.value - squareVolume) <= kSigmas * sq.standardError;
  return {ok, std::to_string(checked) + " Keller maps within 3 stderr of pi^2/2; (X^2, Y): " + fmt(sq.value) + " +- " +
                  fmt(sq.standardError) + " vs " + fmt(squareVolume)};
}

Outcome tractMachinery() {
  const PlanarPolyMap xy{X * Y, Y};
  const auto found = tracts::tractSearch(xy, 2, 2, 1);
  const tracts::CanonicalRationalMap r{1, 1, {}};
  bool contains = false;
  for (const auto& t : found.tracts) contains = contains || t.map == r;
  if (!contains) return {false, "(1, 1, 0) not found for (XY, Y)"};
  const auto gr = tracts::dualMap(xy, r);
  if (gr != PlanarPolyMap{Y, X * Y}) return {false, "dual map is " + gr.toString()};
  const auto y = GaussianUnivariate::variable();
  const auto h = tracts::implicitize({y * y, y * y * y});
  const GaussianRational unit = h.coefficient(0, 2);
  if (unit.isZero() || h != unit * (Y.pow(2) - X.pow(3))) return {false, "implicitize((Y^2, Y^3)) = " + h.toString()};
  const auto ph = tracts::phantomExtract(Y, gr);
  if (ph.gamma != 1 || ph.s != Y || ph.e().isZero()) return {false, "phantom extraction gave gamma " + std::to_string(ph.gamma)};
  const auto none = tracts::tractSearch({X + Y.pow(2), Y}, 2, 3, 2);
  if (!none.tracts.empty()) return {false, "automorphism (X + Y^2, Y) has tracts"};
  return {true, "(1,1,0) found, G_R = (Y, XY), H = V^2 - U^3 up to unit, (gamma, S) = (1, Y), automorphism empty"};
}

Outcome unionCheck(Suite& suite) {
  auto out = Suite::summarize(suite.experiment("union.json"));
  out.detail = "shipped non-Keller pairs: " + out.detail;
  return out;
}

Outcome characteristicSet(Suite& suite) {
  auto out = Suite::summarize(suite.experiment("charset.json"));
  out.detail = "R = 2, 2 slices, 2 bundles, 1e6 samples: " + out.detail;
  return out;
}

Outcome diameterBound(const Suite& suite) {
  int total = 0, passed = 0;
  for (const auto& doc : suite.reports())
    for (const auto& a : doc.value("assertions", json::array()))
      if (a.at("name").get<std::string>().starts_with("diameter")) {
        ++total;
        if (a.at("pass").get<bool>()) ++passed;
      }
  return {total > 0 && passed == total, std::to_string(passed) + "/" + std::to_string(total) + " rho estimates below 2 vol(ball) + 3 stderr"};
}

Outcome uniformBound() {
  keller::testing::Gen gen(404);
  constexpr int radii = 6, angles = 12;
  double worstRatio = 0.0;
  for (int k = 0; k < kBoundPairs; ++k) {
    const PlanarPolyMap f = gen.map(6, 8), g = gen.map(6, 8);
    const double bound = uniformBoundOnCompact(f, g, 1.0);
    double sup = 0.0;
    for (int a = 0; a <= radii; ++a)
      for (int b = 0; b < angles; ++b)
        for (int c = 0; c <= radii; ++c)
          for (int d = 0; d < angles; ++d) {
            const ComplexPoint x{std::polar(double(a) / radii, 2.0 * std::numbers::pi * b / angles),
                                 std::polar(double(c) / radii, 2.0 * std::numbers::pi * d / angles)};
            const auto fx = evaluate(f, x), gx = evaluate(g, x);
            sup = std::max(sup, std::abs(fx.z - gx.z) + std::abs(fx.w - gx.w));
          }
    if (sup > bound) return {false, "pair " + std::to_string(k) + ": sampled sup " + fmt(sup) + " > bound " + fmt(bound)};
    if (bound > 0.0) worstRatio = std::max(worstRatio, sup / bound);
  }
  return {true, std::to_string(kBoundPairs) + " pairs, largest sampled sup / bound = " + fmt(worstRatio)};
}

Outcome determinism(Suite& suite) {
  int compared = 0;
  for (const auto& doc : suite.reports()) {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind != "metric_axioms" && kind != "charset_volume" && kind != "degree_multiplicativity") continue;
    json raw = doc.at("config");
    raw["workers"] = 3;
    const auto again = lab::runExperiment(lab::ExperimentConfig::fromJson(raw), suite.catalog());
    if (lab::withoutTiming(again.document) != lab::withoutTiming(doc)) return {false, kind + " differs with 3 workers"};
    ++compared;
  }
  const PlanarPolyMap f{X + Y.pow(3) + 2 * Y, Y};
  const auto ball = vol::SamplingDomain::ball(1.0);
  const auto scalar = vol::rhoD(f, PlanarPolyMap::identity(), ball, 200000, kSeed, {1, simd::Isa::Scalar});
  const auto best = vol::rhoD(f, PlanarPolyMap::identity(), ball, 200000, kSeed, {2, simd::detectIsa()});
  if (scalar.value != best.value || scalar.standardError != best.standardError)
    return {false, "scalar and " + std::string(simd::toString(simd::detectIsa())) + " kernels differ"};
  return {true, std::to_string(compared) + " recorded experiments reproduced bit-for-bit with 3 workers; scalar and " +
                    std::string(simd::toString(simd::detectIsa())) + " estimates identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string root = argc > 1 ? argv[1] : KELLER_SOURCE_DIR;
  std::map<int, std::pair<std::string, Outcome>> results;
  auto run = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    results[id] = {name, o};
  };

  fiber::resetSolveStatistics();
  Suite suite(root);
  const auto words = roundtripWords();
  run(1, "jacobian closure of tame words", jacobianClosure);
  run(2, "tame decomposition round trip", [&] { return decompositionRoundtrip(words); });
  run(3, "group inverse", [&] { return groupInverse(words); });
  run(4, "geometric degree and multiplicativity", [&] { return geometricDegrees(suite); });
  run(6, "metric axioms", [&] { return metricAxioms(suite); });
  run(7, "isometry under automorphisms", [&] {
    return rhoCriterion(suite, "isometry.json", "isometry", "10 triples");
  });
  run(8, "contraction on the Keller catalog", [&] {
    return rhoCriterion(suite, "contraction.json", "contraction", "Keller triples");
  });
  run(9, "ratio limit with d_F = 1", [&] { return ratioLimit(suite); });
  run(10, "multiplicity volume", [&] { return multiplicityVolumes(suite); });
  run(11, "tract machinery", tractMachinery);
  run(12, "asymptotic union containment", [&] { return unionCheck(suite); });
  run(13, "characteristic set", [&] { return characteristicSet(suite); });
  run(14, "diameter bound", [&] { return diameterBound(suite); });
  run(15, "uniform bound on the polydisk", uniformBound);
  run(16, "determinism", [&] { return determinism(suite); });
  run(5, "Bezout invariant", [] {
    const auto s = fiber::solveStatistics();
    return Outcome{s.solves > 0 && s.bezoutViolations == 0,
                   std::to_string(s.bezoutViolations) + " violations in " + std::to_string(s.solves) + " fiber solves"};
  });

  int failures = 0;
  for (const auto& [id, entry] : results) {
    const auto& [name, o] = entry;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
