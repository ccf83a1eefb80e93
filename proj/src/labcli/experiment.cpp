#include "keller/labcli/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "keller/autgroup/tame_word.hpp"
#include "keller/charset/charset.hpp"
#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/polycore/serialization.hpp"
#include "keller/tracts/tracts.hpp"

namespace keller::lab {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultSamples = 1000000;
constexpr int kImplicitPoints = 64;
constexpr double kImplicitTolerance = 1e-9;

double millisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

[[noreturn]] void badConfig(const std::string& what) { throw Error(ErrorCode::SchemaError, "config: " + what); }

struct ResolvedMap {
  std::string label;
  PlanarPolyMap map;
  bool keller = false;
  bool automorphism = false;
  std::optional<int> expectedDegree;
};

bool decomposes(const PlanarPolyMap& f) {
  try {
    aut::decomposeAutomorphism(f);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAnAutomorphism || e.code() == ErrorCode::NotKeller) return false;
    throw;
  }
}

// A map reference is a catalog name, "power:a:b" for (X^a, Y^b), or an
// inline {"first", "second"} object.
ResolvedMap resolve(const json& ref, const MapCatalog& catalog) {
  if (ref.is_object()) {
    ResolvedMap r;
    r.map = io::mapFromJson(ref, "config.map");
    r.keller = isKeller(r.map);
    r.automorphism = r.keller && decomposes(r.map);
    r.label = r.map.toString();
    return r;
  }
  if (!ref.is_string()) badConfig("map reference must be a name or a map object");
  const std::string s = ref.get<std::string>();
  if (s.starts_with("power:")) {
    int a = 0, b = 0;
    char sep = 0;
    std::istringstream in(s.substr(6));
    if (!(in >> a >> sep >> b) || sep != ':' || a < 1 || b < 1) badConfig("bad power map '" + s + "'");
    ResolvedMap r;
    r.label = s;
    r.map = {BivariatePolynomial::x().pow(a), BivariatePolynomial::y().pow(b)};
    r.keller = r.automorphism = (a == 1 && b == 1);
    r.expectedDegree = a * b;
    return r;
  }
  const auto& e = catalog.at(s);
  return {e.name, e.map, e.has(Tag::Keller), e.has(Tag::Automorphism), e.expectedDegree};
}

std::vector<ResolvedMap> resolveList(const json& list, const MapCatalog& catalog) {
  std::vector<ResolvedMap> out;
  for (const auto& ref : list) out.push_back(resolve(ref, catalog));
  return out;
}

ResolvedMap composed(const ResolvedMap& f, const ResolvedMap& g) {
  ResolvedMap r;
  r.label = f.label + " o " + g.label;
  r.map = composeMaps(f.map, g.map);
  r.keller = f.keller && g.keller;
  r.automorphism = f.automorphism && g.automorphism;
  return r;
}

std::vector<std::vector<json>> tuples(const json& params, const char* key, std::size_t arity) {
  if (!params.contains(key) || !params.at(key).is_array()) badConfig(std::string("'") + key + "' list required");
  std::vector<std::vector<json>> out;
  for (const auto& t : params.at(key)) {
    if (!t.is_array() || t.size() != arity)
      badConfig(std::string("each entry of '") + key + "' must have " + std::to_string(arity) + " maps");
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, const MapCatalog& catalog)
      : cfg_(cfg),
        catalog_(catalog),
        params_(cfg.params.is_object() ? cfg.params : json::object()),
        samples_(params_.value("samples", kDefaultSamples)),
        domainSpec_(params_.value("domain", std::string("ball:1"))),
        options_{cfg.workers, simd::activeIsa()} {}

  json run() {
    switch (cfg_.kind) {
      case ExperimentKind::MetricAxioms: metricAxioms(); break;
      case ExperimentKind::Isometry: isometry(); break;
      case ExperimentKind::Contraction: contraction(); break;
      case ExperimentKind::DegreeMultiplicativity: degreeMultiplicativity(); break;
      case ExperimentKind::TractSurvey: tractSurvey(); break;
      case ExperimentKind::CharsetVolume: charsetVolume(); break;
      case ExperimentKind::UnionCheck: unionCheck(); break;
    }
    bool pass = true;
    for (const auto& a : assertions_) pass = pass && a.at("pass").get<bool>();
    return {{"assertions", assertions_}, {"estimates", estimates_}, {"results", results_}, {"pass", pass}};
  }

 private:
  void check(const std::string& name, const std::string& property, bool pass, json detail = json::object()) {
    assertions_.push_back({{"name", name}, {"property", property}, {"pass", pass}, {"detail", std::move(detail)}});
  }

  vol::SamplingDomain domain() const { return parseDomain(domainSpec_); }

  vol::VolumeEstimate rho(const ResolvedMap& f, const ResolvedMap& g, const vol::SamplingDomain& d) {
    const auto start = Clock::now();
    const auto e = vol::rhoD(f.map, g.map, d, samples_, cfg_.seed, options_);
    json entry = vol::operationReport("rhoD", {{"f", f.label}, {"g", g.label}, {"domain", d.describe()}}, e,
                                      millisSince(start));
    entry["box"] = e.box.toJson();
    estimates_.push_back(entry);
    checkDiameter(e, d, f.label + " vs " + g.label);
    return e;
  }

  // Every rho estimate is bounded by twice the domain volume.
  void checkDiameter(const vol::VolumeEstimate& e, const vol::SamplingDomain& d, const std::string& what) {
    const double bound = 2.0 * d.ballVolume() + 3.0 * e.standardError;
    check("diameter " + what, "rho_D is bounded by twice the volume of the domain", e.value <= bound,
          {{"value", e.value}, {"bound", bound}});
  }

  void metricAxioms() {
    std::vector<ResolvedMap> maps;
    if (params_.contains("maps")) {
      maps = resolveList(params_.at("maps"), catalog_);
    } else {
      const auto names = catalog_.namesWith(Tag::Automorphism);
      for (std::size_t k = 0; k < std::min<std::size_t>(6, names.size()); ++k) maps.push_back(resolve(names[k], catalog_));
    }
    if (maps.size() < 3) badConfig("metric_axioms needs at least three maps");
    const auto d = domain();
    const std::size_t n = maps.size();
    std::vector<std::vector<vol::VolumeEstimate>> r(n, std::vector<vol::VolumeEstimate>(n));
    for (std::size_t a = 0; a < n; ++a) {
      const auto self = rho(maps[a], maps[a], d);
      check("identity " + maps[a].label, "rho_D(F, F) = 0", self.value == 0.0 && self.standardError == 0.0,
            {{"value", self.value}});
      for (std::size_t b = a + 1; b < n; ++b) r[a][b] = r[b][a] = rho(maps[a], maps[b], d);
    }
    const auto swapped = rho(maps[1], maps[0], d);
    check("symmetry " + maps[0].label + ", " + maps[1].label, "rho_D(F, G) = rho_D(G, F)",
          swapped.value == r[0][1].value, {{"forward", r[0][1].value}, {"backward", swapped.value}});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          const std::size_t idx[3] = {a, b, c};
          bool ok = true;
          json sides = json::array();
          for (int side = 0; side < 3; ++side) {
            const std::size_t u = idx[side], v = idx[(side + 1) % 3], w = idx[(side + 2) % 3];
            const auto& direct = r[u][w];
            const double via = r[u][v].value + r[v][w].value;
            const double err = std::sqrt(std::pow(direct.standardError, 2) + std::pow(r[u][v].standardError, 2) +
                                         std::pow(r[v][w].standardError, 2));
            const bool holds = direct.value <= via + 3.0 * err;
            ok = ok && holds;
            sides.push_back({{"lhs", direct.value}, {"rhs", via}, {"slack", 3.0 * err}, {"holds", holds}});
          }
          check("triangle " + maps[a].label + ", " + maps[b].label + ", " + maps[c].label,
                "rho_D satisfies the triangle inequality", ok, {{"sides", sides}});
        }
  }

  void isometry() {
    const auto d = domain();
    for (const auto& t : tuples(params_, "triples", 3)) {
      const auto a = resolve(t[0], catalog_), g1 = resolve(t[1], catalog_), g2 = resolve(t[2], catalog_);
      if (!a.automorphism) badConfig("isometry needs an automorphism first, got " + a.label);
      const auto lhs = rho(composed(a, g1), composed(a, g2), d);
      const auto rhs = rho(g1, g2, d);
      const double diff = std::abs(lhs.value - rhs.value);
      const double slack = 3.0 * std::hypot(lhs.standardError, rhs.standardError);
      check("isometry " + a.label + "; " + g1.label + ", " + g2.label,
            "composition with an automorphism preserves rho_D", diff <= slack,
            {{"composed", lhs.value}, {"plain", rhs.value}, {"difference", diff}, {"slack", slack}});
    }
  }

  void contraction() {
    const auto d = domain();
    std::vector<double> scales;
    if (params_.contains("scales")) {
      scales = params_.at("scales").get<std::vector<double>>();
      if (scales.empty() || !std::is_sorted(scales.begin(), scales.end()) ||
          std::adjacent_find(scales.begin(), scales.end()) != scales.end() || scales.front() <= 0.0)
        badConfig("scales must be positive and strictly increasing");
    }
    for (const auto& t : tuples(params_, "triples", 3)) {
      const auto f = resolve(t[0], catalog_), g1 = resolve(t[1], catalog_), g2 = resolve(t[2], catalog_);
      const std::string label = f.label + "; " + g1.label + ", " + g2.label;
      if (scales.empty()) {
        const auto lhs = rho(composed(f, g1), composed(f, g2), d);
        const auto rhs = rho(g1, g2, d);
        const double slack = 3.0 * std::hypot(lhs.standardError, rhs.standardError);
        json detail{{"composed", lhs.value}, {"plain", rhs.value}, {"slack", slack}};
        if (f.keller)
          check("contraction " + label, "composition with a Keller map does not increase rho_D",
                lhs.value <= rhs.value + slack, detail);
        else
          results_.push_back({{"exploratory", label}, {"detail", detail}});
        continue;
      }
      const auto start = Clock::now();
      const auto series = vol::contractionRatio(f.map, g1.map, g2.map, scales, d, samples_, cfg_.seed, options_);
      json entry{{"f", f.label}, {"g1", g1.label}, {"g2", g2.label}, {"series", series.toJson()},
                 {"csv", series.toCsv()}, {"wall_time_ms", millisSince(start)}};
      for (std::size_t k = 0; k < scales.size(); ++k) {
        checkDiameter(series.numerators[k], d.dilated(scales[k]), "numerator at scale " + io::formatSignificant(scales[k]));
        checkDiameter(series.denominators[k], d.dilated(scales[k]), "denominator at scale " + io::formatSignificant(scales[k]));
      }
      if (f.map == PlanarPolyMap::identity()) {
        const bool exact = std::all_of(series.ratios.begin(), series.ratios.end(), [](double r) { return r == 1.0; });
        check("identity ratio " + label, "composition with the identity leaves rho_D unchanged", exact);
      } else if (f.automorphism) {
        for (std::size_t k = 0; k < scales.size(); ++k) {
          const double r = series.ratios[k];
          check("ratio band " + label + " at scale " + io::formatSignificant(scales[k]),
                "ratio tends to 1/d_F with d_F = 1", r >= 0.9 && r <= 1.1,
                {{"ratio", r}, {"stderr", series.ratioErrors[k]}});
        }
        const double last = series.ratios.back(), sigma = series.ratioErrors.back();
        check("ratio limit " + label, "ratio tends to 1/d_F with d_F = 1", std::abs(last - 1.0) <= 3.0 * sigma,
              {{"ratio", last}, {"stderr", sigma}});
      } else {
        entry["exploratory"] = true;
      }
      results_.push_back(entry);
    }
  }

  void degreeMultiplicativity() {
    const int trials = params_.value("trials", fiber::kDefaultTrials);
    fiber::resetSolveStatistics();
    auto degreeOf = [&](const ResolvedMap& m) {
      const auto survey = fiber::surveyDegree(m.map, trials, cfg_.seed, cfg_.workers);
      results_.push_back({{"map", m.label}, {"degree", survey.degree}, {"agreement", survey.agreement}});
      if (m.expectedDegree)
        check("degree " + m.label, "geometric degree of a reference map", survey.degree == *m.expectedDegree,
              {{"observed", survey.degree}, {"expected", *m.expectedDegree}});
      if (m.automorphism) check("automorphism degree " + m.label, "automorphisms have degree 1", survey.degree == 1);
      return survey.degree;
    };
    std::vector<std::vector<json>> pairs = tuples(params_, "pairs", 2);
    for (const auto& p : pairs) {
      const auto f = resolve(p[0], catalog_), g = resolve(p[1], catalog_);
      const int df = degreeOf(f), dg = degreeOf(g);
      const int dfg = degreeOf(composed(f, g));
      check("multiplicativity " + f.label + ", " + g.label, "geometric degree is multiplicative", dfg == df * dg,
            {{"d_f", df}, {"d_g", dg}, {"d_fg", dfg}});
    }
    const auto stats = fiber::solveStatistics();
    check("bezout", "fiber cardinality never exceeds deg P * deg Q", stats.bezoutViolations == 0,
          {{"solves", stats.solves}, {"violations", stats.bezoutViolations}});
  }

  tracts::TractBounds bounds() const {
    tracts::TractBounds b;
    if (params_.contains("bounds")) {
      const auto& j = params_.at("bounds");
      b.alphaMax = j.value("alpha_max", b.alphaMax);
      b.betaMax = j.value("beta_max", b.betaMax);
      b.phiDegMax = j.value("phi_deg", b.phiDegMax);
    }
    if (b.alphaMax < 0 || b.betaMax < 0 || b.phiDegMax < 0) badConfig("bounds must be non-negative");
    return b;
  }

  void tractSurvey() {
    const auto b = bounds();
    std::vector<ResolvedMap> maps;
    if (params_.contains("maps"))
      maps = resolveList(params_.at("maps"), catalog_);
    else
      for (const auto& e : catalog_.entries()) maps.push_back(resolve(e.name, catalog_));
    for (const auto& m : maps) {
      const auto found = tracts::tractSearch(m.map, b.alphaMax, b.betaMax, b.phiDegMax);
      results_.push_back({{"map", m.label}, {"search", tracts::toJson(found)}});
      if (m.automorphism)
        check("no tracts " + m.label, "automorphisms have no asymptotic values", found.tracts.empty(),
              {{"found", found.tracts.size()}});
      for (const auto& t : found.tracts) {
        const auto gr = tracts::dualMap(m.map, t.map);
        const auto param = tracts::componentParametrization(gr);
        if (param.first.degree().value_or(0) == 0 && param.second.degree().value_or(0) == 0) continue;
        const auto h = tracts::implicitize(param);
        double worst = 0.0;
        for (int k = 0; k < kImplicitPoints; ++k) {
          const auto tk = std::polar(0.3 + 1.2 * k / (kImplicitPoints - 1), 2.399963 * k);
          const ComplexPoint uv{hornerAt(param.first, tk), hornerAt(param.second, tk)};
          double scale = 0.0;
          for (const auto& [mono, c] : h.terms())
            scale += std::abs(c.toComplex()) * std::pow(std::abs(uv.z), mono.x) * std::pow(std::abs(uv.w), mono.y);
          worst = std::max(worst, std::abs(evaluate(h, uv)) / std::max(scale, 1.0));
        }
        check("implicit vanishing " + m.label + " " + t.map.toString(),
              "the implicit equation vanishes on the parametrized component", worst <= kImplicitTolerance,
              {{"h", h.toString('U', 'V')}, {"worst_relative_residual", worst}});
      }
    }
  }

  static std::complex<double> hornerAt(const GaussianUnivariate& p, std::complex<double> t) {
    std::complex<double> acc = 0.0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + it->toComplex();
    return acc;
  }

  void charsetVolume() {
    charset::BuildParameters bp;
    bp.radius = params_.value("radius", bp.radius);
    bp.slices = params_.value("slices", bp.slices);
    bp.bundlesPerSlice = params_.value("bundles", bp.bundlesPerSlice);
    bp.fatteningRadius = params_.value("fatten", bp.fatteningRadius);
    bp.seed = cfg_.seed;
    auto set = std::make_shared<const charset::CharacteristicSet>(charset::buildCharacteristicSet(bp));
    bool invariants = true;
    std::string why;
    try {
      charset::verifyInvariants(*set);
    } catch (const Error& e) {
      invariants = false;
      why = e.what();
    }
    check("build invariants", "disjoint stars, containment in the ball, 1/10 decay, unique valences", invariants,
          {{"message", why}, {"stars", set->starCount()}});
    const auto valences = set->valences();
    std::vector<int> sorted = valences;
    std::sort(sorted.begin(), sorted.end());
    check("valence uniqueness", "no two stars share a valence",
          std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    bool decay = true;
    for (const auto& s : set->slices)
      for (std::size_t k = 1; k < s.bundleMaxRay.size(); ++k) decay = decay && s.bundleMaxRay[k] * 10 <= s.bundleMaxRay[k - 1];
    check("decay chain", "each bundle's longest ray is at most 1/10 of the previous", decay);

    const auto d = vol::SamplingDomain::characteristic(set);
    const auto start = Clock::now();
    const auto e = vol::domainVolume(d, samples_, cfg_.seed, options_);
    estimates_.push_back(vol::operationReport("domainVolume", {{"domain", d.describe()}}, e, millisSince(start)));
    const double expected = d.ballVolume() - charset::removedVolume(*set);
    check("volume", "Monte Carlo volume of D matches the ball minus the removed volume",
          std::abs(e.value - expected) <= 3.0 * e.standardError,
          {{"value", e.value}, {"stderr", e.standardError}, {"expected", expected}});

    charset::CharacteristicSet doubled = *set;
    const double r = bp.fatteningRadius > 0.0 ? bp.fatteningRadius : 1e-3;
    charset::CharacteristicSet base = *set;
    base.params.fatteningRadius = r;
    doubled.params.fatteningRadius = 2.0 * r;
    const double v1 = charset::removedVolume(base), v2 = charset::removedVolume(doubled);
    check("fattening scaling", "removed volume scales with the square of the fattening radius", v2 == 4.0 * v1,
          {{"r", r}, {"volume_r", v1}, {"volume_2r", v2}});
    results_.push_back({{"charset", charset::toJson(*set)}});
  }

  void unionCheck() {
    const auto b = bounds();
    for (const auto& p : tuples(params_, "pairs", 2)) {
      const auto f = resolve(p[0], catalog_), g = resolve(p[1], catalog_);
      const auto report = tracts::asymptoticUnionCheck(f.map, g.map, b);
      const std::string label = f.label + ", " + g.label;
      const bool recurs = std::all_of(report.recurrence.begin(), report.recurrence.end(), [](bool x) { return x; });
      check("recurrence " + label, "every tract of g is a tract of f o g", recurs);
      check("containment " + label, "F(A(G)) is contained in A(F o G)", report.verdict,
            {{"samples", report.samples.size()}});
      results_.push_back({{"pair", label}, {"report", tracts::toJson(report)}});
    }
  }

  const ExperimentConfig& cfg_;
  const MapCatalog& catalog_;
  json params_;
  std::uint64_t samples_;
  std::string domainSpec_;
  vol::EngineOptions options_;
  json assertions_ = json::array();
  json estimates_ = json::array();
  json results_ = json::array();
};

}  // namespace

std::string toString(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::MetricAxioms: return "metric_axioms";
    case ExperimentKind::Isometry: return "isometry";
    case ExperimentKind::Contraction: return "contraction";
    case ExperimentKind::DegreeMultiplicativity: return "degree_multiplicativity";
    case ExperimentKind::TractSurvey: return "tract_survey";
    case ExperimentKind::CharsetVolume: return "charset_volume";
    case ExperimentKind::UnionCheck: return "union_check";
  }
  return "?";
}

ExperimentKind experimentKindFromString(const std::string& s) {
  for (auto k : {ExperimentKind::MetricAxioms, ExperimentKind::Isometry, ExperimentKind::Contraction,
                 ExperimentKind::DegreeMultiplicativity, ExperimentKind::TractSurvey, ExperimentKind::CharsetVolume,
                 ExperimentKind::UnionCheck})
    if (toString(k) == s) return k;
  throw Error(ErrorCode::SchemaError, "unknown experiment kind '" + s + "'");
}

int exitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence:
    case ErrorCode::Unstable:
    case ErrorCode::ResultantVanishes:
      return kExitNonConvergence;
    default:
      return kExitInput;
  }
}

ExperimentConfig ExperimentConfig::fromJson(const nlohmann::json& j) {
  if (!j.is_object()) badConfig("must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) badConfig("missing 'kind'");
  if (!j.contains("seed") || !j.at("seed").is_number_unsigned()) badConfig("missing or invalid 'seed'");
  ExperimentConfig cfg;
  cfg.kind = experimentKindFromString(j.at("kind").get<std::string>());
  cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) {
    if (!j.at("workers").is_number_integer() || j.at("workers").get<int>() < 1) badConfig("workers must be >= 1");
    cfg.workers = j.at("workers").get<int>();
  }
  cfg.params = j.value("params", nlohmann::json::object());
  if (!cfg.params.is_object()) badConfig("'params' must be an object");
  if (cfg.params.contains("samples") &&
      (!cfg.params.at("samples").is_number_unsigned() || cfg.params.at("samples").get<std::uint64_t>() < vol::kMinSamples))
    badConfig("samples must be an integer >= " + std::to_string(vol::kMinSamples));
  return cfg;
}

nlohmann::json ExperimentConfig::toJson() const { return {{"kind", toString(kind)}, {"seed", seed}, {"params", params}}; }

vol::SamplingDomain parseDomain(const std::string& spec) {
  if (spec.starts_with("ball:")) {
    double r = 0.0;
    try {
      std::size_t used = 0;
      r = std::stod(spec.substr(5), &used);
      if (used != spec.size() - 5) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad ball radius in '" + spec + "'");
    }
    return vol::SamplingDomain::ball(r);
  }
  if (spec.starts_with("charset:")) {
    const std::string path = spec.substr(8);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SchemaError, path + ": cannot open file");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::SchemaError, path + ": " + e.what());
    }
    return vol::SamplingDomain::characteristic(
        std::make_shared<const charset::CharacteristicSet>(charset::fromJson(j)));
  }
  throw Error(ErrorCode::InvalidArgument, "domain must be ball:R or charset:<file>, got '" + spec + "'");
}

ExperimentReport runExperiment(const ExperimentConfig& cfg, const MapCatalog& catalog) {
  ExperimentReport report;
  auto& doc = report.document;
  doc["kind"] = toString(cfg.kind);
  doc["config"] = cfg.toJson();
  doc["seed"] = cfg.seed;
  const auto start = Clock::now();
  try {
    auto body = Runner(cfg, catalog).run();
    for (auto& [k, v] : body.items()) doc[k] = v;
    report.exitCode = doc.at("pass").get<bool>() ? kExitPass : kExitAssertion;
  } catch (const Error& e) {
    doc["pass"] = false;
    doc["error"] = {{"code", std::string(toString(e.code()))}, {"message", e.what()}};
    report.exitCode = exitCodeFor(e.code());
  } catch (const nlohmann::json::exception& e) {
    doc["pass"] = false;
    doc["error"] = {{"code", "SchemaError"}, {"message", std::string("config: ") + e.what()}};
    report.exitCode = kExitInput;
  }
  doc["timing"] = {{"workers", cfg.workers}, {"wall_time_ms", millisSince(start)}};
  return report;
}

nlohmann::json withoutTiming(nlohmann::json report) {
  if (report.is_object()) {
    report.erase("timing");
    report.erase("wall_time_ms");
    for (auto& [k, v] : report.items()) v = withoutTiming(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = withoutTiming(v);
  }
  return report;
}

}  // namespace keller::lab
