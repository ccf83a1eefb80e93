#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "keller/autgroup/tame_word.hpp"
#include "keller/charset/charset.hpp"
#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"
#include "keller/labcli/catalog.hpp"
#include "keller/labcli/experiment.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/polycore/serialization.hpp"
#include "keller/tracts/tracts.hpp"
#include "keller/volmetric/volume.hpp"

using namespace keller;
using nlohmann::json;

namespace {

std::string num(double v) { return io::formatSignificant(v); }

void writeJson(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << doc.dump(2) << '\n';
}

json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

std::string describeFactor(const aut::Factor& f) {
  if (const auto* a = std::get_if<aut::AffineFactor>(&f)) return "affine     " + a->toMap().toString();
  return "elementary " + std::get<aut::ElementaryFactor>(f).toMap().toString();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"keller-lab: experiments with planar polynomial maps"};
  app.require_subcommand(1);
  std::string catalogPath = "data/catalog.json";
  int workers = 1;
  app.add_option("--catalog", catalogPath, "Map catalog")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (affects wall time only)")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse and check a catalog");
  std::string validatePath;
  validate->add_option("catalog", validatePath, "Catalog file")->required();

  auto* compose = app.add_subcommand("compose", "Compose two catalog maps");
  std::string nameA, nameB;
  compose->add_option("f", nameA)->required();
  compose->add_option("g", nameB)->required();

  auto* degree = app.add_subcommand("degree", "Estimate the geometric degree");
  std::string degreeName;
  int trials = fiber::kDefaultTrials;
  std::uint64_t seed = 0;
  degree->add_option("name", degreeName)->required();
  degree->add_option("--trials", trials)->check(CLI::PositiveNumber);
  degree->add_option("--seed", seed);

  auto* decompose = app.add_subcommand("decompose", "Tame decomposition of an automorphism");
  std::string decomposeName;
  bool decomposeJson = false;
  decompose->add_option("name", decomposeName)->required();
  decompose->add_flag("--json", decomposeJson, "Print the word as JSON");

  auto* invert = app.add_subcommand("invert", "Inverse of an automorphism");
  std::string invertName;
  invert->add_option("name", invertName)->required();

  auto* rho = app.add_subcommand("rho", "Estimate rho_D between two maps");
  std::string domainSpec = "ball:1", rhoOut;
  std::uint64_t samples = 1000000;
  bool geometric = false;
  rho->add_option("f", nameA)->required();
  rho->add_option("g", nameB)->required();
  rho->add_option("--domain", domainSpec, "ball:R or charset:<file>")->capture_default_str();
  rho->add_option("--samples", samples)->capture_default_str();
  rho->add_option("--seed", seed);
  rho->add_flag("--geometric", geometric, "Plain symmetric difference without multiplicities");
  rho->add_option("--out", rhoOut, "JSON report");

  auto* experiment = app.add_subcommand("experiment", "Run one experiment from a config file");
  std::string kind, configPath, outPath, csvPath;
  experiment->add_option("kind", kind)->required();
  experiment->add_option("--config", configPath)->required();
  experiment->add_option("--out", outPath)->required();
  experiment->add_option("--csv", csvPath, "Ratio series as CSV (contraction with scales)");

  auto* tractsCmd = app.add_subcommand("tracts", "Asymptotic tracts");
  tractsCmd->require_subcommand(1);
  auto* search = tractsCmd->add_subcommand("search", "Bounded search for canonical tracts");
  std::string tractName, tractOut;
  int alphaMax = 2, betaMax = 2, phiDeg = 1;
  search->add_option("name", tractName)->required();
  search->add_option("--alpha-max", alphaMax)->check(CLI::NonNegativeNumber);
  search->add_option("--beta-max", betaMax)->check(CLI::NonNegativeNumber);
  search->add_option("--phi-deg", phiDeg)->check(CLI::NonNegativeNumber);
  search->add_option("--out", tractOut);

  auto* charsetCmd = app.add_subcommand("charset", "Characteristic sets");
  charsetCmd->require_subcommand(1);
  auto* build = charsetCmd->add_subcommand("build", "Build and save a characteristic set");
  charset::BuildParameters bp;
  std::string charsetOut;
  build->add_option("--out", charsetOut)->required();
  build->add_option("--radius", bp.radius)->capture_default_str();
  build->add_option("--slices", bp.slices)->capture_default_str();
  build->add_option("--bundles", bp.bundlesPerSlice)->capture_default_str();
  build->add_option("--fatten", bp.fatteningRadius)->capture_default_str();
  build->add_option("--seed", bp.seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const auto catalog = lab::parseCatalog(validatePath);
      std::cout << validatePath << ": " << catalog.size() << " entries, tags consistent\n";
      for (const auto& e : catalog.entries()) {
        std::cout << "  " << e.name << "  " << e.map.toString() << "  [";
        bool first = true;
        for (auto t : e.tags) std::cout << (first ? "" : ", ") << lab::toString(t), first = false;
        std::cout << "]\n";
      }
      return lab::kExitPass;
    }

    const auto catalog = lab::parseCatalog(catalogPath);

    if (compose->parsed()) {
      const auto fg = composeMaps(catalog.at(nameA).map, catalog.at(nameB).map);
      std::cout << fg.toString() << '\n';
      std::cout << "degree " << fg.degree().value_or(0) << ", keller " << (isKeller(fg) ? "yes" : "no") << '\n';
      return lab::kExitPass;
    }

    if (degree->parsed()) {
      const auto survey = fiber::surveyDegree(catalog.at(degreeName).map, trials, seed, workers);
      std::cout << "geometric degree " << survey.degree << " (agreement " << num(survey.agreement) << ", "
                << trials << " trials, seed " << seed << ")\n";
      std::cout << "cardinalities";
      for (int c : survey.cardinalities) std::cout << ' ' << c;
      std::cout << '\n';
      return lab::kExitPass;
    }

    if (decompose->parsed()) {
      const auto word = aut::decomposeAutomorphism(catalog.at(decomposeName).map);
      if (decomposeJson) {
        std::cout << aut::wordToJson(word).dump(2) << '\n';
      } else {
        std::cout << word.factors.size() << " factors, outermost first\n";
        for (const auto& f : word.factors) std::cout << "  " << describeFactor(f) << '\n';
      }
      return lab::kExitPass;
    }

    if (invert->parsed()) {
      const auto inverse = aut::expandWord(aut::invertWord(aut::decomposeAutomorphism(catalog.at(invertName).map)));
      std::cout << inverse.toString() << '\n';
      return lab::kExitPass;
    }

    if (rho->parsed()) {
      const auto d = lab::parseDomain(domainSpec);
      const auto start = std::chrono::steady_clock::now();
      const auto e = vol::rhoD(catalog.at(nameA).map, catalog.at(nameB).map, d, samples, seed,
                               {workers, simd::activeIsa()},
                               geometric ? vol::RhoMode::Geometric : vol::RhoMode::Multiplicity);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cout << "rho = " << num(e.value) << " +- " << num(e.standardError) << "  (" << samples << " samples, seed "
                << seed << ", " << d.describe() << ")\n";
      if (!rhoOut.empty()) {
        json inputs{{"f", nameA}, {"g", nameB}, {"domain", domainSpec}, {"geometric", geometric}};
        auto report = vol::operationReport("rho", inputs, e, ms);
        report["box"] = e.box.toJson();
        writeJson(rhoOut, report);
      }
      return lab::kExitPass;
    }

    if (experiment->parsed()) {
      json raw = readJson(configPath);
      if (raw.is_object() && !raw.contains("kind")) raw["kind"] = kind;
      auto cfg = lab::ExperimentConfig::fromJson(raw);
      if (lab::toString(cfg.kind) != kind)
        throw Error(ErrorCode::SchemaError, "config kind '" + lab::toString(cfg.kind) + "' differs from '" + kind + "'");
      if (app.get_option("--workers")->count() > 0) cfg.workers = workers;
      const auto report = lab::runExperiment(cfg, catalog);
      writeJson(outPath, report.document);
      const auto& doc = report.document;
      int passed = 0, total = 0;
      for (const auto& a : doc.value("assertions", json::array())) {
        ++total;
        if (a.at("pass").get<bool>()) ++passed;
        else std::cout << "FAIL " << a.at("name").get<std::string>() << '\n';
      }
      if (doc.contains("error")) std::cout << "error: " << doc.at("error").at("message").get<std::string>() << '\n';
      std::cout << kind << ": " << passed << "/" << total << " assertions passed, report in " << outPath << '\n';
      if (!csvPath.empty()) {
        std::ofstream csv(csvPath);
        for (const auto& r : doc.value("results", json::array()))
          if (r.contains("csv")) csv << "# " << r.at("f").get<std::string>() << "; " << r.at("g1").get<std::string>()
                                     << ", " << r.at("g2").get<std::string>() << '\n'
                                     << r.at("csv").get<std::string>();
      }
      return report.exitCode;
    }

    if (search->parsed()) {
      const auto result = tracts::tractSearch(catalog.at(tractName).map, alphaMax, betaMax, phiDeg);
      std::cout << result.tracts.size() << " tract representatives within (" << alphaMax << ", " << betaMax << ", "
                << phiDeg << ")\n";
      for (const auto& t : result.tracts) {
        std::cout << "  " << t.map.toString() << "  family dimension " << t.familyDimension;
        if (!t.validation.flags.empty()) {
          std::cout << "  flags";
          for (auto f : t.validation.flags) std::cout << ' ' << tracts::toString(f);
        }
        std::cout << '\n';
      }
      for (const auto& [a, b] : result.unresolved) std::cout << "  unresolved (" << a << ", " << b << ")\n";
      if (!tractOut.empty()) writeJson(tractOut, tracts::toJson(result));
      return lab::kExitPass;
    }

    if (build->parsed()) {
      const auto set = charset::buildCharacteristicSet(bp);
      writeJson(charsetOut, charset::toJson(set));
      std::cout << set.starCount() << " stars in " << set.slices.size() << " slices, removed volume "
                << num(charset::removedVolume(set)) << ", written to " << charsetOut << '\n';
      return lab::kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lab::exitCodeFor(e.code());
  }
  return lab::kExitPass;
}
