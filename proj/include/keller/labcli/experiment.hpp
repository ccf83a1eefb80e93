#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "keller/error.hpp"
#include "keller/labcli/catalog.hpp"
#include "keller/volmetric/volume.hpp"

namespace keller::lab {

enum class ExperimentKind {
  MetricAxioms,
  Isometry,
  Contraction,
  DegreeMultiplicativity,
  TractSurvey,
  CharsetVolume,
  UnionCheck,
};

std::string toString(ExperimentKind kind);
ExperimentKind experimentKindFromString(const std::string& s);

/// Exit status contract of the command line tool.
enum ExitCode : int { kExitPass = 0, kExitAssertion = 2, kExitInput = 3, kExitNonConvergence = 4 };

int exitCodeFor(ErrorCode code);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MetricAxioms;
  /// Kind-specific parameters, kept verbatim for the report.
  nlohmann::json params;
  std::uint64_t seed = 0;
  int workers = 1;

  /// Requires "kind" and "seed"; everything else defaults per kind.
  static ExperimentConfig fromJson(const nlohmann::json& j);
  nlohmann::json toJson() const;
};

/// "ball:R" or "charset:<file>".
vol::SamplingDomain parseDomain(const std::string& spec);

struct ExperimentReport {
  nlohmann::json document;
  int exitCode = kExitPass;
  bool passed() const { return exitCode == kExitPass; }
};

/// Runs one experiment. Module errors end up in the report (field "error")
/// with the matching exit code; this never throws for them.
ExperimentReport runExperiment(const ExperimentConfig& cfg, const MapCatalog& catalog);

/// Report with timing fields removed, for bit-for-bit reproduction checks.
nlohmann::json withoutTiming(nlohmann::json report);

}  // namespace keller::lab
