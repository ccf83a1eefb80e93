#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "keller/charset/charset.hpp"
#include "keller/fibercount/fiber.hpp"
#include "keller/simd/kernels.hpp"

namespace keller::vol {

inline constexpr std::uint64_t kMinSamples = 10000;
inline constexpr int kStrataPerAxis = 16;

/// Axis-aligned box in R^4, coordinates (Re z, Im z, Re w, Im w).
struct Box {
  std::array<double, 4> lo{};
  std::array<double, 4> hi{};
  double volume() const;
  bool contains(const ComplexPoint& p) const;
  Box hull(const Box& o) const;
  nlohmann::json toJson() const;
  friend bool operator==(const Box&, const Box&) = default;
};

class SamplingDomain {
 public:
  static SamplingDomain ball(double radius, ComplexPoint center = {});
  /// Dilations of the set are expressed through `scale`.
  static SamplingDomain characteristic(std::shared_ptr<const charset::CharacteristicSet> set, double scale = 1.0);

  bool isBall() const { return set_ == nullptr; }
  /// t * D.
  SamplingDomain dilated(double t) const;
  bool contains(const ComplexPoint& p) const;
  Box boundingBox() const;
  /// Radius and centre of the enclosing ball.
  double radius() const { return radius_ * scale_; }
  ComplexPoint center() const;
  /// pi^2 r^4 / 2 for the enclosing ball.
  double ballVolume() const;
  std::string describe() const;
  nlohmann::json toJson() const;

 private:
  ComplexPoint center_{};
  double radius_ = 1.0;
  double scale_ = 1.0;
  std::shared_ptr<const charset::CharacteristicSet> set_;
};

struct VolumeEstimate {
  double value = 0.0;
  double standardError = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Region actually sampled.
  Box box;
  nlohmann::json toJson() const;
};

struct EngineOptions {
  int workers = 1;
  simd::Isa isa = simd::activeIsa();
};

/// Strata per axis used for a given sample count: 16 when every stratum
/// gets at least two samples, otherwise the largest k with 2 k^4 <= n.
int strataPerAxis(std::uint64_t samples);

/// Integrand over a batch of points; writes one value per point.
using BatchIntegrand = std::function<void(std::span<const double> zr, std::span<const double> zi,
                                          std::span<const double> wr, std::span<const double> wi,
                                          std::span<double> out)>;

/// Stratified Monte Carlo estimate of the integral of `integrand` over
/// `box`. Sample n lies in stratum n mod S and draws its offsets from
/// stream (seed, n). Per-stratum sums are reduced in stratum order, so the
/// result does not depend on the worker count.
VolumeEstimate integrateStratified(const Box& box, std::uint64_t samples, std::uint64_t seed,
                                   const BatchIntegrand& integrand, const EngineOptions& options = {});

/// Number of fiber points in a domain, batched.
class MultiplicityOracle {
 public:
  MultiplicityOracle(const PlanarPolyMap& f, SamplingDomain domain, double tol = fiber::kDefaultTolerance);
  void count(std::span<const double> zr, std::span<const double> zi, std::span<const double> wr,
             std::span<const double> wi, std::span<int> out, simd::Isa isa) const;
  int count(const ComplexPoint& y) const;
  const fiber::FiberSolver& solver() const { return solver_; }

 private:
  fiber::FiberSolver solver_;
  SamplingDomain domain_;
  double tol_;
};

/// Integral over D of |det J_f|^2.
VolumeEstimate multiplicityVolume(const PlanarPolyMap& f, const SamplingDomain& d, std::uint64_t samples,
                                  std::uint64_t seed, const EngineOptions& options = {});

/// Plain 4-volume of the domain.
VolumeEstimate domainVolume(const SamplingDomain& d, std::uint64_t samples, std::uint64_t seed,
                            const EngineOptions& options = {});

int imageMembership(const PlanarPolyMap& f, const SamplingDomain& d, const ComplexPoint& y,
                    double tol = fiber::kDefaultTolerance);

/// Image box of f(D): rectangular interval arithmetic over D's box,
/// intersected with the coefficient bound on the enclosing ball and padded.
/// Throws BoxOverflow if the result is not finite or has no volume.
Box imageBox(const PlanarPolyMap& f, const SamplingDomain& d);

enum class RhoMode { Multiplicity, Geometric };

VolumeEstimate rhoD(const PlanarPolyMap& f, const PlanarPolyMap& g, const SamplingDomain& d, std::uint64_t samples,
                    std::uint64_t seed, const EngineOptions& options = {}, RhoMode mode = RhoMode::Multiplicity);

struct RatioSeries {
  std::vector<double> scales;
  std::vector<VolumeEstimate> numerators;
  std::vector<VolumeEstimate> denominators;
  std::vector<double> ratios;
  std::vector<double> ratioErrors;
  nlohmann::json toJson() const;
  std::string toCsv() const;
};

/// rho(f o g1, f o g2, tD) / rho(g1, g2, tD) for each scale t.
RatioSeries contractionRatio(const PlanarPolyMap& f, const PlanarPolyMap& g1, const PlanarPolyMap& g2,
                             const std::vector<double>& scales, const SamplingDomain& d, std::uint64_t samples,
                             std::uint64_t seed, const EngineOptions& options = {});

/// {operation, inputs, seed, samples, value, stderr, wall_time_ms}
nlohmann::json operationReport(const std::string& operation, const nlohmann::json& inputs, const VolumeEstimate& e,
                               double wallTimeMs);

}  // namespace keller::vol
