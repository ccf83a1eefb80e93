#include "keller/volmetric/volume.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "keller/error.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/rng.hpp"

namespace keller::vol {

namespace {

constexpr std::size_t kStrataPerChunk = 64;

nlohmann::json pointJson(const ComplexPoint& p) {
  return {{"z", {p.z.real(), p.z.imag()}}, {"w", {p.w.real(), p.w.imag()}}};
}

void requireSamples(std::uint64_t samples) {
  if (samples < kMinSamples)
    throw Error(ErrorCode::InvalidArgument, "at least " + std::to_string(kMinSamples) + " samples required");
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator*(Interval a, Interval b) {
    const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }
};

struct Rect {
  Interval re, im;
  friend Rect operator+(Rect a, Rect b) { return {a.re + b.re, a.im + b.im}; }
  friend Rect operator*(Rect a, Rect b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
};

Rect scalarRect(std::complex<double> c) { return {{c.real(), c.real()}, {c.imag(), c.imag()}}; }

Rect rectPow(Rect r, int n) {
  Rect out = scalarRect(1.0);
  for (int k = 0; k < n; ++k) out = out * r;
  return out;
}

Rect rangeOf(const BivariatePolynomial& p, Rect z, Rect w, double rz, double rw) {
  Rect sum = scalarRect(0.0);
  double bound = 0.0;
  for (const auto& [m, c] : p.terms()) {
    const std::complex<double> cd = c.toComplex();
    sum = sum + scalarRect(cd) * rectPow(z, m.x) * rectPow(w, m.y);
    bound += std::abs(cd) * std::pow(rz, m.x) * std::pow(rw, m.y);
  }
  bound *= 1.0 + 1e-12;
  sum.re = {std::max(sum.re.lo, -bound), std::min(sum.re.hi, bound)};
  sum.im = {std::max(sum.im.lo, -bound), std::min(sum.im.hi, bound)};
  return sum;
}

Interval padded(Interval i) {
  const double pad = 1e-9 * (i.hi - i.lo) + 1e-12 * (1.0 + std::max(std::abs(i.lo), std::abs(i.hi)));
  return {i.lo - pad, i.hi + pad};
}

std::string formatNumber(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

double Box::volume() const {
  double v = 1.0;
  for (int a = 0; a < 4; ++a) v *= hi[a] - lo[a];
  return v;
}

bool Box::contains(const ComplexPoint& p) const {
  const double c[] = {p.z.real(), p.z.imag(), p.w.real(), p.w.imag()};
  for (int a = 0; a < 4; ++a)
    if (c[a] < lo[a] || c[a] > hi[a]) return false;
  return true;
}

Box Box::hull(const Box& o) const {
  Box out;
  for (int a = 0; a < 4; ++a) {
    out.lo[a] = std::min(lo[a], o.lo[a]);
    out.hi[a] = std::max(hi[a], o.hi[a]);
  }
  return out;
}

nlohmann::json Box::toJson() const { return {{"lo", lo}, {"hi", hi}}; }

SamplingDomain SamplingDomain::ball(double radius, ComplexPoint center) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !center.isFinite())
    throw Error(ErrorCode::InvalidArgument, "ball needs a finite positive radius");
  SamplingDomain d;
  d.radius_ = radius;
  d.center_ = center;
  return d;
}

SamplingDomain SamplingDomain::characteristic(std::shared_ptr<const charset::CharacteristicSet> set, double scale) {
  if (!set) throw Error(ErrorCode::InvalidArgument, "null characteristic set");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  SamplingDomain d;
  d.radius_ = set->params.radius;
  d.scale_ = scale;
  d.set_ = std::move(set);
  return d;
}

SamplingDomain SamplingDomain::dilated(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "dilation must be positive");
  SamplingDomain d = *this;
  d.scale_ *= t;
  return d;
}

ComplexPoint SamplingDomain::center() const { return {center_.z * scale_, center_.w * scale_}; }

bool SamplingDomain::contains(const ComplexPoint& p) const {
  if (set_) return charset::containsPoint(*set_, {p.z / scale_, p.w / scale_});
  const ComplexPoint c = center();
  return std::norm(p.z - c.z) + std::norm(p.w - c.w) <= radius() * radius();
}

Box SamplingDomain::boundingBox() const {
  const ComplexPoint c = center();
  const double r = radius();
  const double mid[] = {c.z.real(), c.z.imag(), c.w.real(), c.w.imag()};
  Box b;
  for (int a = 0; a < 4; ++a) {
    b.lo[a] = mid[a] - r;
    b.hi[a] = mid[a] + r;
  }
  return b;
}

double SamplingDomain::ballVolume() const {
  const double r = radius();
  return std::numbers::pi * std::numbers::pi * r * r * r * r / 2.0;
}

std::string SamplingDomain::describe() const {
  std::ostringstream os;
  os << std::setprecision(12);
  if (set_)
    os << "characteristic set (R = " << set_->params.radius << ", " << set_->starCount() << " stars) scaled by "
       << scale_;
  else if (center() == ComplexPoint{})
    os << "ball of radius " << radius();
  else
    os << "ball of radius " << radius() << " at (" << center().z << ", " << center().w << ")";
  return os.str();
}

nlohmann::json SamplingDomain::toJson() const {
  if (set_) return {{"kind", "characteristic"}, {"scale", scale_}, {"set", charset::toJson(*set_)}};
  return {{"kind", "ball"}, {"radius", radius()}, {"center", pointJson(center())}};
}

nlohmann::json VolumeEstimate::toJson() const {
  return {{"value", value}, {"stderr", standardError}, {"samples", samples}, {"seed", seed}, {"box", box.toJson()}};
}

int strataPerAxis(std::uint64_t samples) {
  int k = 1;
  while (k < kStrataPerAxis) {
    const std::uint64_t next = static_cast<std::uint64_t>(k + 1);
    if (2 * next * next * next * next > samples) break;
    ++k;
  }
  return k;
}

VolumeEstimate integrateStratified(const Box& box, std::uint64_t samples, std::uint64_t seed,
                                   const BatchIntegrand& integrand, const EngineOptions& options) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "stratified estimate needs two samples");
  const double volume = box.volume();
  if (!std::isfinite(volume) || !(volume > 0.0)) throw Error(ErrorCode::BoxOverflow, "sampling box has no volume");

  const int k = strataPerAxis(samples);
  const std::uint64_t strata = static_cast<std::uint64_t>(k) * k * k * k;
  const std::uint64_t base = samples / strata, extra = samples % strata;
  std::array<double, 4> width{};
  for (int a = 0; a < 4; ++a) width[a] = (box.hi[a] - box.lo[a]) / k;

  std::vector<double> means(strata), variances(strata);
  const std::uint64_t chunks = (strata + kStrataPerChunk - 1) / kStrataPerChunk;
  const int workers = static_cast<int>(std::clamp<std::uint64_t>(options.workers < 1 ? 1 : options.workers, 1, chunks));

  auto run = [&](int worker) {
    std::vector<double> zr, zi, wr, wi, out;
    for (std::uint64_t c = worker; c < chunks; c += workers) {
      const std::uint64_t h0 = c * kStrataPerChunk, h1 = std::min(strata, h0 + kStrataPerChunk);
      zr.clear();
      zi.clear();
      wr.clear();
      wi.clear();
      for (std::uint64_t h = h0; h < h1; ++h) {
        const std::uint64_t count = base + (h < extra ? 1 : 0);
        std::array<std::uint64_t, 4> cell{h % k, (h / k) % k, (h / k / k) % k, h / k / k / k};
        for (std::uint64_t j = 0; j < count; ++j) {
          rng::CounterStream stream(seed, h + j * strata);
          double x[4];
          for (int a = 0; a < 4; ++a) x[a] = box.lo[a] + (static_cast<double>(cell[a]) + stream.uniform()) * width[a];
          zr.push_back(x[0]);
          zi.push_back(x[1]);
          wr.push_back(x[2]);
          wi.push_back(x[3]);
        }
      }
      out.assign(zr.size(), 0.0);
      integrand(zr, zi, wr, wi, out);
      std::size_t at = 0;
      for (std::uint64_t h = h0; h < h1; ++h) {
        const std::uint64_t count = base + (h < extra ? 1 : 0);
        double sum = 0.0;
        for (std::uint64_t j = 0; j < count; ++j) sum += out[at + j];
        const double mean = sum / static_cast<double>(count);
        double ss = 0.0;
        for (std::uint64_t j = 0; j < count; ++j) ss += (out[at + j] - mean) * (out[at + j] - mean);
        means[h] = mean;
        variances[h] = ss / static_cast<double>(count - 1) / static_cast<double>(count);
        at += count;
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const double cellVolume = volume / static_cast<double>(strata);
  double value = 0.0, variance = 0.0;
  for (std::uint64_t h = 0; h < strata; ++h) {
    value += means[h];
    variance += variances[h];
  }
  VolumeEstimate e;
  e.value = cellVolume * value;
  e.standardError = cellVolume * std::sqrt(variance);
  e.samples = samples;
  e.seed = seed;
  e.box = box;
  return e;
}

MultiplicityOracle::MultiplicityOracle(const PlanarPolyMap& f, SamplingDomain domain, double tol)
    : solver_(f), domain_(std::move(domain)), tol_(tol) {}

void MultiplicityOracle::count(std::span<const double> zr, std::span<const double> zi, std::span<const double> wr,
                               std::span<const double> wi, std::span<int> out, simd::Isa isa) const {
  const std::size_t n = zr.size();
  if (const auto* word = solver_.inverseWord()) {
    std::vector<double> xr(zr.begin(), zr.end()), xi(zi.begin(), zi.end()), yr(wr.begin(), wr.end()),
        yi(wi.begin(), wi.end());
    word->evaluateBatch(xr, xi, yr, yi, isa);
    for (std::size_t k = 0; k < n; ++k) out[k] = domain_.contains({{xr[k], xi[k]}, {yr[k], yi[k]}}) ? 1 : 0;
    fiber::recordSolves(n, 0);
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto fiber = solver_.solve({{zr[k], zi[k]}, {wr[k], wi[k]}}, tol_);
    out[k] = static_cast<int>(
        std::count_if(fiber.points.begin(), fiber.points.end(), [&](const auto& p) { return domain_.contains(p); }));
  }
}

int MultiplicityOracle::count(const ComplexPoint& y) const {
  const double zr = y.z.real(), zi = y.z.imag(), wr = y.w.real(), wi = y.w.imag();
  int out = 0;
  count({&zr, 1}, {&zi, 1}, {&wr, 1}, {&wi, 1}, {&out, 1}, simd::Isa::Scalar);
  return out;
}

VolumeEstimate multiplicityVolume(const PlanarPolyMap& f, const SamplingDomain& d, std::uint64_t samples,
                                  std::uint64_t seed, const EngineOptions& options) {
  requireSamples(samples);
  const auto jac = simd::CompiledPolynomial::compile(jacobianDeterminant(f));
  const simd::Isa isa = options.isa;
  BatchIntegrand integrand = [&](auto zr, auto zi, auto wr, auto wi, std::span<double> out) {
    std::vector<double> re(zr.size()), im(zr.size());
    simd::evaluateBatch(jac, {zr, zi, wr, wi}, {re, im}, isa);
    for (std::size_t k = 0; k < zr.size(); ++k)
      out[k] = d.contains({{zr[k], zi[k]}, {wr[k], wi[k]}}) ? re[k] * re[k] + im[k] * im[k] : 0.0;
  };
  return integrateStratified(d.boundingBox(), samples, seed, integrand, options);
}

VolumeEstimate domainVolume(const SamplingDomain& d, std::uint64_t samples, std::uint64_t seed,
                            const EngineOptions& options) {
  return multiplicityVolume(PlanarPolyMap::identity(), d, samples, seed, options);
}

int imageMembership(const PlanarPolyMap& f, const SamplingDomain& d, const ComplexPoint& y, double tol) {
  return MultiplicityOracle(f, d, tol).count(y);
}

Box imageBox(const PlanarPolyMap& f, const SamplingDomain& d) {
  const Box src = d.boundingBox();
  const Rect z{{src.lo[0], src.hi[0]}, {src.lo[1], src.hi[1]}};
  const Rect w{{src.lo[2], src.hi[2]}, {src.lo[3], src.hi[3]}};
  const ComplexPoint c = d.center();
  const double rz = std::abs(c.z) + d.radius(), rw = std::abs(c.w) + d.radius();
  const Rect p = rangeOf(f.first, z, w, rz, rw), q = rangeOf(f.second, z, w, rz, rw);
  const Interval raw[] = {p.re, p.im, q.re, q.im};
  for (const auto& i : raw)
    if (!(i.hi > i.lo)) throw Error(ErrorCode::BoxOverflow, "image box is degenerate for " + f.toString());
  const Interval axes[] = {padded(p.re), padded(p.im), padded(q.re), padded(q.im)};
  Box out;
  for (int a = 0; a < 4; ++a) {
    out.lo[a] = axes[a].lo;
    out.hi[a] = axes[a].hi;
    if (!std::isfinite(out.lo[a]) || !std::isfinite(out.hi[a]))
      throw Error(ErrorCode::BoxOverflow, "image box is not finite for " + f.toString());
  }
  const double v = out.volume();
  if (!std::isfinite(v) || !(v > 1e-300)) throw Error(ErrorCode::BoxOverflow, "image box is degenerate for " + f.toString());
  return out;
}

VolumeEstimate rhoD(const PlanarPolyMap& f, const PlanarPolyMap& g, const SamplingDomain& d, std::uint64_t samples,
                    std::uint64_t seed, const EngineOptions& options, RhoMode mode) {
  requireSamples(samples);
  const Box box = imageBox(f, d).hull(imageBox(g, d));
  const MultiplicityOracle mf(f, d), mg(g, d);
  const simd::Isa isa = options.isa;
  BatchIntegrand integrand = [&](auto zr, auto zi, auto wr, auto wi, std::span<double> out) {
    std::vector<int> a(zr.size()), b(zr.size());
    mf.count(zr, zi, wr, wi, a, isa);
    mg.count(zr, zi, wr, wi, b, isa);
    for (std::size_t k = 0; k < zr.size(); ++k) {
      const bool onlyF = a[k] > 0 && b[k] == 0, onlyG = b[k] > 0 && a[k] == 0;
      if (mode == RhoMode::Geometric)
        out[k] = (onlyF || onlyG) ? 1.0 : 0.0;
      else
        out[k] = onlyF ? a[k] : onlyG ? b[k] : 0.0;
    }
  };
  return integrateStratified(box, samples, seed, integrand, options);
}

RatioSeries contractionRatio(const PlanarPolyMap& f, const PlanarPolyMap& g1, const PlanarPolyMap& g2,
                             const std::vector<double>& scales, const SamplingDomain& d, std::uint64_t samples,
                             std::uint64_t seed, const EngineOptions& options) {
  const PlanarPolyMap fg1 = composeMaps(f, g1), fg2 = composeMaps(f, g2);
  RatioSeries series;
  for (double t : scales) {
    const SamplingDomain td = d.dilated(t);
    const auto den = rhoD(g1, g2, td, samples, seed, options);
    if (den.value == 0.0)
      throw Error(ErrorCode::DivisionByZeroDistance, "rho(g1, g2) estimated as zero at scale " + formatNumber(t));
    const auto num = rhoD(fg1, fg2, td, samples, seed, options);
    const double ratio = num.value / den.value;
    const double rel = std::hypot(num.standardError / std::max(num.value, 1e-300), den.standardError / den.value);
    series.scales.push_back(t);
    series.numerators.push_back(num);
    series.denominators.push_back(den);
    series.ratios.push_back(ratio);
    series.ratioErrors.push_back(std::abs(ratio) * rel);
  }
  return series;
}

nlohmann::json RatioSeries::toJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < scales.size(); ++k)
    rows.push_back({{"scale", scales[k]},
                    {"ratio", ratios[k]},
                    {"stderr", ratioErrors[k]},
                    {"numerator", numerators[k].toJson()},
                    {"denominator", denominators[k].toJson()}});
  return rows;
}

std::string RatioSeries::toCsv() const {
  std::ostringstream os;
  os << "scale,ratio,stderr,numerator,numerator_stderr,denominator,denominator_stderr\n";
  for (std::size_t k = 0; k < scales.size(); ++k)
    os << formatNumber(scales[k]) << ',' << formatNumber(ratios[k]) << ',' << formatNumber(ratioErrors[k]) << ','
       << formatNumber(numerators[k].value) << ',' << formatNumber(numerators[k].standardError) << ','
       << formatNumber(denominators[k].value) << ',' << formatNumber(denominators[k].standardError) << '\n';
  return os.str();
}

nlohmann::json operationReport(const std::string& operation, const nlohmann::json& inputs, const VolumeEstimate& e,
                               double wallTimeMs) {
  return {{"operation", operation}, {"inputs", inputs},          {"seed", e.seed},
          {"samples", e.samples},   {"value", e.value},          {"stderr", e.standardError},
          {"wall_time_ms", wallTimeMs}};
}

}  // namespace keller::vol
