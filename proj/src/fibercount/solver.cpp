#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/rng.hpp"

namespace keller::fiber {

namespace {

std::atomic<std::uint64_t> gSolves{0};
std::atomic<std::uint64_t> gViolations{0};

std::complex<double> evalOne(const simd::CompiledPolynomial& p, const ComplexPoint& x) {
  const std::array<double, 1> zr{x.z.real()}, zi{x.z.imag()}, wr{x.w.real()}, wi{x.w.imag()};
  std::array<double, 1> outr{}, outi{};
  simd::detail::evaluateBatchScalar(p, {zr, zi, wr, wi}, {outr, outi}, 0, 1);
  return {outr[0], outi[0]};
}

std::vector<UnivariatePolynomial> coefficientsInY(const BivariatePolynomial& p) {
  std::vector<UnivariatePolynomial> out;
  const int d = p.degreeInY().value_or(0);
  for (int k = 0; k <= d; ++k) out.push_back(UnivariatePolynomial::fromExact(p.coefficientOfY(k)));
  return out;
}

UnivariatePolynomial specializeX(const std::vector<UnivariatePolynomial>& rows, std::complex<double> x,
                                 std::complex<double> shift) {
  std::vector<std::complex<double>> c;
  c.reserve(rows.size());
  for (const auto& r : rows) c.push_back(r.evaluate(x));
  c[0] -= shift;
  return UnivariatePolynomial(std::move(c)).trimmed(1e-12);
}

}  // namespace

FiberSolver::FiberSolver(const PlanarPolyMap& f) : f_(f) {
  if (f.first.isZero() || f.second.isZero()) throw Error(ErrorCode::InvalidArgument, "map has a zero component");
  bezout_ = std::max(1, *f.first.totalDegree()) * std::max(1, *f.second.totalDegree());
  compiled_ = {simd::CompiledPolynomial::compile(f.first),
               simd::CompiledPolynomial::compile(f.second),
               simd::CompiledPolynomial::compile(f.first.derivativeX()),
               simd::CompiledPolynomial::compile(f.first.derivativeY()),
               simd::CompiledPolynomial::compile(f.second.derivativeX()),
               simd::CompiledPolynomial::compile(f.second.derivativeY())};
  if (isKeller(f)) {
    try {
      inverse_.emplace(aut::invertWord(aut::decomposeAutomorphism(f)));
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAnAutomorphism) throw;
    }
  }
  resultant_.emplace(f.first, f.second);
  pInY_ = coefficientsInY(f.first);
  qInY_ = coefficientsInY(f.second);
}

double FiberSolver::residual(const ComplexPoint& x, const ComplexPoint& target) const {
  const auto u = evalOne(compiled_[0], x) - target.z;
  const auto v = evalOne(compiled_[1], x) - target.w;
  return std::sqrt(std::norm(u) + std::norm(v));
}

std::optional<ComplexPoint> FiberSolver::newtonPolish(ComplexPoint x, const ComplexPoint& target) const {
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 60; ++iter) {
    const auto u = evalOne(compiled_[0], x) - target.z;
    const auto v = evalOne(compiled_[1], x) - target.w;
    if (!std::isfinite(std::abs(u)) || !std::isfinite(std::abs(v))) return std::nullopt;
    const auto px = evalOne(compiled_[2], x), py = evalOne(compiled_[3], x);
    const auto qx = evalOne(compiled_[4], x), qy = evalOne(compiled_[5], x);
    const auto det = px * qy - py * qx;
    if (det == 0.0) break;
    const ComplexPoint step{(qy * u - py * v) / det, (px * v - qx * u) / det};
    x = {x.z - step.z, x.w - step.w};
    const double size = step.norm();
    if (size <= 1e-15 * (1.0 + x.norm())) break;
    // Stop once the iteration stalls at roundoff level.
    if (iter > 8 && size >= previous) break;
    previous = size;
  }
  if (!x.isFinite()) return std::nullopt;
  return x;
}

FiberResult FiberSolver::solve(const ComplexPoint& target, double tol) const {
  if (!target.isFinite()) throw Error(ErrorCode::InvalidArgument, "fiber target is not finite");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver tolerance must be positive");
  FiberResult result;
  if (inverse_) {
    result.target = target;
    ComplexPoint x = inverse_->evaluate(target);
    double r = residual(x, target);
    if (r > tol) {
      if (auto polished = newtonPolish(x, target)) {
        x = *polished;
        r = residual(x, target);
      }
    }
    if (r > tol) throw Error(ErrorCode::NonConvergence, "inverse word misses the target by " + std::to_string(r));
    result.points.push_back(x);
    result.residuals.push_back(r);
    result.cardinality = 1;
  } else {
    result = solveGeneric(target, tol);
  }
  gSolves.fetch_add(1, std::memory_order_relaxed);
  if (result.cardinality > bezout_) gViolations.fetch_add(1, std::memory_order_relaxed);
  return result;
}

FiberResult FiberSolver::solveGeneric(const ComplexPoint& target, double tol) const {
  FiberResult result;
  result.target = target;
  if (resultant_->isZero()) {
    throw Error(ErrorCode::ResultantVanishes, "Res_Y(P - a, Q - b) vanishes identically: map is not dominant");
  }
  const UnivariatePolynomial r = resultant_->at(target.z, target.w).trimmed(1e-13);
  if (r.isZero()) throw Error(ErrorCode::ResultantVanishes, "resultant vanishes at this target");
  if (r.degree() == 0) return result;

  const double clusterRadius = 10.0 * tol;
  for (const auto x : univariateRoots(r, tol)) {
    const UnivariatePolynomial p = specializeX(pInY_, x, target.z);
    const UnivariatePolynomial q = specializeX(qInY_, x, target.w);
    const UnivariatePolynomial* pick = nullptr;
    if (p.degree() >= 1 && (q.degree() < 1 || p.degree() <= q.degree())) pick = &p;
    if (q.degree() >= 1 && pick == nullptr) pick = &q;
    if (pick == nullptr) continue;
    for (const auto y : univariateRoots(*pick, tol)) {
      auto polished = newtonPolish({x, y}, target);
      if (!polished) continue;
      const double res = residual(*polished, target);
      if (res > tol) continue;
      const bool duplicate = std::any_of(result.points.begin(), result.points.end(), [&](const ComplexPoint& other) {
        return ComplexPoint{polished->z - other.z, polished->w - other.w}.norm() <= clusterRadius;
      });
      if (duplicate) continue;
      result.points.push_back(*polished);
      result.residuals.push_back(res);
    }
  }
  result.cardinality = static_cast<int>(result.points.size());
  return result;
}

FiberResult solveFiber(const PlanarPolyMap& f, const ComplexPoint& target, double tol) {
  return FiberSolver(f).solve(target, tol);
}

DegreeSurvey surveyDegree(const PlanarPolyMap& f, int trials, std::uint64_t seed, int workers, double tol) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  const FiberSolver solver(f);
  DegreeSurvey survey;
  survey.targets.resize(trials);
  survey.cardinalities.resize(trials);
  std::vector<std::exception_ptr> failures(trials);
  auto runTrial = [&](int i) {
    try {
      rng::CounterStream stream(seed, static_cast<std::uint64_t>(i));
      const std::complex<double> z = stream.uniformDisk(2.0);
      const std::complex<double> w = stream.uniformDisk(2.0);
      survey.targets[i] = evaluate(f, ComplexPoint{z, w});
      survey.cardinalities[i] = solver.solve(survey.targets[i], tol).cardinality;
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  workers = std::clamp(workers, 1, trials);
  if (workers == 1) {
    for (int i = 0; i < trials; ++i) runTrial(i);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < trials; i += workers) runTrial(i);
      });
    }
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  survey.degree = *std::max_element(survey.cardinalities.begin(), survey.cardinalities.end());
  if (survey.degree > solver.bezoutBound()) {
    throw Error(ErrorCode::Unstable, "observed fiber cardinality " + std::to_string(survey.degree) +
                                         " exceeds the Bezout bound " + std::to_string(solver.bezoutBound()));
  }
  const auto hits = std::count(survey.cardinalities.begin(), survey.cardinalities.end(), survey.degree);
  survey.agreement = static_cast<double>(hits) / trials;
  return survey;
}

int geometricDegree(const PlanarPolyMap& f, int trials, std::uint64_t seed, int workers) {
  return surveyDegree(f, trials, seed, workers).degree;
}

SolveStatistics solveStatistics() {
  return {gSolves.load(std::memory_order_relaxed), gViolations.load(std::memory_order_relaxed)};
}

void recordSolves(std::uint64_t solves, std::uint64_t violations) {
  gSolves.fetch_add(solves, std::memory_order_relaxed);
  gViolations.fetch_add(violations, std::memory_order_relaxed);
}

void resetSolveStatistics() {
  gSolves.store(0);
  gViolations.store(0);
}

}  // namespace keller::fiber
