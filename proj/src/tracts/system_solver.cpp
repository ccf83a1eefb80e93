#include "system_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "keller/fibercount/fiber.hpp"
#include "keller/polycore/univariate.hpp"

namespace keller::tracts::detail {

namespace {

constexpr int kDepthCap = 48;

/// Best rational approximation of v with denominator below maxDen.
mpq_class rationalize(double v, long maxDen) {
  if (!std::isfinite(v)) return 0;
  const double sign = v < 0 ? -1.0 : 1.0;
  double x = std::abs(v);
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (a > 1e15) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > maxDen) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - std::abs(v)) <= 1e-14 * (1.0 + std::abs(v))) break;
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return 0;
  mpq_class q(static_cast<long>(sign) * h1, k1);
  q.canonicalize();
  return q;
}

GaussianUnivariate toUnivariate(const SparsePoly& p, int var) {
  std::vector<GaussianRational> c(static_cast<std::size_t>(p.maxExponent(var)) + 1);
  for (const auto& [e, v] : p.terms()) c[e[var]] += v;
  return GaussianUnivariate(std::move(c));
}

SparsePoly determinant(const std::vector<std::vector<SparsePoly>>& m, int variables) {
  // Laplace expansion along rows, memoized on the set of used columns.
  const std::size_t n = m.size();
  std::map<unsigned, SparsePoly> memo;
  auto rec = [&](auto&& self, std::size_t row, unsigned used) -> SparsePoly {
    if (row == n) return SparsePoly::constant(variables, GaussianRational(1));
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    SparsePoly acc(variables);
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (used & (1U << col)) continue;
      if (!m[row][col].isZero()) {
        SparsePoly term = m[row][col] * self(self, row + 1, used | (1U << col));
        if (sign > 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0, 0U);
}

SparsePoly resultant(const SparsePoly& a, const SparsePoly& b, int var) {
  const int m = a.maxExponent(var);
  const int n = b.maxExponent(var);
  const int size = m + n;
  const int nv = a.variables();
  std::vector<std::vector<SparsePoly>> s(size, std::vector<SparsePoly>(size, SparsePoly(nv)));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + m - i] = a.coefficientOf(var, i);
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) s[n + r][r + n - j] = b.coefficientOf(var, j);
  }
  return determinant(s, nv);
}

class Solver {
 public:
  explicit Solver(std::vector<int> unknowns) : unknowns_(std::move(unknowns)) {}

  void run(std::vector<SparsePoly> eqs, std::vector<std::optional<SparsePoly>> assignment, int depth) {
    std::vector<SparsePoly> live;
    for (auto& e : eqs) {
      if (e.isZero()) continue;
      if (e.isConstant()) return;  // nonzero constant: inconsistent
      if (std::find(live.begin(), live.end(), e) == live.end()) live.push_back(std::move(e));
    }
    if (live.empty()) {
      outcome.families.push_back({std::move(assignment)});
      return;
    }
    if (depth > kDepthCap) {
      outcome.unresolved = true;
      return;
    }
    std::sort(live.begin(), live.end(), [](const SparsePoly& a, const SparsePoly& b) {
      return a.terms().size() < b.terms().size();
    });

    for (const auto& e : live) {
      for (int v : e.support()) {
        if (e.maxExponent(v) != 1) continue;
        const SparsePoly lead = e.coefficientOf(v, 1);
        if (!lead.isConstant()) continue;
        const SparsePoly value = (GaussianRational(-1) / lead.constantTerm()) * e.coefficientOf(v, 0);
        assignAndRecurse(live, assignment, v, value, depth);
        return;
      }
    }

    for (const auto& e : live) {
      const auto sup = e.support();
      if (sup.size() != 1) continue;
      bool complete = true;
      const auto roots = gaussianRationalRoots(toUnivariate(e, sup[0]), complete);
      if (!complete) outcome.unresolved = true;
      for (const auto& r : roots) {
        assignAndRecurse(live, assignment, sup[0], SparsePoly::constant(e.variables(), r), depth);
      }
      return;
    }

    for (std::size_t k = 0; k < live.size(); ++k) {
      for (int v : live[k].support()) {
        const int low = live[k].minExponent(v);
        if (low < 1) continue;
        assignAndRecurse(live, assignment, v, SparsePoly(live[k].variables()), depth);
        auto reduced = live;
        reduced[k] = live[k].shifted(v, low);
        run(std::move(reduced), assignment, depth + 1);
        return;
      }
    }

    for (int v : unknowns_) {
      std::vector<std::size_t> with;
      for (std::size_t k = 0; k < live.size(); ++k) {
        if (live[k].dependsOn(v)) with.push_back(k);
      }
      for (std::size_t a = 0; a < with.size(); ++a) {
        for (std::size_t b = a + 1; b < with.size(); ++b) {
          SparsePoly r = resultant(live[with[a]], live[with[b]], v);
          if (r.isZero() || std::find(live.begin(), live.end(), r) != live.end()) continue;
          auto extended = live;
          extended.push_back(std::move(r));
          run(std::move(extended), std::move(assignment), depth + 1);
          return;
        }
      }
    }
    outcome.unresolved = true;
  }

  SolveOutcome outcome;

 private:
  void assignAndRecurse(const std::vector<SparsePoly>& eqs, std::vector<std::optional<SparsePoly>> assignment, int v,
                        const SparsePoly& value, int depth) {
    for (auto& a : assignment) {
      if (a) *a = a->substitute(v, value);
    }
    assignment[v] = value;
    std::vector<SparsePoly> next;
    next.reserve(eqs.size());
    for (const auto& e : eqs) next.push_back(e.substitute(v, value));
    run(std::move(next), std::move(assignment), depth + 1);
  }

  std::vector<int> unknowns_;
};

}  // namespace

std::vector<GaussianRational> gaussianRationalRoots(const GaussianUnivariate& p, bool& complete) {
  complete = true;
  std::vector<GaussianRational> roots;
  if (p.isZero()) return roots;
  const GaussianUnivariate sf = squarefreePart(p);
  const unsigned deg = sf.degree().value_or(0);
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-sf.coefficient(0) / sf.coefficient(1));
    return roots;
  }
  for (const auto z : fiber::univariateRoots(fiber::UnivariatePolynomial::fromExact(sf), 1e-10)) {
    const GaussianRational q(rationalize(z.real(), 1000000000L), rationalize(z.imag(), 1000000000L));
    if (!sf.evaluate(q).isZero()) continue;
    if (std::find(roots.begin(), roots.end(), q) == roots.end()) roots.push_back(q);
  }
  complete = roots.size() == deg;
  return roots;
}

SolveOutcome solveSystem(const std::vector<SparsePoly>& equations, const std::vector<int>& unknowns) {
  Solver solver(unknowns);
  const int n = equations.empty() ? 0 : equations.front().variables();
  const int size = std::max(n, unknowns.empty() ? 0 : *std::max_element(unknowns.begin(), unknowns.end()) + 1);
  solver.run(equations, std::vector<std::optional<SparsePoly>>(static_cast<std::size_t>(size)), 0);
  return solver.outcome;
}

}  // namespace keller::tracts::detail
