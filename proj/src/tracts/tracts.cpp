#include "keller/tracts/tracts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "keller/error.hpp"
#include "keller/fibercount/fiber.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/polycore/serialization.hpp"
#include "sparse_poly.hpp"
#include "system_solver.hpp"

namespace keller::tracts {

using detail::SparsePoly;

namespace {

constexpr int kVarX = 0;
constexpr int kVarY = 1;

/// P(U, V) for sparse U, V.
SparsePoly substituteInto(const BivariatePolynomial& p, const SparsePoly& u, const SparsePoly& v) {
  const int nv = u.variables();
  const int maxU = p.degreeInX().value_or(0);
  const int maxV = p.degreeInY().value_or(0);
  std::vector<SparsePoly> up{SparsePoly::constant(nv, GaussianRational(1))};
  std::vector<SparsePoly> vp{SparsePoly::constant(nv, GaussianRational(1))};
  for (int k = 1; k <= maxU; ++k) up.push_back(up.back() * u);
  for (int k = 1; k <= maxV; ++k) vp.push_back(vp.back() * v);
  SparsePoly out(nv);
  for (const auto& [m, c] : p.terms()) out += c * (up[m.x] * vp[m.y]);
  return out;
}

/// U = X^-alpha and V = X^beta Y + X^-alpha phi(X), where phi's coefficient
/// k is either fixed or the unknown variable 2 + k.
std::pair<SparsePoly, SparsePoly> tractComponents(int alpha, int beta, const std::vector<std::optional<GaussianRational>>& phi,
                                                  int variables) {
  SparsePoly u = SparsePoly::variable(variables, kVarX, -alpha);
  SparsePoly v(variables);
  SparsePoly::Exponents e(variables, 0);
  e[kVarX] = beta;
  e[kVarY] = 1;
  v.addTerm(e, GaussianRational(1));
  for (std::size_t k = 0; k < phi.size(); ++k) {
    SparsePoly::Exponents t(variables, 0);
    t[kVarX] = static_cast<int>(k) - alpha;
    if (phi[k]) {
      v.addTerm(t, *phi[k]);
    } else {
      t[2 + k] = 1;
      v.addTerm(t, GaussianRational(1));
    }
  }
  return {u, v};
}

LaurentPolynomial toLaurent(const SparsePoly& p) {
  LaurentPolynomial out;
  for (const auto& [e, c] : p.terms()) out.terms.emplace(Monomial{e[kVarX], e[kVarY]}, c);
  return out;
}

std::vector<std::optional<GaussianRational>> fixedPhi(const GaussianUnivariate& phi) {
  std::vector<std::optional<GaussianRational>> out;
  for (const auto& c : phi.coefficients()) out.emplace_back(c);
  return out;
}

double relativeResidual(const BivariatePolynomial& h, const ComplexPoint& y) {
  double scale = 0.0;
  for (const auto& [m, c] : h.terms()) scale += c.modulus() * std::pow(std::abs(y.z), m.x) * std::pow(std::abs(y.w), m.y);
  return std::abs(evaluate(h, y)) / std::max(1.0, scale);
}

std::complex<double> evalUnivariate(const GaussianUnivariate& p, std::complex<double> t) {
  std::complex<double> acc = 0.0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + it->toComplex();
  return acc;
}

}  // namespace

std::string CanonicalRationalMap::toString() const {
  return "(alpha=" + std::to_string(alpha) + ", beta=" + std::to_string(beta) + ", phi=" + phi.toString('X') + ")";
}

int LaurentPolynomial::minXExponent() const {
  int m = 0;
  bool first = true;
  for (const auto& [mono, c] : terms) {
    m = first ? mono.x : std::min(m, mono.x);
    first = false;
  }
  return m;
}

BivariatePolynomial LaurentPolynomial::toPolynomial() const {
  BivariatePolynomial p;
  for (const auto& [m, c] : terms) {
    if (m.x < 0) throw Error(ErrorCode::NotPolynomial, "negative X exponent survives");
    p.addTerm(m.x, m.y, c);
  }
  return p;
}

std::string toString(CanonicalFlag flag) {
  switch (flag) {
    case CanonicalFlag::DegPhiTooLarge: return "DegPhiTooLarge";
    case CanonicalFlag::GcdNotOne: return "GcdNotOne";
    case CanonicalFlag::GammaRangeEmpty: return "GammaRangeEmpty";
  }
  return "unknown";
}

CanonicalValidation validateCanonical(const CanonicalRationalMap& r) {
  CanonicalValidation v;
  if (r.phi.degree() && static_cast<int>(*r.phi.degree()) >= r.alpha + r.beta) {
    v.flags.insert(CanonicalFlag::DegPhiTooLarge);
  }
  int g = r.alpha + r.beta;
  const auto& c = r.phi.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].isZero()) g = std::gcd(g, static_cast<int>(k));
  }
  if (g != 1) v.flags.insert(CanonicalFlag::GcdNotOne);
  if (r.beta - r.alpha < 2) v.flags.insert(CanonicalFlag::GammaRangeEmpty);
  return v;
}

LaurentMap composeWithTract(const PlanarPolyMap& f, const CanonicalRationalMap& r) {
  if (r.alpha < 1 || r.beta < 0) throw Error(ErrorCode::InvalidArgument, "tract needs alpha >= 1 and beta >= 0");
  const auto [u, v] = tractComponents(r.alpha, r.beta, fixedPhi(r.phi), 2);
  return {toLaurent(substituteInto(f.first, u, v)), toLaurent(substituteInto(f.second, u, v))};
}

PlanarPolyMap dualMap(const PlanarPolyMap& f, const CanonicalRationalMap& r) {
  const LaurentMap l = composeWithTract(f, r);
  if (l.minXExponent() < 0) {
    throw Error(ErrorCode::NotPolynomial, "f o R keeps negative powers of X for R = " + r.toString());
  }
  return {l.first.toPolynomial(), l.second.toPolynomial()};
}

bool isTract(const PlanarPolyMap& f, const CanonicalRationalMap& r) { return composeWithTract(f, r).minXExponent() >= 0; }

std::pair<GaussianUnivariate, GaussianUnivariate> componentParametrization(const PlanarPolyMap& gr) {
  return {gr.first.restrictX(GaussianRational()), gr.second.restrictX(GaussianRational())};
}

BivariatePolynomial implicitize(const std::pair<GaussianUnivariate, GaussianUnivariate>& param) {
  const auto& [g1, g2] = param;
  if (g1.degree().value_or(0) == 0 && g2.degree().value_or(0) == 0) {
    throw Error(ErrorCode::BothConstant, "parametrization is constant");
  }
  const BivariatePolynomial p = BivariatePolynomial::fromUnivariate(g1, true);
  const BivariatePolynomial q = BivariatePolynomial::fromUnivariate(g2, true);
  const fiber::SymbolicResultant res(p, q);
  BivariatePolynomial h;
  for (int s = 0; s <= res.degreeA(); ++s) {
    for (int t = 0; t <= res.degreeB(); ++t) h.addTerm(s, t, res.coefficient(0, s, t));
  }
  if (h.isZero()) throw Error(ErrorCode::BothConstant, "implicit equation vanishes");
  const GaussianRational lead = h.canonicalTerms().back().second;
  return lead.inverse() * h;
}

PhantomExtraction phantomExtract(const BivariatePolynomial& h, const PlanarPolyMap& gr) {
  const BivariatePolynomial composed = h.substitute(gr.first, gr.second);
  if (composed.isZero()) throw Error(ErrorCode::IdenticallyZero, "H(G_R) vanishes identically");
  int gamma = composed.terms().begin()->first.x;
  for (const auto& [m, c] : composed.terms()) gamma = std::min(gamma, m.x);
  if (gamma == 0) throw Error(ErrorCode::NoPositiveValuation, "H(G_R) is not divisible by X");
  PhantomExtraction out;
  out.gamma = gamma;
  for (const auto& [m, c] : composed.terms()) out.s.addTerm(m.x - gamma, m.y, c);
  if (out.e().isZero()) throw Error(ErrorCode::InvariantViolation, "S(0, Y) vanishes after extraction");
  return out;
}

TractSearchResult tractSearch(const PlanarPolyMap& f, int alphaMax, int betaMax, int phiDegMax) {
  if (alphaMax < 0 || betaMax < 0 || phiDegMax < 0) throw Error(ErrorCode::InvalidArgument, "tract bounds must be >= 0");
  TractSearchResult result;
  for (int alpha = 1; alpha <= alphaMax; ++alpha) {
    for (int beta = 0; beta <= betaMax; ++beta) {
      const int degree = std::min(phiDegMax, alpha + beta - 1);
      const int unknownCount = degree + 1;
      const int nv = 2 + unknownCount;
      const auto [u, v] = tractComponents(alpha, beta, std::vector<std::optional<GaussianRational>>(unknownCount), nv);

      // Each negative power X^i Y^j of either component must cancel.
      std::vector<SparsePoly> equations;
      for (const SparsePoly& comp : {substituteInto(f.first, u, v), substituteInto(f.second, u, v)}) {
        std::map<std::pair<int, int>, SparsePoly> grouped;
        for (const auto& [e, c] : comp.terms()) {
          if (e[kVarX] >= 0) continue;
          auto key = std::make_pair(e[kVarX], e[kVarY]);
          auto [it, inserted] = grouped.try_emplace(key, nv);
          SparsePoly::Exponents rest = e;
          rest[kVarX] = 0;
          rest[kVarY] = 0;
          it->second.addTerm(rest, c);
        }
        for (auto& [key, eq] : grouped) equations.push_back(std::move(eq));
      }
      std::vector<int> unknowns;
      for (int k = 0; k < unknownCount; ++k) unknowns.push_back(2 + k);
      const auto outcome = detail::solveSystem(equations, unknowns);
      if (outcome.unresolved) result.unresolved.emplace_back(alpha, beta);

      for (const auto& family : outcome.families) {
        std::vector<int> freeVars;
        for (int var : unknowns) {
          if (!family.values[var]) freeVars.push_back(var);
        }
        // Origin of the family plus each unit vector of its free parameters.
        for (int rep = -1; rep < static_cast<int>(freeVars.size()); ++rep) {
          std::vector<GaussianRational> coeffs(unknownCount);
          for (int k = 0; k < unknownCount; ++k) {
            const int var = 2 + k;
            if (!family.values[var]) {
              coeffs[k] = (rep >= 0 && freeVars[rep] == var) ? GaussianRational(1) : GaussianRational();
              continue;
            }
            SparsePoly value = *family.values[var];
            for (int fv : freeVars) {
              const GaussianRational x = (rep >= 0 && freeVars[rep] == fv) ? GaussianRational(1) : GaussianRational();
              value = value.substitute(fv, SparsePoly::constant(nv, x));
            }
            coeffs[k] = value.constantTerm();
          }
          CanonicalRationalMap r{alpha, beta, GaussianUnivariate(std::move(coeffs))};
          if (!isTract(f, r)) throw Error(ErrorCode::InvariantViolation, "solver returned a non-tract " + r.toString());
          const bool seen = std::any_of(result.tracts.begin(), result.tracts.end(),
                                        [&](const TractCandidate& t) { return t.map == r; });
          if (!seen) result.tracts.push_back({r, validateCanonical(r), static_cast<int>(freeVars.size())});
        }
      }
    }
  }
  return result;
}

UnionCheckReport asymptoticUnionCheck(const PlanarPolyMap& f, const PlanarPolyMap& g, const TractBounds& bounds,
                                      double tolerance) {
  UnionCheckReport report;
  const PlanarPolyMap fg = composeMaps(f, g);
  report.fTracts = tractSearch(f, bounds.alphaMax, bounds.betaMax, bounds.phiDegMax);
  report.gTracts = tractSearch(g, bounds.alphaMax, bounds.betaMax, bounds.phiDegMax);
  report.fgTracts = tractSearch(fg, bounds.alphaMax, bounds.betaMax, bounds.phiDegMax);

  struct Component {
    bool isPoint = false;
    ComplexPoint point;
    BivariatePolynomial h;
  };
  std::vector<Component> components;
  for (const auto& t : report.fgTracts.tracts) {
    const auto param = componentParametrization(dualMap(fg, t.map));
    Component c;
    if (param.first.degree().value_or(0) == 0 && param.second.degree().value_or(0) == 0) {
      c.isPoint = true;
      c.point = {param.first.coefficient(0).toComplex(), param.second.coefficient(0).toComplex()};
    } else {
      c.h = implicitize(param);
    }
    components.push_back(std::move(c));
  }

  for (const auto& t : report.gTracts.tracts) {
    const bool sameShape = std::any_of(report.fgTracts.tracts.begin(), report.fgTracts.tracts.end(), [&](const TractCandidate& o) {
      return o.map.alpha == t.map.alpha && o.map.beta == t.map.beta;
    });
    report.recurrence.push_back(isTract(fg, t.map) && sameShape);

    const auto [g1, g2] = componentParametrization(dualMap(g, t.map));
    for (int k = 0; k < kUnionSamples; ++k) {
      // Deterministic spiral of parameter values.
      const std::complex<double> s = std::polar(0.25 + 1.5 * k / (kUnionSamples - 1), 2.399963229728653 * k);
      ContainmentSample sample{t.map, s, evaluate(f, ComplexPoint{evalUnivariate(g1, s), evalUnivariate(g2, s)}), false};
      for (const auto& c : components) {
        const bool hit = c.isPoint ? ComplexPoint{sample.point.z - c.point.z, sample.point.w - c.point.w}.norm() <= tolerance
                                   : relativeResidual(c.h, sample.point) <= tolerance;
        if (hit) {
          sample.contained = true;
          break;
        }
      }
      report.verdict = report.verdict && sample.contained;
      report.samples.push_back(std::move(sample));
    }
  }
  return report;
}

nlohmann::json toJson(const CanonicalRationalMap& r) {
  nlohmann::json phi = nlohmann::json::array();
  for (const auto& c : r.phi.coefficients()) phi.push_back(io::coefficientToJson(c));
  return {{"alpha", r.alpha}, {"beta", r.beta}, {"phi", phi}};
}

nlohmann::json toJson(const TractSearchResult& r) {
  nlohmann::json tracts = nlohmann::json::array();
  for (const auto& t : r.tracts) {
    nlohmann::json flags = nlohmann::json::array();
    for (auto fl : t.validation.flags) flags.push_back(toString(fl));
    auto j = toJson(t.map);
    j["flags"] = flags;
    j["family_dimension"] = t.familyDimension;
    tracts.push_back(j);
  }
  nlohmann::json unresolved = nlohmann::json::array();
  for (auto [a, b] : r.unresolved) unresolved.push_back({{"alpha", a}, {"beta", b}});
  return {{"tracts", tracts}, {"unresolved", unresolved}};
}

nlohmann::json toJson(const UnionCheckReport& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"tract", toJson(s.gTract)},
                       {"t", {s.t.real(), s.t.imag()}},
                       {"point", {s.point.z.real(), s.point.z.imag(), s.point.w.real(), s.point.w.imag()}},
                       {"contained", s.contained}});
  }
  return {{"f_tracts", toJson(r.fTracts)},
          {"g_tracts", toJson(r.gTracts)},
          {"fg_tracts", toJson(r.fgTracts)},
          {"recurrence", r.recurrence},
          {"samples", samples},
          {"verdict", r.verdict}};
}

}  // namespace keller::tracts
