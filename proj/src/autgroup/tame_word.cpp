#include "keller/autgroup/tame_word.hpp"

#include <algorithm>
#include <cmath>

#include "keller/autgroup/compiled_word.hpp"
#include "keller/error.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/polycore/serialization.hpp"

namespace keller::aut {

namespace {

BivariatePolynomial hornerIn(const GaussianUnivariate& p, const BivariatePolynomial& arg) {
  BivariatePolynomial acc;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * arg + BivariatePolynomial(*it);
  }
  return acc;
}

PlanarPolyMap applyFactor(const Factor& factor, const PlanarPolyMap& inner) {
  if (const auto* af = std::get_if<AffineFactor>(&factor)) {
    return {af->a * inner.first + af->b * inner.second + BivariatePolynomial(af->c),
            af->d * inner.first + af->e * inner.second + BivariatePolynomial(af->f)};
  }
  const auto& ef = std::get<ElementaryFactor>(factor);
  if (ef.axis == Axis::AddToX) return {inner.first + hornerIn(ef.poly, inner.second), inner.second};
  return {inner.first, inner.second + hornerIn(ef.poly, inner.first)};
}

AffineFactor composeAffine(const AffineFactor& outer, const AffineFactor& inner) {
  // outer o inner: M = Mo * Mi, t = Mo * ti + to.
  AffineFactor r;
  r.a = outer.a * inner.a + outer.b * inner.d;
  r.b = outer.a * inner.b + outer.b * inner.e;
  r.d = outer.d * inner.a + outer.e * inner.d;
  r.e = outer.d * inner.b + outer.e * inner.e;
  r.c = outer.a * inner.c + outer.b * inner.f + outer.c;
  r.f = outer.d * inner.c + outer.e * inner.f + outer.f;
  return r;
}

std::optional<AffineFactor> asAffine(const Factor& factor) {
  if (const auto* af = std::get_if<AffineFactor>(&factor)) return *af;
  const auto& ef = std::get<ElementaryFactor>(factor);
  if (ef.poly.degree().value_or(0) >= 2) return std::nullopt;
  AffineFactor r;
  if (ef.axis == Axis::AddToX) {
    r.b = ef.poly.coefficient(1);
    r.c = ef.poly.coefficient(0);
  } else {
    r.d = ef.poly.coefficient(1);
    r.f = ef.poly.coefficient(0);
  }
  return r;
}

int factorDegree(const Factor& factor) {
  if (std::holds_alternative<AffineFactor>(factor)) return 1;
  return std::max(1, static_cast<int>(std::get<ElementaryFactor>(factor).poly.degree().value_or(0)));
}

/// Tries T = c * B^k + lower terms; on success returns (c, k).
std::optional<std::pair<GaussianRational, unsigned>> leadingPowerRatio(const BivariatePolynomial& target,
                                                                       const BivariatePolynomial& base) {
  const int t = target.totalDegree().value_or(0);
  const int s = base.totalDegree().value_or(0);
  if (s < 1 || t < s || t % s != 0) return std::nullopt;
  const auto k = static_cast<unsigned>(t / s);
  const BivariatePolynomial lt = target.leadingForm();
  const BivariatePolynomial lbk = base.leadingForm().pow(k);
  const auto& [mono, coeff] = *lt.terms().begin();
  const GaussianRational denom = lbk.coefficient(mono.x, mono.y);
  if (denom.isZero()) return std::nullopt;
  GaussianRational ratio = coeff / denom;
  if (!(lt == ratio * lbk)) return std::nullopt;
  return std::make_pair(ratio, k);
}

}  // namespace

AffineFactor AffineFactor::make(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d,
                                GaussianRational e, GaussianRational f) {
  if (!(a * e - b * d).isOne()) throw Error(ErrorCode::InvalidArgument, "affine factor needs ae - bd = 1");
  return {std::move(a), std::move(b), std::move(c), std::move(d), std::move(e), std::move(f)};
}

bool AffineFactor::isIdentity() const {
  return a.isOne() && b.isZero() && c.isZero() && d.isZero() && e.isOne() && f.isZero();
}

AffineFactor AffineFactor::inverse() const {
  // Linear part [[e, -b], [-d, a]] (determinant one), translation -M^-1 (c, f).
  AffineFactor r;
  r.a = e;
  r.b = -b;
  r.d = -d;
  r.e = a;
  r.c = -(e * c - b * f);
  r.f = -(-d * c + a * f);
  return r;
}

PlanarPolyMap AffineFactor::toMap() const { return applyFactor(Factor(*this), PlanarPolyMap::identity()); }

PlanarPolyMap ElementaryFactor::toMap() const { return applyFactor(Factor(*this), PlanarPolyMap::identity()); }

int TameWord::degreeBound() const {
  int d = 1;
  for (const auto& f : factors) d *= factorDegree(f);
  return d;
}

PlanarPolyMap expandWord(const TameWord& w) {
  PlanarPolyMap result = PlanarPolyMap::identity();
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) result = applyFactor(*it, result);
  return result;
}

TameWord invertWord(const TameWord& w) {
  TameWord inv;
  inv.factors.reserve(w.factors.size());
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    if (const auto* af = std::get_if<AffineFactor>(&*it)) {
      inv.factors.emplace_back(af->inverse());
    } else {
      inv.factors.emplace_back(std::get<ElementaryFactor>(*it).inverse());
    }
  }
  return inv;
}

TameWord concatenate(const TameWord& u, const TameWord& v) {
  TameWord out = u;
  out.factors.insert(out.factors.end(), v.factors.begin(), v.factors.end());
  return out;
}

TameWord normalizeWord(const TameWord& w) {
  std::vector<Factor> out;
  for (const Factor& f : w.factors) {
    Factor current = f;
    if (auto af = asAffine(current)) current = *af;
    if (!out.empty()) {
      auto prevAffine = std::get_if<AffineFactor>(&out.back());
      auto curAffine = std::get_if<AffineFactor>(&current);
      if (prevAffine && curAffine) {
        *prevAffine = composeAffine(*prevAffine, *curAffine);
        continue;
      }
      auto prevElem = std::get_if<ElementaryFactor>(&out.back());
      auto curElem = std::get_if<ElementaryFactor>(&current);
      if (prevElem && curElem && prevElem->axis == curElem->axis) {
        prevElem->poly += curElem->poly;
        if (auto merged = asAffine(out.back())) out.back() = *merged;
        continue;
      }
    }
    out.push_back(std::move(current));
  }
  std::erase_if(out, [](const Factor& f) {
    const auto* af = std::get_if<AffineFactor>(&f);
    return af != nullptr && af->isIdentity();
  });
  TameWord result{std::move(out)};
  // One pass can expose new neighbours after identity removal.
  if (result.factors.size() < w.factors.size()) return normalizeWord(result);
  return result;
}

TameWord decomposeAutomorphism(const PlanarPolyMap& f) {
  if (!isKeller(f)) throw Error(ErrorCode::NotKeller, "Jacobian determinant of " + f.toString() + " is not 1");
  std::vector<Factor> outer;
  PlanarPolyMap g = f;
  while (g.degree().value_or(0) > 1) {
    const int n = g.first.totalDegree().value_or(0);
    const int m = g.second.totalDegree().value_or(0);
    bool reduced = false;
    auto reduceFirst = [&] {
      auto r = leadingPowerRatio(g.first, g.second);
      if (!r) return false;
      auto [coeff, k] = *r;
      g.first -= coeff * g.second.pow(k);
      outer.emplace_back(ElementaryFactor{Axis::AddToX, GaussianUnivariate::monomial(coeff, k)});
      return true;
    };
    auto reduceSecond = [&] {
      auto r = leadingPowerRatio(g.second, g.first);
      if (!r) return false;
      auto [coeff, k] = *r;
      g.second -= coeff * g.first.pow(k);
      outer.emplace_back(ElementaryFactor{Axis::AddToY, GaussianUnivariate::monomial(coeff, k)});
      return true;
    };
    if (n > m) {
      reduced = reduceFirst();
    } else if (m > n) {
      reduced = reduceSecond();
    } else {
      reduced = reduceFirst() || reduceSecond();
    }
    if (!reduced) {
      throw Error(ErrorCode::NotAnAutomorphism,
                  "leading forms of " + g.toString() + " admit no elementary reduction");
    }
  }
  AffineFactor last;
  last.a = g.first.coefficient(1, 0);
  last.b = g.first.coefficient(0, 1);
  last.c = g.first.coefficient(0, 0);
  last.d = g.second.coefficient(1, 0);
  last.e = g.second.coefficient(0, 1);
  last.f = g.second.coefficient(0, 0);
  outer.emplace_back(last);
  return normalizeWord(TameWord{std::move(outer)});
}

ComplexPoint evaluateWord(const TameWord& w, const ComplexPoint& at) { return CompiledWord(w).evaluate(at); }

nlohmann::json wordToJson(const TameWord& w) {
  using nlohmann::json;
  json factors = json::array();
  for (const auto& f : w.factors) {
    if (const auto* af = std::get_if<AffineFactor>(&f)) {
      factors.push_back(json{{"kind", "affine"},
                             {"a", io::coefficientToJson(af->a)},
                             {"b", io::coefficientToJson(af->b)},
                             {"c", io::coefficientToJson(af->c)},
                             {"d", io::coefficientToJson(af->d)},
                             {"e", io::coefficientToJson(af->e)},
                             {"f", io::coefficientToJson(af->f)}});
    } else {
      const auto& ef = std::get<ElementaryFactor>(f);
      json poly = json::array();
      for (const auto& c : ef.poly.coefficients()) poly.push_back(io::coefficientToJson(c));
      factors.push_back(json{{"kind", "elementary"}, {"axis", ef.axis == Axis::AddToX ? "x" : "y"}, {"poly", poly}});
    }
  }
  return json{{"factors", factors}};
}

TameWord wordFromJson(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("factors") || !j.at("factors").is_array()) {
    throw Error(ErrorCode::SchemaError, where + ": expected {\"factors\": [...]}");
  }
  TameWord w;
  std::size_t index = 0;
  for (const auto& f : j.at("factors")) {
    const std::string at = where + ".factors[" + std::to_string(index++) + "]";
    const std::string kind = f.value("kind", "");
    if (kind == "affine") {
      auto coef = [&](const char* name) {
        if (!f.contains(name)) throw Error(ErrorCode::SchemaError, at + ": missing " + name);
        return io::coefficientFromJson(f.at(name), at + "." + name);
      };
      AffineFactor af{coef("a"), coef("b"), coef("c"), coef("d"), coef("e"), coef("f")};
      if (!(af.a * af.e - af.b * af.d).isOne()) throw Error(ErrorCode::SchemaError, at + ": ae - bd must be 1");
      w.factors.emplace_back(std::move(af));
    } else if (kind == "elementary") {
      const std::string axis = f.value("axis", "");
      if (axis != "x" && axis != "y") throw Error(ErrorCode::SchemaError, at + ": axis must be \"x\" or \"y\"");
      if (!f.contains("poly") || !f.at("poly").is_array()) throw Error(ErrorCode::SchemaError, at + ": poly must be an array");
      std::vector<GaussianRational> coeffs;
      for (std::size_t k = 0; k < f.at("poly").size(); ++k) {
        coeffs.push_back(io::coefficientFromJson(f.at("poly")[k], at + ".poly[" + std::to_string(k) + "]"));
      }
      w.factors.emplace_back(ElementaryFactor{axis == "x" ? Axis::AddToX : Axis::AddToY, GaussianUnivariate(coeffs)});
    } else {
      throw Error(ErrorCode::SchemaError, at + ": kind must be \"affine\" or \"elementary\"");
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

ApproxTameWord ApproxTameWord::fromExact(const TameWord& w) {
  ApproxTameWord out;
  for (const auto& f : w.factors) {
    if (const auto* af = std::get_if<AffineFactor>(&f)) {
      out.factors.emplace_back(ApproxAffineFactor{af->a, af->b, af->c, af->d, af->e, af->f});
    } else {
      const auto& ef = std::get<ElementaryFactor>(f);
      ApproxElementaryFactor ae{ef.axis, {}};
      for (const auto& c : ef.poly.coefficients()) ae.poly.emplace_back(c);
      out.factors.emplace_back(std::move(ae));
    }
  }
  return out;
}

namespace {

std::complex<double> toComplex(const ApproxCoefficient& c) {
  if (const auto* q = std::get_if<GaussianRational>(&c)) return q->toComplex();
  return std::get<std::complex<double>>(c);
}

mpq_class roundToGrid(double v, const mpz_class& gridDenominator) {
  mpq_class scaled;
  mpq_set_d(scaled.get_mpq_t(), v);
  scaled *= gridDenominator;
  // floor(scaled + 1/2)
  mpq_class shifted = scaled + mpq_class(1, 2);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  mpq_class out(fl, gridDenominator);
  out.canonicalize();
  return out;
}

GaussianRational roundCoefficient(const ApproxCoefficient& c, const mpz_class& gridDenominator) {
  if (const auto* q = std::get_if<GaussianRational>(&c)) return *q;
  const auto z = std::get<std::complex<double>>(c);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, "cannot approximate a non-finite coefficient");
  }
  return GaussianRational(roundToGrid(z.real(), gridDenominator), roundToGrid(z.imag(), gridDenominator));
}

bool allExact(const ApproxAffineFactor& f) {
  for (const auto* c : {&f.a, &f.b, &f.c, &f.d, &f.e, &f.f}) {
    if (!std::holds_alternative<GaussianRational>(*c)) return false;
  }
  return true;
}

double distance(const GaussianRational& q, const ApproxCoefficient& target) {
  return std::abs(q.toComplex() - toComplex(target));
}

AffineFactor approximateAffine(const ApproxAffineFactor& f, double epsilon, const mpz_class& baseGrid) {
  if (allExact(f)) {
    auto get = [](const ApproxCoefficient& c) { return std::get<GaussianRational>(c); };
    return AffineFactor::make(get(f.a), get(f.b), get(f.c), get(f.d), get(f.e), get(f.f));
  }
  const GaussianRational c = roundCoefficient(f.c, baseGrid);
  const GaussianRational fv = roundCoefficient(f.f, baseGrid);
  mpz_class grid = baseGrid;
  for (int refinement = 0; refinement < 64; ++refinement, grid *= 2) {
    GaussianRational a = roundCoefficient(f.a, grid);
    GaussianRational b = roundCoefficient(f.b, grid);
    GaussianRational d = roundCoefficient(f.d, grid);
    GaussianRational e = roundCoefficient(f.e, grid);
    const bool aUsable = !a.isZero() && a.modulus() >= epsilon;
    if (aUsable) {
      e = (GaussianRational(1) + b * d) / a;
      if (distance(e, f.e) < epsilon) return AffineFactor::make(a, b, c, d, e, fv);
    } else {
      if (d.isZero()) {
        if (a.isZero()) throw Error(ErrorCode::DegenerateAffine, "a and d both round to zero");
        e = (GaussianRational(1) + b * d) / a;
        if (distance(e, f.e) < epsilon) return AffineFactor::make(a, b, c, d, e, fv);
        continue;
      }
      b = (a * e - GaussianRational(1)) / d;
      if (distance(b, f.b) < epsilon) return AffineFactor::make(a, b, c, d, e, fv);
    }
  }
  throw Error(ErrorCode::DegenerateAffine, "affine factor could not be repaired within epsilon");
}

}  // namespace

TameWord rationalApproximateWord(const ApproxTameWord& w, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "rationalApproximateWord: epsilon must be positive");
  }
  // Dyadic grid 1/2^k with 2^k >= 1/epsilon: per-part error <= epsilon/2,
  // modulus error <= epsilon/sqrt(2). Grids for smaller epsilon refine
  // coarser ones, so errors never grow as epsilon shrinks.
  const int k = std::max(0, static_cast<int>(std::ceil(std::log2(1.0 / epsilon))));
  mpz_class grid = 1;
  grid <<= static_cast<mp_bitcnt_t>(k);

  TameWord out;
  for (const auto& factor : w.factors) {
    if (const auto* af = std::get_if<ApproxAffineFactor>(&factor)) {
      out.factors.emplace_back(approximateAffine(*af, epsilon, grid));
    } else {
      const auto& ef = std::get<ApproxElementaryFactor>(factor);
      std::vector<GaussianRational> coeffs;
      coeffs.reserve(ef.poly.size());
      for (const auto& c : ef.poly) coeffs.push_back(roundCoefficient(c, grid));
      out.factors.emplace_back(ElementaryFactor{ef.axis, GaussianUnivariate(std::move(coeffs))});
    }
  }
  return out;
}

ComplexPoint evaluateWord(const ApproxTameWord& w, const ComplexPoint& at) {
  ComplexPoint p = at;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    if (const auto* af = std::get_if<ApproxAffineFactor>(&*it)) {
      const auto z = toComplex(af->a) * p.z + toComplex(af->b) * p.w + toComplex(af->c);
      const auto v = toComplex(af->d) * p.z + toComplex(af->e) * p.w + toComplex(af->f);
      p = {z, v};
    } else {
      const auto& ef = std::get<ApproxElementaryFactor>(*it);
      const std::complex<double> arg = ef.axis == Axis::AddToX ? p.w : p.z;
      std::complex<double> acc = 0.0;
      for (auto c = ef.poly.rbegin(); c != ef.poly.rend(); ++c) acc = acc * arg + toComplex(*c);
      if (ef.axis == Axis::AddToX) {
        p.z += acc;
      } else {
        p.w += acc;
      }
    }
  }
  return p;
}

}  // namespace keller::aut
