#include "keller/polycore/serialization.hpp"

#include <charconv>
#include <cstdio>

#include "keller/error.hpp"

namespace keller::io {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

mpq_class integerFromJson(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "integers must be decimal strings");
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0) schema(where, "malformed integer '" + j.get<std::string>() + "'");
  return mpq_class(z);
}

}  // namespace

json rationalToJson(const mpq_class& q) {
  return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

mpq_class rationalFromJson(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema(where, "rational must be [num, den]");
  mpq_class num = integerFromJson(j[0], where);
  mpq_class den = integerFromJson(j[1], where);
  if (sgn(den) <= 0) schema(where, "denominator must be positive");
  mpq_class q = num / den;
  q.canonicalize();
  return q;
}

json coefficientToJson(const GaussianRational& c) {
  return json{{"re", rationalToJson(c.re())}, {"im", rationalToJson(c.im())}};
}

GaussianRational coefficientFromJson(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) schema(where, "coefficient needs re and im");
  return GaussianRational(rationalFromJson(j.at("re"), where + ".re"), rationalFromJson(j.at("im"), where + ".im"));
}

json polynomialToJson(const BivariatePolynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.canonicalTerms()) {
    terms.push_back(json{{"i", m.x}, {"j", m.y}, {"re", rationalToJson(c.re())}, {"im", rationalToJson(c.im())}});
  }
  return json{{"terms", terms}};
}

BivariatePolynomial polynomialFromJson(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    schema(where, "expected {\"terms\": [...]}");
  }
  BivariatePolynomial p;
  std::optional<Monomial> previous;
  std::size_t index = 0;
  for (const auto& t : j.at("terms")) {
    const std::string at = where + ".terms[" + std::to_string(index++) + "]";
    if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains("re") || !t.contains("im")) {
      schema(at, "term needs i, j, re, im");
    }
    if (!t.at("i").is_number_integer() || !t.at("j").is_number_integer()) schema(at, "exponents must be integers");
    Monomial m{t.at("i").get<int>(), t.at("j").get<int>()};
    if (m.x < 0 || m.y < 0) schema(at, "exponents must be non-negative");
    GaussianRational c(rationalFromJson(t.at("re"), at + ".re"), rationalFromJson(t.at("im"), at + ".im"));
    if (c.isZero()) schema(at, "zero terms are not permitted");
    if (previous && !canonicalLess(*previous, m)) schema(at, "terms must be in canonical order without duplicates");
    previous = m;
    p.setCoefficient(m.x, m.y, c);
  }
  return p;
}

json mapToJson(const PlanarPolyMap& f) {
  return json{{"first", polynomialToJson(f.first)}, {"second", polynomialToJson(f.second)}};
}

PlanarPolyMap mapFromJson(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("first") || !j.contains("second")) schema(where, "map needs first and second");
  return {polynomialFromJson(j.at("first"), where + ".first"), polynomialFromJson(j.at("second"), where + ".second")};
}

std::string formatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string formatSignificant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace keller::io
