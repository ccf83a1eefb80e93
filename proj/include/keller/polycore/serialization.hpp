#pragma once

#include <nlohmann/json.hpp>

#include "keller/polycore/polynomial.hpp"

namespace keller::io {

using nlohmann::json;

/// ["num", "den"] with decimal-string integers.
json rationalToJson(const mpq_class& q);
mpq_class rationalFromJson(const json& j, const std::string& where);

/// {"re": [num, den], "im": [num, den]}
json coefficientToJson(const GaussianRational& c);
GaussianRational coefficientFromJson(const json& j, const std::string& where);

/// {"terms": [{"i":..,"j":..,"re":[..],"im":[..]}, ...]} in canonical order.
json polynomialToJson(const BivariatePolynomial& p);
/// Rejects zero terms, duplicate or out-of-order terms with SchemaError.
BivariatePolynomial polynomialFromJson(const json& j, const std::string& where = "polynomial");

/// {"first": poly, "second": poly}
json mapToJson(const PlanarPolyMap& f);
PlanarPolyMap mapFromJson(const json& j, const std::string& where = "map");

/// Shortest decimal that round-trips the double exactly.
std::string formatDouble(double v);
/// 12 significant digits, used for every human-facing number.
std::string formatSignificant(double v, int digits = 12);

}  // namespace keller::io
