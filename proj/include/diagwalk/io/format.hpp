#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/core/rational.hpp"
#include "diagwalk/core/series.hpp"

namespace diagwalk {

inline std::string rational_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

namespace detail {

// |c| * x^i * y^j without sign; the constant 1 is kept only for i = j = 0
inline std::string monomial_body(const Rational& c, int i, int j, const std::string& xn, const std::string& yn) {
  std::vector<std::string> parts;
  Rational a = abs(c);
  a.canonicalize();
  if (a != 1 || (i == 0 && j == 0)) parts.push_back(rational_string(a));
  if (i == 1) parts.push_back(xn);
  if (i > 1) parts.push_back(xn + "^" + std::to_string(i));
  if (j == 1) parts.push_back(yn);
  if (j > 1) parts.push_back(yn + "^" + std::to_string(j));
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "*" : "") + parts[k];
  return out;
}

// terms of one row in ascending x-degree, joined compactly ("1-4*t")
inline std::string compact_row(const XPoly& row, const std::string& xn, const std::string& yn) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (sgn(row[i]) == 0) continue;
    if (sgn(row[i]) < 0) out += "-";
    else if (!first) out += "+";
    out += monomial_body(row[i], static_cast<int>(i), 0, xn, yn);
    first = false;
  }
  return out;
}

}  // namespace detail

/// Canonical text: descending powers of the main variable (second name);
/// a coefficient with several terms is parenthesized and written in
/// ascending powers of the first variable, e.g. "(1-4*t)*D^2 - 1".
inline std::string format_bipoly(const BiPoly& p, const std::string& xn = "x", const std::string& yn = "y") {
  if (p.is_zero()) return "0";
  std::vector<std::pair<bool, std::string>> items;  // (negative, body)
  for (int j = p.deg_y(); j >= 0; --j) {
    const XPoly& row = p.rows()[static_cast<std::size_t>(j)];
    if (row.is_zero()) continue;
    int nz = 0;
    for (std::size_t i = 0; i < row.size(); ++i) nz += sgn(row[i]) != 0;
    if (nz == 1 || j == 0) {
      for (std::size_t i = 0; i < row.size(); ++i)
        if (sgn(row[i]) != 0)
          items.emplace_back(sgn(row[i]) < 0, detail::monomial_body(row[i], static_cast<int>(i), j, xn, yn));
    } else {
      std::string body = "(" + detail::compact_row(row, xn, yn) + ")*" + yn;
      if (j > 1) body += "^" + std::to_string(j);
      items.emplace_back(false, body);
    }
  }
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k == 0) out += items[k].first ? "-" : "";
    else out += items[k].first ? " - " : " + ";
    out += items[k].second;
  }
  return out;
}

inline std::string format_birational(const BiRational& f, const std::string& xn = "x", const std::string& yn = "y") {
  if (f.den == BiPoly::constant(Rational(1))) return format_bipoly(f.num, xn, yn);
  return "(" + format_bipoly(f.num, xn, yn) + ")/(" + format_bipoly(f.den, xn, yn) + ")";
}

inline std::string format_series(const TruncSeries<Rational>& s) {
  std::string out;
  for (std::size_t k = 0; k < s.precision(); ++k) out += (k ? ", " : "") + rational_string(s[k]);
  return out;
}

// ---------------------------------------------------------------------------
// JSON: polynomials as [x_exp, y_exp, "p/q"] triples, series as "p/q" strings.

using Json = nlohmann::json;

inline constexpr int kJsonSchemaVersion = 1;

inline Json bipoly_to_json(const BiPoly& p, const std::string& xn = "x", const std::string& yn = "y") {
  Json terms = Json::array();
  for (int j = p.deg_y(); j >= 0; --j) {
    const XPoly& row = p.rows()[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < row.size(); ++i)
      if (sgn(row[i]) != 0) terms.push_back(Json::array({static_cast<int>(i), j, rational_string(row[i])}));
  }
  return Json{{"variables", Json::array({xn, yn})}, {"terms", terms}};
}

inline BiPoly bipoly_from_json(const Json& j) {
  BiPoly p;
  for (const auto& t : j.at("terms")) {
    Rational c(t.at(2).get<std::string>());
    c.canonicalize();
    p.add_term(t.at(0).get<int>(), t.at(1).get<int>(), c);
  }
  return p;
}

inline Json series_to_json(const TruncSeries<Rational>& s) {
  Json out = Json::array();
  for (std::size_t k = 0; k < s.precision(); ++k) out.push_back(rational_string(s[k]));
  return out;
}

inline TruncSeries<Rational> series_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) {
    Rational r(v.get<std::string>());
    r.canonicalize();
    c.push_back(r);
  }
  return TruncSeries<Rational>(std::move(c));
}

}  // namespace diagwalk
