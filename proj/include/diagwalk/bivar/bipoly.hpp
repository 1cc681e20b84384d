#pragma once

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/modint.hpp"
#include "diagwalk/core/rational.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

using XPoly = UniPoly<Rational>;

/// Dense polynomial in Q[x][y]. row(j) is the coefficient of y^j as a
/// polynomial in x; the top row is nonzero unless the polynomial is zero.
/// The roles of (x, y) are positional: y is always the main variable.
class BiPoly {
 public:
  struct Term {
    int i;  // x exponent
    int j;  // y exponent
    Rational c;
  };

  BiPoly() = default;
  explicit BiPoly(std::vector<XPoly> rows) : rows_(std::move(rows)) { trim(); }

  static BiPoly from_terms(const std::vector<Term>& terms) {
    BiPoly p;
    for (const auto& t : terms) p.add_term(t.i, t.j, t.c);
    return p;
  }
  static BiPoly constant(const Rational& c) { return BiPoly({XPoly::constant(c)}); }
  static BiPoly x() { return BiPoly({XPoly::variable()}); }
  static BiPoly y() { return BiPoly({XPoly{}, XPoly::constant(Rational(1))}); }
  static BiPoly monomial(int i, int j, const Rational& c) {
    BiPoly p;
    p.add_term(i, j, c);
    return p;
  }
  /// Polynomial in x only.
  static BiPoly from_x(const XPoly& p) { return BiPoly({p}); }
  /// Polynomial in y only.
  static BiPoly from_y(const UniPoly<Rational>& p) {
    std::vector<XPoly> rows;
    for (const auto& c : p.coeffs()) rows.push_back(XPoly::constant(c));
    return BiPoly(std::move(rows));
  }

  bool is_zero() const { return rows_.empty(); }
  int deg_y() const { return static_cast<int>(rows_.size()) - 1; }
  int deg_x() const {
    int d = -1;
    for (const auto& r : rows_) d = std::max(d, r.degree());
    return d;
  }
  std::pair<int, int> bideg() const { return {deg_x(), deg_y()}; }
  int val_y() const {
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (!rows_[j].is_zero()) return static_cast<int>(j);
    return -1;
  }
  int val_x() const {
    int v = -1;
    for (const auto& r : rows_) {
      int rv = r.valuation();
      if (rv >= 0 && (v < 0 || rv < v)) v = rv;
    }
    return v;
  }

  const std::vector<XPoly>& rows() const { return rows_; }
  XPoly row(int j) const {
    return j >= 0 && j < static_cast<int>(rows_.size()) ? rows_[static_cast<std::size_t>(j)] : XPoly{};
  }
  Rational coeff(int i, int j) const { return row(j).coeff(static_cast<std::size_t>(i)); }
  XPoly lc_y() const { return rows_.empty() ? XPoly{} : rows_.back(); }

  void add_term(int i, int j, const Rational& c) {
    if (i < 0 || j < 0) fail(ErrorCode::OutOfRange, "negative exponent in BiPoly");
    if (is_zero_q(c)) return;
    auto ju = static_cast<std::size_t>(j);
    if (ju >= rows_.size()) rows_.resize(ju + 1);
    rows_[ju] += XPoly::monomial(c, static_cast<std::size_t>(i));
    trim();
  }

  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (std::size_t j = 0; j < rows_.size(); ++j)
      for (std::size_t i = 0; i < rows_[j].size(); ++i)
        if (!is_zero_q(rows_[j][i])) out.push_back({static_cast<int>(i), static_cast<int>(j), rows_[j][i]});
    return out;
  }

  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& row : r.rows_) row = -row;
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) {
    if (o.rows_.size() > rows_.size()) rows_.resize(o.rows_.size());
    for (std::size_t j = 0; j < o.rows_.size(); ++j) rows_[j] += o.rows_[j];
    trim();
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    if (o.rows_.size() > rows_.size()) rows_.resize(o.rows_.size());
    for (std::size_t j = 0; j < o.rows_.size(); ++j) rows_[j] -= o.rows_[j];
    trim();
    return *this;
  }
  BiPoly& operator*=(const Rational& c) {
    if (is_zero_q(c)) {
      rows_.clear();
      return *this;
    }
    for (auto& row : rows_) row *= c;
    return *this;
  }
  BiPoly& operator*=(const XPoly& c) {
    if (c.is_zero()) {
      rows_.clear();
      return *this;
    }
    for (auto& row : rows_) row = row * c;
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
  friend BiPoly operator*(const Rational& c, BiPoly a) { return a *= c; }
  friend BiPoly operator*(BiPoly a, const XPoly& c) { return a *= c; }
  friend BiPoly operator*(const XPoly& c, BiPoly a) { return a *= c; }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<XPoly> rows(a.rows_.size() + b.rows_.size() - 1);
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      if (a.rows_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.rows_.size(); ++j) {
        if (b.rows_[j].is_zero()) continue;
        rows[i + j] += a.rows_[i] * b.rows_[j];
      }
    }
    return BiPoly(std::move(rows));
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  BiPoly pow(unsigned e) const {
    BiPoly r = constant(Rational(1)), base = *this;
    while (e) {
      if (e & 1U) r = r * base;
      e >>= 1U;
      if (e) base = base * base;
    }
    return r;
  }

  BiPoly derivative_y() const {
    if (rows_.size() <= 1) return {};
    std::vector<XPoly> rows(rows_.size() - 1);
    for (std::size_t j = 1; j < rows_.size(); ++j) rows[j - 1] = rows_[j] * Rational(static_cast<long>(j));
    return BiPoly(std::move(rows));
  }
  BiPoly derivative_x() const {
    std::vector<XPoly> rows;
    rows.reserve(rows_.size());
    for (const auto& r : rows_) rows.push_back(r.derivative());
    return BiPoly(std::move(rows));
  }

  /// y^k p
  BiPoly shift_y(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<XPoly> rows(static_cast<std::size_t>(k));
    rows.insert(rows.end(), rows_.begin(), rows_.end());
    return BiPoly(std::move(rows));
  }
  /// x^k p
  BiPoly shift_x(int k) const {
    BiPoly r = *this;
    for (auto& row : r.rows_) row = row.shift_up(static_cast<std::size_t>(k));
    return r;
  }
  /// p / y^k, exact.
  BiPoly unshift_y(int k) const {
    if (is_zero() || k == 0) return *this;
    if (val_y() < k) fail(ErrorCode::NotExact, "BiPoly not divisible by y^k");
    return BiPoly(std::vector<XPoly>(rows_.begin() + k, rows_.end()));
  }
  /// p / x^k, exact.
  BiPoly unshift_x(int k) const {
    if (is_zero() || k == 0) return *this;
    if (val_x() < k) fail(ErrorCode::NotExact, "BiPoly not divisible by x^k");
    std::vector<XPoly> rows;
    for (const auto& r : rows_) {
      std::vector<Rational> c;
      if (!r.is_zero()) c.assign(r.coeffs().begin() + k, r.coeffs().end());
      rows.emplace_back(std::move(c));
    }
    return BiPoly(std::move(rows));
  }

  /// p(x0, y) as a polynomial in y.
  UniPoly<Rational> eval_x(const Rational& x0) const {
    std::vector<Rational> c;
    c.reserve(rows_.size());
    for (const auto& r : rows_) c.push_back(r(x0));
    return UniPoly<Rational>(std::move(c));
  }
  /// p(x, y0) as a polynomial in x.
  XPoly eval_y(const Rational& y0) const {
    XPoly r;
    for (std::size_t j = rows_.size(); j-- > 0;) r = r * y0 + rows_[j];
    return r;
  }
  Rational evaluate(const Rational& x0, const Rational& y0) const { return eval_x(x0)(y0); }

  /// Swaps the roles of x and y.
  BiPoly transpose() const {
    BiPoly r;
    for (const auto& t : terms()) r.add_term(t.j, t.i, t.c);
    return r;
  }

  /// Polynomial in (x, y) with y replaced by q(x, y).
  BiPoly compose_y(const BiPoly& q) const {
    BiPoly r;
    for (std::size_t j = rows_.size(); j-- > 0;) r = r * q + from_x(rows_[j]);
    return r;
  }

 private:
  static bool is_zero_q(const Rational& c) { return sgn(c) == 0; }
  void trim() {
    while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
  }

  std::vector<XPoly> rows_;
};

/// Coefficients reduced modulo the active prime; rows indexed by y-degree.
struct ModBiPoly {
  std::vector<UniPoly<ModInt>> rows;

  static ModBiPoly reduce(const BiPoly& p) {
    ModBiPoly m;
    for (const auto& r : p.rows()) m.rows.push_back(reduce_mod(r));
    return m;
  }
  /// p(x0, y); the y-degree may drop when lc_y(x0) = 0.
  UniPoly<ModInt> eval_x(const ModInt& x0) const {
    std::vector<ModInt> c;
    c.reserve(rows.size());
    for (const auto& r : rows) c.push_back(r(x0));
    return UniPoly<ModInt>(std::move(c));
  }
  int deg_y() const { return static_cast<int>(rows.size()) - 1; }
};

/// True when every coefficient's denominator is a unit modulo the active prime.
inline bool reducible_mod(const BiPoly& p) {
  std::uint64_t m = ModInt::modulus();
  for (const auto& r : p.rows())
    for (const auto& c : r.coeffs())
      if (mod_integer(c.get_den(), m) == 0) return false;
  return true;
}

}  // namespace diagwalk
