#pragma once

#include <utility>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

/// Monic gcd of the rows, i.e. the content of p as a polynomial in y over Q[x].
inline XPoly content_x(const BiPoly& p) {
  XPoly g;
  for (const auto& r : p.rows()) {
    if (r.is_zero()) continue;
    g = gcd(g, r);
    if (g.degree() == 0) break;
  }
  return g;
}

inline BiPoly exact_div(const BiPoly& a, const XPoly& c) {
  std::vector<XPoly> rows;
  rows.reserve(a.rows().size());
  for (const auto& r : a.rows()) rows.push_back(r.is_zero() ? r : exact_div(r, c));
  return BiPoly(std::move(rows));
}

/// Rational scale s with p / s integral, primitive, and with the lowest
/// nonzero x-coefficient of lc_y positive.
inline Rational integer_content(const BiPoly& p) {
  if (p.is_zero()) return Rational(1);
  Integer num(0), den(1);
  for (const auto& r : p.rows())
    for (const auto& a : r.coeffs()) {
      if (sgn(a) == 0) continue;
      num = gcd(num, Integer(a.get_num()));
      den = lcm(den, Integer(a.get_den()));
    }
  Rational c(num, den);
  c.canonicalize();
  XPoly lc = p.lc_y();
  if (sgn(lc[static_cast<std::size_t>(lc.valuation())]) < 0) c = -c;
  return c;
}

/// Integer coefficients, content 1, sign fixed by the lowest x-term of lc_y.
inline BiPoly primitive_positive(const BiPoly& p) {
  if (p.is_zero()) return p;
  Rational c = integer_content(p);
  return p * Rational(1 / c);
}

/// p divided by its content in Q[x].
inline BiPoly primitive_part_y(const BiPoly& p) {
  if (p.is_zero()) return p;
  XPoly c = content_x(p);
  if (c.degree() <= 0) return p;
  return exact_div(p, c);
}

/// Canonical form of a polynomial that matters only through its roots in y.
inline BiPoly normalize_annihilator(const BiPoly& p) { return primitive_positive(primitive_part_y(p)); }

/// Exact quotient a / b in Q[x][y]; throws NotExact when b does not divide a.
inline BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "BiPoly division by zero");
  if (a.is_zero()) return a;
  int db = b.deg_y();
  if (a.deg_y() < db) fail(ErrorCode::NotExact, "inexact BiPoly division");
  std::vector<XPoly> r = a.rows();
  std::vector<XPoly> q(static_cast<std::size_t>(a.deg_y() - db + 1));
  const XPoly& lc = b.rows().back();
  for (int k = a.deg_y() - db; k >= 0; --k) {
    auto top = static_cast<std::size_t>(k + db);
    if (r[top].is_zero()) continue;
    XPoly coef = exact_div(r[top], lc);
    for (int j = 0; j <= db; ++j) {
      const XPoly& bj = b.rows()[static_cast<std::size_t>(j)];
      if (!bj.is_zero()) r[static_cast<std::size_t>(k + j)] -= coef * bj;
    }
    q[static_cast<std::size_t>(k)] = std::move(coef);
  }
  for (int j = 0; j < db; ++j)
    if (!r[static_cast<std::size_t>(j)].is_zero()) fail(ErrorCode::NotExact, "inexact BiPoly division");
  return BiPoly(std::move(q));
}

inline bool divides(const BiPoly& b, const BiPoly& a) {
  try {
    exact_div(a, b);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotExact) throw;
    return false;
  }
}

/// Pseudo-remainder of a by b with respect to y.
inline BiPoly pseudo_rem(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "pseudo_rem by zero");
  BiPoly r = a;
  int db = b.deg_y();
  XPoly lcb = b.lc_y();
  while (!r.is_zero() && r.deg_y() >= db) {
    XPoly lcr = r.lc_y();
    BiPoly lead = b.shift_y(r.deg_y() - db) * lcr;
    r = r * lcb - lead;
  }
  return r;
}

/// gcd in Q[x][y] by a primitive remainder sequence, returned primitive-positive.
inline BiPoly bi_gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return primitive_positive(b);
  if (b.is_zero()) return primitive_positive(a);
  XPoly ca = content_x(a), cb = content_x(b);
  XPoly c = gcd(ca, cb);
  BiPoly pa = exact_div(a, ca), pb = exact_div(b, cb);
  if (pa.deg_y() < pb.deg_y()) std::swap(pa, pb);
  BiPoly g;
  if (pb.deg_y() == 0) {
    g = BiPoly::constant(Rational(1));
  } else {
    while (!pb.is_zero()) {
      BiPoly r = pseudo_rem(pa, pb);
      pa = std::move(pb);
      pb = primitive_part_y(primitive_positive(r));
      if (!pb.is_zero() && pb.deg_y() == 0) {
        pa = BiPoly::constant(Rational(1));
        break;
      }
    }
    g = primitive_part_y(pa);
  }
  return primitive_positive(g * c);
}

/// Resultant with respect to y by evaluation at x = 0, 1, -1, 2, ... and
/// interpolation. Nodes where either leading coefficient vanishes are skipped.
inline XPoly resultant_y(const BiPoly& p, const BiPoly& q) {
  if (p.deg_y() < 1 && q.deg_y() < 1)
    fail(ErrorCode::ConstantInMainVariable, "resultant_y: both inputs constant in y");
  if (p.is_zero() || q.is_zero()) return {};
  int m = p.deg_y(), n = q.deg_y();
  int bound = p.deg_x() * n + q.deg_x() * m;
  XPoly lp = p.lc_y(), lq = q.lc_y();
  std::vector<Rational> nodes, values;
  for (long k = 0; static_cast<int>(nodes.size()) < bound + 1; ++k) {
    Rational x0((k % 2 == 0) ? -(k / 2) : (k + 1) / 2);
    if (sgn(lp(x0)) == 0 || sgn(lq(x0)) == 0) continue;
    nodes.push_back(x0);
    values.push_back(resultant(p.eval_x(x0), q.eval_x(x0)));
  }
  XPoly r = interpolate(nodes, values);
  if (r.degree() > bound) fail(ErrorCode::BoundViolated, "resultant degree bound exceeded");
  return r;
}

/// Interpolates polynomials in y given at distinct x-nodes.
inline BiPoly interp_x(const std::vector<Rational>& nodes, const std::vector<UniPoly<Rational>>& values) {
  if (nodes.size() != values.size()) fail(ErrorCode::OutOfRange, "interp_x: size mismatch");
  std::size_t rows = 0;
  for (const auto& v : values) rows = std::max(rows, v.size());
  std::vector<XPoly> out(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    std::vector<Rational> column;
    column.reserve(values.size());
    for (const auto& v : values) column.push_back(v.coeff(j));
    out[j] = interpolate(nodes, column);
  }
  return BiPoly(std::move(out));
}

struct SqfDecompBi {
  std::vector<std::pair<BiPoly, int>> factors;  // primitive-positive, multiplicities increasing
  XPoly content = XPoly::constant(Rational(1));

  BiPoly squarefree_part() const {
    BiPoly r = BiPoly::constant(Rational(1));
    for (const auto& [f, i] : factors) r = r * f;
    return r;
  }
  BiPoly recombine() const {
    BiPoly r = BiPoly::from_x(content);
    for (const auto& [f, i] : factors) r = r * f.pow(static_cast<unsigned>(i));
    return r;
  }
};

/// Yun's algorithm over Q(x)[y] on primitive parts.
inline SqfDecompBi squarefree_bi(const BiPoly& q) {
  if (q.is_zero()) fail(ErrorCode::ZeroInput, "squarefree_bi: zero polynomial");
  if (q.deg_y() < 1) fail(ErrorCode::ConstantInMainVariable, "squarefree_bi: constant in y");
  SqfDecompBi out;
  BiPoly a = primitive_positive(primitive_part_y(q));
  BiPoly b = a.derivative_y();
  BiPoly c = bi_gcd(a, b);
  BiPoly w = exact_div(a, c);
  BiPoly y = exact_div(b, c);
  BiPoly z = y - w.derivative_y();
  for (int i = 1; w.deg_y() > 0; ++i) {
    BiPoly g = bi_gcd(w, z);
    if (g.deg_y() > 0) out.factors.emplace_back(g, i);
    w = exact_div(w, g);
    y = exact_div(z, g);
    z = y - w.derivative_y();
  }
  // q = content * prod f_i^i; recover content exactly.
  BiPoly prod = BiPoly::constant(Rational(1));
  for (const auto& [f, i] : out.factors) prod = prod * f.pow(static_cast<unsigned>(i));
  BiPoly quotient = exact_div(q, prod);
  if (quotient.deg_y() != 0) fail(ErrorCode::NotExact, "squarefree_bi: recombination failed");
  out.content = quotient.row(0);
  return out;
}

/// Coprime fraction num/den with den primitive-positive.
struct BiRational {
  BiPoly num;
  BiPoly den = BiPoly::constant(Rational(1));
};

inline BiRational normalize_birational(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "normalize_birational: zero denominator");
  if (a.is_zero()) return {BiPoly{}, BiPoly::constant(Rational(1))};
  BiPoly g = bi_gcd(a, b);
  BiPoly num = a, den = b;
  if (g.deg_x() > 0 || g.deg_y() > 0) {
    num = exact_div(a, g);
    den = exact_div(b, g);
  }
  Rational s = integer_content(den);
  return {num * Rational(1 / s), den * Rational(1 / s)};
}

inline bool operator==(const BiRational& a, const BiRational& b) {
  return a.num * b.den == b.num * a.den;
}

}  // namespace diagwalk
