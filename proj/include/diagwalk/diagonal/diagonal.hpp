#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/composed/composed.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/ratfunc.hpp"
#include "diagwalk/core/series.hpp"
#include "diagwalk/core/squarefree.hpp"
#include "diagwalk/residues/residues.hpp"

namespace diagwalk {

/// sup{i - j : x^i y^j in p}
inline int ddeg(const BiPoly& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "ddeg: zero polynomial");
  bool first = true;
  int best = 0;
  for (const auto& t : p.terms()) {
    if (first || t.i - t.j > best) best = t.i - t.j;
    first = false;
  }
  return best;
}

struct DiagSubstitution {
  int ddeg = 0;
  BiPoly poly;  // p(x/y, y) * y^ddeg
};

inline DiagSubstitution substitute_diag(const BiPoly& p) {
  DiagSubstitution out;
  out.ddeg = ddeg(p);
  for (const auto& t : p.terms()) out.poly.add_term(t.i, t.j - t.i + out.ddeg, t.c);
  return out;
}

/// Squarefree part over Q[x, y], including the x-only factors.
inline BiPoly squarefree_part_full(const BiPoly& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "squarefree_part_full: zero polynomial");
  if (p.deg_y() == 0) {
    XPoly r = p.row(0);
    if (r.degree() <= 0) return BiPoly::constant(Rational(1));
    return BiPoly::from_x(primitive_positive(squarefree_uni(r).squarefree_part()));
  }
  SqfDecompBi sqf = squarefree_bi(p);
  BiPoly out = sqf.squarefree_part();
  if (sqf.content.degree() > 0) out = out * squarefree_uni(sqf.content).squarefree_part();
  return primitive_positive(out);
}

/// Number of distinct roots y(t) of q(t, y) tending to 0 with t.
inline int count_small_branches(const BiPoly& q) {
  if (q.is_zero()) fail(ErrorCode::ZeroInput, "count_small_branches: zero polynomial");
  if (q.val_x() > 0) fail(ErrorCode::OutOfRange, "count_small_branches: polynomial divisible by t");
  BiPoly qs = squarefree_part_full(q);
  int vx = qs.val_x();
  for (int j = 0; j <= qs.deg_y(); ++j)
    if (sgn(qs.coeff(vx, j)) != 0) return j;
  return 0;
}

struct DiagBounds {
  int dx = 0, dy = 0;    // bidegree bound of numerator and denominator
  int dxs = 0, dys = 0;  // bidegree of the squarefree part of the denominator
  int alpha = 0;
  int epsilon = 0;
  int big_dx = 0;
  int big_dy = 0;
  int c = 0;

  /// Bound on (deg_t, deg_Delta) of the annihilator.
  std::pair<long, long> phi_bound() const {
    long b = binomial(static_cast<unsigned long>(big_dy), static_cast<unsigned long>(std::max(c, 0))).get_si();
    return {static_cast<long>(big_dx) * b, b};
  }
};

inline DiagBounds diag_bounds(const BiPoly& a, const BiPoly& b) {
  DiagBounds out;
  out.dx = std::max({a.deg_x(), b.deg_x(), 0});
  out.dy = std::max({a.deg_y(), b.deg_y(), 0});
  BiPoly bs = squarefree_part_full(b);
  out.dxs = std::max(bs.deg_x(), 0);
  out.dys = std::max(bs.deg_y(), 0);
  out.alpha = ddeg(b) - (a.is_zero() ? 0 : ddeg(a)) - 1;
  out.epsilon = out.alpha < 0 ? 1 : 0;
  out.big_dx = 2 * out.dxs * (out.dx - out.dxs + out.dy - out.dys + 1) +
               out.dx * (2 * (out.dxs + out.dys + out.epsilon) - 1);
  out.big_dy = out.dxs + out.dys + out.epsilon;
  // the squarefree part has no small branch of its own since b(0, 0) != 0
  out.c = ddeg(bs) + out.epsilon;
  return out;
}

struct DiagonalOptions {
  /// Handle the pole at y = 0 separately when the numerator of the
  /// substituted function is multiplied down by a power of y.
  bool optimize = false;
  /// Terms of the diagonal used to self-check the output (0 disables).
  std::size_t check_depth = 16;
};

struct DiagonalAnnihilator {
  BiPoly phi;  // polynomial in (t, Delta), Delta the main variable
  DiagBounds bounds;
  std::size_t series_check_depth = 0;
  bool optimized = false;
};

/// First n coefficients f_{k,k} of the expansion of num/den at the origin.
inline TruncSeries<Rational> diagonal_series_naive(const BiRational& f, std::size_t n) {
  const BiPoly& b = f.den;
  if (b.is_zero() || sgn(b.coeff(0, 0)) == 0) fail(ErrorCode::PoleAtOrigin, "diagonal_series_naive: denominator vanishes at the origin");
  std::vector<BiPoly::Term> bt = b.terms();
  Rational inv_b00 = 1 / b.coeff(0, 0);
  std::vector<std::vector<Rational>> c(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational acc = f.num.coeff(static_cast<int>(i), static_cast<int>(j));
      for (const auto& t : bt) {
        if (t.i == 0 && t.j == 0) continue;
        if (static_cast<std::size_t>(t.i) > i || static_cast<std::size_t>(t.j) > j) continue;
        acc -= t.c * c[i - static_cast<std::size_t>(t.i)][j - static_cast<std::size_t>(t.j)];
      }
      c[i][j] = acc * inv_b00;
    }
  TruncSeries<Rational> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = c[k][k];
  return out;
}

/// phi(t, Delta - r(t)) with the denominator of r cleared, made primitive-positive.
inline BiPoly shift_annihilator(const BiPoly& phi, const RatFunc<Rational>& r) {
  if (sgn(r.den()(Rational(0))) == 0) fail(ErrorCode::PoleAtOrigin, "shift_annihilator: shift has a pole at t = 0");
  if (r.is_zero() || phi.is_zero()) return normalize_annihilator(phi);
  // (d Delta - n), where r = n / d
  BiPoly lin({-r.num(), r.den()});
  BiPoly den = BiPoly::from_x(r.den());
  int deg = phi.deg_y();
  BiPoly out;
  BiPoly lin_pow = BiPoly::constant(Rational(1));
  std::vector<BiPoly> den_pow{BiPoly::constant(Rational(1))};
  for (int j = 1; j <= deg; ++j) den_pow.push_back(den_pow.back() * den);
  for (int j = 0; j <= deg; ++j) {
    out += lin_pow * BiPoly::from_x(phi.row(j)) * den_pow[static_cast<std::size_t>(deg - j)];
    lin_pow = lin_pow * lin;
  }
  return normalize_annihilator(out);
}

/// Checks phi(t, Diag f) = 0 mod t^n using the first n diagonal terms.
/// Since phi is polynomial in t, the truncation of the series does not
/// perturb the result below order n.
inline bool certify(const BiRational& f, const BiPoly& phi, std::size_t n) {
  if (n == 0) fail(ErrorCode::OutOfRange, "certify: depth must be positive");
  TruncSeries<Rational> s = diagonal_series_naive(f, n);
  TruncSeries<Rational> acc(n);
  for (int j = phi.deg_y(); j >= 0; --j) acc = acc * s + TruncSeries<Rational>(phi.row(j), n);
  return acc.is_zero();
}

inline bool certify(const BiRational& f, const DiagonalAnnihilator& a, std::size_t n) { return certify(f, a.phi, n); }

namespace detail {

/// Residue at y = 0 of p / (y^m q1), q1(t, 0) != 0, as a rational function of t.
inline RatFunc<Rational> residue_at_zero(const BiPoly& p, const BiPoly& q1, int m) {
  using RF = RatFunc<Rational>;
  auto series = [m](const BiPoly& a) {
    TruncSeries<RF> s(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) s[static_cast<std::size_t>(j)] = RF(a.row(j));
    return s;
  };
  return series_div(series(p), series(q1))[static_cast<std::size_t>(m - 1)];
}

}  // namespace detail

/// Polynomial Phi(t, Delta) with Phi(t, Diag f) = 0.
inline DiagonalAnnihilator algebraic_diagonal(const BiRational& input, const DiagonalOptions& opt = {}) {
  if (input.den.is_zero() || sgn(input.den.coeff(0, 0)) == 0)
    fail(ErrorCode::PoleAtOrigin, "algebraic_diagonal: denominator vanishes at the origin");
  DiagonalAnnihilator out;
  if (input.num.is_zero()) {
    out.phi = BiPoly::y();
    out.bounds = diag_bounds(input.num, input.den);
    return out;
  }
  BiRational f = normalize_birational(input.num, input.den);
  out.bounds = diag_bounds(f.num, f.den);
  const DiagBounds& bd = out.bounds;

  DiagSubstitution sa = substitute_diag(f.num), sb = substitute_diag(f.den);
  BiPoly p = sa.poly, q = sb.poly;
  if (bd.alpha >= 0)
    p = p.shift_y(bd.alpha);
  else
    q = q.shift_y(-bd.alpha);
  BiRational g = normalize_birational(p, q);

  int c = count_small_branches(g.den);
  if (c != bd.c) fail(ErrorCode::BoundViolated, "algebraic_diagonal: small-branch count disagrees with the bound");

  if (c == 0) {
    out.phi = BiPoly::y();
  } else if (opt.optimize && bd.alpha < 0) {
    int m = -bd.alpha;
    RatFunc<Rational> r0 = detail::residue_at_zero(g.num, g.den.unshift_y(m), m);
    if (sgn(r0.den()(Rational(0))) != 0) {
      out.optimized = true;
      BiPoly rest;
      if (c == 1) {
        rest = BiPoly::y();
      } else {
        ResidueOptions ro;
        ro.exclude = BiPoly::y();
        ResiduePoly res = algebraic_residues(g, ro);
        rest = pure_composed_sum_bi(res.poly, c - 1).poly;
      }
      out.phi = shift_annihilator(rest, r0);
    }
  }
  if (c > 0 && !out.optimized) {
    ResiduePoly res = algebraic_residues(g);
    out.phi = pure_composed_sum_bi(res.poly, c).poly;
  }

  auto [tb, db] = bd.phi_bound();
  if (out.phi.deg_x() > tb || out.phi.deg_y() > db)
    fail(ErrorCode::BoundViolated, "algebraic_diagonal: annihilator exceeds the degree bound");
  if (opt.check_depth > 0) {
    if (!certify(f, out.phi, opt.check_depth))
      fail(ErrorCode::CertificationFailed, "algebraic_diagonal: annihilator does not cancel the diagonal");
    out.series_check_depth = opt.check_depth;
  }
  return out;
}

}  // namespace diagwalk
