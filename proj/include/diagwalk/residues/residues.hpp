#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/rational.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

struct DegreeBoundsResidues {
  int z_bound = 0;
  int x_bound = 0;
};

/// Polynomial in (x, z), z the main variable, vanishing at every residue.
struct ResiduePoly {
  BiPoly poly;
  DegreeBoundsResidues bounds;
  std::vector<BiPoly> factors;  // R_i for each squarefree factor Q_i with deg_y Q_i > 0
  std::vector<int> multiplicities;
};

struct ResidueOptions {
  /// Replace the output by its squarefree part in z.
  bool squarefree_output = false;
  /// Roots of this polynomial in y are left out (used for branches handled separately).
  std::optional<BiPoly> exclude;
};

/// d_x = max deg_x, d_y = max deg_y over numerator and denominator, and the
/// same for the squarefree part of the denominator.
inline DegreeBoundsResidues residue_bounds(int dx, int dy, int dxs, int dys) {
  return {dys, 2 * dxs * (dy + 1) + (2 * dys - 1) * dx - 2 * dxs * dys};
}

namespace detail {

// t-expansion of p(y + t) up to t^{n-1}: coefficient k is p^{(k)}(y)/k!.
inline std::vector<BiPoly> shifted_coeffs(const BiPoly& p, int n) {
  std::vector<BiPoly> out;
  BiPoly d = p;
  Rational fact(1);
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      d = d.derivative_y();
      fact *= k;
    }
    out.push_back(d * Rational(1 / fact));
  }
  return out;
}

inline std::vector<BiPoly> truncated_product(const std::vector<BiPoly>& a, const std::vector<BiPoly>& b, int n) {
  std::vector<BiPoly> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j)
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace detail

/// Taylor coefficients S_0..S_{n-1} in t of N(y,t)/D(y,t), given the
/// t-coefficients of numerator and denominator (polynomials in x, y).
/// Each S_j is returned as a coprime fraction.
inline std::vector<BiRational> taylor_coeffs(const std::vector<BiPoly>& num, const std::vector<BiPoly>& den, int n) {
  if (den.empty() || den[0].is_zero())
    fail(ErrorCode::SeriesNotInvertible, "taylor_coeffs: denominator vanishes at t = 0");
  auto at = [](const std::vector<BiPoly>& v, int k) {
    return k < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(k)] : BiPoly{};
  };
  const BiPoly& d0 = den[0];
  // S_j = T_j / d0^{j+1}
  std::vector<BiPoly> t;
  std::vector<BiPoly> d0pow{BiPoly::constant(Rational(1))};
  std::vector<BiRational> out;
  for (int j = 0; j < n; ++j) {
    d0pow.push_back(d0pow.back() * d0);
    BiPoly tj = at(num, j) * d0pow[static_cast<std::size_t>(j)];
    for (int k = 1; k <= j; ++k) {
      BiPoly dk = at(den, k);
      if (dk.is_zero()) continue;
      tj -= dk * t[static_cast<std::size_t>(j - k)] * d0pow[static_cast<std::size_t>(k - 1)];
    }
    t.push_back(tj);
    out.push_back(normalize_birational(tj, d0pow[static_cast<std::size_t>(j + 1)]));
  }
  return out;
}

/// Coefficients of t^0..t^{n-1} in f(y + t).
inline std::vector<BiRational> taylor_shift_coeffs(const BiRational& f, int n) {
  return taylor_coeffs(detail::shifted_coeffs(f.num, n), detail::shifted_coeffs(f.den, n), n);
}

/// lc_y(q)^E * prod_{q(b)=0} (a(b) - z c(b)), E = max(deg_y a, deg_y c),
/// as a polynomial in (x, z), by evaluation at x-nodes and z-nodes.
inline BiPoly residue_resultant(const BiPoly& a, const BiPoly& c, const BiPoly& q) {
  int e = q.deg_y();
  int big_e = std::max({a.deg_y(), c.deg_y(), 0});
  int big_d = std::max({a.deg_x(), c.deg_x(), 0});
  int x_bound = std::max(q.deg_x(), 0) * big_e + e * big_d;
  XPoly lq = q.lc_y();
  std::vector<Rational> x_nodes;
  std::vector<UniPoly<Rational>> x_values;
  for (long k = 0; static_cast<int>(x_nodes.size()) < x_bound + 1; ++k) {
    Rational x0((k % 2 == 0) ? -(k / 2) : (k + 1) / 2);
    if (sgn(lq(x0)) == 0) continue;
    UniPoly<Rational> qa = a.eval_x(x0), qc = c.eval_x(x0), qq = q.eval_x(x0);
    std::vector<Rational> z_nodes, z_values;
    for (int zk = 0; zk <= e; ++zk) {
      Rational z0(zk);
      z_nodes.push_back(z0);
      z_values.push_back(resultant_formal(qq, qa - qc * z0, big_e));
    }
    x_nodes.push_back(x0);
    x_values.push_back(interpolate(z_nodes, z_values));
  }
  return interp_x(x_nodes, x_values);
}

/// Polynomial in z (coefficients in Q[x]) annihilating all residues of
/// f = P/Q with respect to y.
inline ResiduePoly algebraic_residues(const BiRational& f, const ResidueOptions& opt = {}) {
  const BiPoly& p = f.num;
  const BiPoly& q = f.den;
  if (q.deg_y() < 1) fail(ErrorCode::ConstantInMainVariable, "algebraic_residues: denominator constant in y");
  if (!p.is_zero()) {
    BiPoly g = bi_gcd(p, q);
    if (g.deg_x() > 0 || g.deg_y() > 0) fail(ErrorCode::NotCoprime, "algebraic_residues: numerator and denominator not coprime");
  }
  SqfDecompBi sqf = squarefree_bi(q);
  BiPoly qstar = sqf.squarefree_part();
  ResiduePoly out;
  int dx = std::max(p.deg_x(), q.deg_x()), dy = std::max(p.deg_y(), q.deg_y());
  out.bounds = residue_bounds(std::max(dx, 0), dy, std::max(qstar.deg_x(), 0), qstar.deg_y());

  BiPoly product = BiPoly::constant(Rational(1));
  for (const auto& [factor, i] : sqf.factors) {
    BiPoly qi = factor;
    if (opt.exclude) {
      BiPoly g = bi_gcd(qi, *opt.exclude);
      if (g.deg_y() > 0) qi = exact_div(qi, g);
    }
    if (qi.deg_y() == 0) continue;
    BiPoly ui = exact_div(q, qi.pow(static_cast<unsigned>(i)));
    // V_i(y, t) = (Q_i(y+t) - Q_i(y)) / t
    std::vector<BiPoly> shifted = detail::shifted_coeffs(qi, i + 1);
    std::vector<BiPoly> v(shifted.begin() + 1, shifted.end());
    std::vector<BiPoly> vpow{BiPoly::constant(Rational(1))};
    for (int k = 0; k < i; ++k) vpow = detail::truncated_product(vpow, v, i);
    std::vector<BiPoly> den = detail::truncated_product(detail::shifted_coeffs(ui, i), vpow, i);
    std::vector<BiRational> s = taylor_coeffs(detail::shifted_coeffs(p, i), den, i);
    const BiRational& last = s.back();
    BiPoly ri = normalize_annihilator(residue_resultant(last.num, last.den, qi));
    out.factors.push_back(ri);
    out.multiplicities.push_back(i);
    product = product * ri;
  }
  out.poly = normalize_annihilator(product);
  if (opt.squarefree_output && out.poly.deg_y() > 0)
    out.poly = normalize_annihilator(squarefree_bi(out.poly).squarefree_part());
  if (out.poly.deg_y() > out.bounds.z_bound || out.poly.deg_x() > out.bounds.x_bound)
    fail(ErrorCode::BoundViolated, "algebraic_residues: degree bound exceeded");
  return out;
}

// ---------------------------------------------------------------------------
// Numeric cross-check.

struct ResidueCheckReport {
  std::vector<std::complex<double>> poles;
  std::vector<std::complex<double>> residues;
  double max_residual = 0.0;
};

namespace detail {

inline std::vector<std::complex<double>> to_complex_coeffs(const UniPoly<Rational>& p) {
  std::vector<std::complex<double>> c;
  for (const auto& a : p.coeffs()) c.emplace_back(a.get_d(), 0.0);
  return c;
}

inline std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

/// All complex roots of a squarefree polynomial by Aberth iteration.
inline std::vector<std::complex<double>> aberth_roots(const UniPoly<Rational>& p) {
  int n = p.degree();
  if (n < 1) return {};
  auto c = to_complex_coeffs(p);
  std::vector<std::complex<double>> dc;
  for (int i = 1; i <= n; ++i) dc.push_back(c[static_cast<std::size_t>(i)] * static_cast<double>(i));
  double radius = 0;
  for (int i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(i)] / c.back()), 1.0 / (n - i)));
  radius = 2 * radius + 1e-3;
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2 * M_PI * (k + 0.25) / n);
  for (int iter = 0; iter < 500; ++iter) {
    double change = 0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      std::complex<double> ratio = horner(c, zk) / horner(dc, zk);
      std::complex<double> sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
      std::complex<double> w = ratio / (1.0 - ratio * sum);
      zk -= w;
      change = std::max(change, std::abs(w));
    }
    if (change < 1e-15) break;
  }
  // Newton polish
  for (auto& zk : z)
    for (int it = 0; it < 3; ++it) {
      std::complex<double> d = horner(dc, zk);
      if (std::abs(d) > 0) zk -= horner(c, zk) / d;
    }
  return z;
}

}  // namespace detail

/// Evaluates f at x = x0, locates the poles numerically, computes each
/// residue by a contour integral, and reports the largest normalized value
/// |R(x0, rho)| / sum_k |r_k| |rho|^k over all residues rho.
inline ResidueCheckReport verify_residues_numeric(const BiRational& f, const BiPoly& r, const Rational& x0) {
  UniPoly<Rational> qn = f.den.eval_x(x0), pn = f.num.eval_x(x0);
  if (qn.degree() != f.den.deg_y()) fail(ErrorCode::BadEvaluationPoint, "leading coefficient vanishes at x0");
  UniPoly<Rational> qs = exact_div(qn, gcd(qn, qn.derivative()));
  SqfDecompBi sqf = squarefree_bi(f.den);
  if (qs.degree() != sqf.squarefree_part().deg_y())
    fail(ErrorCode::BadEvaluationPoint, "discriminant vanishes at x0");
  if (qs.degree() >= 1 && !pn.is_zero() && gcd(pn, qs).degree() > 0)
    fail(ErrorCode::BadEvaluationPoint, "numerator and denominator share a root at x0");

  ResidueCheckReport rep;
  rep.poles = detail::aberth_roots(qs);
  auto pc = detail::to_complex_coeffs(pn), qc = detail::to_complex_coeffs(qn);
  UniPoly<Rational> rz = r.eval_x(x0);
  auto rc = detail::to_complex_coeffs(rz);
  for (std::size_t k = 0; k < rep.poles.size(); ++k) {
    double sep = 1e300;
    for (std::size_t j = 0; j < rep.poles.size(); ++j)
      if (j != k) sep = std::min(sep, std::abs(rep.poles[k] - rep.poles[j]));
    double rad = rep.poles.size() > 1 ? sep / 3 : 0.5;
    const int m = 512;
    std::complex<double> acc = 0;
    for (int s = 0; s < m; ++s) {
      std::complex<double> u = std::polar(1.0, 2 * M_PI * s / m);
      std::complex<double> y = rep.poles[k] + rad * u;
      acc += detail::horner(pc, y) / detail::horner(qc, y) * rad * u;
    }
    std::complex<double> res = acc / static_cast<double>(m);
    rep.residues.push_back(res);
    double scale = 0, power = 1;
    for (const auto& a : rc) {
      scale += std::abs(a) * power;
      power *= std::abs(res);
    }
    double residual = std::abs(detail::horner(rc, res)) / std::max(scale, 1e-300);
    rep.max_residual = std::max(rep.max_residual, residual);
  }
  return rep;
}

}  // namespace diagwalk
