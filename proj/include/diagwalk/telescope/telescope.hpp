#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/ratfunc.hpp"
#include "diagwalk/core/series.hpp"
#include "diagwalk/core/squarefree.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

/// Coefficient field Q(x) and polynomials in y over it.
using QX = RatFunc<Rational>;
using YPoly = UniPoly<QX>;

inline YPoly to_ypoly(const BiPoly& p) {
  std::vector<QX> c;
  c.reserve(p.rows().size());
  for (const auto& r : p.rows()) c.emplace_back(r);
  return YPoly(std::move(c));
}

/// p = num / den with num in Q[x][y] and den in Q[x] monic.
inline std::pair<BiPoly, XPoly> clear_denominators(const YPoly& p) {
  XPoly den = XPoly::constant(Rational(1));
  for (const auto& c : p.coeffs()) {
    if (c.is_zero() || c.den().degree() == 0) continue;
    den = exact_div(den * c.den(), gcd(den, c.den()));
  }
  std::vector<XPoly> rows;
  rows.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) rows.push_back(c.is_zero() ? XPoly{} : c.num() * exact_div(den, c.den()));
  return {BiPoly(std::move(rows)), den.monic()};
}

/// Coefficient-wise derivative in x.
inline YPoly derivative_x(const YPoly& p) {
  std::vector<QX> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.push_back(a.derivative());
  return YPoly(std::move(c));
}

/// Rational function in y over Q(x), kept reduced with monic denominator.
struct YFrac {
  YPoly num;
  YPoly den = YPoly::constant(QX(1L));

  YFrac() = default;
  YFrac(YPoly n, YPoly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  void reduce() {
    if (den.is_zero()) fail(ErrorCode::ZeroDenominator, "YFrac: zero denominator");
    if (num.is_zero()) {
      den = YPoly::constant(QX(1L));
      return;
    }
    if (den.degree() > 0) {
      YPoly g = gcd(num, den);
      if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
      }
    }
    QX inv = QX(1L) / den.leading();
    num = num * inv;
    den = den * inv;
  }
  bool is_zero() const { return num.is_zero(); }

  friend YFrac operator+(const YFrac& a, const YFrac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den == b.den) return YFrac(a.num + b.num, a.den);
    return YFrac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend YFrac operator-(const YFrac& a, const YFrac& b) { return a + YFrac(-b.num, b.den); }
  friend YFrac operator*(const QX& c, const YFrac& a) { return YFrac(a.num * c, a.den); }

  YFrac derivative_y() const {
    if (is_zero()) return {};
    return YFrac(num.derivative() * den - num * den.derivative(), den * den);
  }
  YFrac derivative_x() const {
    if (is_zero()) return {};
    return YFrac(diagwalk::derivative_x(num) * den - num * diagwalk::derivative_x(den), den * den);
  }
};

inline YFrac to_yfrac(const BiRational& f) { return YFrac(to_ypoly(f.num), to_ypoly(f.den)); }

inline BiRational to_birational(const YFrac& f) {
  if (f.is_zero()) return {BiPoly{}, BiPoly::constant(Rational(1))};
  auto [n, ln] = clear_denominators(f.num);
  auto [d, ld] = clear_denominators(f.den);
  return normalize_birational(n * ld, d * ln);
}

// ---------------------------------------------------------------------------
// Hermite reduction.

/// f = d/dy(integrable_part) + residual_numer / residual_denom, where the
/// denominator is squarefree in y and deg_y residual_numer < deg_y of it.
struct HermiteForm {
  BiRational integrable_part;
  BiPoly residual_numer;
  BiPoly residual_denom;
};

namespace detail {

struct HermiteCore {
  YFrac g;
  YPoly h;       // deg h < deg qstar
  YPoly qstar;   // monic, squarefree
};

/// Reduction of a/d over Q(x): a/d = g' + h/qstar.
inline HermiteCore hermite_core(YPoly a, YPoly d) {
  HermiteCore out;
  SqfDecompUni<QX> sqf = squarefree_uni(d);
  for (const auto& [v, i] : sqf.factors) {
    if (i < 2) continue;
    YPoly u = exact_div(d, v.pow(static_cast<unsigned>(i)));
    YPoly dv = v.derivative();
    for (int j = i - 1; j >= 1; --j) {
      QX inv_j = QX(1L) / QX(static_cast<long>(j));
      auto [b, c] = solve_bezout(u * dv, v, -(a * inv_j));
      out.g = out.g + YFrac(b, v.pow(static_cast<unsigned>(j)));
      a = -(c * QX(static_cast<long>(j))) - u * b.derivative();
    }
    d = u * v;
  }
  auto [q, r] = divrem(a, d);
  if (!q.is_zero()) out.g = out.g + YFrac(q.integral(), YPoly::constant(QX(1L)));
  QX inv = QX(1L) / d.leading();
  out.h = r * inv;
  out.qstar = d * inv;
  return out;
}

}  // namespace detail

inline HermiteForm hermite_reduce(const BiRational& f) {
  if (f.den.deg_y() < 1) fail(ErrorCode::ConstantInMainVariable, "hermite_reduce: denominator constant in y");
  detail::HermiteCore core = detail::hermite_core(to_ypoly(f.num), to_ypoly(f.den));
  HermiteForm out;
  out.integrable_part = to_birational(core.g);
  BiRational res = to_birational(YFrac(core.h, core.qstar));
  if (res.num.is_zero()) {
    auto [qs, l] = clear_denominators(core.qstar);
    out.residual_numer = BiPoly{};
    out.residual_denom = primitive_positive(qs);
  } else {
    out.residual_numer = res.num;
    out.residual_denom = res.den;
  }
#ifndef NDEBUG
  YFrac back = core.g.derivative_y() + YFrac(core.h, core.qstar) - to_yfrac(f);
  if (!back.is_zero()) fail(ErrorCode::CertificationFailed, "hermite_reduce: identity check failed");
#endif
  return out;
}

// ---------------------------------------------------------------------------
// Telescoping.

/// sum_i coeffs[i](x) d^i/dx^i; integer coefficients with no common
/// polynomial content, leading one with positive leading coefficient.
struct LinODE {
  std::vector<XPoly> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  int degree() const {
    int d = -1;
    for (const auto& c : coeffs) d = std::max(d, c.degree());
    return d;
  }
};

struct Telescoper {
  LinODE ode;
  BiRational certificate;
};

inline LinODE normalize_ode(std::vector<XPoly> coeffs) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.empty()) fail(ErrorCode::ZeroInput, "normalize_ode: zero operator");
  XPoly g;
  for (const auto& c : coeffs)
    if (!c.is_zero()) g = gcd(g, c);
  Integer num(0), den(1);
  for (auto& c : coeffs) {
    if (g.degree() > 0 && !c.is_zero()) c = exact_div(c, g);
    for (const auto& a : c.coeffs()) {
      if (sgn(a) == 0) continue;
      num = gcd(num, Integer(a.get_num()));
      den = lcm(den, Integer(a.get_den()));
    }
  }
  Rational s(den, num);
  s.canonicalize();
  if (sgn(coeffs.back().leading()) < 0) s = -s;
  for (auto& c : coeffs) c *= s;
  return {std::move(coeffs)};
}

namespace detail {

/// Fractions num / prod base[k]^e[k] over a fixed list of bases in Q[x][y].
/// Sums and derivatives never take gcds, so sizes stay predictable.
struct FactoredDen {
  std::vector<BiPoly> base, base_x, base_y;
  explicit FactoredDen(std::vector<BiPoly> b) : base(std::move(b)) {
    for (const auto& p : base) {
      base_x.push_back(p.derivative_x());
      base_y.push_back(p.derivative_y());
    }
  }
  std::size_t size() const { return base.size(); }
};

struct FFrac {
  BiPoly num;
  std::vector<int> e;
};

inline FFrac ff_derivative(const FactoredDen& fd, const FFrac& f, bool in_x) {
  const auto& der = in_x ? fd.base_x : fd.base_y;
  FFrac out{in_x ? f.num.derivative_x() : f.num.derivative_y(), f.e};
  if (f.num.is_zero()) return {BiPoly{}, std::vector<int>(fd.size(), 0)};
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < fd.size(); ++k)
    if (f.e[k] > 0 && !der[k].is_zero()) active.push_back(k);
  if (active.empty()) return out;
  BiPoly all = BiPoly::constant(Rational(1));
  for (auto k : active) all *= fd.base[k];
  out.num *= all;
  for (auto k : active) {
    BiPoly others = BiPoly::constant(Rational(f.e[k]));
    for (auto l : active)
      if (l != k) others *= fd.base[l];
    out.num -= f.num * der[k] * others;
    ++out.e[k];
  }
  return out;
}

inline FFrac ff_add(const FactoredDen& fd, const FFrac& a, const FFrac& b) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  FFrac out{BiPoly{}, std::vector<int>(fd.size(), 0)};
  BiPoly sa = BiPoly::constant(Rational(1)), sb = sa;
  for (std::size_t k = 0; k < fd.size(); ++k) {
    out.e[k] = std::max(a.e[k], b.e[k]);
    if (out.e[k] > a.e[k]) sa *= fd.base[k].pow(static_cast<unsigned>(out.e[k] - a.e[k]));
    if (out.e[k] > b.e[k]) sb *= fd.base[k].pow(static_cast<unsigned>(out.e[k] - b.e[k]));
  }
  out.num = a.num * sa + b.num * sb;
  return out;
}

/// Lowest terms without a gcd against the full denominator: the known
/// squarefree factors of the bases are split and cancelled one at a time.
inline BiRational ff_reduce(const FactoredDen& fd, const FFrac& f) {
  if (f.num.is_zero()) return {BiPoly{}, BiPoly::constant(Rational(1))};
  BiPoly num = f.num;
  XPoly den_x = XPoly::constant(Rational(1));
  std::vector<std::pair<BiPoly, int>> work;
  for (std::size_t k = 0; k < fd.size(); ++k) {
    if (f.e[k] == 0) continue;
    if (fd.base[k].deg_y() < 1) {
      den_x = den_x * fd.base[k].row(0).pow(static_cast<unsigned>(f.e[k]));
      continue;
    }
    SqfDecompBi sqf = squarefree_bi(fd.base[k]);
    den_x = den_x * sqf.content.pow(static_cast<unsigned>(f.e[k]));
    for (const auto& [v, i] : sqf.factors) work.emplace_back(v, i * f.e[k]);
  }
  BiPoly den = BiPoly::constant(Rational(1));
  while (!work.empty()) {
    auto [v, e] = work.back();
    work.pop_back();
    while (e > 0 && divides(v, num)) {
      num = exact_div(num, v);
      --e;
    }
    if (e == 0) continue;
    BiPoly g = bi_gcd(num, v);
    if (g.deg_y() > 0 && g.deg_y() < v.deg_y()) {
      work.emplace_back(g, e);
      work.emplace_back(primitive_positive(exact_div(v, g)), e);
      continue;
    }
    den *= v.pow(static_cast<unsigned>(e));
  }
  XPoly c = gcd(content_x(num), den_x);
  if (c.degree() > 0) {
    num = exact_div(num, c);
    den_x = exact_div(den_x, c);
  }
  den *= den_x;
  Rational s = integer_content(den);
  return {num * Rational(1 / s), den * Rational(1 / s)};
}

inline XPoly lcm_monic(const XPoly& a, const XPoly& b) { return exact_div(a * b, gcd(a, b)).monic(); }

inline std::vector<XPoly> ypoly_vector(const BiPoly& p, int n) {
  std::vector<XPoly> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n && k <= p.deg_y(); ++k) v[static_cast<std::size_t>(k)] = p.row(k);
  return v;
}

}  // namespace detail

/// Smallest-order L = sum a_i(x) d^i/dx^i with L f = d/dy(certificate),
/// found by reducing successive x-derivatives to simple-pole residuals and
/// searching for a Q(x)-linear dependency.
///
/// The residual of d/dx(h/qs) is h' + M h for a fixed matrix M over Q(x), so
/// the residuals are iterated fraction-free as H_i / beta^{i+1} with
/// H_{i+1} = beta H_i' - (i+1) beta' H_i + eps M~ H_i, where M = M~ / delta,
/// eps clears the first residual and beta = delta * eps.
inline Telescoper telescoper(const BiRational& f, int max_order) {
  using detail::FFrac;
  if (f.den.deg_y() < 1) fail(ErrorCode::ConstantInMainVariable, "telescoper: denominator constant in y");
  if (max_order < 0) fail(ErrorCode::OutOfRange, "telescoper: negative maximal order");
  detail::HermiteCore core = detail::hermite_core(to_ypoly(f.num), to_ypoly(f.den));
  const YPoly& qs = core.qstar;
  const int n = qs.degree();
  YPoly dqs = qs.derivative(), qs_x = derivative_x(qs);
  auto eg = ext_gcd(qs, dqs);  // s*qs + t*qs' = 1
  const YPoly& tau = eg.t;

  // residual map and certificate pieces for the basis y^k / qs
  BiPoly qs_poly = primitive_positive(clear_denominators(qs).first);
  QX ell(qs_poly.lc_y());  // qs = qs_poly / ell
  std::vector<YPoly> rem_k(static_cast<std::size_t>(n)), u_k(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    YPoly a = -(YPoly::monomial(QX(1L), static_cast<std::size_t>(k)) * qs_x);
    YPoly t = (a * tau) % qs;
    YPoly s = exact_div(a - t * dqs, qs);
    auto [q, rem] = divrem(s + t.derivative(), qs);
    rem_k[static_cast<std::size_t>(k)] = rem;
    u_k[static_cast<std::size_t>(k)] = (-t + qs * q.integral()) * ell;
  }
  XPoly delta = XPoly::constant(Rational(1)), gamma = delta;
  for (int k = 0; k < n; ++k) {
    delta = detail::lcm_monic(delta, clear_denominators(rem_k[static_cast<std::size_t>(k)]).second);
    gamma = detail::lcm_monic(gamma, clear_denominators(u_k[static_cast<std::size_t>(k)]).second);
  }
  std::vector<std::vector<XPoly>> mt(static_cast<std::size_t>(n));  // columns of M~
  std::vector<BiPoly> nk(static_cast<std::size_t>(n));             // G_k = nk / (gamma qs_poly)
  for (int k = 0; k < n; ++k) {
    auto [mn, md] = clear_denominators(rem_k[static_cast<std::size_t>(k)]);
    mt[static_cast<std::size_t>(k)] = detail::ypoly_vector(mn * exact_div(delta, md), n);
    auto [gn, gd] = clear_denominators(u_k[static_cast<std::size_t>(k)]);
    nk[static_cast<std::size_t>(k)] = gn * exact_div(gamma, gd);
  }
  auto [h0, eps] = clear_denominators(core.h);
  XPoly beta = delta * eps, dbeta = beta.derivative();
  std::vector<XPoly> hv = detail::ypoly_vector(h0 * delta, n);

  // bases: input denominator, qs_poly, beta, gamma, Hermite part denominator
  BiRational g0 = core.g.is_zero() ? BiRational{BiPoly{}, BiPoly::constant(Rational(1))} : to_birational(core.g);
  detail::FactoredDen fd({f.den, qs_poly, BiPoly::from_x(beta), BiPoly::from_x(gamma), g0.den});
  auto exps = [](int a, int b, int c, int d, int e) { return std::vector<int>{a, b, c, d, e}; };
  std::vector<FFrac> gs{FFrac{g0.num, exps(0, 0, 0, 0, g0.num.is_zero() ? 0 : 1)}};

  struct Row {
    int pivot;
    std::vector<QX> vec;
    std::vector<QX> comb;
  };
  std::vector<Row> rows;
  std::vector<QX> dependency;

  for (int r = 0; r <= max_order; ++r) {
    if (r > 0) {
      // certificate step uses the previous residual H_{r-1} / beta^r
      BiPoly step;
      for (int k = 0; k < n; ++k)
        if (!hv[static_cast<std::size_t>(k)].is_zero()) step += nk[static_cast<std::size_t>(k)] * hv[static_cast<std::size_t>(k)];
      gs.push_back(detail::ff_add(fd, detail::ff_derivative(fd, gs.back(), true), FFrac{step, exps(0, 1, r, 1, 0)}));
      std::vector<XPoly> next(static_cast<std::size_t>(n));
      Rational ir(static_cast<long>(r));
      for (int j = 0; j < n; ++j) {
        XPoly acc;
        for (int k = 0; k < n; ++k)
          if (!hv[static_cast<std::size_t>(k)].is_zero()) acc += mt[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * hv[static_cast<std::size_t>(k)];
        const XPoly& hj = hv[static_cast<std::size_t>(j)];
        next[static_cast<std::size_t>(j)] = beta * hj.derivative() - dbeta * hj * ir + eps * acc;
      }
      hv = std::move(next);
    }
    std::vector<QX> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = QX(hv[static_cast<std::size_t>(k)]);
    std::vector<QX> comb(static_cast<std::size_t>(r) + 1);
    comb[static_cast<std::size_t>(r)] = QX(1L);
    for (const auto& row : rows) {
      const QX lead = v[static_cast<std::size_t>(row.pivot)];
      if (lead.is_zero()) continue;
      for (int k = 0; k < n; ++k)
        if (!row.vec[static_cast<std::size_t>(k)].is_zero())
          v[static_cast<std::size_t>(k)] -= lead * row.vec[static_cast<std::size_t>(k)];
      for (std::size_t k = 0; k < row.comb.size(); ++k)
        if (!row.comb[k].is_zero()) comb[k] -= lead * row.comb[k];
    }
    int pivot = -1;
    for (int k = 0; k < n; ++k)
      if (!v[static_cast<std::size_t>(k)].is_zero()) {
        pivot = k;
        break;
      }
    if (pivot < 0) {
      dependency = std::move(comb);
      break;
    }
    QX inv = QX(1L) / v[static_cast<std::size_t>(pivot)];
    for (auto& e : v) e *= inv;
    for (auto& e : comb) e *= inv;
    rows.push_back({pivot, std::move(v), std::move(comb)});
  }
  if (dependency.empty()) fail(ErrorCode::NoTelescoper, "telescoper: no telescoper up to the maximal order");

  // sum comb_i H_i = 0 gives a_i = comb_i beta^i up to a common factor
  XPoly den = XPoly::constant(Rational(1));
  for (const auto& c : dependency)
    if (!c.is_zero()) den = detail::lcm_monic(den, c.den());
  std::vector<XPoly> coeffs;
  XPoly bpow = XPoly::constant(Rational(1));
  for (const auto& c : dependency) {
    coeffs.push_back(c.is_zero() ? XPoly{} : c.num() * exact_div(den, c.den()) * bpow);
    bpow = bpow * beta;
  }
  Telescoper out;
  out.ode = normalize_ode(coeffs);

  const std::vector<int> none(fd.size(), 0);
  FFrac cert{BiPoly{}, none}, lhs{BiPoly{}, none}, deriv{f.num, exps(1, 0, 0, 0, 0)};
  for (std::size_t i = 0; i < out.ode.coeffs.size(); ++i) {
    if (i > 0) deriv = detail::ff_derivative(fd, deriv, true);
    const XPoly& a = out.ode.coeffs[i];
    if (a.is_zero()) continue;
    cert = detail::ff_add(fd, cert, FFrac{gs[i].num * a, gs[i].e});
    lhs = detail::ff_add(fd, lhs, FFrac{deriv.num * a, deriv.e});
  }
  // exact check: L f - d/dy(cert) = 0
  FFrac dcert = detail::ff_derivative(fd, cert, false);
  dcert.num = -dcert.num;
  if (!detail::ff_add(fd, lhs, dcert).num.is_zero())
    fail(ErrorCode::CertificationFailed, "telescoper: certificate identity failed");
  out.certificate = detail::ff_reduce(fd, cert);
  return out;
}

/// sum_i a_i(x) y^{(i)} truncated to the precision of y minus the order.
inline TruncSeries<Rational> apply_ode(const LinODE& ode, const TruncSeries<Rational>& y) {
  std::size_t r = static_cast<std::size_t>(ode.order());
  if (y.precision() <= r) fail(ErrorCode::InsufficientPrecision, "apply_ode: series shorter than the order");
  std::size_t n = y.precision() - r;
  TruncSeries<Rational> acc(n), d = y;
  for (std::size_t i = 0; i <= r; ++i) {
    if (i > 0) d = d.derivative();
    acc += TruncSeries<Rational>(ode.coeffs[i], n) * d.truncate(n);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Recurrences.

/// coeffs[0](n) u_n + coeffs[1](n) u_{n-1} + ... + coeffs[r](n) u_{n-r} = 0,
/// for every n >= 0 with u_k = 0 for k < 0. Coefficients are integral.
struct LinRec {
  std::vector<UniPoly<Rational>> coeffs;
  long singular_horizon = 0;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Largest nonnegative integer root of an integer polynomial, or -1.
inline long max_nonneg_integer_root(const UniPoly<Rational>& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "max_nonneg_integer_root: zero polynomial");
  UniPoly<Rational> q = primitive_positive(p);
  int v = q.valuation();
  long best = v > 0 ? 0 : -1;
  if (v > 0) q = UniPoly<Rational>(std::vector<Rational>(q.coeffs().begin() + v, q.coeffs().end()));
  if (q.degree() <= 0) return best;
  // Cauchy bound on the modulus of the roots
  Rational bound(0);
  for (int k = 0; k < q.degree(); ++k) bound = std::max(bound, Rational(abs(q[static_cast<std::size_t>(k)] / q.leading())));
  Integer limit = Integer(bound.get_num() / bound.get_den()) + 1;
  if (limit > 100000000) fail(ErrorCode::OutOfRange, "max_nonneg_integer_root: root bound too large");
  Integer c0 = q[0].get_num();
  for (long r = limit.get_si(); r >= 1; --r) {
    if (!mpz_divisible_ui_p(c0.get_mpz_t(), static_cast<unsigned long>(r))) continue;
    if (sgn(q(Rational(r))) == 0) return std::max(best, r);
  }
  return best;
}

/// Recurrence satisfied by the coefficients of every power-series solution.
inline LinRec ode_to_recurrence(const LinODE& ode) {
  // x^k d^i contributes ff(m, i) u_m to [x^{m - i + k}]; group by s = i - k.
  int smin = 0, smax = 0;
  bool first = true;
  for (int i = 0; i <= ode.order(); ++i)
    for (std::size_t k = 0; k < ode.coeffs[static_cast<std::size_t>(i)].size(); ++k) {
      if (sgn(ode.coeffs[static_cast<std::size_t>(i)][k]) == 0) continue;
      int s = i - static_cast<int>(k);
      if (first || s < smin) smin = s;
      if (first || s > smax) smax = s;
      first = false;
    }
  if (first) fail(ErrorCode::ZeroInput, "ode_to_recurrence: zero operator");
  using P = UniPoly<Rational>;
  // relation at x^N, with n = N + smax: sum_s p_s(n) u_{n - (smax - s)}
  std::vector<P> coeffs(static_cast<std::size_t>(smax - smin) + 1);
  for (int i = 0; i <= ode.order(); ++i)
    for (std::size_t k = 0; k < ode.coeffs[static_cast<std::size_t>(i)].size(); ++k) {
      const Rational& a = ode.coeffs[static_cast<std::size_t>(i)][k];
      if (sgn(a) == 0) continue;
      int s = i - static_cast<int>(k);
      // m = N + s = n - smax + s; falling factorial ff(m, i) as a polynomial in n
      P ff = P::constant(Rational(1));
      for (int j = 0; j < i; ++j) ff = ff * P(std::vector<Rational>{Rational(static_cast<long>(s - smax - j)), Rational(1)});
      coeffs[static_cast<std::size_t>(smax - s)] += ff * a;
    }
  Rational scale(1);
  {
    Integer num(0), den(1);
    for (const auto& c : coeffs)
      for (const auto& a : c.coeffs()) {
        if (sgn(a) == 0) continue;
        num = gcd(num, Integer(a.get_num()));
        den = lcm(den, Integer(a.get_den()));
      }
    scale = Rational(den, num);
    scale.canonicalize();
  }
  if (sgn(coeffs[0].leading()) < 0) scale = -scale;
  for (auto& c : coeffs) c *= scale;
  while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
  LinRec out;
  out.coeffs = std::move(coeffs);
  // n < smax corresponds to no relation; those roots are covered by the horizon
  out.singular_horizon = std::max<long>(max_nonneg_integer_root(out.coeffs[0]) + 1, smax);
  return out;
}

inline std::size_t required_initial_terms(const LinRec& rec) {
  return static_cast<std::size_t>(std::max<long>(rec.order(), rec.singular_horizon));
}

/// First n terms from the given initial terms, one recurrence step per term.
inline TruncSeries<Rational> unroll(const LinRec& rec, const TruncSeries<Rational>& initial, std::size_t n) {
  std::size_t need = required_initial_terms(rec);
  if (initial.precision() < std::min(need, n)) fail(ErrorCode::InsufficientPrecision, "unroll: not enough initial terms");
  TruncSeries<Rational> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k < initial.precision() && k < std::max<std::size_t>(need, 1)) {
      out[k] = initial[k];
      continue;
    }
    Rational nk(static_cast<long>(k)), acc(0);
    for (std::size_t j = 1; j < rec.coeffs.size() && j <= k; ++j) acc += rec.coeffs[j](nk) * out[k - j];
    out[k] = -acc / rec.coeffs[0](nk);
  }
  return out;
}

/// Integer version; throws NotExact when a term is not integral.
inline std::vector<Integer> unroll_integer(const LinRec& rec, const std::vector<Integer>& initial, std::size_t n) {
  std::size_t need = required_initial_terms(rec);
  if (initial.size() < std::min(need, n)) fail(ErrorCode::InsufficientPrecision, "unroll_integer: not enough initial terms");
  std::vector<std::vector<Integer>> c;
  for (const auto& p : rec.coeffs) {
    std::vector<Integer> ci;
    for (const auto& a : p.coeffs()) {
      if (a.get_den() != 1) fail(ErrorCode::NotExact, "unroll_integer: non-integral recurrence");
      ci.push_back(a.get_num());
    }
    c.push_back(std::move(ci));
  }
  auto eval = [](const std::vector<Integer>& p, long x, Integer& out) {
    out = 0;
    for (std::size_t i = p.size(); i-- > 0;) {
      out *= x;
      out += p[i];
    }
  };
  std::vector<Integer> out(n);
  Integer acc, cj, lead, term;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < initial.size() && k < std::max<std::size_t>(need, 1)) {
      out[k] = initial[k];
      continue;
    }
    long nk = static_cast<long>(k);
    acc = 0;
    for (std::size_t j = 1; j < c.size() && j <= k; ++j) {
      eval(c[j], nk, cj);
      term = cj * out[k - j];
      acc += term;
    }
    eval(c[0], nk, lead);
    if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t()))
      fail(ErrorCode::NotExact, "unroll_integer: non-integral term");
    mpz_divexact(out[k].get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    out[k] = -out[k];
  }
  return out;
}

}  // namespace diagwalk
