#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/core/crt.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/newton.hpp"
#include "diagwalk/core/parallel.hpp"
#include "diagwalk/core/series.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

/// [z^c] exp(sum_{n=1..c} (-1)^{n-1} S(n y)/n z^n) mod y^{D+1}.
template <class F>
TruncSeries<F> psi_truncation(const TruncSeries<F>& s, int c, std::size_t big_d) {
  if (c < 0) fail(ErrorCode::OutOfRange, "psi_truncation: negative c");
  std::size_t n = big_d + 1;
  if (s.precision() < n) fail(ErrorCode::InsufficientPrecision, "psi_truncation: precision below D+1");
  TruncSeries<F> base = s.truncate(n);
  // j * G_j = (-1)^{j-1} S(j y)
  std::vector<TruncSeries<F>> jg(static_cast<std::size_t>(c) + 1);
  for (int j = 1; j <= c; ++j) {
    TruncSeries<F> sj = base.scale(F(static_cast<long>(j)));
    jg[static_cast<std::size_t>(j)] = (j % 2 == 1) ? sj : -sj;
  }
  std::vector<TruncSeries<F>> f(static_cast<std::size_t>(c) + 1);
  f[0] = TruncSeries<F>::constant(F(1), n);
  for (int k = 1; k <= c; ++k) {
    TruncSeries<F> acc(n);
    for (int j = 1; j < k; ++j) acc += jg[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k - j)];
    acc += jg[static_cast<std::size_t>(k)];  // f_0 = 1
    f[static_cast<std::size_t>(k)] = acc * (F(1) / F(static_cast<long>(k)));
  }
  return f[static_cast<std::size_t>(c)];
}

template <class F>
struct ComposedSumResult {
  UniPoly<F> poly;  // monic, degree D
  std::size_t big_d = 0;
  int c = 0;
};

/// Monic polynomial whose roots are the sums of c roots of p taken with
/// strictly increasing indices.
template <class F>
ComposedSumResult<F> pure_composed_sum(const UniPoly<F>& p, int c) {
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "pure_composed_sum: zero polynomial");
  int d = p.degree();
  if (c < 1 || c > d) fail(ErrorCode::OutOfRange, "pure_composed_sum: c outside [1, deg p]");
  Integer dz = binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(c));
  if (!dz.fits_ulong_p() || dz > 1000000) fail(ErrorCode::OutOfRange, "pure_composed_sum: output degree too large");
  std::size_t big_d = dz.get_ui();
  std::size_t n = big_d + 1;
  TruncSeries<F> s = hadamard(newton_series(p, n), TruncSeries<F>::exponential(n));
  TruncSeries<F> sums = hadamard(psi_truncation(s, c, big_d), TruncSeries<F>::factorials(n));
  return {poly_from_newton(sums, static_cast<int>(big_d)), big_d, c};
}

struct ComposedSumBiResult {
  BiPoly poly;  // primitive-positive, primitive over Q[x]
  std::size_t big_d = 0;
  int c = 0;
  int x_bound = 0;  // d_x * D
  ReconstructStats stats;
};

namespace detail {

inline ModInt node_value(long k) { return ModInt((k % 2 == 0) ? -(k / 2) : (k + 1) / 2); }

/// Image of the primitive part of a^D Sigma_c p modulo the active prime,
/// scaled so that the lowest x-coefficient of its leading row is 1.
inline ModularImage composed_sum_image(const BiPoly& p, int c, std::size_t big_d, int x_bound) {
  ModularImage img;
  if (!reducible_mod(p)) {
    img.usable = false;
    return img;
  }
  ModBiPoly mp = ModBiPoly::reduce(p);
  const UniPoly<ModInt>& lc = mp.rows.back();
  if (lc.is_zero()) {
    img.usable = false;
    return img;
  }
  std::size_t count = static_cast<std::size_t>(x_bound) + 1;
  std::vector<ModInt> nodes;
  for (long k = 0; nodes.size() < count; ++k) {
    ModInt x0 = node_value(k);
    if (!is_zero(lc(x0))) nodes.push_back(x0);
  }
  std::vector<UniPoly<ModInt>> values(count);
  parallel_for(count, [&](std::size_t i) {
    UniPoly<ModInt> spec = mp.eval_x(nodes[i]);
    UniPoly<ModInt> sigma = pure_composed_sum(spec, c).poly;
    values[i] = sigma * lc(nodes[i]).pow(big_d);
  });
  std::vector<std::vector<ModInt>> columns(big_d + 1, std::vector<ModInt>(count));
  for (std::size_t j = 0; j <= big_d; ++j)
    for (std::size_t i = 0; i < count; ++i) columns[j][i] = values[i].coeff(j);
  std::vector<UniPoly<ModInt>> rows = interpolate_many(nodes, columns);
  UniPoly<ModInt> content;
  for (const auto& r : rows) {
    if (r.is_zero()) continue;
    content = gcd(content, r);
    if (content.degree() == 0) break;
  }
  int dx = 0;
  for (auto& r : rows) {
    if (content.degree() > 0 && !r.is_zero()) r = exact_div(r, content);
    dx = std::max(dx, r.degree());
  }
  const UniPoly<ModInt>& top = rows.back();
  int v = top.valuation();
  ModInt scale = top[static_cast<std::size_t>(v)].inverse();
  img.rank = static_cast<long>(dx) * 100000 - v;
  img.values.assign((static_cast<std::size_t>(dx) + 1) * (big_d + 1), ModInt(0));
  for (std::size_t j = 0; j <= big_d; ++j)
    for (std::size_t i = 0; i < rows[j].size(); ++i)
      img.values[j * (static_cast<std::size_t>(dx) + 1) + i] = rows[j][i] * scale;
  return img;
}

}  // namespace detail

/// Sigma_c of p in Q(x)[y], with x-denominators cleared: the primitive part
/// over Q[x] of a^D Sigma_c p, where a = lc_y(p) and D = binom(deg_y p, c).
inline ComposedSumBiResult pure_composed_sum_bi(const BiPoly& p, int c) {
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "pure_composed_sum_bi: zero polynomial");
  int d = p.deg_y();
  if (c < 1 || c > d) fail(ErrorCode::OutOfRange, "pure_composed_sum_bi: c outside [1, deg_y p]");
  Integer dz = binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(c));
  if (!dz.fits_ulong_p() || dz > 100000) fail(ErrorCode::OutOfRange, "pure_composed_sum_bi: output degree too large");
  ComposedSumBiResult out;
  out.big_d = dz.get_ui();
  out.c = c;
  out.x_bound = std::max(p.deg_x(), 0) * static_cast<int>(out.big_d);

  if (p.deg_x() <= 0) {
    auto uni = pure_composed_sum(p.eval_x(Rational(0)), c);
    out.poly = normalize_annihilator(BiPoly::from_y(uni.poly));
    return out;
  }

  std::vector<Rational> flat = multimodular_reconstruct(
      [&] { return detail::composed_sum_image(p, c, out.big_d, out.x_bound); }, &out.stats);
  std::size_t width = flat.size() / (out.big_d + 1);
  std::vector<XPoly> rows(out.big_d + 1);
  for (std::size_t j = 0; j <= out.big_d; ++j)
    rows[j] = XPoly(std::vector<Rational>(flat.begin() + static_cast<std::ptrdiff_t>(j * width),
                                          flat.begin() + static_cast<std::ptrdiff_t>((j + 1) * width)));
  out.poly = normalize_annihilator(BiPoly(std::move(rows)));

  // Exact spot check against the rational algorithm at a random node.
  std::mt19937_64 rng(0x5eed + static_cast<unsigned long>(p.deg_x() * 131 + d));
  XPoly a = p.lc_y();
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rational x0(static_cast<long>(rng() % 97) + 3, static_cast<long>(rng() % 13) + 2);
    x0.canonicalize();
    if (sgn(a(x0)) == 0) continue;
    UniPoly<Rational> at = out.poly.eval_x(x0);
    if (at.degree() != static_cast<int>(out.big_d)) continue;
    UniPoly<Rational> expect = pure_composed_sum(p.eval_x(x0), c).poly;
    if (at.monic() != expect) fail(ErrorCode::ReconstructionFailed, "pure_composed_sum_bi: spot check failed");
    break;
  }
  if (out.poly.deg_x() > out.x_bound || out.poly.deg_y() != static_cast<int>(out.big_d))
    fail(ErrorCode::BoundViolated, "pure_composed_sum_bi: bidegree bound exceeded");
  return out;
}

}  // namespace diagwalk
