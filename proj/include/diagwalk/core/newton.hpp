#pragma once

#include <cstddef>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/series.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

/// Power sums sum_i a_i^k of the roots of p (with multiplicity), k < n.
template <class F>
TruncSeries<F> newton_series(const UniPoly<F>& p, std::size_t n) {
  if (p.is_zero()) fail(ErrorCode::ZeroInput, "newton_series: zero polynomial");
  int d = p.degree();
  if (n == 0) return TruncSeries<F>(0);
  if (d == 0) return TruncSeries<F>(n);
  TruncSeries<F> num(reciprocal(p.derivative(), d - 1), n);
  TruncSeries<F> den(reciprocal(p, d), n);
  return series_div(num, den);
}

/// Monic polynomial of degree d whose first d+1 power sums are s.
template <class F>
UniPoly<F> poly_from_newton(const TruncSeries<F>& s, int d) {
  if (d < 0) fail(ErrorCode::OutOfRange, "poly_from_newton: negative degree");
  std::size_t need = static_cast<std::size_t>(d) + 1;
  if (s.precision() < need)
    fail(ErrorCode::InsufficientPrecision, "poly_from_newton: precision below d+1");
  if (s[0] != F(static_cast<long>(d)))
    fail(ErrorCode::InconsistentNewtonSums, "poly_from_newton: s(0) differs from d");
  // rec(P) = exp(integral of (d - s)/x)
  TruncSeries<F> t(need);
  for (std::size_t k = 1; k < need; ++k) t[k - 1] = -s[k];
  TruncSeries<F> r = series_exp(t.integrate());
  return reciprocal(r.to_poly(), d);
}

}  // namespace diagwalk
