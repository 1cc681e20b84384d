#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

namespace detail {

// 1/k in the coefficient field
template <class F>
F inverse_of_int(std::size_t k) {
  if constexpr (std::is_same_v<F, ModInt>) {
    return small_inverse(k);
  } else {
    return F(1) / F(static_cast<long>(k));
  }
}

}  // namespace detail

/// Power series truncated at a fixed precision n: the coefficients of
/// x^0 .. x^{n-1} are known, everything beyond is unknown.
template <class F>
class TruncSeries {
 public:
  TruncSeries() = default;
  explicit TruncSeries(std::size_t precision) : c_(precision, F(0)) {}
  TruncSeries(std::vector<F> coeffs) : c_(std::move(coeffs)) {}  // NOLINT
  TruncSeries(const UniPoly<F>& p, std::size_t precision) : c_(precision, F(0)) {
    for (std::size_t i = 0; i < precision && i < p.size(); ++i) c_[i] = p[i];
  }

  static TruncSeries constant(const F& a, std::size_t precision) {
    TruncSeries s(precision);
    if (precision > 0) s.c_[0] = a;
    return s;
  }
  /// 1/(1-x)
  static TruncSeries geometric(std::size_t precision) {
    return TruncSeries(std::vector<F>(precision, F(1)));
  }
  /// exp(x) = sum x^n/n!
  static TruncSeries exponential(std::size_t precision) {
    TruncSeries s(precision);
    F term(1);
    for (std::size_t i = 0; i < precision; ++i) {
      if (i > 0) term = term * detail::inverse_of_int<F>(i);
      s.c_[i] = term;
    }
    return s;
  }
  /// sum n! x^n
  static TruncSeries factorials(std::size_t precision) {
    TruncSeries s(precision);
    F term(1);
    for (std::size_t i = 0; i < precision; ++i) {
      if (i > 0) term = term * F(static_cast<long>(i));
      s.c_[i] = term;
    }
    return s;
  }

  std::size_t precision() const { return c_.size(); }
  const std::vector<F>& coeffs() const { return c_; }
  std::vector<F>& coeffs() { return c_; }
  const F& operator[](std::size_t i) const { return c_[i]; }
  F& operator[](std::size_t i) { return c_[i]; }

  UniPoly<F> to_poly() const { return UniPoly<F>(c_); }

  TruncSeries truncate(std::size_t n) const {
    if (n >= c_.size()) return *this;
    return TruncSeries(std::vector<F>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// f(a x)
  TruncSeries scale(const F& a) const {
    TruncSeries r = *this;
    F power(1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r.c_[i] *= power;
      power *= a;
    }
    return r;
  }

  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  TruncSeries& operator+=(const TruncSeries& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TruncSeries& operator*=(const F& a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const F& s) { return a *= s; }
  friend TruncSeries operator*(const F& s, TruncSeries a) { return a *= s; }

  /// Truncated product; operands must share the precision.
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_same(b);
    std::size_t n = a.c_.size();
    if (n == 0) return a;
    std::vector<F> r(n, F(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return TruncSeries(std::move(r));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& a : c_)
      if (!detail::coeff_is_zero(a)) return false;
    return true;
  }

  /// f' known to precision n-1.
  TruncSeries derivative() const {
    if (c_.empty()) return *this;
    TruncSeries r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * F(static_cast<long>(i));
    return r;
  }

  /// Antiderivative with zero constant term, same precision.
  TruncSeries integrate() const {
    TruncSeries r(c_.size());
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) r.c_[i + 1] = c_[i] * detail::inverse_of_int<F>(i + 1);
    return r;
  }

  /// f / x for f(0) = 0; the precision drops by one.
  TruncSeries divide_by_x() const {
    if (c_.empty()) return *this;
    if (!detail::coeff_is_zero(c_[0])) fail(ErrorCode::NotExact, "series not divisible by x");
    return TruncSeries(std::vector<F>(c_.begin() + 1, c_.end()));
  }

  void check_same(const TruncSeries& o) const {
    if (o.c_.size() != c_.size()) fail(ErrorCode::PrecisionMismatch, "series precision mismatch");
  }

 private:
  std::vector<F> c_;
};

/// 1/f; requires f(0) != 0.
template <class F>
TruncSeries<F> series_inv(const TruncSeries<F>& f) {
  std::size_t n = f.precision();
  if (n == 0) return f;
  if (detail::coeff_is_zero(f[0])) fail(ErrorCode::SeriesNotInvertible, "series_inv: f(0) = 0");
  TruncSeries<F> g(n);
  F inv0 = F(1) / f[0];
  g[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    F acc(0);
    for (std::size_t j = 1; j <= k; ++j)
      if (!detail::coeff_is_zero(f[j])) acc += f[j] * g[k - j];
    g[k] = -acc * inv0;
  }
  return g;
}

/// a/b; requires b(0) != 0.
template <class F>
TruncSeries<F> series_div(const TruncSeries<F>& a, const TruncSeries<F>& b) {
  a.check_same(b);
  std::size_t n = a.precision();
  if (n == 0) return a;
  if (detail::coeff_is_zero(b[0])) fail(ErrorCode::SeriesNotInvertible, "series_div: b(0) = 0");
  TruncSeries<F> q(n);
  F inv0 = F(1) / b[0];
  for (std::size_t k = 0; k < n; ++k) {
    F acc = a[k];
    for (std::size_t j = 1; j <= k; ++j)
      if (!detail::coeff_is_zero(b[j])) acc -= b[j] * q[k - j];
    q[k] = acc * inv0;
  }
  return q;
}

/// exp(f); requires f(0) = 0. Uses n g_n = sum_k k f_k g_{n-k}.
template <class F>
TruncSeries<F> series_exp(const TruncSeries<F>& f) {
  std::size_t n = f.precision();
  if (n == 0) return f;
  if (!detail::coeff_is_zero(f[0])) fail(ErrorCode::ExpNonzeroConstant, "series_exp: f(0) != 0");
  std::vector<F> kf(n, F(0));
  for (std::size_t k = 1; k < n; ++k) kf[k] = f[k] * F(static_cast<long>(k));
  TruncSeries<F> g(n);
  g[0] = F(1);
  for (std::size_t m = 1; m < n; ++m) {
    F acc(0);
    for (std::size_t k = 1; k <= m; ++k)
      if (!detail::coeff_is_zero(kf[k])) acc += kf[k] * g[m - k];
    g[m] = acc * detail::inverse_of_int<F>(m);
  }
  return g;
}

/// log(f); requires f(0) = 1.
template <class F>
TruncSeries<F> series_log(const TruncSeries<F>& f) {
  std::size_t n = f.precision();
  if (n == 0) return f;
  if (f[0] != F(1)) fail(ErrorCode::LogNotUnit, "series_log: f(0) != 1");
  if (n == 1) return TruncSeries<F>(1);
  // log f = integral of f'/f
  TruncSeries<F> df = f.derivative();
  TruncSeries<F> q = series_div(df, f.truncate(n - 1));
  TruncSeries<F> r(n);
  for (std::size_t i = 0; i + 1 < n; ++i) r[i + 1] = q[i] / F(static_cast<long>(i + 1));
  return r;
}

template <class F>
TruncSeries<F> series_integrate(const TruncSeries<F>& f) {
  return f.integrate();
}

/// Coefficientwise product.
template <class F>
TruncSeries<F> hadamard(const TruncSeries<F>& a, const TruncSeries<F>& b) {
  a.check_same(b);
  TruncSeries<F> r(a.precision());
  for (std::size_t i = 0; i < a.precision(); ++i) r[i] = a[i] * b[i];
  return r;
}

}  // namespace diagwalk
