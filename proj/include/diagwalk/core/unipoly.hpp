#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/modint.hpp"
#include "diagwalk/core/rational.hpp"

namespace diagwalk {

namespace detail {
// Unqualified so that ADL picks up is_zero for coefficient types declared later.
template <class F>
bool coeff_is_zero(const F& a) {
  return is_zero(a);
}
}  // namespace detail

/// Dense univariate polynomial over a field F; coeffs()[i] is the
/// coefficient of y^i. The highest stored coefficient is nonzero, and the
/// zero polynomial stores nothing.
template <class F>
class UniPoly {
 public:
  using coeff_type = F;

  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(F(v));
    trim();
  }

  static UniPoly constant(const F& a) { return UniPoly(std::vector<F>{a}); }
  static UniPoly monomial(const F& a, std::size_t k) {
    std::vector<F> c(k + 1, F(0));
    c[k] = a;
    return UniPoly(std::move(c));
  }
  static UniPoly variable() { return monomial(F(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::size_t size() const { return c_.size(); }

  const std::vector<F>& coeffs() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  const F& operator[](std::size_t i) const { return c_[i]; }
  F leading() const { return c_.empty() ? F(0) : c_.back(); }
  F trailing_constant() const { return coeff(0); }

  /// Smallest exponent with a nonzero coefficient; -1 for zero.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!diagwalk_is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  void set_coeff(std::size_t i, const F& a) {
    if (i >= c_.size()) {
      if (diagwalk_is_zero(a)) return;
      c_.resize(i + 1, F(0));
    }
    c_[i] = a;
    trim();
  }

  template <class G>
  G evaluate(const G& x) const {
    G r(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      r = r * x;
      r = r + G(c_[i]);
    }
    return r;
  }
  F operator()(const F& x) const {
    F r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const F& a) {
    if (diagwalk_is_zero(a)) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= a;
    return *this;
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const F& s) { return a *= s; }
  friend UniPoly operator*(const F& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) { return multiply(a, b); }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// y^k * p
  UniPoly shift_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<F> c(k, F(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return UniPoly(std::move(c));
  }
  /// p mod y^n
  UniPoly truncate(std::size_t n) const {
    if (n >= c_.size()) return *this;
    return UniPoly(std::vector<F>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> c(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * F(static_cast<long>(i));
    return UniPoly(std::move(c));
  }
  /// Antiderivative with zero constant term.
  UniPoly integral() const {
    if (c_.empty()) return {};
    std::vector<F> c(c_.size() + 1, F(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / F(static_cast<long>(i + 1));
    return UniPoly(std::move(c));
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    F inv = F(1) / leading();
    return *this * inv;
  }

  UniPoly pow(unsigned e) const {
    UniPoly r = constant(F(1)), base = *this;
    while (e) {
      if (e & 1U) r = r * base;
      e >>= 1U;
      if (e) base = base * base;
    }
    return r;
  }

  /// p(q(y))
  UniPoly compose(const UniPoly& q) const {
    UniPoly r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
    return r;
  }

  /// Coefficients mapped through f (e.g. reduction mod p).
  template <class G, class Fn>
  UniPoly<G> map(Fn&& f) const {
    std::vector<G> c;
    c.reserve(c_.size());
    for (const auto& a : c_) c.push_back(f(a));
    return UniPoly<G>(std::move(c));
  }

  static UniPoly multiply(const UniPoly& a, const UniPoly& b);

 private:
  static bool diagwalk_is_zero(const F& a) { return detail::coeff_is_zero(a); }
  void trim() {
    while (!c_.empty() && diagwalk_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

namespace detail {

template <class F>
void mul_schoolbook(const F* a, std::size_t na, const F* b, std::size_t nb, F* out) {
  for (std::size_t i = 0; i < na; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
  }
}

constexpr std::size_t kKaratsubaThreshold = 32;

// out must hold 2n-1 zeroed entries; a and b both have n entries.
template <class F>
void mul_karatsuba(const F* a, const F* b, std::size_t n, F* out) {
  if (n <= kKaratsubaThreshold) {
    mul_schoolbook(a, n, b, n, out);
    return;
  }
  std::size_t h = n / 2, hi = n - h;
  std::vector<F> z0(2 * h - 1, F(0)), z2(2 * hi - 1, F(0)), z1(2 * hi - 1, F(0));
  mul_karatsuba(a, b, h, z0.data());
  mul_karatsuba(a + h, b + h, hi, z2.data());
  std::vector<F> sa(hi, F(0)), sb(hi, F(0));
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = a[h + i];
    sb[i] = b[h + i];
  }
  for (std::size_t i = 0; i < h; ++i) {
    sa[i] += a[i];
    sb[i] += b[i];
  }
  mul_karatsuba(sa.data(), sb.data(), hi, z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] += z2[i];
}

}  // namespace detail

template <class F>
UniPoly<F> UniPoly<F>::multiply(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::size_t na = a.c_.size(), nb = b.c_.size();
  std::vector<F> out(na + nb - 1, F(0));
  if (std::min(na, nb) > detail::kKaratsubaThreshold && std::max(na, nb) < 2 * std::min(na, nb)) {
    std::size_t n = std::max(na, nb);
    std::vector<F> pa(a.c_), pb(b.c_);
    pa.resize(n, F(0));
    pb.resize(n, F(0));
    std::vector<F> full(2 * n - 1, F(0));
    detail::mul_karatsuba(pa.data(), pb.data(), n, full.data());
    std::copy(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(out.size()), out.begin());
  } else {
    detail::mul_schoolbook(a.c_.data(), na, b.c_.data(), nb, out.data());
  }
  return UniPoly(std::move(out));
}

/// Plain quadratic product, kept for cross-checking the default product.
template <class F>
UniPoly<F> mul_schoolbook(const UniPoly<F>& a, const UniPoly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<F> out(a.size() + b.size() - 1, F(0));
  detail::mul_schoolbook(a.coeffs().data(), a.size(), b.coeffs().data(), b.size(), out.data());
  return UniPoly<F>(std::move(out));
}

template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divrem(const UniPoly<F>& a, const UniPoly<F>& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly<F>{}, a};
  std::vector<F> r = a.coeffs();
  const auto& bc = b.coeffs();
  std::size_t db = bc.size() - 1;
  std::vector<F> q(r.size() - db, F(0));
  F inv = F(1) / bc.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    F coef = r[k + db] * inv;
    q[k] = coef;
    if (is_zero(coef)) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= coef * bc[j];
  }
  r.resize(db);
  return {UniPoly<F>(std::move(q)), UniPoly<F>(std::move(r))};
}

template <class F>
UniPoly<F> operator%(const UniPoly<F>& a, const UniPoly<F>& b) {
  return divrem(a, b).second;
}

/// Quotient of an exact division; throws NotExact otherwise.
template <class F>
UniPoly<F> exact_div(const UniPoly<F>& a, const UniPoly<F>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) fail(ErrorCode::NotExact, "inexact polynomial division");
  return q;
}

template <class F>
UniPoly<F> gcd_euclid(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    UniPoly<F> r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline UniPoly<Rational> gcd_modular(const UniPoly<Rational>& a, const UniPoly<Rational>& b);

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
UniPoly<F> gcd(const UniPoly<F>& a, const UniPoly<F>& b) {
  if constexpr (std::is_same_v<F, Rational>) {
    if (std::min(a.degree(), b.degree()) > 4) return gcd_modular(a, b);
  }
  return gcd_euclid(a, b);
}

template <class F>
struct ExtendedGcd {
  UniPoly<F> g, s, t;  // s*a + t*b = g, g monic
};

template <class F>
ExtendedGcd<F> ext_gcd(const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> r0 = a, r1 = b;
  UniPoly<F> s0 = UniPoly<F>::constant(F(1)), s1, t0, t1 = UniPoly<F>::constant(F(1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    UniPoly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = F(1) / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Solves s*a + t*b = c with deg s < deg b, assuming gcd(a, b) = 1.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> solve_bezout(const UniPoly<F>& a, const UniPoly<F>& b,
                                               const UniPoly<F>& c) {
  auto eg = ext_gcd(a, b);
  if (eg.g.degree() != 0) fail(ErrorCode::NotCoprime, "solve_bezout: arguments not coprime");
  UniPoly<F> s = divrem(eg.s * c, b).second;
  UniPoly<F> t = exact_div(c - s * a, b);
  return {s, t};
}

/// lc(g)^n * prod_{g(b)=0} f(b) where n is a formal degree of f
/// (n >= deg f). With n = deg f this is Res(g, f).
template <class F>
F resultant_formal(UniPoly<F> g, UniPoly<F> f, int n) {
  if (g.is_zero()) return F(0);
  F res(1);
  while (true) {
    int m = g.degree();
    if (m == 0) {
      F lc = g.leading(), p(1);
      for (int i = 0; i < n; ++i) p *= lc;
      return res * p;
    }
    if (f.is_zero()) return F(0);
    UniPoly<F> r = divrem(f, g).second;
    if (r.is_zero()) return F(0);
    int k = r.degree();
    F lc = g.leading();
    for (int i = 0; i < n - k; ++i) res *= lc;
    if ((static_cast<long>(m) * k) % 2 != 0) res = -res;
    f = std::move(g);
    g = std::move(r);
    n = m;
  }
}

/// Res_y(p, q) = lc(p)^{deg q} prod_{p(a)=0} q(a).
template <class F>
F resultant(const UniPoly<F>& p, const UniPoly<F>& q) {
  if (p.is_zero() || q.is_zero()) return F(0);
  return resultant_formal(p, q, q.degree());
}

/// rec(p) = y^{deg p} p(1/y).
template <class F>
UniPoly<F> reciprocal(const UniPoly<F>& p) {
  std::vector<F> c = p.coeffs();
  std::reverse(c.begin(), c.end());
  return UniPoly<F>(std::move(c));
}

/// y^n p(1/y) for a formal degree n >= deg p.
template <class F>
UniPoly<F> reciprocal(const UniPoly<F>& p, int n) {
  std::vector<F> c(static_cast<std::size_t>(n + 1), F(0));
  for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(n - i)] = p[static_cast<std::size_t>(i)];
  return UniPoly<F>(std::move(c));
}

/// p(y + a)
template <class F>
UniPoly<F> taylor_shift(const UniPoly<F>& p, const F& a) {
  std::vector<F> c = p.coeffs();
  std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  return UniPoly<F>(std::move(c));
}

/// Lagrange/Newton interpolation through (nodes[i], values[i]).
template <class F>
UniPoly<F> interpolate(const std::vector<F>& nodes, const std::vector<F>& values) {
  std::size_t n = nodes.size();
  if (values.size() != n) fail(ErrorCode::OutOfRange, "interpolate: size mismatch");
  std::vector<F> dd = values;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      F den = nodes[i] - nodes[i - level];
      if (is_zero(den)) fail(ErrorCode::DuplicateNodes, "interpolate: duplicate nodes");
      dd[i] = (dd[i] - dd[i - 1]) / den;
    }
  }
  // Horner on the Newton form.
  std::vector<F> acc(n, F(0));
  std::size_t len = 0;
  for (std::size_t k = n; k-- > 0;) {
    // acc = acc * (y - nodes[k]) + dd[k]
    std::vector<F> next(len + 1, F(0));
    for (std::size_t j = 0; j < len; ++j) {
      next[j + 1] += acc[j];
      next[j] -= acc[j] * nodes[k];
    }
    next[0] += dd[k];
    acc = std::move(next);
    len = acc.size();
  }
  return UniPoly<F>(std::move(acc));
}

/// Interpolates several value vectors on one node set, sharing the Lagrange
/// basis: columns[r][i] is the value of the r-th polynomial at nodes[i].
template <class F>
std::vector<UniPoly<F>> interpolate_many(const std::vector<F>& nodes, const std::vector<std::vector<F>>& columns) {
  std::size_t n = nodes.size();
  for (const auto& col : columns)
    if (col.size() != n) fail(ErrorCode::OutOfRange, "interpolate_many: size mismatch");
  if (n == 0) return std::vector<UniPoly<F>>(columns.size());
  // master polynomial prod (x - x_i), coefficients low to high
  std::vector<F> master{F(1)};
  for (const auto& x0 : nodes) {
    std::vector<F> next(master.size() + 1, F(0));
    for (std::size_t k = 0; k < master.size(); ++k) {
      next[k + 1] += master[k];
      next[k] -= master[k] * x0;
    }
    master = std::move(next);
  }
  // barycentric weights 1 / prod_{j != i} (x_i - x_j) via one batched inversion
  std::vector<F> w(n), prefix(n);
  UniPoly<F> dm = UniPoly<F>(master).derivative();
  F run(1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = dm(nodes[i]);
    if (is_zero(w[i])) fail(ErrorCode::DuplicateNodes, "interpolate_many: duplicate nodes");
    prefix[i] = run;
    run *= w[i];
  }
  F inv = F(1) / run;
  for (std::size_t i = n; i-- > 0;) {
    F wi = w[i];
    w[i] = inv * prefix[i];
    inv *= wi;
  }
  std::vector<std::vector<F>> acc(columns.size(), std::vector<F>(n, F(0)));
  std::vector<F> quot(n);
  if constexpr (std::is_same_v<F, ModInt>) {
    // Shoup multiplication by a fixed coefficient; sums are kept in [0, 2p)
    const std::uint64_t p = ModInt::modulus(), two_p = 2 * p;
    std::vector<std::vector<std::uint64_t>> raw(columns.size(), std::vector<std::uint64_t>(n, 0));
    std::vector<std::uint64_t> qv(n);
    for (std::size_t i = 0; i < n; ++i) {
      quot[n - 1] = master[n];
      for (std::size_t k = n - 1; k-- > 0;) quot[k] = master[k + 1] + nodes[i] * quot[k + 1];
      for (std::size_t k = 0; k < n; ++k) qv[k] = quot[k].value();
      for (std::size_t r = 0; r < columns.size(); ++r) {
        std::uint64_t c = (columns[r][i] * w[i]).value();
        if (c == 0) continue;
        auto cq = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) << 64) / p);
        std::uint64_t* a = raw[r].data();
        for (std::size_t k = 0; k < n; ++k) {
          auto hi = static_cast<std::uint64_t>((static_cast<unsigned __int128>(cq) * qv[k]) >> 64);
          std::uint64_t t = a[k] + (c * qv[k] - hi * p);
          a[k] = t >= two_p ? t - two_p : t;
        }
      }
    }
    std::vector<UniPoly<F>> out;
    out.reserve(columns.size());
    for (std::size_t r = 0; r < columns.size(); ++r) {
      for (std::size_t k = 0; k < n; ++k) acc[r][k] = ModInt::raw(raw[r][k] % p);
      out.emplace_back(std::move(acc[r]));
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    // master / (x - x_i) by synthetic division
    quot[n - 1] = master[n];
    for (std::size_t k = n - 1; k-- > 0;) quot[k] = master[k + 1] + nodes[i] * quot[k + 1];
    for (std::size_t r = 0; r < columns.size(); ++r) {
      F coef = columns[r][i] * w[i];
      if (is_zero(coef)) continue;
      auto& a = acc[r];
      for (std::size_t k = 0; k < n; ++k) a[k] += coef * quot[k];
    }
  }
  std::vector<UniPoly<F>> out;
  out.reserve(columns.size());
  for (auto& a : acc) out.emplace_back(std::move(a));
  return out;
}

// ---------------------------------------------------------------------------
// Rational-specific helpers.

/// Positive rational c with p / c integral and primitive, sign of the
/// leading coefficient kept.
inline Rational content(const UniPoly<Rational>& p) {
  if (p.is_zero()) return Rational(1);
  Integer num(0), den(1);
  for (const auto& a : p.coeffs()) {
    if (is_zero(a)) continue;
    num = gcd(num, Integer(a.get_num()));
    den = lcm(den, Integer(a.get_den()));
  }
  Rational c(num, den);
  c.canonicalize();
  return abs(c);
}

/// Integer coefficients with gcd 1 and positive leading coefficient.
inline UniPoly<Rational> primitive_positive(const UniPoly<Rational>& p) {
  if (p.is_zero()) return p;
  Rational c = content(p);
  if (sgn(p.leading()) < 0) c = -c;
  return p * Rational(1 / c);
}

inline bool is_integral(const UniPoly<Rational>& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](const Rational& a) { return is_integer(a); });
}

inline UniPoly<ModInt> reduce_mod(const UniPoly<Rational>& p) {
  return p.map<ModInt>([](const Rational& a) { return to_mod(a); });
}

inline UniPoly<Rational> lift_symmetric(const UniPoly<ModInt>& p) {
  return p.map<Rational>([](const ModInt& a) { return Rational(static_cast<long>(a.signed_value())); });
}

/// Multi-modular gcd over Q: images mod large primes, CRT, trial division.
inline UniPoly<Rational> gcd_modular(const UniPoly<Rational>& a, const UniPoly<Rational>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  UniPoly<Rational> A = primitive_positive(a), B = primitive_positive(b);
  if (A.degree() == 0 || B.degree() == 0) return UniPoly<Rational>::constant(Rational(1));
  Integer lca(A.leading().get_num()), lcb(B.leading().get_num());
  Integer gamma = gcd(lca, lcb);

  int best_deg = std::min(A.degree(), B.degree()) + 1;
  std::vector<Integer> crt;  // current CRT image, coefficientwise
  Integer modulus(1);
  std::optional<UniPoly<Rational>> previous;
  for (std::size_t k = 0; k < 4096; ++k) {
    std::uint64_t p = nth_large_prime(k);
    if (mod_integer(lca, p) == 0 || mod_integer(lcb, p) == 0) continue;
    ModulusScope scope(p);
    UniPoly<ModInt> gp = gcd_euclid(reduce_mod(A), reduce_mod(B));
    if (gp.degree() == 0) return UniPoly<Rational>::constant(Rational(1));
    if (gp.degree() > best_deg) continue;
    gp *= ModInt::raw(mod_integer(gamma, p));
    if (gp.degree() < best_deg) {
      best_deg = gp.degree();
      crt.assign(static_cast<std::size_t>(best_deg + 1), Integer(0));
      modulus = 1;
      previous.reset();
    }
    // Garner step: x <- x + M * ((r - x) / M mod p)
    ModInt minv = ModInt::raw(mod_integer(modulus, p)).inverse();
    for (std::size_t i = 0; i < crt.size(); ++i) {
      ModInt cur = ModInt::raw(mod_integer(crt[i], p));
      ModInt delta = (gp.coeff(i) - cur) * minv;
      crt[i] += modulus * Integer(static_cast<unsigned long>(delta.value()));
    }
    modulus *= Integer(static_cast<unsigned long>(p));
    Integer half = modulus / 2;
    std::vector<Rational> sym;
    sym.reserve(crt.size());
    for (auto& v : crt) {
      Integer s = v % modulus;
      if (s < 0) s += modulus;
      if (s > half) s -= modulus;
      v = s;
      sym.emplace_back(s);
    }
    UniPoly<Rational> candidate = primitive_positive(UniPoly<Rational>(sym));
    if (previous && *previous == candidate) {
      if (divrem(A, candidate).second.is_zero() && divrem(B, candidate).second.is_zero())
        return candidate.monic();
    }
    previous = candidate;
  }
  return gcd_euclid(a, b);
}

}  // namespace diagwalk
