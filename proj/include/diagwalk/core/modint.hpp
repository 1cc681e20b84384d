#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "diagwalk/core/rational.hpp"

namespace diagwalk {

/// Element of Z/pZ for a word-size prime p. The modulus is a per-thread
/// setting installed with ModulusScope.
class ModInt {
 public:
  ModInt() = default;
  ModInt(long long v) {  // NOLINT(google-explicit-constructor)
    long long m = static_cast<long long>(mod_);
    long long r = v % m;
    v_ = static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }

  static ModInt raw(std::uint64_t v) {
    ModInt r;
    r.v_ = v;
    return r;
  }

  static std::uint64_t modulus() { return mod_; }
  static void set_modulus(std::uint64_t p) {
    if (p < 2 || p >= (1ULL << 62)) fail(ErrorCode::OutOfRange, "modulus outside [2, 2^62)");
    mod_ = p;
    shift_ = std::bit_width(p);
    mu_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << (2 * shift_)) / p);
  }

  std::uint64_t value() const { return v_; }

  /// Symmetric representative in (-p/2, p/2].
  long long signed_value() const {
    return v_ > mod_ / 2 ? static_cast<long long>(v_) - static_cast<long long>(mod_)
                         : static_cast<long long>(v_);
  }

  ModInt& operator+=(const ModInt& o) {
    v_ += o.v_;
    if (v_ >= mod_) v_ -= mod_;
    return *this;
  }
  ModInt& operator-=(const ModInt& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + mod_ - o.v_;
    return *this;
  }
  ModInt& operator*=(const ModInt& o) {
    // Barrett reduction; the quotient estimate is short by at most 2
    unsigned __int128 x = static_cast<unsigned __int128>(v_) * o.v_;
    auto q1 = static_cast<std::uint64_t>(x >> (shift_ - 1));
    auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(q1) * mu_) >> (shift_ + 1));
    std::uint64_t r = static_cast<std::uint64_t>(x) - q * mod_;
    if (r >= mod_) r -= mod_;
    if (r >= mod_) r -= mod_;
    v_ = r;
    return *this;
  }
  ModInt& operator/=(const ModInt& o) { return *this *= o.inverse(); }

  friend ModInt operator+(ModInt a, const ModInt& b) { return a += b; }
  friend ModInt operator-(ModInt a, const ModInt& b) { return a -= b; }
  friend ModInt operator*(ModInt a, const ModInt& b) { return a *= b; }
  friend ModInt operator/(ModInt a, const ModInt& b) { return a /= b; }
  ModInt operator-() const { return raw(v_ == 0 ? 0 : mod_ - v_); }

  friend bool operator==(const ModInt& a, const ModInt& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ModInt& a, const ModInt& b) { return a.v_ != b.v_; }

  ModInt pow(std::uint64_t e) const {
    ModInt base = *this, r = raw(1);
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  ModInt inverse() const {
    if (v_ == 0) fail(ErrorCode::ZeroDenominator, "inverse of 0 mod p");
    return pow(mod_ - 2);
  }

 private:
  std::uint64_t v_ = 0;
  static inline thread_local std::uint64_t mod_ = 2305843009213693951ULL;  // 2^61 - 1
  static inline thread_local int shift_ = 61;
  static inline thread_local std::uint64_t mu_ = 2305843009213693953ULL;  // floor(2^122 / (2^61 - 1))
};

inline bool is_zero(const ModInt& a) { return a.value() == 0; }

/// 1/k for 1 <= k < p from a per-thread table, rebuilt when the modulus changes.
inline ModInt small_inverse(std::size_t k) {
  static thread_local std::uint64_t table_mod = 0;
  static thread_local std::vector<ModInt> table;
  std::uint64_t p = ModInt::modulus();
  if (table_mod != p) {
    table_mod = p;
    table.assign(2, ModInt(1));
  }
  if (k >= p) fail(ErrorCode::OutOfRange, "small_inverse: multiple of the modulus");
  while (table.size() <= k) {
    std::uint64_t i = table.size();
    table.push_back(-ModInt::raw(p / i) * table[p % i]);
  }
  return table[k];
}

/// Installs a modulus for the current thread and restores the previous one.
class ModulusScope {
 public:
  explicit ModulusScope(std::uint64_t p) : saved_(ModInt::modulus()) { ModInt::set_modulus(p); }
  ~ModulusScope() { ModInt::set_modulus(saved_); }
  ModulusScope(const ModulusScope&) = delete;
  ModulusScope& operator=(const ModulusScope&) = delete;

 private:
  std::uint64_t saved_;
};

inline std::uint64_t mod_integer(const Integer& z, std::uint64_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

/// Reduction of a rational mod the current modulus; throws when the
/// denominator is divisible by p.
inline ModInt to_mod(const Rational& q) {
  std::uint64_t p = ModInt::modulus();
  ModInt num = ModInt::raw(mod_integer(q.get_num(), p));
  std::uint64_t den = mod_integer(q.get_den(), p);
  if (den == 0) fail(ErrorCode::ZeroDenominator, "denominator divisible by modulus");
  return num / ModInt::raw(den);
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// The k-th prime below 2^62 (descending), k = 0, 1, ...
inline std::uint64_t nth_large_prime(std::size_t k) {
  static thread_local std::vector<std::uint64_t> cache;
  std::uint64_t candidate = cache.empty() ? (1ULL << 62) - 1 : cache.back() - 2;
  while (cache.size() <= k) {
    while (!detail::is_prime_u64(candidate)) candidate -= 2;
    cache.push_back(candidate);
    candidate -= 2;
  }
  return cache[k];
}

}  // namespace diagwalk
