#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/modint.hpp"
#include "diagwalk/core/rational.hpp"

namespace diagwalk {

/// Image of an exact computation modulo one prime. Images of lower rank
/// than the best seen so far come from unlucky primes and are discarded;
/// a higher rank restarts the accumulation.
struct ModularImage {
  bool usable = true;
  long rank = 0;
  std::vector<ModInt> values;
};

/// r/s with |r|, s <= sqrt(m/2) and r = a*s mod m, if it exists.
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer bound;
  Integer half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  if (r1 <= bound) return Rational(r1);
  if (m - r1 <= bound) return Rational(Integer(r1 - m));
  Integer s0 = 0, s1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (abs(s1) > bound || s1 == 0) return std::nullopt;
  if (gcd(r1, Integer(abs(s1))) != 1) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

struct ReconstructStats {
  std::size_t primes_used = 0;
  std::size_t primes_skipped = 0;
};

/// Chinese remaindering plus rational reconstruction over a stream of large
/// primes. image() runs with the modulus already installed. The result is
/// accepted once it reconstructs, stays unchanged on a sample of entries for
/// one more prime, and agrees with a fresh image at one further prime.
template <class Fn>
std::vector<Rational> multimodular_reconstruct(Fn&& image, ReconstructStats* stats = nullptr,
                                               std::size_t max_primes = 4000) {
  std::vector<Integer> acc;
  Integer modulus(1);
  long best_rank = 0;
  bool have = false;
  std::vector<std::size_t> sample;
  std::vector<Rational> previous_sample;
  std::optional<std::vector<Rational>> candidate;
  ReconstructStats local;

  for (std::size_t k = 0; k < max_primes; ++k) {
    std::uint64_t p = nth_large_prime(k);
    ModulusScope scope(p);
    ModularImage img = image();
    if (!img.usable || (have && img.rank < best_rank)) {
      ++local.primes_skipped;
      continue;
    }
    if (!have || img.rank > best_rank || img.values.size() != acc.size()) {
      have = true;
      best_rank = img.rank;
      acc.assign(img.values.size(), Integer(0));
      modulus = 1;
      candidate.reset();
      previous_sample.clear();
      sample.clear();
      std::size_t n = acc.size();
      std::size_t step = n / 24 + 1;
      for (std::size_t i = 0; i < n; i += step) sample.push_back(i);
      if (n > 0 && sample.back() != n - 1) sample.push_back(n - 1);
    }
    ++local.primes_used;

    if (candidate) {
      bool agrees = true;
      for (std::size_t i = 0; i < acc.size() && agrees; ++i) {
        const Rational& q = (*candidate)[i];
        std::uint64_t den = mod_integer(q.get_den(), p);
        if (den == 0) {
          agrees = false;
          break;
        }
        ModInt v = ModInt::raw(mod_integer(q.get_num(), p)) / ModInt::raw(den);
        agrees = v == img.values[i];
      }
      if (agrees) {
        if (stats) *stats = local;
        return *candidate;
      }
      candidate.reset();
    }

    // Garner step
    ModInt minv = ModInt::raw(mod_integer(modulus, p)).inverse();
    for (std::size_t i = 0; i < acc.size(); ++i) {
      ModInt cur = ModInt::raw(mod_integer(acc[i], p));
      ModInt delta = (img.values[i] - cur) * minv;
      if (delta.value() != 0) acc[i] += modulus * Integer(static_cast<unsigned long>(delta.value()));
    }
    modulus *= Integer(static_cast<unsigned long>(p));

    std::vector<Rational> current_sample;
    bool ok = true;
    for (std::size_t i : sample) {
      auto q = rational_reconstruct(acc[i], modulus);
      if (!q) {
        ok = false;
        break;
      }
      current_sample.push_back(*q);
    }
    if (!ok) {
      previous_sample.clear();
      continue;
    }
    if (current_sample == previous_sample) {
      std::vector<Rational> full;
      full.reserve(acc.size());
      for (const auto& a : acc) {
        auto q = rational_reconstruct(a, modulus);
        if (!q) {
          ok = false;
          break;
        }
        full.push_back(*q);
      }
      if (ok) candidate = std::move(full);
    }
    previous_sample = std::move(current_sample);
  }
  fail(ErrorCode::ReconstructionFailed, "multimodular reconstruction did not stabilize");
}

}  // namespace diagwalk
