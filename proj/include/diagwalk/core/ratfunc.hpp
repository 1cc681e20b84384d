#pragma once

#include <string>
#include <utility>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

/// Element of F(x): reduced fraction with monic denominator.
template <class F>
class RatFunc {
 public:
  using Poly = UniPoly<F>;

  RatFunc() : den_(Poly::constant(F(1))) {}
  RatFunc(long v) : num_(Poly::constant(F(v))), den_(Poly::constant(F(1))) {}  // NOLINT
  RatFunc(const F& v) : num_(Poly::constant(v)), den_(Poly::constant(F(1))) {}  // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(F(1))) {}  // NOLINT
  RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const { return unchecked(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.degree() == 0 && b.den_.degree() == 0) return unchecked(a.num_ * b.num_, a.den_);
    // cross-cancel before multiplying
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    Poly d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    F lc = d.leading();
    return unchecked(n * (F(1) / lc), d.monic());
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "division by zero in F(x)");
    return a * unchecked_inverse(b);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  F evaluate(const F& x0) const {
    F d = den_(x0);
    if (detail::coeff_is_zero(d)) fail(ErrorCode::BadEvaluationPoint, "pole at evaluation point");
    return num_(x0) / d;
  }

 private:
  static RatFunc unchecked(Poly n, Poly d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }
  static RatFunc unchecked_inverse(const RatFunc& b) {
    F lc = b.num_.leading();
    return unchecked(b.den_ * (F(1) / lc), b.num_.monic());
  }
  void normalize() {
    if (den_.is_zero()) fail(ErrorCode::ZeroDenominator, "zero denominator in F(x)");
    if (num_.is_zero()) {
      den_ = Poly::constant(F(1));
      return;
    }
    if (den_.degree() > 0) {
      Poly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    F lc = den_.leading();
    if (lc != F(1)) {
      F inv = F(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

template <class F>
bool is_zero(const RatFunc<F>& a) {
  return a.is_zero();
}

}  // namespace diagwalk
