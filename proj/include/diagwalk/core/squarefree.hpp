#pragma once

#include <type_traits>
#include <utility>
#include <vector>

#include "diagwalk/core/error.hpp"
#include "diagwalk/core/unipoly.hpp"

namespace diagwalk {

template <class F>
struct SqfDecompUni {
  std::vector<std::pair<UniPoly<F>, int>> factors;  // (Q_i, i), i increasing
  F content{1};

  UniPoly<F> squarefree_part() const {
    UniPoly<F> r = UniPoly<F>::constant(F(1));
    for (const auto& [q, i] : factors) r = r * q;
    return r;
  }
  UniPoly<F> recombine() const {
    UniPoly<F> r = UniPoly<F>::constant(content);
    for (const auto& [q, i] : factors) r = r * q.pow(static_cast<unsigned>(i));
    return r;
  }
};

/// Yun's algorithm. Factors are monic, or primitive-positive over Q.
template <class F>
SqfDecompUni<F> squarefree_uni(const UniPoly<F>& q) {
  if (q.is_zero()) fail(ErrorCode::ZeroInput, "squarefree_uni: zero polynomial");
  SqfDecompUni<F> out;
  out.content = q.leading();
  UniPoly<F> a = q.monic();
  if (a.degree() > 0) {
    UniPoly<F> b = a.derivative();
    UniPoly<F> c = gcd(a, b);
    UniPoly<F> w = exact_div(a, c);
    UniPoly<F> y = exact_div(b, c);
    UniPoly<F> z = y - w.derivative();
    for (int i = 1; w.degree() > 0; ++i) {
      UniPoly<F> g = gcd(w, z);
      if (g.degree() > 0) out.factors.emplace_back(g, i);
      w = exact_div(w, g);
      y = exact_div(z, g);
      z = y - w.derivative();
    }
  }
  if constexpr (std::is_same_v<F, Rational>) {
    for (auto& [f, i] : out.factors) {
      UniPoly<Rational> pp = primitive_positive(f);
      // f = pp * (lc f / lc pp); f is monic
      out.content *= pow(Rational(f.leading() / pp.leading()), static_cast<unsigned long>(i));
      f = std::move(pp);
    }
  }
  return out;
}

}  // namespace diagwalk
