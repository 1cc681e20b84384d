#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "diagwalk/composed/composed.hpp"
#include "diagwalk/residues/residues.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace diagwalk;
using testsupport::bp;
using testsupport::random_bipoly;
using Poly = UniPoly<Rational>;
using Series = TruncSeries<Rational>;

using namespace oracles;

namespace {

Series random_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> dist(-6, 6);
  Series s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = dist(rng);
  return s;
}

}  // namespace

TEST(PureComposedSum, RationalRoots) {
  auto r = pure_composed_sum(lin(1) * lin(2) * lin(4), 2);
  EXPECT_EQ(r.poly, lin(3) * lin(5) * lin(6));
  EXPECT_EQ(r.big_d, 3U);
}

TEST(PureComposedSum, COneIsMonicInput) {
  Poly p{6, -1, 0, 2};
  EXPECT_EQ(pure_composed_sum(p, 1).poly, p.monic());
}

TEST(PureComposedSum, CEqualsDegree) {
  Poly p{5, 3, -7, 2};
  EXPECT_EQ(pure_composed_sum(p, 3).poly, (Poly{0, 1}) + Poly::constant(Rational(-7, 2)));
}

TEST(PureComposedSum, ConjugatePair) { EXPECT_EQ(pure_composed_sum(Poly{1, 0, 1}, 2).poly, (Poly{0, 1})); }

TEST(PureComposedSum, OutOfRange) {
  try {
    pure_composed_sum(Poly{1, 1}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
  EXPECT_THROW(pure_composed_sum(Poly{1, 1}, 0), Error);
}

TEST(PureComposedSum, DegreeIsBinomial) {
  Poly p{3, -1, 4, 1, -5, 9, 2};
  for (int c = 1; c <= 6; ++c)
    EXPECT_EQ(pure_composed_sum(p, c).poly.degree(),
              static_cast<int>(binomial(6, static_cast<unsigned long>(c)).get_ui()));
}

TEST(PureComposedSum, RandomAgainstSubsetOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(2, 8);
  std::uniform_int_distribution<long> coef(-5, 5);
  int done = 0;
  while (done < 30) {
    int d = deg(rng);
    std::vector<Rational> c(static_cast<std::size_t>(d + 1));
    for (auto& a : c) a = coef(rng);
    c.back() = 1;
    Poly p(c);
    if (gcd(p, p.derivative()).degree() > 0) continue;
    int cc = 1 + static_cast<int>(rng() % static_cast<unsigned long>(std::min(4, d)));
    EXPECT_EQ(pure_composed_sum(p, cc).poly, subset_sum_oracle(p, cc)) << "d=" << d << " c=" << cc;
    ++done;
  }
}

TEST(PureComposedSum, IntegerRootsMatchRootListing) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> root(-6, 6);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 2 + trial % 6;
    std::vector<long> roots;
    Poly p{1};
    for (int i = 0; i < d; ++i) {
      roots.push_back(root(rng));
      p = p * lin(roots.back());
    }
    for (int c = 1; c <= std::min(d, 4); ++c) EXPECT_EQ(pure_composed_sum(p, c).poly, product_over_subsets(roots, c));
  }
}

TEST(PureComposedSum, ComplementSymmetry) {
  Poly p = lin(1) * lin(-2) * lin(5) * lin(7) * lin(0);
  Rational e1 = 1 - 2 + 5 + 7;
  for (int c = 1; c < 5; ++c) {
    Poly a = pure_composed_sum(p, c).poly, b = pure_composed_sum(p, 5 - c).poly;
    Poly reflected = a.compose(Poly::constant(e1) - Poly{0, 1});
    EXPECT_EQ(b, reflected.monic());
  }
}

TEST(PureComposedSum, NewtonIdentity) {
  Poly p{2, -3, 0, 1, 1};
  int c = 2;
  auto r = pure_composed_sum(p, c);
  std::size_t n = r.big_d + 1;
  Series lhs = hadamard(newton_series(r.poly, n), Series::exponential(n));
  Series s = hadamard(newton_series(p, n), Series::exponential(n));
  EXPECT_EQ(lhs, psi_truncation(s, c, r.big_d));
}

TEST(PsiTruncation, COne) {
  std::mt19937_64 rng(4);
  Series s = random_series(rng, 9);
  EXPECT_EQ(psi_truncation(s, 1, 8), s);
}

TEST(PsiTruncation, CTwo) {
  std::mt19937_64 rng(5);
  Series s = random_series(rng, 9);
  Series expect = (s * s - s.scale(Rational(2))) * Rational(1, 2);
  EXPECT_EQ(psi_truncation(s, 2, 8), expect);
}

TEST(PsiTruncation, CThree) {
  std::mt19937_64 rng(6);
  Series s = random_series(rng, 9);
  Series s2 = s.scale(Rational(2)), s3 = s.scale(Rational(3));
  Series expect = (s * s * s - Rational(3) * (s * s2) + Rational(2) * s3) * Rational(1, 6);
  EXPECT_EQ(psi_truncation(s, 3, 8), expect);
}

TEST(PsiTruncation, InsufficientPrecision) {
  try {
    psi_truncation(Series(3), 2, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientPrecision);
  }
}

TEST(ComposedSumBi, RationalBranches) {
  BiPoly p = bp({{0, 1, 1}, {1, 0, -1}}) * bp({{0, 1, 1}, {1, 0, -2}}) * bp({{0, 1, 1}, {2, 0, -1}});
  auto r = pure_composed_sum_bi(p, 2);
  BiPoly expect = bp({{0, 1, 1}, {1, 0, -3}}) * bp({{0, 1, 1}, {1, 0, -1}, {2, 0, -1}}) *
                  bp({{0, 1, 1}, {1, 0, -2}, {2, 0, -1}});
  EXPECT_EQ(r.poly, expect);
}

TEST(ComposedSumBi, RandomBidegreeBound) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    BiPoly p = random_bipoly(rng, 2, 4);
    auto r = pure_composed_sum_bi(p, 2);
    EXPECT_EQ(r.poly.deg_y(), 6);
    EXPECT_LE(r.poly.deg_x(), 2 * 6);
    // generic observation: d_x * binom(d_y - 1, c - 1)
    EXPECT_LE(r.poly.deg_x(), 2 * 3);
    for (Rational x0 : {Rational(2, 3), Rational(-5, 4)}) {
      UniPoly<Rational> at = r.poly.eval_x(x0);
      EXPECT_EQ(at.monic(), pure_composed_sum(p.eval_x(x0), 2).poly);
    }
  }
}

TEST(ComposedSumBi, ConstantInX) {
  BiPoly p = BiPoly::from_y(lin(1) * lin(2) * lin(4));
  EXPECT_EQ(pure_composed_sum_bi(p, 2).poly, BiPoly::from_y(lin(3) * lin(5) * lin(6)));
}
