#include <gtest/gtest.h>

#include "diagwalk/walks/walks.hpp"
#include "test_support.hpp"

using namespace diagwalk;
using testsupport::bp;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long a : v) out.emplace_back(a);
  return out;
}

std::vector<Integer> head(const TruncSeries<Rational>& s, std::size_t n) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(s[i].get_den(), 1);
    out.push_back(s[i].get_num());
  }
  return out;
}

}  // namespace

TEST(StepSet, Parse) {
  StepSet a = StepSet::parse("{1,-1}");
  EXPECT_EQ(a.altitudes, (std::vector<int>{-1, 1}));
  EXPECT_EQ(a.d, 2);
  StepSet b = StepSet::parse(" 1, 0 ,-1 ");
  EXPECT_EQ(b.altitudes, (std::vector<int>{-1, 0, 1}));
  StepSet c = StepSet::parse("{(1,2),(1,1),(1,-2)}");
  EXPECT_EQ(c.altitudes, (std::vector<int>{-2, 1, 2}));
  EXPECT_EQ(c.u_minus, 2);
  EXPECT_EQ(c.u_plus, 2);
  EXPECT_EQ(c.d, 4);
  EXPECT_EQ(StepSet::parse(c.to_string()).altitudes, c.altitudes);
  EXPECT_EQ(StepSet::parse("{3,3,-1}").altitudes, (std::vector<int>{-1, 3}));
}

TEST(StepSet, ParseErrors) {
  try {
    StepSet::parse("{1,x}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 4);
  }
  try {
    StepSet::parse("{1,-1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6);
  }
  EXPECT_THROW(StepSet::parse("{1,-1} 2"), ParseError);
  EXPECT_THROW(StepSet::parse("{(2,1),(1,-1)}"), Error);
}

TEST(StepSet, Invalid) {
  for (const char* text : {"{}", "{1,2}", "{-1,0}", "{0}"}) {
    try {
      StepSet::parse(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidStepSet) << text;
    }
  }
}

TEST(WalkTable, Basics) {
  StepSet s = StepSet::parse("{2,1,-2}");
  WalkTable full = walk_counts_naive(s, 12, false);
  WalkTable conf = walk_counts_naive(s, 12, true);
  EXPECT_EQ(full.rows[0].size(), 1u);
  EXPECT_EQ(full.at(0, 0), 1);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_GE(conf.low[static_cast<std::size_t>(n)], 0);
    for (int k = -2 * n; k <= 2 * n; ++k) {
      Integer expect(0);
      for (int u : s.altitudes) expect += full.at(n - 1, k - u);
      EXPECT_EQ(full.at(n, k), expect);
      if (k < 0) {
        EXPECT_EQ(conf.at(n, k), 0);
      }
    }
  }
  EXPECT_EQ(walk_counts_naive(s, 0, true).rows.size(), 1u);
}

TEST(WalkTable, CatalanAndMotzkin) {
  NaiveCounts dyck = naive_counts(StepSet::parse("{1,-1}"), 8);
  EXPECT_EQ(dyck.excursions, ints({1, 0, 1, 0, 2, 0, 5, 0, 14}));
  NaiveCounts motz = naive_counts(StepSet::parse("{1,0,-1}"), 6);
  EXPECT_EQ(motz.excursions, ints({1, 1, 2, 4, 9, 21, 51}));
}

TEST(WalkTable, AggregatesMatchTable) {
  StepSet s = StepSet::parse("{3,-1,-2}");
  int n = 15;
  NaiveCounts c = naive_counts(s, n);
  WalkTable full = walk_counts_naive(s, n, false), conf = walk_counts_naive(s, n, true);
  for (int m = 0; m <= n; ++m) {
    auto idx = static_cast<std::size_t>(m);
    EXPECT_EQ(c.bridges[idx], full.at(m, 0));
    EXPECT_EQ(c.excursions[idx], conf.at(m, 0));
    Integer mean(0), neg(0);
    for (const auto& w : conf.rows[idx]) mean += w;
    for (int k = -2 * m; k < 0; ++k) neg += full.at(m, k);
    EXPECT_EQ(c.meanders[idx], mean);
    EXPECT_EQ(c.negative[idx], neg);
  }
}

TEST(Inputs, Shapes) {
  StepSet dyck = StepSet::parse("{1,-1}");
  BiRational b = bridge_input(dyck);
  // 1 / (y - x (1 + y^2))
  EXPECT_TRUE(b == (BiRational{BiPoly::constant(Rational(1)), bp({{0, 1, 1}, {1, 0, -1}, {1, 2, -1}})}));
  for (int e = 2; e <= 4; ++e) {
    StepSet s = StepSet::from_altitudes({e, 1, -e});
    BiPoly den = BiPoly::monomial(0, e, Rational(1)) -
                 BiPoly::x() * (BiPoly::constant(Rational(1)) + BiPoly::monomial(0, e + 1, Rational(1)) + BiPoly::monomial(0, 2 * e, Rational(1)));
    EXPECT_TRUE(bridge_input(s) == (BiRational{BiPoly::monomial(0, e - 1, Rational(1)), den}));
  }
  for (const char* text : {"{1,-1}", "{2,1,-2}", "{5,-3}", "{1,0,-4}"}) {
    StepSet s = StepSet::parse(text);
    BiRational f = bridge_input(s);
    EXPECT_LE(f.den.deg_x(), 1);
    EXPECT_LE(f.den.deg_y(), s.d);
    BiRational m = meander_input(s);
    EXPECT_TRUE(m == (BiRational{f.num * BiPoly::y(), f.den * (BiPoly::constant(Rational(1)) - BiPoly::y())}));
  }
}

TEST(ExpandWalks, SmallExamples) {
  WalkSeries dyck = expand_walks(StepSet::parse("{1,-1}"), 12);
  EXPECT_EQ(head(dyck.B, 7), ints({1, 0, 2, 0, 6, 0, 20}));
  EXPECT_EQ(head(dyck.E, 9), ints({1, 0, 1, 0, 2, 0, 5, 0, 14}));
  EXPECT_EQ(head(dyck.M, 7), ints({1, 1, 2, 3, 6, 10, 20}));
  WalkSeries motz = expand_walks(StepSet::parse("{1,0,-1}"), 8);
  EXPECT_EQ(head(motz.E, 7), ints({1, 1, 2, 4, 9, 21, 51}));
  EXPECT_FALSE(motz.used_fallback);
}

TEST(ExpandWalks, MatchesNaiveTo200) {
  for (const char* text : {"{1,-1}", "{1,0,-1}", "{2,1,-2}", "{3,-1}", "{1,-2}"}) {
    StepSet s = StepSet::parse(text);
    const int n = 200;
    WalkSeries w = expand_walks(s, n);
    NaiveCounts c = naive_counts(s, n);
    EXPECT_EQ(head(w.B, n + 1), c.bridges) << text;
    EXPECT_EQ(head(w.E, n + 1), c.excursions) << text;
    EXPECT_EQ(head(w.M, n + 1), c.meanders) << text;
    EXPECT_EQ(head(w.A, n + 1), c.negative) << text;
    EXPECT_LE(w.bridge_ode.order(), s.d) << text;
  }
}

TEST(ExpandWalks, DefiningRelations) {
  for (const char* text : {"{1,-1}", "{2,1,-2}", "{2,-1,-3}"}) {
    StepSet s = StepSet::parse(text);
    WalkSeries w = expand_walks(s, 60);
    std::size_t prec = w.B.precision();
    // x E'/E = B - 1
    TruncSeries<Rational> lhs = series_div(w.E.derivative(), w.E.truncate(prec - 1));
    TruncSeries<Rational> rhs = w.B - TruncSeries<Rational>::constant(Rational(1), prec);
    for (std::size_t k = 1; k < prec; ++k) EXPECT_EQ(lhs[k - 1], rhs[k]) << text;
    EXPECT_EQ(rhs[0], 0);
    // -x (log((1 - |S| x) M))' = A
    TruncSeries<Rational> one_minus(prec);
    one_minus[0] = Rational(1);
    one_minus[1] = Rational(-static_cast<long>(s.altitudes.size()));
    TruncSeries<Rational> lg = series_log(one_minus * w.M).derivative();
    for (std::size_t k = 1; k < prec; ++k) EXPECT_EQ(-lg[k - 1], w.A[k]) << text;
  }
}

TEST(ExpandWalks, RejectsZeroLength) { EXPECT_THROW(expand_walks(StepSet::parse("{1,-1}"), 0), Error); }

TEST(Bench, TinyAgree) {
  BenchReport r = bench_methods(StepSet::parse("{2,1,-2}"), {10, 20, 40});
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) EXPECT_TRUE(row.agree) << row.n;
}
