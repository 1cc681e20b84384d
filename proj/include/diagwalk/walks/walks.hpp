#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "diagwalk/bivar/bipoly.hpp"
#include "diagwalk/bivar/ops.hpp"
#include "diagwalk/core/error.hpp"
#include "diagwalk/core/series.hpp"
#include "diagwalk/telescope/telescope.hpp"

namespace diagwalk {

/// Simple steps (1, u), stored by altitude u.
struct StepSet {
  std::vector<int> altitudes;  // sorted, distinct
  int u_minus = 0;
  int u_plus = 0;
  int d = 0;

  static StepSet from_altitudes(std::vector<int> us) {
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    if (us.empty()) fail(ErrorCode::InvalidStepSet, "step set is empty");
    StepSet s;
    s.altitudes = std::move(us);
    s.u_minus = std::max(0, -s.altitudes.front());
    s.u_plus = std::max(0, s.altitudes.back());
    if (s.u_minus < 1 || s.u_plus < 1)
      fail(ErrorCode::InvalidStepSet, "step set needs both a negative and a positive altitude");
    s.d = s.u_minus + s.u_plus;
    return s;
  }

  /// Accepts "{1,-1}", "1,0,-1" or "{(1,2),(1,1),(1,-2)}".
  static StepSet parse(const std::string& text) {
    std::vector<int> us;
    std::size_t i = 0;
    auto column = [&] { return static_cast<int>(i) + 1; };
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto integer = [&]() -> long {
      skip();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      std::size_t digits = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == digits) throw ParseError(ErrorCode::Syntax, "expected an integer", 1, static_cast<int>(start) + 1);
      if (i - digits > 9) throw ParseError(ErrorCode::BadExponent, "step altitude too large", 1, static_cast<int>(start) + 1);
      return std::stol(text.substr(start, i - start));
    };
    auto expect = [&](char c) {
      skip();
      if (i >= text.size() || text[i] != c)
        throw ParseError(ErrorCode::Syntax, std::string("expected '") + c + "'", 1, column());
      ++i;
    };
    skip();
    bool braces = i < text.size() && text[i] == '{';
    if (braces) ++i;
    skip();
    bool closed = braces && i < text.size() && text[i] == '}';
    while (!closed) {
      skip();
      if (i < text.size() && text[i] == '(') {
        ++i;
        std::size_t at = i;
        if (integer() != 1) fail(ErrorCode::InvalidStepSet, "step (a, u) must have a = 1 (column " + std::to_string(at + 1) + ")");
        expect(',');
        us.push_back(static_cast<int>(integer()));
        expect(')');
      } else {
        us.push_back(static_cast<int>(integer()));
      }
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (braces) expect('}');
    skip();
    if (i != text.size()) throw ParseError(ErrorCode::Syntax, "unexpected trailing input", 1, column());
    return from_altitudes(std::move(us));
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < altitudes.size(); ++k) {
      if (k) out += ",";
      out += "(1," + std::to_string(altitudes[k]) + ")";
    }
    return out + "}";
  }

  /// y^{u_minus} Gamma(y)
  UniPoly<Rational> shifted_gamma() const {
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (int u : altitudes) c[static_cast<std::size_t>(u + u_minus)] += 1;
    return UniPoly<Rational>(std::move(c));
  }
};

/// w_{n,k} for 0 <= n <= n_max over the reachable altitude window.
struct WalkTable {
  int n_max = 0;
  bool confined = false;
  std::vector<int> low;  // altitude of rows[n][0]
  std::vector<std::vector<Integer>> rows;

  Integer at(int n, int k) const {
    const auto& r = rows[static_cast<std::size_t>(n)];
    int idx = k - low[static_cast<std::size_t>(n)];
    if (idx < 0 || idx >= static_cast<int>(r.size())) return 0;
    return r[static_cast<std::size_t>(idx)];
  }
};

namespace detail {

/// One application of the step recurrence.
inline void walk_step(const StepSet& s, bool confined, const std::vector<Integer>& prev, int prev_low,
                      std::vector<Integer>& next, int& next_low) {
  int prev_high = prev_low + static_cast<int>(prev.size()) - 1;
  next_low = prev_low - s.u_minus;
  if (confined) next_low = std::max(next_low, 0);
  int next_high = prev_high + s.u_plus;
  next.assign(static_cast<std::size_t>(next_high - next_low + 1), Integer(0));
  for (int k = prev_low; k <= prev_high; ++k) {
    const Integer& w = prev[static_cast<std::size_t>(k - prev_low)];
    if (sgn(w) == 0) continue;
    for (int u : s.altitudes) {
      int t = k + u;
      if (t < next_low) continue;
      next[static_cast<std::size_t>(t - next_low)] += w;
    }
  }
}

}  // namespace detail

inline WalkTable walk_counts_naive(const StepSet& s, int n_max, bool confined) {
  if (n_max < 0) fail(ErrorCode::OutOfRange, "walk_counts_naive: negative length");
  WalkTable t;
  t.n_max = n_max;
  t.confined = confined;
  t.rows.push_back({Integer(1)});
  t.low.push_back(0);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Integer> next;
    int low = 0;
    detail::walk_step(s, confined, t.rows.back(), t.low.back(), next, low);
    t.rows.push_back(std::move(next));
    t.low.push_back(low);
  }
  return t;
}

/// Counting sequences for lengths 0..n_max read off the naive recurrence.
struct NaiveCounts {
  std::vector<Integer> bridges, excursions, meanders, negative;
};

/// Rolling-row version of walk_counts_naive that keeps only the aggregates.
inline NaiveCounts naive_counts(const StepSet& s, int n_max, bool full = true, bool confined = true) {
  if (n_max < 0) fail(ErrorCode::OutOfRange, "naive_counts: negative length");
  NaiveCounts out;
  std::vector<Integer> row{Integer(1)}, next;
  int low = 0, next_low = 0;
  if (full) {
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) {
        detail::walk_step(s, false, row, low, next, next_low);
        row.swap(next);
        low = next_low;
      }
      out.bridges.push_back(-low < static_cast<int>(row.size()) && low <= 0 ? row[static_cast<std::size_t>(-low)] : Integer(0));
      Integer neg(0);
      for (int k = low; k < 0 && k - low < static_cast<int>(row.size()); ++k) neg += row[static_cast<std::size_t>(k - low)];
      out.negative.push_back(neg);
    }
  }
  if (confined) {
    row.assign(1, Integer(1));
    low = 0;
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) {
        detail::walk_step(s, true, row, low, next, next_low);
        row.swap(next);
        low = next_low;
      }
      out.excursions.push_back(row[0]);
      Integer total(0);
      for (const auto& w : row) total += w;
      out.meanders.push_back(total);
    }
  }
  return out;
}

/// W(x, y) / y with the Laurent denominator cleared by y^{u_minus}.
inline BiRational bridge_input(const StepSet& s) {
  // y^{u-} (1 - x Gamma(y)) = y^{u-} - x y^{u-} Gamma(y)
  BiPoly den = BiPoly::monomial(0, s.u_minus, Rational(1)) - BiPoly::x() * BiPoly::from_y(s.shifted_gamma());
  return {BiPoly::monomial(0, s.u_minus - 1, Rational(1)), den};
}

/// W(x, y) / (1 - y) with the same clearing.
inline BiRational meander_input(const StepSet& s) {
  BiPoly den = BiPoly::monomial(0, s.u_minus, Rational(1)) - BiPoly::x() * BiPoly::from_y(s.shifted_gamma());
  BiPoly one_minus_y = BiPoly::constant(Rational(1)) - BiPoly::y();
  return {BiPoly::monomial(0, s.u_minus, Rational(1)), one_minus_y * den};
}

struct WalkSeries {
  TruncSeries<Rational> B, E, M, A;
  LinODE bridge_ode, meander_ode;
  LinRec bridge_rec, meander_rec;
  bool used_fallback = false;
};

struct WalkOptions {
  /// Use the naive recurrence when no telescoper is found.
  bool naive_fallback = false;
};

namespace detail {

struct RecurrencePlan {
  LinODE ode;
  LinRec rec;
};

inline RecurrencePlan plan_for(const BiRational& input, int max_order) {
  BiRational f = normalize_birational(input.num, input.den);
  Telescoper t = telescoper(f, max_order);
  return {t.ode, ode_to_recurrence(t.ode)};
}

inline TruncSeries<Rational> to_series(const std::vector<Integer>& v) {
  TruncSeries<Rational> s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = Rational(v[i]);
  return s;
}

inline void require_counting(const TruncSeries<Rational>& s, const char* name) {
  for (std::size_t i = 0; i < s.precision(); ++i)
    if (s[i].get_den() != 1 || sgn(s[i]) < 0)
      fail(ErrorCode::CertificationFailed, std::string("expand_walks: ") + name + " has a coefficient that is not a nonnegative integer");
}

/// sum_{n >= 1} c * a_n / n x^n, precision of a
inline TruncSeries<Rational> log_integral(const TruncSeries<Rational>& a, const Rational& c) {
  TruncSeries<Rational> out(a.precision());
  for (std::size_t n = 1; n < a.precision(); ++n) out[n] = c * a[n] / Rational(static_cast<long>(n));
  return out;
}

}  // namespace detail

/// Terms of index 0..n of the counting series for bridges (B), excursions
/// (E), meanders (M), and of A, the count of walks ending below 0.
inline WalkSeries expand_walks(const StepSet& s, int n, const WalkOptions& opt = {}) {
  if (n < 1) fail(ErrorCode::OutOfRange, "expand_walks: N must be positive");
  std::size_t prec = static_cast<std::size_t>(n) + 1;
  WalkSeries out;
  std::vector<Integer> b, a;
  try {
    detail::RecurrencePlan pb = detail::plan_for(bridge_input(s), s.d + 1);
    if (pb.ode.order() > s.d) fail(ErrorCode::BoundViolated, "expand_walks: bridge telescoper order exceeds d");
    detail::RecurrencePlan pa = detail::plan_for(meander_input(s), s.d + 2);
    std::size_t nb = std::min(prec, required_initial_terms(pb.rec));
    std::size_t na = std::min(prec, required_initial_terms(pa.rec));
    NaiveCounts init = naive_counts(s, static_cast<int>(std::max(nb, na)) - 1, true, false);
    b = unroll_integer(pb.rec, std::vector<Integer>(init.bridges.begin(), init.bridges.begin() + static_cast<std::ptrdiff_t>(nb)), prec);
    a = unroll_integer(pa.rec, std::vector<Integer>(init.negative.begin(), init.negative.begin() + static_cast<std::ptrdiff_t>(na)), prec);
    out.bridge_ode = pb.ode;
    out.bridge_rec = pb.rec;
    out.meander_ode = pa.ode;
    out.meander_rec = pa.rec;
  } catch (const Error& e) {
    if (!opt.naive_fallback || e.code() != ErrorCode::NoTelescoper) throw;
    NaiveCounts all = naive_counts(s, n, true, false);
    b = all.bridges;
    a = all.negative;
    out.used_fallback = true;
  }
  out.B = detail::to_series(b);
  out.A = detail::to_series(a);
  out.E = series_exp(detail::log_integral(out.B, Rational(1)));
  TruncSeries<Rational> geometric = TruncSeries<Rational>::geometric(prec).scale(Rational(static_cast<long>(s.altitudes.size())));
  out.M = series_exp(detail::log_integral(out.A, Rational(-1))) * geometric;
  detail::require_counting(out.B, "B");
  detail::require_counting(out.E, "E");
  detail::require_counting(out.M, "M");
  detail::require_counting(out.A, "A");
  return out;
}

struct BenchRow {
  int n = 0;
  double naive_seconds = 0;
  double recurrence_seconds = 0;
  bool agree = false;
};

struct BenchReport {
  double precompute_seconds = 0;
  std::vector<BenchRow> rows;
};

/// Wall-clock comparison for the bridge series: naive table against
/// recurrence unrolling (with precomputation reported separately).
inline BenchReport bench_methods(const StepSet& s, const std::vector<int>& ns) {
  using clock = std::chrono::steady_clock;
  BenchReport out;
  auto t0 = clock::now();
  detail::RecurrencePlan plan = detail::plan_for(bridge_input(s), s.d + 1);
  std::size_t need = required_initial_terms(plan.rec);
  std::vector<Integer> init = naive_counts(s, static_cast<int>(need), true, false).bridges;
  init.resize(need);
  out.precompute_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  for (int n : ns) {
    BenchRow row;
    row.n = n;
    auto a = clock::now();
    std::vector<Integer> naive = naive_counts(s, n, true, false).bridges;
    auto b = clock::now();
    std::vector<Integer> fast = unroll_integer(plan.rec, init, static_cast<std::size_t>(n) + 1);
    auto c = clock::now();
    row.naive_seconds = std::chrono::duration<double>(b - a).count();
    row.recurrence_seconds = std::chrono::duration<double>(c - b).count();
    row.agree = naive == fast;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace diagwalk
