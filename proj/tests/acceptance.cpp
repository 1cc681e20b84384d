// Acceptance run: one PASS / FAIL / SKIP line per criterion. Exits nonzero
// only when some criterion fails.
//
// Environment:
//   DIAGWALK_F4_BUDGET   seconds allowed for the d = 4 bidegree instance
//                        (default 600; 0 skips it)

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "diagwalk/composed/composed.hpp"
#include "diagwalk/diagonal/diagonal.hpp"
#include "diagwalk/residues/residues.hpp"
#include "diagwalk/telescope/telescope.hpp"
#include "diagwalk/walks/walks.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace diagwalk;
using testsupport::bp;
using testsupport::random_bipoly;

namespace {

// Tolerances and sizes
constexpr double kResidueBudgetSeconds = 10.0;
constexpr std::size_t kDiagonalCertifyTerms = 50;
constexpr int kGenericDraws = 5;
constexpr int kGenericHitsNeeded = 4;
constexpr int kRandomSuiteSize = 50;
constexpr std::size_t kRandomCertifyTerms = 40;
constexpr int kComposedRandomCases = 30;
constexpr int kWalkLength = 200;
constexpr double kRecurrenceGrowthMax = 2.8;
constexpr double kNaiveGrowthMin = 3.2;
constexpr int kTimingRepeats = 3;
constexpr double kDefaultF4Budget = 600.0;

enum class Status { Pass, Fail, Skip, SoftFail };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t) {
  return std::chrono::duration<double>(clock_type::now() - t).count();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string bideg_string(std::pair<int, int> b) {
  return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
}

// x^{d-1} / (1 - x^d - y^{d+1})
BiRational family(int d) {
  return {BiPoly::monomial(d - 1, 0, Rational(1)), bp({{0, 0, 1}, {d, 0, -1}, {0, d + 1, -1}})};
}

BiPoly dense_denominator(std::mt19937_64& rng, int d) {
  while (true) {
    BiPoly b = random_bipoly(rng, d, d, 9);
    bool full = true;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) full = full && sgn(b.coeff(i, j)) != 0;
    if (full) return b;
  }
}

// --- 1 -------------------------------------------------------------------

Outcome residue_family() {
  auto t = clock_type::now();
  for (int d = 0; d <= 4; ++d) {
    ResiduePoly r = algebraic_residues(oracles::pole_family_input(d));
    if (r.poly != oracles::pole_family_expected(d)) return {Status::Fail, "mismatch at d=" + std::to_string(d)};
  }
  double s = seconds_since(t);
  if (s >= kResidueBudgetSeconds) return {Status::Fail, "exact but took " + fixed(s) + " s"};
  return {Status::Pass, "d=0..4 exact in " + fixed(s) + " s"};
}

// --- 2 -------------------------------------------------------------------

Outcome diagonal_golden() {
  BiRational f{BiPoly::constant(Rational(1)), bp({{0, 0, 1}, {1, 0, -1}, {0, 1, -1}})};
  DiagonalAnnihilator a = algebraic_diagonal(f);
  BiPoly expect = bp({{0, 2, 1}, {1, 2, -4}, {0, 0, -1}});
  if (a.phi != expect) return {Status::Fail, "annihilator differs from (1-4t)D^2 - 1"};
  TruncSeries<Rational> s = diagonal_series_naive(f, kDiagonalCertifyTerms);
  for (std::size_t k = 0; k < kDiagonalCertifyTerms; ++k)
    if (s[k] != Rational(binomial(2 * k, k))) return {Status::Fail, "diagonal term " + std::to_string(k) + " is not central binomial"};
  if (!certify(f, a, kDiagonalCertifyTerms)) return {Status::Fail, "certify failed"};
  return {Status::Pass, "(1-4t)D^2 - 1, 50 central binomials certified"};
}

// --- 3 -------------------------------------------------------------------

// The d = 4 instance runs in a child process so that it can be abandoned
// when it exceeds the budget.
Outcome family_d4(double budget) {
  if (budget <= 0) return {Status::Skip, "d=4 disabled"};
  int fds[2];
  if (pipe(fds) != 0) return {Status::Skip, "d=4: pipe failed"};
  std::cout.flush();
  pid_t pid = fork();
  if (pid < 0) return {Status::Skip, "d=4: fork failed"};
  if (pid == 0) {
    close(fds[0]);
    std::string msg;
    try {
      DiagonalAnnihilator a = algebraic_diagonal(family(4));
      bool ok = certify(family(4), a, 40);
      msg = std::to_string(a.phi.deg_x()) + " " + std::to_string(a.phi.deg_y()) + " " + (ok ? "1" : "0");
    } catch (const std::exception& e) {
      msg = std::string("error ") + e.what();
    }
    ssize_t w = write(fds[1], msg.data(), msg.size());
    (void)w;
    close(fds[1]);
    _exit(0);
  }
  close(fds[1]);
  auto t = clock_type::now();
  pollfd pfd{fds[0], POLLIN, 0};
  int ready = poll(&pfd, 1, static_cast<int>(budget * 1000));
  std::string msg;
  if (ready > 0) {
    char buf[512];
    ssize_t n;
    while ((n = read(fds[0], buf, sizeof buf)) > 0) msg.append(buf, static_cast<std::size_t>(n));
  } else {
    kill(pid, SIGKILL);
  }
  close(fds[0]);
  waitpid(pid, nullptr, 0);
  double s = seconds_since(t);
  if (msg.empty()) return {Status::Skip, "d=4 not finished within " + fixed(budget, 0) + " s"};
  std::istringstream in(msg);
  int dx = 0, dy = 0, ok = 0;
  if (!(in >> dx >> dy >> ok)) return {Status::Fail, "d=4: " + msg};
  std::string where = "d=4 " + bideg_string({dx, dy}) + " in " + fixed(s, 0) + " s";
  if (std::make_pair(dx, dy) != std::make_pair(700, 126) || ok != 1) return {Status::Fail, where};
  return {Status::Pass, where};
}

Outcome family_bidegrees(double budget) {
  const std::pair<int, int> expect[] = {{2, 3}, {18, 10}, {120, 35}};
  std::string detail;
  for (int d = 1; d <= 3; ++d) {
    DiagonalAnnihilator a = algebraic_diagonal(family(d));
    auto got = a.phi.bideg();
    if (got != expect[d - 1]) return {Status::Fail, "d=" + std::to_string(d) + " gives " + bideg_string(got)};
    if (!certify(family(d), a, 40)) return {Status::Fail, "d=" + std::to_string(d) + " does not certify"};
    detail += bideg_string(got) + " ";
  }
  Outcome big = family_d4(budget);
  detail += "; " + big.detail;
  if (big.status == Status::Fail) return {Status::Fail, detail};
  return {Status::Pass, detail + (big.status == Status::Skip ? " (d=4 skipped)" : "")};
}

// --- 4 -------------------------------------------------------------------

Outcome generic_dense() {
  std::mt19937_64 rng(4004);
  const std::pair<int, int> expect[] = {{2, 2}, {16, 6}};
  std::string detail;
  for (int d = 1; d <= 2; ++d) {
    int hits = 0;
    for (int k = 0; k < kGenericDraws; ++k) {
      BiRational f{BiPoly::constant(Rational(1)), dense_denominator(rng, d)};
      DiagonalAnnihilator a = algebraic_diagonal(f);
      if (a.phi.bideg() == expect[d - 1]) ++hits;
      if (!certify(f, a, kRandomCertifyTerms)) return {Status::Fail, "d=" + std::to_string(d) + " draw does not certify"};
    }
    detail += "d=" + std::to_string(d) + ": " + std::to_string(hits) + "/" + std::to_string(kGenericDraws) + " " +
              bideg_string(expect[d - 1]) + "  ";
    if (hits < kGenericHitsNeeded) return {Status::Fail, detail};
  }
  return {Status::Pass, detail};
}

// --- 5 -------------------------------------------------------------------

// Sparse denominator 1 + three random terms with bidegree at most (3, 4),
// and a small random numerator.
BiRational random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ex(0, 3), ey(0, 4), coef(-4, 4);
  while (true) {
    BiPoly b = BiPoly::constant(Rational(1 + std::abs(coef(rng))));
    for (int k = 0; k < 3; ++k) {
      int i = ex(rng), j = ey(rng);
      if (i + j == 0) continue;
      b.add_term(i, j, Rational(coef(rng)));
    }
    BiPoly a;
    for (int k = 0; k < 2; ++k) a.add_term(ex(rng) % 2, ey(rng) % 2, Rational(coef(rng)));
    if (a.is_zero() || b.deg_y() < 1 || sgn(b.coeff(0, 0)) == 0) continue;
    BiRational f = normalize_birational(a, b);
    if (f.den.deg_y() < 1 || sgn(f.den.coeff(0, 0)) == 0) continue;
    return f;
  }
}

Outcome bound_certification() {
  std::mt19937_64 rng(5005);
  auto t = clock_type::now();
  for (int k = 0; k < kRandomSuiteSize; ++k) {
    BiRational f = random_instance(rng);
    std::string tag = "instance " + std::to_string(k);
    ResiduePoly r = algebraic_residues(f);
    if (r.poly.deg_y() > r.bounds.z_bound || r.poly.deg_x() > r.bounds.x_bound) return {Status::Fail, tag + ": residue bound exceeded"};
    DiagonalAnnihilator a = algebraic_diagonal(f);
    auto [tb, db] = a.bounds.phi_bound();
    if (a.phi.deg_x() > tb || a.phi.deg_y() > db) return {Status::Fail, tag + ": diagonal bound exceeded"};
    if (!certify(f, a, kRandomCertifyTerms)) return {Status::Fail, tag + ": certify failed"};
  }
  return {Status::Pass, std::to_string(kRandomSuiteSize) + " instances, bounds held, certified to 40 (" + fixed(seconds_since(t)) + " s)"};
}

// --- 6 -------------------------------------------------------------------

Outcome composed_oracle() {
  using Poly = UniPoly<Rational>;
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<int> deg(2, 8);
  std::uniform_int_distribution<long> coef(-5, 5);
  int done = 0;
  while (done < kComposedRandomCases) {
    int d = deg(rng);
    std::vector<Rational> c(static_cast<std::size_t>(d + 1));
    for (auto& a : c) a = coef(rng);
    c.back() = 1;
    Poly p(c);
    if (gcd(p, p.derivative()).degree() > 0) continue;
    int cc = 1 + static_cast<int>(rng() % static_cast<unsigned long>(std::min(4, d)));
    if (pure_composed_sum(p, cc).poly != oracles::subset_sum_oracle(p, cc))
      return {Status::Fail, "random case " + std::to_string(done) + " differs from the subset-sum oracle"};
    ++done;
  }
  std::uniform_int_distribution<long> root(-6, 6);
  int rooted = 0;
  for (int trial = 0; trial < 10; ++trial) {
    int d = 2 + trial % 7;
    std::vector<long> roots;
    Poly p{1};
    for (int i = 0; i < d; ++i) {
      roots.push_back(root(rng));
      p = p * oracles::lin(roots.back());
    }
    for (int cc = 1; cc <= std::min(d, 4); ++cc, ++rooted)
      if (pure_composed_sum(p, cc).poly != oracles::product_over_subsets(roots, cc))
        return {Status::Fail, "rational-rooted case differs from root listing"};
  }
  return {Status::Pass, std::to_string(done) + " random cases and " + std::to_string(rooted) + " rooted cases exact"};
}

// --- 7 -------------------------------------------------------------------

const char* const kStepSets[] = {"{1,-1}", "{1,0,-1}", "{2,1,-2}", "{3,-1}"};

TruncSeries<Rational> as_series(const std::vector<Integer>& v) {
  TruncSeries<Rational> s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = Rational(v[i]);
  return s;
}

bool identities_hold(const StepSet& s, const WalkSeries& w) {
  std::size_t prec = w.B.precision();
  // x E'/E = B - 1
  TruncSeries<Rational> lhs = series_div(w.E.derivative(), w.E.truncate(prec - 1));
  for (std::size_t k = 1; k < prec; ++k)
    if (lhs[k - 1] != w.B[k]) return false;
  if (w.B[0] != 1) return false;
  // -x (log((1 - |S| x) M))' = A
  TruncSeries<Rational> one_minus(prec);
  one_minus[0] = Rational(1);
  one_minus[1] = Rational(-static_cast<long>(s.altitudes.size()));
  TruncSeries<Rational> lg = series_log(one_minus * w.M).derivative();
  for (std::size_t k = 1; k < prec; ++k)
    if (-lg[k - 1] != w.A[k]) return false;
  return true;
}

Outcome walks_cross_validation() {
  for (const char* text : kStepSets) {
    StepSet s = StepSet::parse(text);
    WalkSeries w = expand_walks(s, kWalkLength);
    NaiveCounts c = naive_counts(s, kWalkLength);
    if (w.B != as_series(c.bridges) || w.E != as_series(c.excursions) || w.M != as_series(c.meanders) ||
        w.A != as_series(c.negative))
      return {Status::Fail, std::string(text) + ": differs from the naive table"};
    if (!identities_hold(s, w)) return {Status::Fail, std::string(text) + ": functional identity fails"};
  }
  return {Status::Pass, "4 step sets, N=200 exact, identities hold"};
}

// --- 8 -------------------------------------------------------------------

Outcome telescoper_contracts() {
  std::string detail;
  for (const char* text : kStepSets) {
    StepSet s = StepSet::parse(text);
    for (bool meander : {false, true}) {
      BiRational f = meander ? meander_input(s) : bridge_input(s);
      f = normalize_birational(f.num, f.den);
      Telescoper t = telescoper(f, s.d + 2);
      if (!oracles::telescoper_identity(f, t)) return {Status::Fail, std::string(text) + ": identity fails"};
      if (!meander && t.ode.order() > s.d) return {Status::Fail, std::string(text) + ": order exceeds d"};
    }
  }
  // {(1,2),(1,1),(1,-2)}: d = 4; reference order 2d-1 = 7. A smaller
  // telescoper is accepted under the waiver and reported.
  StepSet s = StepSet::parse("{(1,2),(1,1),(1,-2)}");
  BiRational f = bridge_input(s);
  f = normalize_birational(f.num, f.den);
  Telescoper t = telescoper(f, 2 * s.d);
  if (!oracles::telescoper_identity(f, t)) return {Status::Fail, "{(1,2),(1,1),(1,-2)}: identity fails"};
  int order = t.ode.order(), degree = t.ode.degree();
  detail = "identities verified; {(1,2),(1,1),(1,-2)} bridge order " + std::to_string(order) + ", degree " +
           std::to_string(degree);
  if (order > 2 * s.d - 1) return {Status::Fail, detail + " exceeds 7"};
  if (order == 2 * s.d - 1 && degree == s.d * s.d + 3 * s.d - 2) return {Status::Pass, detail};
  return {Status::Pass, detail + " (waiver: below the reference 7 / 12)"};
}

// --- 9 -------------------------------------------------------------------

double best_of(const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < kTimingRepeats; ++r) {
    auto t = clock_type::now();
    fn();
    best = std::min(best, seconds_since(t));
  }
  return best;
}

Outcome performance() {
  StepSet s = StepSet::parse("{2,1,-2}");
  BiRational f = bridge_input(s);
  Telescoper t = telescoper(normalize_birational(f.num, f.den), s.d + 1);
  LinRec rec = ode_to_recurrence(t.ode);
  std::size_t need = required_initial_terms(rec);
  std::vector<Integer> init = naive_counts(s, static_cast<int>(need), true, false).bridges;
  init.resize(need);

  const int rec_ns[] = {1000, 2000, 4000};
  const int naive_ns[] = {500, 1000, 2000};
  double rt[3], nt[3];
  std::vector<Integer> fast;
  for (int k = 0; k < 3; ++k)
    rt[k] = best_of([&] { fast = unroll_integer(rec, init, static_cast<std::size_t>(rec_ns[k]) + 1); });
  std::vector<Integer> slow;
  for (int k = 0; k < 3; ++k) nt[k] = best_of([&] { slow = naive_counts(s, naive_ns[k], true, false).bridges; });
  fast.resize(slow.size());
  if (fast != slow) return {Status::Fail, "recurrence and naive counts differ"};

  double rg = std::max(rt[1] / rt[0], rt[2] / rt[1]);
  double ng = std::min(nt[1] / nt[0], nt[2] / nt[1]);
  std::string detail = "recurrence " + fixed(rt[0], 3) + "/" + fixed(rt[1], 3) + "/" + fixed(rt[2], 3) +
                       " s (max growth " + fixed(rg) + "x), naive " + fixed(nt[0], 3) + "/" + fixed(nt[1], 3) + "/" +
                       fixed(nt[2], 3) + " s (min growth " + fixed(ng) + "x)";
  bool monotone = rt[0] < rt[1] && rt[1] < rt[2] && nt[0] < nt[1] && nt[1] < nt[2];
  if (!monotone) return {Status::Fail, detail + "; timings not monotone"};
  if (rg <= kRecurrenceGrowthMax && ng >= kNaiveGrowthMin) return {Status::Pass, detail};
  return {Status::SoftFail, detail + "; growth thresholds missed (report only)"};
}

const char* label(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    case Status::SoftFail: return "SOFT";
  }
  return "?";
}

}  // namespace

int main() {
  double budget = kDefaultF4Budget;
  if (const char* env = std::getenv("DIAGWALK_F4_BUDGET")) budget = std::atof(env);

  struct Item {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {1, "residue golden family", residue_family},
      {2, "diagonal golden", diagonal_golden},
      {3, "family bidegrees", [budget] { return family_bidegrees(budget); }},
      {4, "generic dense degrees", generic_dense},
      {5, "bound certification", bound_certification},
      {6, "composed-sum oracle", composed_oracle},
      {7, "walks cross-validation", walks_cross_validation},
      {8, "telescoper contracts", telescoper_contracts},
      {9, "performance trend", performance},
  };
  int failures = 0;
  for (const auto& item : items) {
    Outcome o;
    auto t = clock_type::now();
    try {
      o = item.run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    if (o.status == Status::Fail) ++failures;
    std::cout << label(o.status) << "  " << item.id << "  " << item.name << ": " << o.detail << "  [" << fixed(seconds_since(t))
              << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
