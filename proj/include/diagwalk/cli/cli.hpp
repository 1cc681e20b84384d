#pragma once

#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diagwalk/composed/composed.hpp"
#include "diagwalk/diagonal/diagonal.hpp"
#include "diagwalk/io/expr.hpp"
#include "diagwalk/io/format.hpp"
#include "diagwalk/residues/residues.hpp"
#include "diagwalk/walks/walks.hpp"

namespace diagwalk {

/// Process exit status per error class.
enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitPrecondition = 3, kExitAlgorithmic = 4 };

inline int exit_code_for(ErrorClass c) {
  switch (c) {
    case ErrorClass::Parse: return kExitParse;
    case ErrorClass::Precondition: return kExitPrecondition;
    case ErrorClass::Algorithmic: return kExitAlgorithmic;
  }
  return kExitAlgorithmic;
}

inline const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::Parse: return "parse";
    case ErrorClass::Precondition: return "precondition";
    case ErrorClass::Algorithmic: return "algorithmic";
  }
  return "algorithmic";
}

namespace detail {

struct CliJob {
  bool json = false;
  // residues
  std::string residues_expr;
  bool residues_squarefree = false;
  bool residues_factors = false;
  // composed-sum
  std::string composed_poly;
  int composed_c = 0;
  // diagonal
  std::string diagonal_expr;
  std::optional<long> diagonal_series;
  std::optional<long> diagonal_certify;
  bool diagonal_optimize = false;
  // walks
  std::string walks_steps;
  long walks_n = 0;
  bool walks_bridges = false, walks_excursions = false, walks_meanders = false, walks_all = false;
  bool walks_naive = false, walks_bench = false, walks_fallback = false;
};

inline std::string read_input(const std::string& arg, std::istream& in) {
  if (arg != "-") return arg;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline const std::vector<std::string>& input_variables() {
  static const std::vector<std::string> vars{"x", "y"};
  return vars;
}

inline Json json_header(const char* command) { return Json{{"schema_version", kJsonSchemaVersion}, {"command", command}}; }

inline void emit_json(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

inline int run_residues(const CliJob& job, std::istream& in, std::ostream& out) {
  BiRational f = parse_rational_function(read_input(job.residues_expr, in), input_variables());
  ResidueOptions opt;
  opt.squarefree_output = job.residues_squarefree;
  ResiduePoly r = algebraic_residues(f, opt);
  if (job.json) {
    Json j = json_header("residues");
    j["result"] = bipoly_to_json(r.poly, "x", "z");
    j["bounds"] = Json{{"deg_x", r.bounds.x_bound}, {"deg_z", r.bounds.z_bound}};
    if (job.residues_factors) {
      Json fs = Json::array();
      for (std::size_t k = 0; k < r.factors.size(); ++k)
        fs.push_back(Json{{"multiplicity", r.multiplicities[k]}, {"poly", bipoly_to_json(r.factors[k], "x", "z")}});
      j["factors"] = fs;
    }
    emit_json(out, j);
    return kExitOk;
  }
  out << format_bipoly(r.poly, "x", "z") << "\n";
  if (job.residues_factors)
    for (std::size_t k = 0; k < r.factors.size(); ++k)
      out << "factor " << r.multiplicities[k] << ": " << format_bipoly(r.factors[k], "x", "z") << "\n";
  return kExitOk;
}

inline int run_composed(const CliJob& job, std::istream& in, std::ostream& out) {
  BiRational f = parse_rational_function(read_input(job.composed_poly, in), input_variables());
  if (f.den.deg_x() > 0 || f.den.deg_y() > 0) fail(ErrorCode::OutOfRange, "composed-sum: input is not a polynomial");
  BiPoly p = f.num * (Rational(1) / f.den.coeff(0, 0));
  BiPoly result;
  std::size_t degree = 0;
  if (p.deg_x() <= 0) {
    UniPoly<Rational> u = p.eval_x(Rational(0));
    if (u.is_zero()) fail(ErrorCode::ZeroInput, "composed-sum: zero polynomial");
    auto s = pure_composed_sum(u.monic(), job.composed_c);
    result = normalize_annihilator(BiPoly::from_y(s.poly));
    degree = s.big_d;
  } else {
    auto s = pure_composed_sum_bi(p, job.composed_c);
    result = s.poly;
    degree = s.big_d;
  }
  if (job.json) {
    Json j = json_header("composed-sum");
    j["c"] = job.composed_c;
    j["degree"] = degree;
    j["result"] = bipoly_to_json(result, "x", "y");
    emit_json(out, j);
    return kExitOk;
  }
  out << format_bipoly(result, "x", "y") << "\n";
  return kExitOk;
}

inline int run_diagonal(const CliJob& job, std::istream& in, std::ostream& out, std::ostream& err) {
  BiRational f = parse_rational_function(read_input(job.diagonal_expr, in), input_variables());
  for (const auto& v : {job.diagonal_series, job.diagonal_certify})
    if (v && *v < 1) fail(ErrorCode::OutOfRange, "diagonal: term counts must be positive");
  DiagonalOptions opt;
  opt.optimize = job.diagonal_optimize;
  DiagonalAnnihilator a = algebraic_diagonal(f, opt);
  std::optional<TruncSeries<Rational>> series;
  if (job.diagonal_series) series = diagonal_series_naive(f, static_cast<std::size_t>(*job.diagonal_series));
  bool certified = true;
  if (job.diagonal_certify) certified = certify(f, a, static_cast<std::size_t>(*job.diagonal_certify));
  if (job.json) {
    Json j = json_header("diagonal");
    j["result"] = bipoly_to_json(a.phi, "t", "D");
    j["bidegree"] = Json::array({a.phi.deg_x(), a.phi.deg_y()});
    auto [bx, by] = a.bounds.phi_bound();
    j["bound"] = Json::array({bx, by});
    j["optimized"] = a.optimized;
    if (series) j["series"] = series_to_json(*series);
    if (job.diagonal_certify) j["certified"] = Json{{"terms", *job.diagonal_certify}, {"passed", certified}};
    emit_json(out, j);
  } else {
    out << format_bipoly(a.phi, "t", "D") << "\n";
    if (series) out << "series: " << format_series(*series) << "\n";
    if (job.diagonal_certify && certified) out << "certified: " << *job.diagonal_certify << " terms\n";
  }
  if (!certified) {
    err << "error: certification failed at " << *job.diagonal_certify << " terms\n";
    return kExitAlgorithmic;
  }
  return kExitOk;
}

inline TruncSeries<Rational> counts_series(const std::vector<Integer>& v) {
  TruncSeries<Rational> s(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) s[k] = Rational(v[k]);
  return s;
}

inline int run_walks(const CliJob& job, std::istream& in, std::ostream& out) {
  StepSet s = StepSet::parse(read_input(job.walks_steps, in));
  if (job.walks_n < 1) fail(ErrorCode::OutOfRange, "walks: N must be positive");
  int n = static_cast<int>(job.walks_n);
  if (job.walks_bench) {
    std::vector<int> ns;
    for (int m = std::max(1, n / 4); m <= n; m *= 2) ns.push_back(m);
    if (ns.back() != n) ns.push_back(n);
    BenchReport r = bench_methods(s, ns);
    bool agree = true;
    for (const auto& row : r.rows) agree = agree && row.agree;
    if (job.json) {
      Json j = json_header("walks-bench");
      j["steps"] = s.to_string();
      j["precompute_seconds"] = r.precompute_seconds;
      Json rows = Json::array();
      for (const auto& row : r.rows)
        rows.push_back(Json{{"N", row.n}, {"naive_seconds", row.naive_seconds}, {"recurrence_seconds", row.recurrence_seconds}, {"agree", row.agree}});
      j["rows"] = rows;
      emit_json(out, j);
    } else {
      out << "steps " << s.to_string() << ", precomputation " << r.precompute_seconds << " s\n";
      out << "N naive_s recurrence_s agree\n";
      for (const auto& row : r.rows)
        out << row.n << " " << row.naive_seconds << " " << row.recurrence_seconds << " " << (row.agree ? "yes" : "no") << "\n";
    }
    if (!agree) fail(ErrorCode::CertificationFailed, "walks: methods disagree");
    return kExitOk;
  }

  TruncSeries<Rational> b, e, m;
  std::string method = "recurrence";
  if (job.walks_naive) {
    NaiveCounts c = naive_counts(s, n);
    b = counts_series(c.bridges);
    e = counts_series(c.excursions);
    m = counts_series(c.meanders);
    method = "naive";
  } else {
    WalkOptions opt;
    opt.naive_fallback = job.walks_fallback;
    WalkSeries w = expand_walks(s, n, opt);
    b = w.B;
    e = w.E;
    m = w.M;
    if (w.used_fallback) method = "naive";
  }
  bool any = job.walks_bridges || job.walks_excursions || job.walks_meanders;
  bool all = job.walks_all || !any;
  std::vector<std::pair<const char*, const TruncSeries<Rational>*>> picked;
  if (all || job.walks_bridges) picked.emplace_back("B", &b);
  if (all || job.walks_excursions) picked.emplace_back("E", &e);
  if (all || job.walks_meanders) picked.emplace_back("M", &m);
  if (job.json) {
    Json j = json_header("walks");
    j["steps"] = s.to_string();
    j["N"] = n;
    j["method"] = method;
    for (const auto& [name, ser] : picked) j[name] = series_to_json(*ser);
    emit_json(out, j);
    return kExitOk;
  }
  for (const auto& [name, ser] : picked) {
    if (picked.size() > 1) out << name << ": ";
    out << format_series(*ser) << "\n";
  }
  return kExitOk;
}

}  // namespace detail

/// Entry point of the command-line tool; returns the process exit status.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  detail::CliJob job;
  CLI::App app{"Annihilating polynomials of residues, composed sums and diagonals; lattice walk series"};
  app.name("diagwalk");
  app.require_subcommand(1);
  app.add_flag("--json", job.json, "machine-readable output");

  auto* res = app.add_subcommand("residues", "polynomial in (x, z) vanishing at the residues of f in y");
  res->add_option("expr", job.residues_expr, "rational function in x, y ('-' reads stdin)")->required();
  res->add_flag("--squarefree", job.residues_squarefree, "squarefree part of the result");
  res->add_flag("--factors", job.residues_factors, "also list one factor per denominator multiplicity");

  auto* comp = app.add_subcommand("composed-sum", "polynomial whose roots are the sums of c distinct roots");
  comp->add_option("poly", job.composed_poly, "polynomial in y, optionally in x ('-' reads stdin)")->required();
  comp->add_option("c", job.composed_c, "number of roots per sum")->required();

  auto* diag = app.add_subcommand("diagonal", "annihilating polynomial Phi(t, D) of the diagonal");
  diag->add_option("expr", job.diagonal_expr, "rational function in x, y ('-' reads stdin)")->required();
  diag->add_option("--series", job.diagonal_series, "print the first N diagonal coefficients");
  diag->add_option("--certify", job.diagonal_certify, "check Phi against the first N coefficients");
  diag->add_flag("--optimize", job.diagonal_optimize, "treat the pole at y = 0 separately");

  auto* walks = app.add_subcommand("walks", "counting series of bridges, excursions and meanders");
  walks->add_option("steps", job.walks_steps, "altitudes such as \"1,-1\" or \"{(1,2),(1,1),(1,-2)}\"")->required();
  walks->add_option("-N", job.walks_n, "largest walk length")->required();
  walks->add_flag("--bridges", job.walks_bridges, "walks ending at altitude 0");
  walks->add_flag("--excursions", job.walks_excursions, "bridges that never go below 0");
  walks->add_flag("--meanders", job.walks_meanders, "walks that never go below 0");
  walks->add_flag("--all", job.walks_all, "all three series (the default)");
  walks->add_flag("--naive", job.walks_naive, "direct step recurrence instead of telescoping");
  walks->add_flag("--bench", job.walks_bench, "time naive against recurrence expansion of the bridges");
  walks->add_flag("--fallback", job.walks_fallback, "use the naive method if no telescoper is found");

  std::vector<const char*> argv{"diagwalk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*res) return detail::run_residues(job, in, out);
    if (*comp) return detail::run_composed(job, in, out);
    if (*diag) return detail::run_diagonal(job, in, out, err);
    return detail::run_walks(job, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (job.json) {
      Json j{{"schema_version", kJsonSchemaVersion},
             {"error", {{"class", error_class_name(e.category())}, {"code", error_code_name(e.code())}, {"message", e.what()}}}};
      if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        j["error"]["line"] = pe->line();
        j["error"]["column"] = pe->column();
      }
      detail::emit_json(out, j);
    }
    return exit_code_for(e.category());
  }
}

}  // namespace diagwalk
