#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "diagwalk/cli/cli.hpp"
#include "test_support.hpp"

using namespace diagwalk;
using testsupport::bp;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

BiRational parse(const std::string& s) { return parse_rational_function(s, {"x", "y"}); }

BiPoly poly(const std::string& s, const std::vector<std::string>& vars = {"x", "y"}) {
  BiRational f = parse_rational_function(s, vars);
  EXPECT_EQ(f.den, BiPoly::constant(Rational(1)));
  return f.num;
}

ParseError parse_error(const std::string& s) {
  try {
    parse(s);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for " << s;
  return ParseError(ErrorCode::Syntax, "", 0, 0);
}

}  // namespace

TEST(Parser, Basics) {
  BiRational f = parse("1/(1-x-y)");
  EXPECT_TRUE(f == (BiRational{BiPoly::constant(Rational(1)), bp({{0, 0, 1}, {1, 0, -1}, {0, 1, -1}})}));
  EXPECT_GT(f.den.lc_y().leading(), 0);
  BiRational g = parse("y^2/(y - y^2 - x)^3");
  EXPECT_TRUE(g == (BiRational{BiPoly::monomial(0, 2, Rational(1)), bp({{0, 1, 1}, {0, 2, -1}, {1, 0, -1}}).pow(3)}));
  EXPECT_EQ(poly("3/6*x"), BiPoly::monomial(1, 0, Rational(1, 2)));
}

TEST(Parser, Precedence) {
  EXPECT_EQ(poly("-x^2"), BiPoly::monomial(2, 0, Rational(-1)));
  EXPECT_EQ(poly("2^3^2"), BiPoly::constant(Rational(512)));
  EXPECT_EQ(poly("x/2/3"), BiPoly::monomial(1, 0, Rational(1, 6)));
  EXPECT_EQ(poly("1-2-3"), BiPoly::constant(Rational(-4)));
  EXPECT_EQ(poly("2*-y"), BiPoly::monomial(0, 1, Rational(-2)));
  EXPECT_EQ(poly("(x+y)^(1+1)"), bp({{2, 0, 1}, {1, 1, 2}, {0, 2, 1}}));
  EXPECT_EQ(poly("x^0"), BiPoly::constant(Rational(1)));
}

TEST(Parser, Errors) {
  ParseError a = parse_error("x^(d-1)");
  EXPECT_EQ(a.code(), ErrorCode::UnknownVariable);
  EXPECT_EQ(a.column(), 4);
  ParseError b = parse_error("1 +\n  * 2");
  EXPECT_EQ(b.code(), ErrorCode::Syntax);
  EXPECT_EQ(b.line(), 2);
  EXPECT_EQ(b.column(), 3);
  EXPECT_EQ(parse_error("2x").code(), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("1.5").code(), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("").code(), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("(x").code(), ErrorCode::Syntax);
  EXPECT_EQ(parse_error("x^-1").code(), ErrorCode::BadExponent);
  EXPECT_EQ(parse_error("x^y").code(), ErrorCode::BadExponent);
  EXPECT_EQ(parse_error("1/(x-x)").code(), ErrorCode::ZeroDenominator);
  EXPECT_EQ(error_class(ErrorCode::ZeroDenominator), ErrorClass::Precondition);
}

TEST(Printer, Canonical) {
  EXPECT_EQ(format_bipoly(bp({{0, 2, 1}, {1, 2, -4}, {0, 0, -1}}), "t", "D"), "(1-4*t)*D^2 - 1");
  EXPECT_EQ(format_bipoly(bp({{0, 3, 1}, {0, 2, -14}, {0, 1, 63}, {0, 0, -90}})), "y^3 - 14*y^2 + 63*y - 90");
  EXPECT_EQ(format_bipoly(BiPoly{}), "0");
  EXPECT_EQ(format_bipoly(BiPoly::monomial(2, 3, Rational(-3, 2))), "-3/2*x^2*y^3");
  EXPECT_EQ(format_birational(parse("1/(1-x-y)")), "(-1)/(y - 1 + x)");
}

TEST(Printer, RoundTripFixedPoint) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> dist(-6, 6);
  for (int k = 0; k < 60; ++k) {
    BiPoly p;
    for (int i = 0; i <= k % 4; ++i)
      for (int j = 0; j <= k % 5; ++j)
        if (dist(rng) % 2 == 0) {
          Rational c(dist(rng), 1 + (dist(rng) + 6) % 5);
          c.canonicalize();
          p.add_term(i, j, c);
        }
    std::string text = format_bipoly(p, "t", "D");
    BiPoly back = poly(text, {"t", "D"});
    EXPECT_EQ(back, p) << text;
    EXPECT_EQ(format_bipoly(back, "t", "D"), text);
  }
  for (const char* s : {"1/(1-x-y)", "x^2/(3*y-x)^2", "(x+1/2)/(y^3-7)"}) {
    std::string once = format_birational(parse(s));
    EXPECT_EQ(format_birational(parse(once)), once);
  }
}

TEST(Cli, SpecExamples) {
  CliRun d = run({"diagonal", "1/(1-x-y)"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "(1-4*t)*D^2 - 1\n");
  CliRun w = run({"walks", "1,-1", "-N", "8", "--excursions"});
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(w.out, "1, 0, 1, 0, 2, 0, 5, 0, 14\n");
  CliRun c = run({"composed-sum", "(y-1)*(y-2)*(y-4)", "2"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, format_bipoly(poly("(y-3)*(y-5)*(y-6)")) + "\n");
}

TEST(Cli, Residues) {
  CliRun r = run({"residues", "y^2/(y - y^2 - x)^3"});
  EXPECT_EQ(r.code, 0);
  // (1-4x)^5 z^2 - (1+2x)^2
  EXPECT_EQ(poly(r.out, {"x", "z"}), poly("(1-4*x)^5*z^2 - (1+2*x)^2", {"x", "z"}));
  CliRun f = run({"residues", "--factors", "1/(y*(y-x)^2)"});
  EXPECT_EQ(f.code, 0);
  EXPECT_NE(f.out.find("factor 2:"), std::string::npos);
}

TEST(Cli, DiagonalSeriesAndCertify) {
  CliRun d = run({"diagonal", "1/(1-x-y)", "--series", "5", "--certify", "30"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "(1-4*t)*D^2 - 1\nseries: 1, 2, 6, 20, 70\ncertified: 30 terms\n");
  CliRun o = run({"diagonal", "(x^2+3)/(1-x-y-y^3)", "--optimize", "--certify", "20"});
  EXPECT_EQ(o.code, 0);
}

TEST(Cli, Stdin) {
  CliRun d = run({"diagonal", "-"}, "1/(1-x\n -y)\n");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "(1-4*t)*D^2 - 1\n");
  CliRun w = run({"walks", "-", "-N", "4", "--bridges"}, "{1,0,-1}\n");
  EXPECT_EQ(w.out, "1, 1, 3, 7, 19\n");
}

TEST(Cli, JsonMatchesText) {
  const std::vector<std::vector<std::string>> jobs{
      {"diagonal", "1/(1-x-y)"},
      {"diagonal", "1/(1-x-y-x*y^2)"},
      {"composed-sum", "(y-x)*(y-2*x)*(y-x^2)", "2"},
      {"residues", "x/(y^2-x*y-1)^2"}};
  for (const auto& job : jobs) {
    CliRun text = run(job);
    std::vector<std::string> jargs{"--json"};
    jargs.insert(jargs.end(), job.begin(), job.end());
    CliRun js = run(jargs);
    ASSERT_EQ(text.code, 0) << text.err;
    ASSERT_EQ(js.code, 0) << js.err;
    Json j = Json::parse(js.out);
    EXPECT_EQ(j["schema_version"], 1);
    auto vars = j["result"]["variables"].get<std::vector<std::string>>();
    std::string first = text.out.substr(0, text.out.find('\n'));
    EXPECT_EQ(poly(first, vars), bipoly_from_json(j["result"])) << job[0];
  }
  CliRun w = run({"--json", "walks", "2,1,-2", "-N", "12"});
  Json j = Json::parse(w.out);
  CliRun t = run({"walks", "2,1,-2", "-N", "12", "--meanders"});
  EXPECT_EQ(format_series(series_from_json(j["M"])) + "\n", t.out);
}

TEST(Cli, WalksNaiveAgrees) {
  for (const char* flag : {"--bridges", "--excursions", "--meanders", "--all"}) {
    CliRun a = run({"walks", "{(1,2),(1,1),(1,-2)}", "-N", "40", flag});
    CliRun b = run({"walks", "{(1,2),(1,1),(1,-2)}", "-N", "40", flag, "--naive"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << flag;
  }
  CliRun bench = run({"walks", "2,1,-2", "-N", "40", "--bench"});
  EXPECT_EQ(bench.code, 0);
  EXPECT_NE(bench.out.find("yes"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  CliRun p = run({"diagonal", "1/(1-x-y"});
  EXPECT_EQ(p.code, kExitParse);
  EXPECT_NE(p.err.find("column 9"), std::string::npos);
  EXPECT_EQ(run({"diagonal", "1/x"}).code, kExitPrecondition);
  EXPECT_EQ(run({"walks", "1,2", "-N", "5"}).code, kExitPrecondition);
  EXPECT_EQ(run({"walks", "1,-1", "-N", "0"}).code, kExitPrecondition);
  EXPECT_EQ(run({"walks", "1,x", "-N", "5"}).code, kExitParse);
  EXPECT_EQ(run({"composed-sum", "1/(y-1)", "1"}).code, kExitPrecondition);
  EXPECT_EQ(run({"composed-sum", "y^2-1", "5"}).code, kExitPrecondition);
  EXPECT_EQ(run({}).code, kExitParse);
  EXPECT_EQ(run({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(exit_code_for(error_class(ErrorCode::CertificationFailed)), kExitAlgorithmic);
  EXPECT_EQ(exit_code_for(error_class(ErrorCode::NoTelescoper)), kExitAlgorithmic);
}

TEST(Cli, JsonErrors) {
  CliRun p = run({"--json", "diagonal", "x^(d-1)"});
  EXPECT_EQ(p.code, kExitParse);
  Json j = Json::parse(p.out);
  EXPECT_EQ(j["error"]["class"], "parse");
  EXPECT_EQ(j["error"]["code"], "unknown_variable");
  EXPECT_EQ(j["error"]["line"], 1);
  EXPECT_EQ(j["error"]["column"], 4);
  CliRun q = run({"--json", "diagonal", "1/(x*y)"});
  EXPECT_EQ(Json::parse(q.out)["error"]["class"], "precondition");
}
