#include "algebra_spec.hpp"
#include "suite.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace voacheck;
using namespace voacheck::cli;

namespace {

std::string data(const std::string& f) { return std::string(VOACHECK_TEST_DATA) + "/" + f; }

SuiteConfig config(const std::string& suite) {
  SuiteConfig c;
  c.suite = suite;
  return c;
}

template <class F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError";
  return ParseError(0, 0, "");
}

template <class F>
SpecError spec_error(F&& f) {
  try {
    f();
  } catch (const SpecError& e) {
    return e;
  }
  ADD_FAILURE() << "no SpecError";
  return SpecError("", {});
}

}  // namespace

TEST(AlgebraSpec, TwoDimAlgebra) {
  auto s = parse_algebra_spec(data("comm2.alg"));
  ASSERT_EQ(s.names, (std::vector<std::string>{"1", "a"}));
  EXPECT_EQ(s.unit, 0);
  EXPECT_EQ(s.product(1, 1), Vec::basis(0));
  EXPECT_EQ(s.product(0, 1), Vec::basis(1));  // unit products are implied
  auto p = parse_algebra_spec(data("truncated_poly.alg"));
  EXPECT_EQ(p.dim(), 3);
  EXPECT_EQ(p.product(2, 1), Vec{});  // mirrored from mul a b
}

TEST(AlgebraSpec, CoefficientsAndSigns) {
  auto s = parse_algebra_text("basis e x\nunit e\nmul x x = -1/2*e + 3*x  # comment\n");
  Vec want;
  want.add(0, frac(-1, 2));
  want.add(1, 3);
  EXPECT_EQ(s.product(1, 1), want);
  auto z = parse_algebra_text("basis 1 n\nunit 1\nmul n n = 0\n");
  EXPECT_TRUE(z.product(1, 1).is_zero());
}

TEST(AlgebraSpec, SyntaxErrorsCarryPosition) {
  auto empty = parse_error([] { parse_algebra_spec(data("empty.alg")); });
  EXPECT_EQ(empty.line, 1);
  EXPECT_EQ(empty.column, 1);
  auto star = parse_error([] { parse_algebra_spec(data("syntax.alg")); });
  EXPECT_EQ(star.line, 3);
  EXPECT_EQ(star.column, 16);
  auto unknown = parse_error([] { parse_algebra_text("basis 1 a\nunit 1\nmul a c = 1\n"); });
  EXPECT_EQ(unknown.line, 3);
  EXPECT_EQ(unknown.column, 7);
  auto order = parse_error([] { parse_algebra_text("unit 1\nbasis 1\n"); });
  EXPECT_EQ(order.line, 1);
  auto twice = parse_error([] { parse_algebra_text("basis 1 a\nunit 1\nmul a a = 1\nmul a a = a\n"); });
  EXPECT_EQ(twice.line, 4);
  auto no_unit = parse_error([] { parse_algebra_text("basis 1 a\nmul a a = 1\n"); });
  EXPECT_NE(std::string(no_unit.what()).find("unit"), std::string::npos);
  EXPECT_THROW(parse_algebra_text("basis 1 a\nunit 1\nmul a a = x*a\n"), ParseError);
  EXPECT_THROW(parse_algebra_text("basis 1 a\nunit 1\nmul a a =\n"), ParseError);
  EXPECT_THROW(parse_algebra_text("basis 1 a\nunit 1\nmul a a = 1 a\n"), ParseError);
}

TEST(AlgebraSpec, SemanticErrorsNameAxiomAndWitness) {
  auto na = spec_error([] { parse_algebra_spec(data("nonassoc.alg")); });
  ASSERT_FALSE(na.violations.empty());
  EXPECT_EQ(na.violations.front().axiom, "associativity");
  EXPECT_EQ(na.violations.front().witness, (std::vector<int>{1, 1, 2}));
  auto unit = spec_error([] { parse_algebra_spec(data("bad_unit.alg")); });
  EXPECT_EQ(unit.violations.front().axiom, "unit");
  auto comm = spec_error([] { parse_algebra_text("basis 1 a b\nunit 1\nmul a b = a\nmul b a = b\n"); });
  EXPECT_EQ(comm.violations.front().axiom, "commutativity");
}

TEST(Suites, AllBuiltinSuitesMeetExpectations) {
  for (const auto& name : suite_names()) {
    auto r = run_suite(config(name));
    EXPECT_TRUE(r.ok()) << text_report(config(name), r);
    EXPECT_EQ(r.pass + r.fail + r.inconclusive, static_cast<int>(r.items.size()));
  }
}

TEST(Suites, AlgebraFilesAndParameters) {
  auto cfg = config("badlambda");
  cfg.algebra = data("truncated_poly.alg");
  cfg.z = frac(1, 2);
  auto r = run_suite(cfg);
  EXPECT_TRUE(r.ok()) << text_report(cfg, r);
  auto dich = config("virasoro-dichotomy");
  dich.c = frac(1, 2);
  dich.c_given = true;
  auto d = run_suite(dich);
  EXPECT_TRUE(d.ok()) << text_report(dich, d);
  EXPECT_EQ(d.items.size(), 2u);  // omega_3 omega and the certificate
  auto theta = config("theta-f");
  theta.c = 1;
  theta.c_given = true;
  EXPECT_THROW(run_suite(theta), std::invalid_argument);  // the unit lies in the orbit
  auto bad = config("appendix-2dim");
  bad.algebra = data("comm2.alg");
  EXPECT_THROW(run_suite(bad), std::invalid_argument);
  EXPECT_THROW(run_suite(config("no-such-suite")), std::invalid_argument);
  auto z = config("badlambda");
  z.z = 0;
  EXPECT_THROW(run_suite(z), std::invalid_argument);
}

TEST(Suites, ExpectedFailNeedsWitness) {
  SuiteItem it;
  it.expected = Verdict::Fail;
  it.report.verdict = Verdict::Pass;
  EXPECT_FALSE(it.ok());
  it.report.verdict = Verdict::Fail;
  EXPECT_FALSE(it.ok());
  it.report.witness = Witness{};
  EXPECT_TRUE(it.ok());
  it.expected = Verdict::Pass;
  EXPECT_FALSE(it.ok());
  SuiteResult r;
  EXPECT_FALSE(r.ok());  // an empty suite proves nothing
}

TEST(Reports, JsonIsDeterministicAndExact) {
  for (const std::string name : {"appendix-2dim", "associativity", "roundtrip"}) {
    auto cfg = config(name);
    cfg.seed = 5;
    const std::string a = json_report(cfg, run_suite(cfg));
    const std::string b = json_report(cfg, run_suite(cfg));
    EXPECT_EQ(a, b) << name;
  }
  auto cfg = config("appendix-2dim");
  auto j = nlohmann::json::parse(json_report(cfg, run_suite(cfg)));
  EXPECT_EQ(j["schema"], "voacheck-report/1");
  EXPECT_TRUE(j["summary"]["ok"].get<bool>());
  const auto& jac = j["items"][1];
  EXPECT_EQ(jac["expected"], "fail-with-witness");
  EXPECT_EQ(jac["witness"]["left"]["w"], "1/1");
  EXPECT_TRUE(jac["witness"]["right"].empty());
  EXPECT_EQ(jac["witness"]["exponents"]["x1"], -3);
}
