#include "heisenrep/suites.hpp"

#include <catch_amalgamated.hpp>

using namespace heisenrep;

namespace {
SuiteConfig only(std::vector<std::string> s) {
  SuiteConfig c;
  c.suites = std::move(s);
  c.lambdas = {qfrac(-1, 4)};
  return c;
}
}  // namespace

TEST_CASE("sp2r-casimirs emits three passing checks") {
  auto r = run_suites(only({"sp2r-casimirs"}));
  REQUIRE(r.checks.size() == 3);
  CHECK(r.checks[0].check == "C=-3/4 [lambda=-1/4]");
  for (const auto& c : r.checks) {
    CHECK(c.pass);
    CHECK(c.residual < 1e-10);
    CHECK_FALSE(c.anchor.empty());
  }
}

TEST_CASE("empty suite list gives an empty report") {
  auto r = run_suites(only({}));
  CHECK(r.checks.empty());
  CHECK(r.passed() == 0);
  CHECK(r.failed() == 0);
  auto j = to_json(r);
  CHECK(j["summary"]["checks"] == 0);
}

TEST_CASE("configuration errors") {
  auto c = only({"sp2r-casimirs"});
  c.lambdas = {qfrac(1, 2)};
  CHECK_THROWS_AS(run_suites(c), GeneralPositionError);
  CHECK_THROWS_AS(run_suites(only({"nope"})), ConfigError);
  auto d = only({"fock-h2"});
  apply_setting(d, "lambda", "-0.3");
  CHECK_THROWS_AS(d.validate(), ConfigError);
  auto e = only({"gauss-actions"});
  apply_setting(e, "lambda", "-0.3");
  CHECK_NOTHROW(e.validate());
  CHECK_THROWS_AS(apply_setting(e, "m_max", "ten"), ConfigError);
  CHECK_THROWS_AS(apply_setting(e, "colour", "red"), ConfigError);
  auto t = only({});
  t.tol[ToleranceClass::Exact] = 1e-12;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("exact checks never pass with a nonzero residual") {
  SuiteConfig c;
  SuiteRun run("x", c);
  run.exact("tiny", "anchor", 1e-300);
  run.record("float", "anchor", ToleranceClass::FloatAlgebra, 1e-11);
  run.record("nan", "anchor", ToleranceClass::Quadrature, std::nan(""));
  auto v = run.take();
  CHECK_FALSE(v[0].pass);
  CHECK(v[1].pass);
  CHECK_FALSE(v[2].pass);
}

TEST_CASE("report formats") {
  auto r = run_suites(only({"u11-grading", "two-units"}));
  auto json = emit_report(r, ReportFormat::Json);
  auto back = report_from_json(nlohmann::ordered_json::parse(json));
  CHECK(emit_report(back, ReportFormat::Json) == json);
  auto csv = emit_report(r, ReportFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.checks.size()) + 1);
  CHECK(csv.rfind("suite,check,anchor,residual,tolerance,pass\n", 0) == 0);
  r.checks[0].pass = false;
  auto text = emit_report(r, ReportFormat::Text);
  CHECK(text.rfind("FAIL ", 0) == 0);
  CHECK_THROWS_AS(report_format_from("xml"), ConfigError);
}

TEST_CASE("reports are deterministic, parallel or not") {
  auto c = only({"fock-h2", "gauss-actions", "interlace-kernel"});
  auto a = emit_report(run_suites(c), ReportFormat::Json);
  c.parallel = false;
  auto b = emit_report(run_suites(c), ReportFormat::Json);
  CHECK(a == b);
}

TEST_CASE("config text parsing") {
  auto kv = parse_config_text("# comment\nlambda = -1/4, -3/10\n\nm_max=8  # trailing\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0].first == "lambda");
  CHECK(kv[0].second == "-1/4, -3/10");
  SuiteConfig c;
  for (const auto& [k, v] : kv) apply_setting(c, k, v);
  CHECK(c.lambdas.size() == 2);
  CHECK(c.mMax == 8);
  CHECK_THROWS_AS(parse_config_text("no equals sign"), ConfigError);
}
