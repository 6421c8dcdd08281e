#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "polycm/report.hpp"

using polycm::ReportFormat;
using polycm::SuiteConfig;

namespace {

SuiteConfig only(const std::string& suite) {
  SuiteConfig c;
  c.suites = {suite};
  return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(RunSuite, WallisSingleIndex) {
  auto cfg = only("wallis");
  cfg.n_max = 1;
  const auto r = polycm::run_suite(cfg);
  ASSERT_EQ(r.suite.size(), 2u);
  for (const auto& e : r.suite) {
    EXPECT_EQ(e.verdict, "pass");
    EXPECT_EQ(e.margins.at("guard_band_used"), 1);
  }
  EXPECT_EQ(r.summary.overall, "pass");
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(RunSuite, CriticalPairIsNotAFailure) {
  auto cfg = only("cm");
  cfg.pairs = {{0, 1}};
  cfg.grid = 30;
  const auto r = polycm::run_suite(cfg);
  EXPECT_EQ(r.suite.front().claim_id, "cm.theta[s=0,t=1]");
  EXPECT_EQ(r.suite.front().verdict, "indeterminate");
  EXPECT_GT(r.summary.indeterminate, 0);
  EXPECT_EQ(r.summary.fail, 0);
  EXPECT_EQ(r.summary.overall, "pass");
}

TEST(RunSuite, SummaryMatchesTally) {
  auto cfg = only("conjecture");
  cfg.suites.push_back("ball");
  cfg.n_max = 10;
  const auto r = polycm::run_suite(cfg);
  EXPECT_EQ(r.summary.total, static_cast<int>(r.suite.size()));
  EXPECT_EQ(r.summary.pass + r.summary.fail + r.summary.indeterminate + r.summary.advisory, r.summary.total);
  EXPECT_EQ(r.summary.advisory, 4);
  EXPECT_EQ(r.suite.front().claim_id.rfind("ball.", 0), 0u);
}

TEST(RunSuite, ConfigErrors) {
  EXPECT_THROW(polycm::run_suite(only("nope")), polycm::ConfigError);
  auto cfg = only("cm");
  cfg.k_max = polycm::k_max_supported;
  EXPECT_THROW(polycm::run_suite(cfg), polycm::ConfigError);
  cfg = only("cm");
  cfg.grid = 1;
  EXPECT_THROW(polycm::run_suite(cfg), polycm::ConfigError);
  cfg = only("wallis");
  cfg.n_max = 0;
  EXPECT_THROW(polycm::run_suite(cfg), polycm::ConfigError);
  cfg.suites.clear();
  EXPECT_THROW(polycm::run_suite(cfg), polycm::ConfigError);
}

TEST(RunSuite, FailureSetsExitCode) {
  polycm::VerificationReport r;
  r.suite.push_back({"x", "a", {}, "pass", {}, 0});
  r.suite.push_back({"y", "a", {}, "fail", {}, 0});
  r.tally();
  EXPECT_EQ(r.summary.fail, 1);
  EXPECT_EQ(r.summary.overall, "fail");
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Emit, JsonRoundTrip) {
  auto cfg = only("kershaw");
  const auto r = polycm::run_suite(cfg);
  const std::string json = polycm::emit_report(r, ReportFormat::Json);
  EXPECT_EQ(polycm::parse_report_json(json), r);
  EXPECT_EQ(polycm::emit_report(polycm::parse_report_json(json), ReportFormat::Json), json);
}

TEST(Emit, JsonFieldOrder) {
  auto cfg = only("wallis");
  cfg.n_max = 1;
  const std::string json = polycm::emit_report(polycm::run_suite(cfg), ReportFormat::Json);
  const auto pos = [&](const char* key) { return json.find(key); };
  EXPECT_LT(pos("\"tool_version\""), pos("\"precision_mode\""));
  EXPECT_LT(pos("\"precision_mode\""), pos("\"suite\""));
  EXPECT_LT(pos("\"suite\""), pos("\"summary\""));
  EXPECT_LT(pos("\"claim_id\""), pos("\"paper_anchor\""));
  EXPECT_LT(pos("\"verdict\""), pos("\"margins\""));
  EXPECT_LT(pos("\"margins\""), pos("\"runtime_ms\""));
}

TEST(Emit, CsvRowCount) {
  auto cfg = only("erf");
  cfg.n_max = 25;
  const auto r = polycm::run_suite(cfg);
  const std::string csv = polycm::emit_report(r, ReportFormat::Csv);
  EXPECT_EQ(count_lines(csv), r.suite.size() + 1);
  EXPECT_EQ(csv.rfind("claim_id,paper_anchor,verdict,runtime_ms,parameters,margins\n", 0), 0u);
}

TEST(Emit, CsvQuotesEmbeddedCommas) {
  polycm::VerificationReport r;
  r.suite.push_back({"cm.theta[s=0,t=0.5]", "a\"b", {{"s", 0}}, "pass", {{"k0", 0.5}}, 0});
  r.tally();
  const std::string csv = polycm::emit_report(r, ReportFormat::Csv);
  EXPECT_NE(csv.find("\"cm.theta[s=0,t=0.5]\",\"a\"\"b\",pass,0,\"s=0\",\"k0=0.5\""), std::string::npos);
}

TEST(Emit, DeterministicAcrossRuns) {
  auto cfg = only("identities");
  const std::string a = polycm::emit_report(polycm::run_suite(cfg), ReportFormat::Json);
  const std::string b = polycm::emit_report(polycm::run_suite(cfg), ReportFormat::Json);
  EXPECT_EQ(a, b);
}

TEST(Emit, TextSummary) {
  auto cfg = only("ball");
  cfg.n_max = 3;
  const std::string text = polycm::emit_report(polycm::run_suite(cfg), ReportFormat::Text);
  EXPECT_NE(text.find("ball: pass=3"), std::string::npos);
  EXPECT_NE(text.find("total=3 pass=3 fail=0"), std::string::npos);
}

TEST(RunSuite, ExtendedModeLabel) {
  auto cfg = only("ball");
  cfg.n_max = 2;
  cfg.precision = polycm::PrecisionMode::parse("extended:40");
  const auto r = polycm::run_suite(cfg);
  EXPECT_EQ(r.precision_mode, "extended:40");
  EXPECT_EQ(r.summary.pass, 2);
}
