#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "json.hpp"
#include "pfunc/error.hpp"
#include "pfunc/registry.hpp"
#include "pfunc/report.hpp"
#include "pfunc/runner.hpp"

using namespace pfunc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pfunc_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadParams;
}

}  // namespace

TEST(Registry, ListingSortedWithRequiredIds) {
  const std::string text = list_registry();
  for (const char* id : {"ex1", "ex2", "ex3", "ex4", "ex5", "ma_quadratic", "ho73_cubic", "ho74_quadratic",
                         "red77_quadratic"}) {
    EXPECT_NE(text.find(std::string("case   ") + id + "  "), std::string::npos) << id;
  }
  std::vector<std::string> cases;
  std::vector<std::string> checks;
  std::istringstream in(text);
  std::string kind;
  std::string id;
  std::string rest;
  while (in >> kind >> id && std::getline(in, rest)) (kind == "case" ? cases : checks).push_back(id);
  EXPECT_TRUE(std::is_sorted(cases.begin(), cases.end()));
  EXPECT_TRUE(std::is_sorted(checks.begin(), checks.end()));
  EXPECT_EQ(cases.size(), registry_cases().size());
  EXPECT_EQ(list_registry(), text);
}

TEST(Registry, PFunctionIdsRoundTrip) {
  for (const Case& c : registry_cases()) {
    EXPECT_EQ(registry_case(c.id).id, c.id);
    if (!c.pfunction) continue;
    const double v = c.pfunction->P(0.5, 0.5);
    EXPECT_TRUE(std::isfinite(v)) << c.id;
    EXPECT_FALSE(c.pfunction->id.empty()) << c.id;
  }
  EXPECT_EQ(code_of([] { (void)registry_case("ex9"); }), ErrorCode::UnknownId);
}

TEST(Config, UnknownCheckIsConfigError) {
  const std::string doc = R"({"jobs": [{"jobId": "a", "equation": "ex1", "checks": ["criterion", "no_such_check"]}]})";
  try {
    (void)parse_config(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    EXPECT_NE(std::string(e.what()).find("$.jobs[0].checks[1]"), std::string::npos) << e.what();
  }
}

TEST(Config, SyntaxErrorNamesLine) {
  const std::string doc = "{\n  \"jobs\": [\n    {,}\n  ]\n}";
  try {
    (void)parse_config(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, RejectsUnknownKeysAndDuplicates) {
  EXPECT_EQ(code_of([] { (void)parse_config(R"({"jobs": [{"jobId": "a", "equation": "ex1", "checks": ["criterion"], "colour": 1}]})"); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] {
              (void)parse_config(R"({"jobs": [{"jobId": "a", "equation": "ex1", "checks": ["criterion"]},
                                              {"jobId": "a", "equation": "ex2", "checks": ["criterion"]}]})");
            }),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { (void)parse_config(R"({"jobs": [{"jobId": "a", "equation": "nope", "checks": ["criterion"]}]})"); }),
            ErrorCode::ConfigError);
}

TEST(Run, KinkJobGradientBound) {
  const RunConfig cfg = parse_config(R"({"jobs": [{"jobId": "kink", "equation": "ex1", "checks": ["gradient_bound"]}]})");
  const JobReport rep = run_job(cfg.jobs.front());
  ASSERT_EQ(rep.checks.size(), 1u);
  EXPECT_TRUE(rep.checks[0].report.pass);
  EXPECT_LE(rep.checks[0].report.worstResidual, 1e-10);
  EXPECT_TRUE(rep.asExpected);
}

TEST(Run, NegativeControlIsolated) {
  const fs::path dir = scratch("isolation");
  const RunConfig cfg = parse_config(R"({"jobs": [
    {"jobId": "good", "equation": "harmonic_linear", "checks": ["residual_main_inequality"]},
    {"jobId": "bad", "equation": "harmonic_linear_negative", "checks": ["residual_main_inequality"]}]})");
  const RunSummary sum = run(cfg, dir);
  EXPECT_NE(sum.exitStatus, 0);
  ASSERT_TRUE(fs::exists(dir / "good.json"));
  ASSERT_TRUE(fs::exists(dir / "bad.json"));
  const auto good = nlohmann::json::parse(slurp(dir / "good.json"));
  EXPECT_EQ(good["checks"][0]["pass"], true);
  const auto bad = nlohmann::json::parse(slurp(dir / "bad.json"));
  EXPECT_EQ(bad["checks"][0]["pass"], false);
  EXPECT_EQ(bad["asExpected"], false);
}

TEST(Run, ExpectedFailureKeepsExitZero) {
  const RunConfig cfg = parse_config(R"({"jobs": [
    {"jobId": "bad", "equation": "harmonic_linear_negative",
     "checks": [{"id": "residual_main_inequality", "expect": "fail"}]}]})");
  EXPECT_EQ(run(cfg, scratch("expect")).exitStatus, 0);
}

TEST(Run, ErrorsAreRecordedPerCheck) {
  const RunConfig cfg = parse_config(R"({"jobs": [
    {"jobId": "cx", "equation": "ex1_counterexample",
     "checks": ["criterion", {"id": "gradient_bound", "expect": "error:HypothesisFail"}]}]})");
  const JobReport rep = run_job(cfg.jobs.front());
  EXPECT_TRUE(rep.asExpected);
  ASSERT_TRUE(rep.checks[1].report.error.has_value());
  EXPECT_EQ(rep.checks[1].report.error->rfind("HypothesisFail:", 0), 0u);
}

TEST(Report, SchemaAndSeventeenDigits) {
  const RunConfig cfg = parse_config(R"({"jobs": [{"jobId": "kink", "equation": "ex1", "checks": ["profile_first_integral"]}]})");
  const std::string text = to_json(run_job(cfg.jobs.front()));
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["jobId"], "kink");
  // the tolerance 1e-7 is printed as %.17g
  EXPECT_NE(text.find("9.9999999999999995e-08"), std::string::npos) << text;
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Report, OutcomeMatching) {
  CheckReport r;
  r.pass = true;
  EXPECT_TRUE(outcome_matches(r, "pass"));
  EXPECT_FALSE(outcome_matches(r, "fail"));
  EXPECT_FALSE(outcome_matches(r, "vacuous"));
  r.vacuous = true;
  EXPECT_TRUE(outcome_matches(r, "vacuous"));
  r.pass = false;
  r.error = "NotASolution: residual 1";
  EXPECT_TRUE(outcome_matches(r, "error"));
  EXPECT_TRUE(outcome_matches(r, "error:NotASolution"));
  EXPECT_FALSE(outcome_matches(r, "error:NotConvex"));
  EXPECT_FALSE(outcome_matches(r, "fail"));
}

TEST(Cli, DumpFieldWritesCsv) {
  const fs::path dir = scratch("dump");
  const fs::path cfg = dir / "pfunc.json";
  std::ofstream(cfg) << R"({"jobs": [{"jobId": "lin", "equation": "harmonic_linear", "checks": ["residual_main_inequality"]}]})";
  const std::string cmd = std::string("\"") + PFUNC_EXE + "\" dump-field lin residual_main_inequality --out \"" +
                          (dir / "out").string() + "\" --config \"" + cfg.string() + "\" > \"" +
                          (dir / "log.txt").string() + "\"";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const std::string csv = slurp(dir / "out" / "lin_residual_main_inequality.csv");
  EXPECT_EQ(csv.rfind("x,y,value\n", 0), 0u);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 100);
}

TEST(Cli, ConfigErrorExitCode) {
  const fs::path dir = scratch("exit");
  const fs::path cfg = dir / "bad.json";
  std::ofstream(cfg) << R"({"jobs": [{"jobId": "a", "equation": "ex1", "checks": ["bogus"]}]})";
  const std::string cmd = std::string("\"") + PFUNC_EXE + "\" run \"" + cfg.string() + "\" --out \"" + dir.string() +
                          "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
  EXPECT_FALSE(fs::exists(dir / "a.json"));
}
