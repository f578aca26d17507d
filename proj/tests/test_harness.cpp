#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fbcalc/fbcalc.hpp"

using namespace fbcalc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "fbcalc_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

int runCli(const std::string& args) {
  const std::string cmd = std::string(FBCALC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void writeText(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

VerificationReport sampleReport() {
  VerificationReport r;
  r.scenario = "sample";
  r.inputs["model"] = "diagonal, \"quoted\"";
  r.setValue("x", 0.1);
  r.setValue("z", cplx(1.0, -2.0));
  r.setValue("missing", kNaN);
  r.setValue("big", std::numeric_limits<double>::infinity());
  r.addNear("near", 1.0, 1.0 + 1e-9, 1e-8);
  r.addUpperBound("bound", 2.0, 1.0, 0.0, "note, with comma");
  r.addError("broken", "NumericFailure: did not converge");
  r.addCheck("info", 3.0, kNaN, -std::numeric_limits<double>::infinity(), kNaN, Verdict::Info);
  r.limitations.push_back("finite model");
  return r;
}

}  // namespace

TEST(Report, Builders) {
  const auto r = sampleReport();
  EXPECT_EQ(r.values.at("z.re"), 1.0);
  EXPECT_EQ(r.values.at("z.im"), -2.0);
  EXPECT_EQ(r.checks[0].verdict, Verdict::Pass);
  EXPECT_NEAR(r.checks[0].margin, 1e-8 - 1e-9, 1e-16);
  EXPECT_EQ(r.checks[1].verdict, Verdict::Fail);
  EXPECT_EQ(r.checks[1].margin, -1.0);
  EXPECT_EQ(r.checks[2].verdict, Verdict::Error);
  EXPECT_TRUE(r.anyFailed());
  EXPECT_TRUE(r.anyError());
  for (const auto& c : r.checks) EXPECT_EQ(c.scenario, "sample");
}

TEST(Report, JsonRoundTrip) {
  const auto r = sampleReport();
  const auto text = toJson(r).dump();
  const auto back = reportFromJson(nlohmann::json::parse(text));
  EXPECT_EQ(toJson(back).dump(), text);
  EXPECT_TRUE(std::isnan(back.values.at("missing")));
  EXPECT_TRUE(std::isinf(back.values.at("big")));
  EXPECT_EQ(back.checks[3].margin, -std::numeric_limits<double>::infinity());
  EXPECT_FALSE(back.runtime_seconds.has_value());
}

TEST(Report, JsonNumberEncoding) {
  EXPECT_TRUE(numberToJson(kNaN).is_null());
  EXPECT_EQ(numberToJson(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(numberToJson(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(numberFromJson(0.1), 0.1);
  EXPECT_THROW(numberFromJson("nope"), Error);
  EXPECT_THROW(reportFromJson(nlohmann::json::object()), Error);
}

TEST(Report, Csv) {
  VerificationReport empty;
  EXPECT_EQ(toCsv(empty), "scenario,check,value,benchmark,margin,tolerance,verdict,note\n");
  const auto csv = toCsv(sampleReport());
  EXPECT_NE(csv.find("\"note, with comma\""), std::string::npos);
  EXPECT_NE(csv.find(",nan,"), std::string::npos);
  EXPECT_NE(csv.find(",error,"), std::string::npos);
  EXPECT_EQ(formatNumber(0.1), "0.10000000000000001");
  EXPECT_EQ(csvField("a\"b"), "\"a\"\"b\"");
}

TEST(Report, FileRoundTrip) {
  const auto path = scratch("sample.json");
  emitReport(sampleReport(), ReportFormat::Json, path.string());
  EXPECT_EQ(toJson(loadReport(path.string())).dump(), toJson(sampleReport()).dump());
  EXPECT_THROW(emitReport(sampleReport(), ReportFormat::Json, "/nonexistent/dir/x.json"), Error);
  EXPECT_THROW(loadReport("/nonexistent/x.json"), Error);
}

TEST(Report, AppendPrefixesKeys) {
  VerificationReport all;
  all.scenario = "all";
  all.append(sampleReport());
  EXPECT_EQ(all.values.count("sample.x"), 1u);
  EXPECT_EQ(all.limitations.front(), "sample: finite model");
  EXPECT_EQ(all.checks.front().scenario, "sample");
}

TEST(Scenarios, NamesAndUnknown) {
  EXPECT_EQ(scenarioNames().size(), 10u);
  try {
    runScenario("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Scenarios, ReproducibleBytes) {
  for (const std::string name : {"rem37", "jordan"}) {
    const auto a = renderReport(runScenario(name), ReportFormat::Json);
    const auto b = renderReport(runScenario(name), ReportFormat::Json);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a.find("runtime_seconds"), std::string::npos);
  }
  EXPECT_TRUE(runScenario("rem37", {}, true).runtime_seconds.has_value());
}

TEST(Scenarios, EveryScenarioPasses) {
  for (const auto& name : scenarioNames()) {
    const auto r = runScenario(name);
    EXPECT_FALSE(r.anyFailed()) << name;
    EXPECT_FALSE(r.anyError()) << name;
    EXPECT_FALSE(r.checks.empty()) << name;
  }
}

TEST(Scenarios, ConfigOverride) {
  const auto r = runScenario("hyp32", nlohmann::json{{"hyp32", {{"gamma", 2.0}}}});
  EXPECT_NE(r.inputs.at("measure").find("gamma = 2"), std::string::npos);
  EXPECT_FALSE(r.anyError());
}

TEST(Cli, Verify) {
  const auto out = scratch("rem37.csv");
  EXPECT_EQ(runCli("verify rem37 --format csv --out " + out.string()), 0);
  EXPECT_EQ(slurp(out), toCsv(runScenario("rem37")));
  const auto json_out = scratch("rem37.json");
  EXPECT_EQ(runCli("verify rem37 --out " + json_out.string()), 0);
  EXPECT_EQ(slurp(json_out), renderReport(runScenario("rem37"), ReportFormat::Json));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(runCli(""), 2);
  EXPECT_EQ(runCli("verify nope --out " + scratch("x.json").string()), 2);
  EXPECT_EQ(runCli("verify rem37 --format xml --out " + scratch("x.json").string()), 2);
  EXPECT_EQ(runCli("fb-eval --measure /nonexistent.json --z 1,0"), 2);

  const auto measure = scratch("diff.json");
  writeText(measure, toJson(atomicDifference()).dump());
  EXPECT_EQ(runCli("fb-eval --measure " + measure.string() + " --z 1,0"), 0);
  EXPECT_EQ(runCli("fb-eval --measure " + measure.string() + " --z abc"), 2);
  EXPECT_EQ(runCli("ray-max --measure " + measure.string() + " --theta 2.0"), 2);

  const auto model = scratch("model.json");
  writeText(model, toJson(SemigroupModel::diagonal({0.5, 1.0})).dump());
  EXPECT_EQ(runCli("calculus --measure " + measure.string() + " --model " + model.string() + " --u 0.5,0"), 0);
  EXPECT_EQ(runCli("calculus --measure " + measure.string() + " --model " + model.string() + " --u 0,1"), 2);
}

TEST(Cli, JordanRoundTrip) {
  const auto measure = scratch("diff_sym.json");
  writeText(measure, toJson(atomicDifference()).dump());
  const auto cert = scratch("cert.json");
  ASSERT_EQ(runCli("jordan --measure " + measure.string() + " --out " + cert.string()), 0);
  EXPECT_EQ(runCli("jordan --measure " + measure.string() + " --verify " + cert.string()), 0);

  auto j = readJsonFile(cert.string());
  auto c = certificateFromJson(j);
  c.delta *= 2.0;
  const auto bad = scratch("cert_bad.json");
  writeJsonFile(toJson(c), bad.string());
  EXPECT_EQ(runCli("jordan --measure " + measure.string() + " --verify " + bad.string()), 1);
}
