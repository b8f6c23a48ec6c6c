#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smnlms/report_io.hpp"

namespace smnlms {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::string trace_of(const RunResult& r) {
  std::ostringstream os;
  write_trace(os, r);
  return os.str();
}

std::string summary_of(const RunResult& r) {
  std::ostringstream os;
  write_summary(os, r);
  return os.str();
}

ScenarioConfig short_run(std::size_t k) {
  ScenarioConfig cfg;
  cfg.iterations = k;
  cfg.seed = 21;
  return cfg;
}

TEST(TraceTest, SingleIterationHasTwoLines) {
  const std::string csv = trace_of(run(short_run(1)));
  const auto lines = split(csv, '\n');
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "k,e,mu_bar,f,alpha,updated,e_tilde,n,w_tilde_sq_pre,w_tilde_sq_post,g1,g2,c1,c2");
  EXPECT_EQ(split(lines[1], ',').size(), 14u);
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(TraceTest, SkippedRowsSerializeEqualSides) {
  const RunResult r = run(short_run(500));
  const auto lines = split(trace_of(r), '\n');
  std::size_t skipped = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f[3] == "0") {
      ++skipped;
      EXPECT_EQ(f[5], "0");
      EXPECT_EQ(f[10], f[11]);
    } else {
      EXPECT_EQ(f[5], "1");
    }
  }
  EXPECT_GT(skipped, 0u);
}

// Reals written with 17 significant digits parse back to the same double, so
// g1/g2 can be re-derived from the CSV columns alone.
TEST(TraceTest, RoundTripRecomputesBoundSides) {
  const RunResult r = run(short_run(400));
  const auto lines = split(trace_of(r), '\n');
  ASSERT_EQ(lines.size(), 401u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    const double mu = std::strtod(f[2].c_str(), nullptr);
    const double flag = std::strtod(f[3].c_str(), nullptr);
    const double alpha = std::strtod(f[4].c_str(), nullptr);
    const double e_tilde = std::strtod(f[6].c_str(), nullptr);
    const double n = std::strtod(f[7].c_str(), nullptr);
    const double pre = std::strtod(f[8].c_str(), nullptr);
    const double post = std::strtod(f[9].c_str(), nullptr);
    const double gain = (mu * flag) / alpha;
    EXPECT_EQ(post + gain * (e_tilde * e_tilde), std::strtod(f[10].c_str(), nullptr)) << i;
    EXPECT_EQ(pre + gain * (n * n), std::strtod(f[11].c_str(), nullptr)) << i;
    EXPECT_EQ(std::strtod(f[1].c_str(), nullptr), r.steps[i - 1].e);
  }
}

TEST(FormatRealTest, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-12, -2.5e300, 5e-324}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
  }
}

TEST(SummaryTest, ContainsEveryKey) {
  const std::string s = summary_of(run(short_run(300)));
  for (const char* key : {"seed: 21\n", "taps: 10\n", "tau: ", "gamma_bar: ", "delta: ", "K: 300\n",
                          "update_count: ", "update_fraction: ", "numerator: ", "denominator: ",
                          "ratio: ", "violations: 0\n", "final_misalignment: "}) {
    EXPECT_NE(s.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(s.find("undefined"), std::string::npos);
}

TEST(SummaryTest, ZeroDenominatorPrintsUndefined) {
  RunResult r;
  r.w0 = {0.0, 0.0};
  r.report.K = 3;
  const std::string s = summary_of(r);
  EXPECT_NE(s.find("ratio: undefined\n"), std::string::npos);
  EXPECT_NE(s.find("final_misalignment: undefined\n"), std::string::npos);
}

TEST(SummaryTest, ZeroBoundStressHasNoViolations) {
  ScenarioConfig cfg = short_run(5000);
  cfg.tau = 0.0;
  const std::string s = summary_of(run(cfg));
  EXPECT_NE(s.find("gamma_bar: 0\n"), std::string::npos);
  EXPECT_NE(s.find("violations: 0\n"), std::string::npos);
}

TEST(SummaryTest, ViolationDetailsAreReported) {
  RunResult r = run(short_run(10));
  r.violations.push_back(Violation{4, ViolationKind::kLocalBound, 1e-3});
  const std::string s = summary_of(r);
  EXPECT_NE(s.find("violations: 1\n"), std::string::npos);
  EXPECT_NE(s.find("first_violation_k: 4\n"), std::string::npos);
  EXPECT_NE(s.find("first_violation_kind: local-bound\n"), std::string::npos);
}

TEST(EmitTest, WritesFilesAndReportsIoErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "smnlms_report_io_test";
  std::filesystem::create_directories(dir);
  const RunResult r = run(short_run(5));
  emit_trace(r, (dir / "t.csv").string());
  emit_summary(r, (dir / "s.txt").string());
  std::ifstream t(dir / "t.csv");
  std::stringstream buf;
  buf << t.rdbuf();
  EXPECT_EQ(buf.str(), trace_of(r));
  EXPECT_TRUE(std::filesystem::exists(dir / "s.txt"));
  EXPECT_THROW(emit_trace(r, "/nonexistent-dir/x.csv"), IoError);
  EXPECT_THROW(emit_summary(r, "/nonexistent-dir/x.txt"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace smnlms
