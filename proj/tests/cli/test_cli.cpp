#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the built CLI with stderr merged into stdout.
CliResult cli(const std::string& args) {
  const std::string cmd = std::string(DCTSCALE_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string last_line(const std::string& s) {
  const auto end = s.find_last_not_of("\r\n");
  const auto start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

TEST(Cli, HelpListsVerbs) {
  const CliResult r = cli("--help");
  EXPECT_EQ(r.status, 0);
  for (const char* verb : {"gen", "scale", "metrics", "apply", "tables", "verify"}) {
    EXPECT_NE(r.out.find(verb), std::string::npos) << verb;
  }
}

TEST(Cli, GenShuffle) {
  const CliResult r = cli("gen --kind shuffle --size 4 --decimals 0");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "1,0,0,0\r\n0,0,1,0\r\n0,1,0,0\r\n0,0,0,1\r\n");
}

TEST(Cli, GenJson) {
  const CliResult r = cli("gen --kind dct2 --size 4 --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("size"), 4);
  EXPECT_DOUBLE_EQ(doc.at("rows")[0][0].get<double>(), 0.5);
}

TEST(Cli, ScaleReportsFrobeniusError) {
  EXPECT_EQ(last_line(cli("scale --approx exact --method VI --size 16").out), "frobenius_error,1.954");
  EXPECT_EQ(last_line(cli("scale --approx exact --method JAM --size 32 --base-size 8").out), "frobenius_error,6.025");
  EXPECT_EQ(last_line(cli("scale --approx rdct --method JAM --size 16").out), "frobenius_error,4.116");
}

TEST(Cli, ScaleFactoredJson) {
  const CliResult r = cli("scale --approx rdct --method III --size 16 --factored");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("cost").at("adds"), 60);
}

TEST(Cli, MetricsCsvAndJson) {
  const CliResult csv = cli("metrics --approx rdct --method JAM --size 16");
  ASSERT_EQ(csv.status, 0) << csv.out;
  EXPECT_EQ(last_line(csv.out), "rdct,JAM,16,0.00,12.930,0.12,8.43,72.23,4.116,60,0");
  const CliResult json = cli("metrics --approx sdct --method JAM --size 16 --format json");
  ASSERT_EQ(json.status, 0) << json.out;
  const auto doc = nlohmann::json::parse(json.out);
  EXPECT_DOUBLE_EQ(doc.at("d").get<double>(), 0.20);
  EXPECT_EQ(doc.at("adds"), 64);
}

TEST(Cli, ApplyIntegerAndReal) {
  const auto path = std::filesystem::temp_directory_path() / "dctscale-cli-apply.txt";
  std::ofstream(path) << "1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n2 1 0 0 0 0 0 0 0 0 0 0 0 0 0 3\n";
  const CliResult exact = cli("apply --approx abdct --method III --size 16 --int --input " + path.string());
  ASSERT_EQ(exact.status, 0) << exact.out;
  EXPECT_EQ(exact.out, "1 0 2 -1 2 -2 1 -1 1 -1 2 -2 1 -2 0 -1/2\n6 1 12 3 11 4 5 2 4 1 8 1 3 0 -1 0\n");
  const CliResult real = cli("apply --approx abdct --method III --size 16 --decimals 1 --input " + path.string());
  ASSERT_EQ(real.status, 0) << real.out;
  EXPECT_EQ(real.out.substr(0, 8), "1.0 0.0 ");
  std::filesystem::remove(path);
}

TEST(Cli, TablesStrictExitStatus) {
  EXPECT_EQ(cli("tables --id regression --strict").status, 0);
  EXPECT_EQ(cli("tables --id metrics-rdct --strict").status, 0);
  const CliResult md = cli("tables --id scaling-families");
  EXPECT_EQ(md.status, 0);
  EXPECT_NE(md.out.find("status: ok"), std::string::npos);
}

TEST(Cli, VerifyPassesAndFailsOnTolerance) {
  const CliResult ok = cli("verify --max-size 16");
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_EQ(ok.out.find(",false"), std::string::npos);
  EXPECT_EQ(cli("verify --max-size 8 --tol 1e-30").status, 3);
}

TEST(Cli, ErrorsExitWithOneAndSingleMessage) {
  const CliResult r = cli("scale --approx dct --method JAM --size 16");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("error: ", 0), 0u);
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);
  EXPECT_EQ(cli("scale --approx rdct --method VIII --size 16").status, 1);
  EXPECT_NE(cli("--catalog-dir /nonexistent/x metrics --approx rdct --method JAM --size 16").status, 0);
}

}  // namespace
