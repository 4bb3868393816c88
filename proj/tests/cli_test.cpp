#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support.hpp"
#include "uexp/expansivity.hpp"
#include "uexp/sweep.hpp"
#include "uexp/text.hpp"

using uexp::test::TempDir;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = uexp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, RequiresASubcommand) {
  EXPECT_EQ(run({}).code, uexp::cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, uexp::cli::kExitUsage);
}

TEST(Cli, RejectsUnknownFlags) {
  const Outcome r = run({"analyze", "--a-lo", "1.9", "--a-hi", "2", "--bogus", "1"});
  EXPECT_EQ(r.code, uexp::cli::kExitUsage);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, AnalyzeInvalidRangeIsUsageError) {
  const Outcome r = run({"analyze", "--a-lo", "2", "--a-hi", "1"});
  EXPECT_EQ(r.code, uexp::cli::kExitUsage);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, AnalyzeNeedsExactlyOneIntervalForm) {
  EXPECT_EQ(run({"analyze"}).code, uexp::cli::kExitUsage);
  EXPECT_EQ(run({"analyze", "--a-lo", "1.9", "--a-hi", "2", "--index", "3"}).code, uexp::cli::kExitUsage);
  EXPECT_EQ(run({"analyze", "--index", "60000"}).code, uexp::cli::kExitUsage);
  EXPECT_EQ(run({"analyze", "--a-lo", "abc", "--a-hi", "2"}).code, uexp::cli::kExitUsage);
}

TEST(Cli, AnalyzeSuccessRow) {
  const Outcome r = run({"analyze", "--a-lo", "1.9999", "--a-hi", "0x1p+1", "--k-fine", "2000"});
  EXPECT_EQ(r.code, uexp::cli::kExitOk);
  const auto row = uexp::parse_result_row(lines(r.out).at(0));
  EXPECT_EQ(row.status, uexp::Status::kSuccess);
  EXPECT_EQ(row.a_lo, uexp::repr("1.9999"));
  EXPECT_EQ(row.a_hi, 2.0);
  EXPECT_EQ(row.k_fine, 2000U);
}

TEST(Cli, AnalyzeByGridIndex) {
  const Outcome r = run({"analyze", "--index", "0", "--n", "60000", "--k-fine", "1000"});
  EXPECT_EQ(r.code, uexp::cli::kExitFailure);
  const auto row = uexp::parse_result_row(lines(r.out).at(0));
  const uexp::ParamGrid grid(uexp::repr("1.4"), 2.0, 60000);
  EXPECT_EQ(row.index, 0);
  EXPECT_EQ(row.a_lo, grid.point(0));
  EXPECT_EQ(row.a_hi, grid.point(1));
  EXPECT_EQ(row.status, uexp::Status::kNoExpansionAtDelta0);
}

TEST(Cli, AnalyzeHeader) {
  const Outcome r = run({"analyze", "--a-lo", "1.77", "--a-hi", "1.7701", "--header"});
  EXPECT_EQ(lines(r.out).at(0), uexp::kResultsHeader);
}

TEST(Cli, LambdaAlgorithmsAgree) {
  const std::vector<std::string> base{"lambda", "--a-lo", "1.9999", "--a-hi", "2", "--delta", "0.001", "--k", "300"};
  auto karp_args = base;
  karp_args.insert(karp_args.end(), {"--algorithm", "karp"});
  const Outcome low = run(base);
  const Outcome karp = run(karp_args);
  ASSERT_EQ(low.code, 0);
  ASSERT_EQ(karp.code, 0);
  const double a = uexp::repr(low.out.substr(0, low.out.find(' ')));
  const double b = uexp::repr(karp.out.substr(0, karp.out.find(' ')));
  EXPECT_NEAR(a, b, 1e-9);
}

TEST(Cli, PartitionDumpsHexBreakpoints) {
  const Outcome r = run({"partition", "--a-lo", "2", "--a-hi", "2", "--delta", "1", "--k", "2", "--partition", "geometric"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4U);
  EXPECT_EQ(uexp::repr(l[0]), -uexp::repr(l[3]));
  EXPECT_EQ(l[1], "-0x1p+0");
  EXPECT_EQ(l[2], "0x1p+0");
}

TEST(Cli, GraphDumpFeedsMinCycleMean) {
  TempDir dir("cli-graph");
  const std::string file = (dir.path() / "g.txt").string();
  ASSERT_EQ(run({"graph", "--a-lo", "1.9", "--a-hi", "1.9001", "--delta", "0.01", "--k", "40", "--output", file}).code, 0);
  const Outcome karp = run({"mincyclemean", file, "--algorithm", "karp"});
  const Outcome low = run({"mincyclemean", file});
  ASSERT_EQ(karp.code, 0);
  ASSERT_EQ(low.code, 0);
  const auto low_lines = lines(low.out);
  ASSERT_EQ(low_lines.size(), 2U);
  EXPECT_EQ(low_lines[1].rfind("cycle ", 0), 0U);
  const double a = uexp::repr(karp.out.substr(0, karp.out.find(' ')));
  const double b = uexp::repr(low.out.substr(0, low.out.find(' ')));
  EXPECT_NEAR(a, b, 1e-9);
  EXPECT_EQ(run({"mincyclemean", (dir.path() / "missing").string()}).code, uexp::cli::kExitFailure);
}

TEST(Cli, SweepAndPlotData) {
  TempDir dir("cli-sweep");
  const std::string results = (dir.path() / "r.csv").string();
  const Outcome s = run({"sweep", "--a-min", "1.99", "--a-max", "2", "--n", "20", "--first", "15", "--last", "18",
                     "--k-coarse", "200", "--k-fine", "400", "--steps", "4", "--workers", "2", "--output", results});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(s.out.empty());
  const auto rows = uexp::read_results(results);
  ASSERT_EQ(rows.size(), 3U);
  const Outcome p = run({"plotdata", "--results", results});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(lines(p.out).size(), 4U);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "r_param_delta.dat"));
}

TEST(Cli, KStudySingleKMatchesAnalyze) {
  const Outcome a = run({"analyze", "--a-lo", "1.9999", "--a-hi", "2", "--k-fine", "1500"});
  const Outcome k = run({"kstudy", "--a-lo", "1.9999", "--a-hi", "2", "--k-list", "1500"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(k.code, 0) << k.err;
  const auto row = uexp::parse_result_row(lines(a.out).at(0));
  const auto table = lines(k.out);
  ASSERT_EQ(table.size(), 2U);
  EXPECT_EQ(table[0], "k,lambda_hex,lambda_dec,elapsed_ms");
  const auto fields = uexp::split(table[1], ',');
  ASSERT_EQ(fields.size(), 4U);
  EXPECT_EQ(fields[0], "1500");
  EXPECT_EQ(uexp::repr(fields[1]), *row.lambda_bar);
}

TEST(Cli, KStudyRejectsBadList) {
  EXPECT_EQ(run({"kstudy", "--a-lo", "1.9999", "--a-hi", "2", "--k-list", "100,x"}).code, uexp::cli::kExitUsage);
  EXPECT_EQ(run({"kstudy", "--a-lo", "1.9999", "--a-hi", "2", "--k-list", ""}).code, uexp::cli::kExitUsage);
}
