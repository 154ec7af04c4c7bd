#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitfix/cli.hpp"

using namespace splitfix;
namespace fs = std::filesystem;

namespace {

std::string config_path(const std::string& name) { return std::string(SPLITFIX_CONFIG_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  if (pos == std::string::npos) return NAN;
  return std::stod(text.substr(pos + key.size() + 1));
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("splitfix_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int solve(const std::string& problem, const std::string& run, const std::string& csv) {
    CliOptions o;
    o.overrides.out = csv;
    out_.str("");
    err_.str("");
    return cmd_solve(problem, run, o, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, IdentityProblemGivesOneRowTrace) {
  const auto csv = (dir_ / "id.csv").string();
  EXPECT_EQ(solve(config_path("identity.problem"), config_path("moudafi.run"), csv), kExitConverged);
  const auto rows = lines_of(slurp(csv));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "iter,residual_F,residual_G,dist_to_ref,dist_u0,fejer_ok");
  EXPECT_EQ(rows[1], "1,0,0,,,");
  EXPECT_NE(out_.str().find("status=converged"), std::string::npos);
  EXPECT_NE(out_.str().find("iterations=1"), std::string::npos);
  EXPECT_NE(out_.str().find("wall_time_s="), std::string::npos);
  EXPECT_NE(out_.str().find("solution=(1, 2)"), std::string::npos);
}

TEST_F(CliTest, SplitFeasibilityAveragedWeak) {
  const auto csv = (dir_ / "w.csv").string();
  EXPECT_EQ(solve(config_path("split_feasibility.problem"), config_path("averaged_weak.run"), csv), kExitConverged);
  EXPECT_LE(field(out_.str(), "residual_F"), 1e-8);
  EXPECT_LE(field(out_.str(), "residual_G"), 1e-8);
  const auto rows = lines_of(slurp(csv));
  ASSERT_GT(rows.size(), 2u);
  EXPECT_NE(rows[1].find(",true"), std::string::npos);
}

TEST_F(CliTest, CsvUsesFullPrecision) {
  const auto csv = (dir_ / "w.csv").string();
  solve(config_path("split_feasibility.problem"), config_path("moudafi.run"), csv);
  const auto rows = lines_of(slurp(csv));
  std::istringstream row(rows[1]);
  std::string iter, rf;
  std::getline(row, iter, ',');
  std::getline(row, rf, ',');
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::stod(rf));
  EXPECT_EQ(rf, buf);
}

TEST_F(CliTest, StrongTraceHasAnchorDistance) {
  const auto csv = (dir_ / "s.csv").string();
  EXPECT_EQ(solve(config_path("example1.problem"), config_path("example1_hybrid.run"), csv), kExitConverged);
  const auto rows = lines_of(slurp(csv));
  EXPECT_EQ(rows[1].substr(0, 2), "0,");
  std::vector<std::string> cells;
  std::istringstream row(rows[2]);
  for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_FALSE(cells[3].empty());
  EXPECT_GT(std::stod(cells[4]), 0.0);
  const auto sol = out_.str().find("solution=(");
  ASSERT_NE(sol, std::string::npos);
  EXPECT_NEAR(std::stod(out_.str().substr(sol + 10)), 0.875, 1e-6);
}

TEST_F(CliTest, GammaOutOfRangeIsAnError) {
  const auto csv = (dir_ / "bad.csv").string();
  EXPECT_EQ(solve(config_path("split_feasibility.problem"), config_path("bad_gamma.run"), csv), kExitError);
  EXPECT_NE(err_.str().find("gamma"), std::string::npos);
  EXPECT_NE(err_.str().find("1/(lambda*mu)"), std::string::npos);
  EXPECT_FALSE(fs::exists(csv));
}

TEST_F(CliTest, MaxItersExitCode) {
  const auto run = write("short.run", "algorithm = averaged_weak\nmax_iters = 3\n");
  EXPECT_EQ(solve(config_path("split_feasibility.problem"), run, (dir_ / "m.csv").string()), kExitMaxIters);
  EXPECT_NE(out_.str().find("status=max_iters"), std::string::npos);
  EXPECT_EQ(lines_of(slurp(dir_ / "m.csv")).size(), 4u);
}

TEST_F(CliTest, ParseErrorIsLocated) {
  const auto problem = write("broken.problem", "F = identity\nF.dim = 2\nG = identity\nG.dim = 2\nu0 = [1, 2\n");
  EXPECT_EQ(solve(problem, config_path("moudafi.run"), (dir_ / "x.csv").string()), kExitError);
  EXPECT_NE(err_.str().find("broken.problem:5:"), std::string::npos) << err_.str();
}

TEST_F(CliTest, SolveIsByteDeterministic) {
  const auto a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  ASSERT_EQ(solve(config_path("split_feasibility_strong.problem"), config_path("hybrid_strong.run"), a), kExitConverged);
  ASSERT_EQ(solve(config_path("split_feasibility_strong.problem"), config_path("hybrid_strong.run"), b), kExitConverged);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST_F(CliTest, SeedOverrideChangesRandomStart) {
  const auto problem = write("random.problem",
                             "F = proj_box\nF.lower = [0, 0]\nF.upper = [1, 1]\nG = identity\nG.dim = 2\n"
                             "D = box\nD.lower = [-2, -2]\nD.upper = [2, 2]\nu0 = random\nseed = 5\n");
  CliOptions o;
  o.overrides.out = (dir_ / "a.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_solve(problem, config_path("moudafi.run"), o, out, err), kExitConverged) << err.str();
  o.overrides.out = (dir_ / "b.csv").string();
  cmd_solve(problem, config_path("moudafi.run"), o, out, err);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  o.seed = 7;
  o.overrides.out = (dir_ / "c.csv").string();
  cmd_solve(problem, config_path("moudafi.run"), o, out, err);
  EXPECT_NE(slurp(dir_ / "a.csv"), slurp(dir_ / "c.csv"));
}

TEST_F(CliTest, CompareBothWeakSolvers) {
  CliOptions o;
  o.overrides.out = dir_.string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_compare(config_path("split_feasibility.problem"),
                        {config_path("moudafi.run"), config_path("averaged_weak.run")}, o, out, err),
            kExitConverged);
  const auto rows = lines_of(out.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NE(rows[1].find("moudafi"), std::string::npos);
  EXPECT_NE(rows[2].find("averaged_weak"), std::string::npos);
  EXPECT_NE(rows[1].find("converged"), std::string::npos);
  EXPECT_NE(rows[2].find("converged"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "moudafi.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "averaged_weak.csv"));
}

TEST_F(CliTest, CompareSingleRun) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_compare(config_path("split_feasibility.problem"), {config_path("moudafi.run")}, {}, out, err),
            kExitConverged);
  EXPECT_EQ(lines_of(out.str()).size(), 2u);
}

TEST_F(CliTest, CompareKeepsGoingAfterFailure) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_compare(config_path("split_feasibility.problem"),
                        {config_path("moudafi.run"), config_path("bad_gamma.run"), config_path("averaged_weak.run")},
                        {}, out, err),
            kExitError);
  const auto rows = lines_of(out.str());
  ASSERT_EQ(rows.size(), 4u);
  int errors = 0, converged = 0;
  for (const auto& r : rows) {
    errors += r.rfind("error:", 0) == 0;
    converged += r.find("converged") != std::string::npos;
  }
  EXPECT_EQ(errors, 1);
  EXPECT_EQ(converged, 2);
}

TEST(CliVerify, LemmasAllAsExpected) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("lemmas", out, err), 0) << out.str();
  for (const auto& line : lines_of(out.str())) {
    const bool pass = line.find("verdict=PASS") != std::string::npos;
    const bool expect_pass = line.find("expected=PASS") != std::string::npos;
    EXPECT_EQ(pass, expect_pass) << line;
  }
}

TEST(CliVerify, Example1Map) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("map:example1", out, err), 0);
  const std::string text = out.str();
  EXPECT_NE(text.find("property=demicontractive_constant[example1]"), std::string::npos);
  EXPECT_NEAR(field(text, "value"), 2.0 / 3.0, 1e-9);
  const auto pos = text.find("property=quasi_nonexpansive[example1]");
  ASSERT_NE(pos, std::string::npos);
  const std::string line = text.substr(pos, text.find('\n', pos) - pos);
  EXPECT_NE(line.find("verdict=FAIL"), std::string::npos);
  EXPECT_NE(line.find("witness_u=1 "), std::string::npos);
  EXPECT_NE(line.find("witness_v=0.875"), std::string::npos);
}

TEST(CliVerify, UnknownScope) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("bogus", out, err), kExitError);
  EXPECT_NE(err.str().find("usage:"), std::string::npos);
  EXPECT_EQ(cmd_verify("map:nosuch", out, err), kExitError);
}

TEST(CliVerify, AllScopesEveryMap) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("all", out, err), 0);
  for (const char* id : {"proj_box", "proj_ball", "proj_halfspace", "affine"})
    EXPECT_NE(out.str().find(std::string("demicontractive_constant[") + id + "]"), std::string::npos) << id;
}
