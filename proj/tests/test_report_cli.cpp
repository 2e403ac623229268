#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ehspin/suites.hpp"

using namespace ehspin;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EHSPIN_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Report, CheckEvaluation) {
  auto below = make_check("a", "x", 1e-9, 1e-8);
  EXPECT_TRUE(below.pass);
  EXPECT_TRUE(below.ok());
  auto above = make_check("b", "x", 0.5, 0.01, Relation::above);
  EXPECT_TRUE(above.pass);
  auto nan = make_check("c", "x", NAN, 1.0);
  EXPECT_FALSE(nan.pass);

  CheckRecord slow = make_check("d", "x", 1e-9, 1e-8);
  slow.order = 1.5;
  slow.min_order = 1.9;
  slow.evaluate();
  EXPECT_FALSE(slow.pass);

  CheckRecord xfail = make_check("e", "x", 1.0, 1e-8);
  xfail.expected_fail = true;
  EXPECT_TRUE(xfail.ok());
  xfail.residual = 0;
  xfail.evaluate();
  EXPECT_FALSE(xfail.ok());
}

TEST(Report, JsonRoundTrip) {
  VerificationReport rep;
  rep.suite = "s";
  rep.anchor = "a";
  rep.seed = 42;
  rep.config = {{"d", 3}};
  CheckRecord c = make_check("x", "y", INFINITY, 1e-3);
  c.order = 2.01;
  c.min_order = 1.9;
  rep.add(c);
  rep.add(make_check("z", "w", 1e-12, 1e-3, Relation::below));
  const nlohmann::json j = rep;
  const auto back = j.get<VerificationReport>();
  ASSERT_EQ(back.checks.size(), 2u);
  EXPECT_TRUE(std::isinf(back.checks[0].residual));
  EXPECT_EQ(back.checks[0].order, 2.01);
  EXPECT_EQ(back.checks[1].residual, 1e-12);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(nlohmann::json(back), j);
}

TEST(Report, CsvQuotesNames) {
  VerificationReport rep;
  rep.suite = "s";
  rep.add(make_check("a,b", "y", 0, 1));
  const auto rows = lines(to_csv(rep));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "suite,name,residual,tol,relation,order,expected_fail,pass");
  EXPECT_EQ(rows[1].rfind("s,\"a,b\",", 0), 0u);
}

TEST(Suites, DeterministicGivenSeed) {
  RunConfig config;
  config.d = 3;
  config.B = 16;
  config.points = 10;
  const auto a = cmd_check_geometry(config);
  const auto b = cmd_check_geometry(config);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].residual, b.checks[i].residual);
  config.threads = 3;
  const auto c = cmd_check_geometry(config);
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].residual, c.checks[i].residual);
  config.seed += 1;
  EXPECT_NE(cmd_check_geometry(config).checks[4].residual, a.checks[4].residual);
}

TEST(Suites, RandomPointsStayInBox) {
  const MetricParams<double> params(4, 16.0);
  SampleBox box;
  for (const auto& p : random_points(params, box, 500, 1)) {
    EXPECT_GE(p.r, box.r_min_factor * params.r0());
    EXPECT_LE(p.r, box.r_max_factor * params.r0());
    EXPECT_GE(p.theta, box.theta_min);
    EXPECT_LE(p.theta, box.theta_max);
    EXPECT_GE(p.psi, box.psi_margin);
    EXPECT_LE(p.psi, params.psi_period() - box.psi_margin);
  }
  EXPECT_EQ(grid_points(params, box, {5, 5, 3, 3}).size(), 225u);
}

TEST(Suites, ConfigValidation) {
  RunConfig bad;
  bad.h = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = RunConfig{};
  bad.box.theta_min = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = RunConfig{};
  bad.B = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = RunConfig{};
  bad.d = 3;
  EXPECT_THROW(cmd_check_parallel(bad), SuiteRefused);
  bad.d = 2;
  EXPECT_THROW(cmd_check_harmonic(bad), SuiteRefused);
}

TEST(Suites, ClassifyJsonAndCsvAgree) {
  const auto table = cmd_classify(3, {-3, 3}, {-3, 3});
  EXPECT_TRUE(table.ok());
  const auto j = to_json(table);
  ASSERT_EQ(j.at("rows").size(), 49u);
  EXPECT_TRUE(j.at("partition").get<bool>());
  const auto rows = lines(to_csv(table));
  ASSERT_EQ(rows.size(), 50u);
  for (std::size_t i = 0; i < 49; ++i) {
    const auto& r = j["rows"][i];
    const std::string prefix = std::to_string(r["d"].get<int>()) + "," + std::to_string(r["m"].get<int>()) + "," +
                               std::to_string(r["n"].get<int>()) + "," + std::to_string(r["case"].get<int>()) + ",";
    EXPECT_EQ(rows[i + 1].rfind(prefix, 0), 0u) << rows[i + 1];
  }
}

TEST(Suites, SampleCsvHeaderAndResiduals) {
  RunConfig config;
  config.d = 3;
  config.B = 16;
  config.grid = {3, 3, 1, 1};
  const auto grid = cmd_sample(config, ModeIndices<double>{});
  ASSERT_EQ(grid.rows.size(), 9u);
  for (const auto& row : grid.rows) EXPECT_LT(row.residual, 1e-6);
  const auto rows = lines(to_csv(grid));
  EXPECT_EQ(rows[0], "r,theta,phi,psi,re1,im1,re2,im2,re3,im3,re4,im4,norm,residual");
  EXPECT_EQ(rows.size(), 10u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("check-clifford"), 0);
  EXPECT_EQ(run_cli("check-geometry --d 2 --B 1 --points 10"), 0);
  EXPECT_EQ(run_cli("check-geometry --d 3 --B 16 --points 10"), 0);
  EXPECT_EQ(run_cli("check-parallel --d 2 --B 1 --points 10"), 0);
  EXPECT_EQ(run_cli("check-parallel --d 3 --B 16"), 2);
  EXPECT_EQ(run_cli("check-harmonic --d 2 --B 1"), 2);
  EXPECT_EQ(run_cli("check-harmonic --d 3 --B 16 --m-range -1,1 --n-range -1,1 --grid 3,3,2,2"), 0);
  EXPECT_EQ(run_cli("check-geometry --d 2 --B 1 --points 10 --tol 1e-20"), 1);
  EXPECT_EQ(run_cli("check-geometry --h -1"), 2);
  EXPECT_EQ(run_cli("check-geometry --format xml"), 2);
  EXPECT_EQ(run_cli("classify --d 5 --m-range -2,2 --n-range -2,2 --format csv"), 0);
  EXPECT_EQ(run_cli("sample --d 3 --B 16 --grid 2,2,1,1"), 0);
}

TEST(Cli, OutputDirectoryAndConfigFile) {
  const auto dir = std::filesystem::temp_directory_path() / "ehspin_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto config = dir / "run.ini";
  std::ofstream(config) << "[classify]\nd=4\nformat=\"csv\"\n";

  const std::string env = "EHSPIN_OUTPUT_DIR=" + dir.string() + " ";
  const std::string cmd = env + EHSPIN_CLI + " --config " + config.string() +
                          " classify --m-range 0,1 --n-range 0,0 --out table.csv > /dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const auto rows = lines(slurp(dir / "table.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].rfind("4,0,0,", 0), 0u);

  const std::string override_cmd = env + EHSPIN_CLI + " --config " + config.string() +
                                   " classify --d 3 --m-range 0,0 --n-range 0,0 --out flag.csv > /dev/null 2>&1";
  ASSERT_EQ(std::system(override_cmd.c_str()), 0);
  EXPECT_EQ(lines(slurp(dir / "flag.csv"))[1].rfind("3,0,0,1,", 0), 0u);
  std::filesystem::remove_all(dir);
}
