#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lcd/cli.hpp"
#include "lcd/discrimination.hpp"

namespace lcd {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string &config_text, Command command) {
  std::ostringstream out, err;
  const int code = run_subcommand(parse_config(config_text), command, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path golden(const std::string &name) { return fs::path(LCD_GOLDEN_DIR) / name; }

// Column header of each CSV artifact, pinned in csv_headers.txt as "<artifact> <header>".
std::string pinned_header(const std::string &artifact) {
  for (const auto &l : lines(read_file(golden("csv_headers.txt"))))
    if (l.rfind(artifact + " ", 0) == 0) return l.substr(artifact.size() + 1);
  ADD_FAILURE() << "no pinned header for " << artifact;
  return {};
}

TEST(Commands, NamesRoundTrip) {
  EXPECT_EQ(all_commands().size(), 7u);
  for (const auto c : all_commands()) EXPECT_EQ(command_from_name(command_name(c)), c);
  EXPECT_FALSE(command_from_name("error_curve").has_value());
}

TEST(ErrorCurve, ZeroRadiusGolden) {
  const auto r = run("pi0=0.3 R_list=0", Command::ErrorCurve);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, read_file(golden("error_curve_r0.csv")));
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1], pinned_header("error-curve"));
  EXPECT_EQ(l[2], "0,0,1,0.42,0,0");
}

TEST(ErrorCurve, JsonVariantEchoesProfileAndPriors) {
  const auto r = run("pi0=0.5 R_list=0 format=json family=exponential kappa=2", Command::ErrorCurve);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["header"]["profile"]["family"], "exponential");
  EXPECT_EQ(doc["header"]["profile"]["kappa"], 2.0);
  EXPECT_EQ(doc["header"]["priors"]["pi1"], 0.5);
  ASSERT_EQ(doc["rows"].size(), 1u);
  std::vector<std::string> keys;
  for (const auto &[k, v] : doc["rows"][0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"P_e", "R", "p_t", "scan_T", "t_star", "total_T"}));
  EXPECT_EQ(doc["rows"][0]["P_e"], 0.5);
}

TEST(ErrorCurve, ConfigEchoReproducesRun) {
  const auto first = run("d=3 R_list=1,2 fixed_t=true t=1.5", Command::ErrorCurve);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const std::string echo = lines(first.out)[0].substr(std::string("# lcd error-curve ").size());
  const auto second = run(echo, Command::ErrorCurve);
  EXPECT_EQ(second.out, first.out);
}

TEST(OptimalTime, MatchesDiscriminationModule) {
  const auto r = run("d=10 R=2 n_grid=21", Command::OptimalTime);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto profile = make_profile(GaussianFamily{5.0, 1.0}, 10.0);
  const auto opt = optimal_measurement_time(profile, 2.0, {0.0, 20.0}, 21);
  EXPECT_NEAR(doc["t_star"].get<double>(), opt.t_star, 1e-11 * opt.t_star);
  EXPECT_NEAR(doc["p_t"].get<double>(), opt.p_t_star, 1e-11);
  EXPECT_EQ(doc["header"]["time_mode"], "optimized");
}

TEST(OptimalTime, RequiresSingleRadius) {
  const auto r = run("R_list=1,2", Command::OptimalTime);
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("R_list"), std::string::npos);
}

TEST(MonteCarlo, ByteIdenticalAcrossRuns) {
  const fs::path dir = fs::temp_directory_path() / "lcd_cli_test";
  fs::create_directories(dir);
  const std::string cfg = "trials=2000 seed=11 R=1.5 t=0.5 trial_csv=";
  const auto a = run(cfg + (dir / "a.csv").string(), Command::MonteCarlo);
  const auto b = run(cfg + (dir / "b.csv").string(), Command::MonteCarlo);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto ta = read_file(dir / "a.csv"), tb = read_file(dir / "b.csv");
  EXPECT_EQ(ta, tb);
  const auto l = lines(ta);
  ASSERT_EQ(l.size(), 2002u);
  EXPECT_EQ(l[0].rfind("# lcd monte-carlo ", 0), 0u);
  EXPECT_EQ(l[1], pinned_header("monte-carlo-trials"));
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["n_trials"], 2000);
  EXPECT_EQ(doc["n_inside_errors"], 0);
  fs::remove_all(dir);
}

TEST(DumpDensity, ColumnsAndProvenance) {
  const auto r = run("t=2 n_points=16 family=exponential kappa=1.5", Command::DumpDensity);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 18u);
  EXPECT_EQ(l[0].rfind("# lcd dump-density family=exponential kappa=1.5 ", 0), 0u);
  EXPECT_NE(l[0].find(" t=2 "), std::string::npos);
  EXPECT_EQ(l[1], pinned_header("dump-density"));
  EXPECT_EQ(l[2].rfind("0,", 0), 0u);
}

TEST(ScanTime, Golden) {
  const auto r = run("R=3 beta=0.6", Command::ScanTime);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, read_file(golden("scan_time_r3.json")));
}

TEST(Ruler, Golden) {
  const auto r = run("L1=2 L2=4", Command::Ruler);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, read_file(golden("ruler_2_4.json")));
}

TEST(Ruler, MissingLengthIsConfigError) {
  EXPECT_EQ(run("L1=2", Command::Ruler).code, kExitConfig);
}

TEST(AmplitudeInfo, ReportsNormalization) {
  const auto r = run("oracle_grid=32 R=1", Command::AmplitudeInfo);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["momentum_norm"], 1.0);
  EXPECT_LT(doc["tail_mass"].get<double>(), 1e-10);
  EXPECT_LT(doc["oracle_check"]["relative_difference"].get<double>(), 1e-2);
}

TEST(ExitCodes, FormatMismatchIsConfigError) {
  EXPECT_EQ(run("format=json", Command::DumpDensity).code, kExitConfig);
  EXPECT_EQ(run("format=csv", Command::Ruler).code, kExitConfig);
}

TEST(ExitCodes, NumericFailureIsThree) {
  const auto r = run("amp_tol=1e-300 R=1", Command::ErrorCurve);
  EXPECT_EQ(r.code, kExitNumeric);
  EXPECT_NE(r.err.find("numeric failure"), std::string::npos);
}

TEST(ExitCodes, ResourceLimitIsThree) {
  ::setenv("LCD_MAX_GRID", "32", 1);
  const auto r = run("oracle_grid=64 R=1", Command::AmplitudeInfo);
  ::unsetenv("LCD_MAX_GRID");
  EXPECT_EQ(r.code, kExitNumeric);
}

TEST(ExitCodes, InvalidStateIsThree) {
  EXPECT_EQ(run("trials=1000 t=10 r_max=5", Command::MonteCarlo).code, kExitNumeric);
}

TEST(Output, WritesFileWhenRequested) {
  const fs::path p = fs::temp_directory_path() / "lcd_cli_ruler.json";
  const auto r = run("L1=2 L2=4 output=" + p.string(), Command::Ruler);
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_file(p), read_file(golden("ruler_2_4.json")));
  fs::remove(p);
  EXPECT_EQ(run("L1=2 L2=4 output=/nonexistent/dir/x.json", Command::Ruler).code, kExitConfig);
}

} // namespace
} // namespace lcd
