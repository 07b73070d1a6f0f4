#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "palindromic_examples.hpp"
#include "pherm/cli.hpp"
#include "pherm/json_io.hpp"

using namespace pherm;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pherm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string put(const std::string& name, const json& j) const {
    std::ofstream(path(name)) << dump(j);
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  int run_cmd(RunConfig c, json* result = nullptr, json* error = nullptr) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    if (result && !out.str().empty()) *result = json::parse(out.str());
    if (error && !err.str().empty()) *error = json::parse(err.str());
    return code;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EvdOnSquareRootExample) {
  RunConfig c{.command = "evd", .input = put("r.json", to_json(oracle::r_example()))};
  json res;
  ASSERT_EQ(run_cmd(c, &res), 0);
  EXPECT_EQ(res["N"], 2);
  EXPECT_EQ(res["residuals"]["N"], 2);
  EXPECT_LT(res["residuals"]["reconstruction"].get<double>(), 1e-10);
  EXPECT_LT(res["residuals"]["para_unitarity"].get<double>(), 1e-10);
}

TEST_F(Cli, CheckRejectsNonParaHermitian) {
  LaurentMatrix a = oracle::r_example();
  a(0, 1) = FracLaurent(1, 0, {1.0, 2.0});
  RunConfig c{.command = "check", .input = put("bad.json", to_json(a))};
  json res, err;
  EXPECT_EQ(run_cmd(c, &res, &err), 1);
  EXPECT_EQ(res["para_hermitian"], false);
  EXPECT_NEAR(res["residual"].get<double>(), 1.0, 1e-14);
  EXPECT_EQ(err["error"], "NotParaHermitian");
  EXPECT_EQ(err["class"], "validation");

  c.input = put("good.json", to_json(oracle::r_example()));
  EXPECT_EQ(run_cmd(c, &res), 0);
  EXPECT_EQ(res["para_hermitian"], true);

  c.input = put("poly.json", to_json(examples::quadratic()));
  EXPECT_EQ(run_cmd(c, &res), 0);
  EXPECT_EQ(res["palindromic"], true);
}

TEST_F(Cli, SignCharOnQuadratic) {
  RunConfig c{.command = "signchar", .input = put("p.json", to_json(examples::quadratic()))};
  json res;
  ASSERT_EQ(run_cmd(c, &res), 0);
  ASSERT_EQ(res["eigenvalues"].size(), 1u);
  const json& e = res["eigenvalues"][0];
  EXPECT_EQ(e["multiplicity"], 2);
  ASSERT_EQ(e["entries"].size(), 1u);
  EXPECT_EQ(e["entries"][0]["m"], 2);
  EXPECT_EQ(e["entries"][0]["eps"], 1);
  EXPECT_EQ(e["entries"][0]["feature"], 0);
  EXPECT_NEAR(e["lambda"][0].get<double>(), 1.0, 1e-8);
}

TEST_F(Cli, PolynomialScalarForms) {
  // numbers, [re, im] and {re, im} are all accepted
  const json p = json::parse(R"({"grade": 1, "coeffs": [
      [[1, {"re": 0, "im": -1}], [{"im": -1}, 0.01]],
      [[1, [0, 1]], [[0, 1], 0.01]]]})");
  RunConfig c{.command = "signchar", .input = put("p.json", p)};
  json res;
  ASSERT_EQ(run_cmd(c, &res), 0);
  EXPECT_EQ(res["eigenvalues"].size(), 2u);
}

TEST_F(Cli, PerturbMovesEigenvaluesOff) {
  const double e = 0.1;
  Eigen::MatrixXcd da = Eigen::MatrixXcd::Zero(2, 2);
  da(1, 1) = -2.0 * e * e;
  RunConfig c{.command = "perturb",
              .input = put("p.json", to_json(examples::pencil(examples::a_eps(e)))),
              .delta = put("d.json", to_json(examples::pencil(da)))};
  json res;
  ASSERT_EQ(run_cmd(c, &res), 0);
  ASSERT_EQ(res["clusters"].size(), 2u);
  for (const auto& cl : res["clusters"]) EXPECT_EQ(cl["moved_off_circle"], true);
}

TEST_F(Cli, DeterministicOutput) {
  oracle::Random rnd(81);
  const std::string in = put("a.json", to_json(rnd.symmetrized(3, 2)));
  RunConfig c{.command = "evd", .input = in, .out = path("o1.json")};
  ASSERT_EQ(run_cmd(c), 0);
  c.out = path("o2.json");
  ASSERT_EQ(run_cmd(c), 0);
  EXPECT_EQ(slurp(path("o1.json")), slurp(path("o2.json")));
}

TEST_F(Cli, ResultFactorsRoundTrip) {
  oracle::Random rnd(82);
  const LaurentMatrix a = rnd.constructed(3, 1);
  const std::string in = put("a.json", to_json(a));
  {
    RunConfig c{.command = "evd", .input = in, .out = path("evd.json")};
    ASSERT_EQ(run_cmd(c), 0);
    const json r = read_json_file(path("evd.json"));
    const Residuals re = evd_residuals(a, matrix_from_json(r["U"]), matrix_from_json(r["D"]));
    EXPECT_NEAR(re.reconstruction, r["residuals"]["reconstruction"].get<double>(), 1e-12);
    EXPECT_NEAR(re.para_unitarity, r["residuals"]["para_unitarity"].get<double>(), 1e-12);
  }
  {
    const LaurentMatrix b = rnd.matrix_function(2, 3, 1);
    RunConfig c{.command = "svd", .input = put("b.json", to_json(b)), .out = path("svd.json")};
    ASSERT_EQ(run_cmd(c), 0);
    const json r = read_json_file(path("svd.json"));
    const Residuals re =
        factor_residuals(b, matrix_from_json(r["U"]), matrix_from_json(r["S"]), matrix_from_json(r["V"]));
    EXPECT_NEAR(re.reconstruction, r["residuals"]["reconstruction"].get<double>(), 1e-12);
  }
  {
    RunConfig c{.command = "pseudocirc", .input = put("r.json", to_json(oracle::r_example())), .out = path("pc.json")};
    ASSERT_EQ(run_cmd(c), 0);
    const json r = read_json_file(path("pc.json"));
    const LaurentMatrix w = matrix_from_json(r["W"]);
    const Residuals re = factor_residuals(oracle::r_example(), w, matrix_from_json(r["C"]), w);
    EXPECT_NEAR(re.reconstruction, r["residuals"]["reconstruction"].get<double>(), 1e-12);
    ASSERT_EQ(r["blocks"].size(), 1u);
    EXPECT_EQ(r["blocks"][0]["size"], 2);
  }
}

TEST_F(Cli, CsvCurves) {
  RunConfig c{.command = "evd", .input = put("r.json", to_json(oracle::r_example())), .csv = path("c.csv")};
  ASSERT_EQ(run_cmd(c), 0);
  std::ifstream f(path("c.csv"));
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "theta,branch_index,mu");
  int rows = 0;
  while (std::getline(f, line)) {
    double th, mu;
    int b;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%d,%lf", &th, &b, &mu), 3);
    EXPECT_NEAR(std::abs(mu), 2.0 * std::abs(std::cos(th / 2.0)), 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, 2 * 512);

  LaurentMatrix one(1, 1);
  one(0, 0) = FracLaurent(1, 0, {1.0, 1.0});
  RunConfig s{.command = "svd", .input = put("s.json", to_json(one)), .abs_singular_values = true, .csv = path("s.csv")};
  ASSERT_EQ(run_cmd(s), 0);
  std::ifstream g(path("s.csv"));
  std::getline(g, line);
  EXPECT_EQ(line, "theta,branch_index,sigma");
  std::getline(g, line);
  double th, sv;
  int b;
  ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%d,%lf", &th, &b, &sv), 3);
  EXPECT_NEAR(sv, std::abs(2.0 * std::cos(th / 2.0)), 1e-12);
}

TEST_F(Cli, ExitCodes) {
  json err;
  RunConfig missing{.command = "evd", .input = path("nope.json")};
  EXPECT_EQ(run_cmd(missing, nullptr, &err), 1);
  EXPECT_EQ(err["error"], "ParseError");

  std::ofstream(path("garbage.json")) << "{not json";
  RunConfig garbage{.command = "evd", .input = path("garbage.json")};
  EXPECT_EQ(run_cmd(garbage, nullptr, &err), 1);

  RunConfig period{.command = "evd", .input = put("r.json", to_json(oracle::r_example())), .max_period = 1};
  EXPECT_EQ(run_cmd(period, nullptr, &err), 2);
  EXPECT_EQ(err["error"], "PeriodUndetected");
  EXPECT_EQ(err["class"], "numerical");

  RunConfig grid{.command = "evd", .input = path("r.json"), .grid = 100};
  EXPECT_EQ(run_cmd(grid, nullptr, &err), 1);
  RunConfig tol{.command = "evd", .input = path("r.json"), .tol = 0.5};
  EXPECT_EQ(run_cmd(tol, nullptr, &err), 1);
}

TEST_F(Cli, ArgumentParsing) {
  const std::string in = put("r.json", to_json(oracle::r_example()));
  const std::string out = path("o.json");
  std::vector<std::string> args = {"pherm", "evd", in, "--grid", "128", "--tol", "1e-9", "--out", out};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  ASSERT_EQ(cli_main(static_cast<int>(argv.size()), argv.data(), o, e), 0) << e.str();
  const json r = read_json_file(out);
  EXPECT_EQ(r["N"], 2);
  EXPECT_GE(r["grid"].get<int>(), 128);

  std::vector<std::string> bad = {"pherm", "evd", in, "--no-such-flag"};
  std::vector<char*> bargv;
  for (auto& a : bad) bargv.push_back(a.data());
  std::ostringstream o2, e2;
  EXPECT_EQ(cli_main(static_cast<int>(bargv.size()), bargv.data(), o2, e2), 1);
  EXPECT_EQ(json::parse(e2.str())["error"], "ParseError");
}
