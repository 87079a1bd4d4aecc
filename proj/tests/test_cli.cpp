#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "critexp/cli.hpp"
#include "support.hpp"

using namespace critexp;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "critexp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / "critexp_cli_tests";
  fs::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("candidate pieces") {
  const auto r = cli({"candidate", "--report", "pieces"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["command"] == "candidate");
  CHECK(j["result"]["total"].get<double>() == doctest::Approx(kTotalAlpha0).epsilon(1e-12));
  CHECK(j["result"]["pieces"]["integral_0_2"].get<double>() == doctest::Approx(kHeadAlpha0).epsilon(1e-12));
  CHECK(j["result"]["beats_bound"] == true);
  CHECK(j["config"]["alpha"] == 0.0);
}

TEST_CASE("threshold") {
  const auto j = cli({"threshold", "--tol", "1e-6"}).json();
  const double lo = j["result"]["lower"], hi = j["result"]["upper"];
  CHECK(lo <= kAlphaStar);
  CHECK(hi >= kAlphaStar);
  CHECK(hi - lo <= 1e-6);
}

TEST_CASE("evaluate a zero profile") {
  const auto p = scratch("zero.csv", "r,u\n0,0\n0.5,0\n1,0\n");
  const auto r = cli({"evaluate", "--profile", p.string(), "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("result.dirichlet_norm,0.0\n") != std::string::npos);
  CHECK(r.out.find("result.functional,0.0\n") != std::string::npos);
}

TEST_CASE("sweep rows and signs") {
  CHECK(cli({"sweep", "--alphas", ""}).code == 2);
  CHECK(cli({"sweep", "--alphas", "0,,1"}).code == 2);
  CHECK(cli({"sweep", "--alphas", "0,x"}).code == 2);
  CHECK(cli({"sweep", "--alphas", "0,-1"}).code == 2);
  const auto j = cli({"sweep", "--alphas", "0,0.01,0.05,10,50"}).json();
  const auto& rows = j["result"]["rows"];
  REQUIRE(rows.size() == 5);
  auto cand = [&](int k) { return rows[k]["candidate_value"].get<double>(); };
  auto bound = [&](int k) { return rows[k]["bound"].get<double>(); };
  CHECK(rows[2]["alpha"] == 0.05);
  CHECK(cand(0) > bound(0));
  CHECK(cand(1) > bound(1));
  CHECK(cand(2) < bound(2));  // past the threshold near 0.0121
  CHECK(cand(3) < bound(3));
  CHECK(cand(4) < bound(4));
  for (const auto& row : rows) {
    CHECK(row["converged"] == true);
    CHECK(row["identity_gap"].get<double>() < 1e-8);
  }
}

TEST_CASE("sweep csv header") {
  const auto r = cli({"sweep", "--alphas", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("alpha,optimizer_value,candidate_value,bound,identity_gap,concentration,converged,error\n", 0) == 0);
}

TEST_CASE("output is byte-identical across runs") {
  const auto a = cli({"optimize", "--alpha", "0.7"});
  const auto b = cli({"optimize", "--alpha", "0.7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(cli({"sweep", "--alphas", "0.3,2"}).out == cli({"sweep", "--alphas", "0.3,2"}).out);
}

TEST_CASE("precondition and convergence exit codes") {
  CHECK(cli({"candidate", "--bogus"}).code == 2);
  CHECK(cli({"candidate", "--alpha", "-1"}).code == 2);
  CHECK(cli({"optimize", "--gamma-factor", "0"}).code == 2);
  const auto bad = scratch("bad.csv", "r,u\n0,1\n0.5,x\n1,0\n");
  const auto r = cli({"evaluate", "--profile", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find(":3:") != std::string::npos);
  CHECK(cli({"evaluate", "--profile", "/nonexistent/p.csv"}).code == 2);
  CHECK(cli({"optimize", "--max-iters", "1"}).code == 3);
}

TEST_CASE("reports embed their configuration and honour --output") {
  const auto dir = fs::temp_directory_path() / "critexp_cli_tests";
  fs::create_directories(dir);
  const auto out = dir / "opt.json";
  fs::remove(out);
  const auto r = cli({"optimize", "--alpha", "1", "--grid", "257", "--output", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["optimizer"]["grid_nodes"] == 257);
  CHECK(j["result"]["grid_nodes"] == 257);
  CHECK(j["result"]["converged"] == true);
}

TEST_CASE("supercritical probe through the cli") {
  const auto j = cli({"optimize", "--alpha", "1", "--gamma-factor", "1.1", "--n-max", "20"}).json();
  const auto& v = j["result"]["values"];
  REQUIRE(v.size() == 20);
  for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k].get<double>() > v[k - 1].get<double>());
}

TEST_CASE("verify passes on the default profile") {
  const auto r = cli({"verify", "--alpha", "1"});
  CHECK(r.code == 0);
  const auto p = scratch("bump.csv", "r,u\n0,0.4\n0.3,0.35\n0.7,0.1\n1,0\n");
  CHECK(cli({"verify", "--alpha", "0.5", "--profile", p.string()}).code == 0);
}

TEST_CASE("transform and rearrange commands") {
  const auto p = scratch("tent.csv", "r,u\n0,0.5\n0.5,0.25\n1,0\n");
  const auto id = cli({"transform", "--profile", p.string(), "--kind", "identities", "--alpha", "1"});
  REQUIRE(id.code == 0);
  const auto s = scratch("polar.csv", "3,4\n1,1,1,1\n0.5,0.2,0,0.2\n0,0,0,0\n");
  const auto re = cli({"rearrange", "--sample", s.string(), "--alpha", "1"});
  REQUIRE(re.code == 0);
  CHECK(re.json()["command"] == "rearrange");
  CHECK(cli({"rearrange", "--alpha", "1"}).code == 2);
}
