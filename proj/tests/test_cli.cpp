#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gyp/cli_app.hpp"
#include "gyp/json_io.hpp"

using namespace gyp;

namespace {

std::string data(const std::string& name) {
  return std::string(GYP_TEST_DATA_DIR) + "/" + name;
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("compute kl on discrete fixtures") {
  auto r = run({"compute", "--p", data("half_half.json"), "--r",
                data("quarter_three.json"), "--family", "kl"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["family"] == "kl");
  CHECK(j["value"].get<double>() ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-12));
  CHECK(j["method"] == "quadrature");
}

TEST_CASE("compute with P = R is zero") {
  auto r = run({"compute", "--p", data("half_half.json"), "--r",
                data("half_half.json"), "--family", "renyi", "--order", "2"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() ==
        doctest::Approx(0.0));
}

TEST_CASE("compute reports inf on non-AC pairs") {
  auto r = run({"compute", "--p", data("uniform02.json"), "--r",
                data("uniform01.json"), "--family", "renyi", "--order", "2"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"] == "inf");
}

TEST_CASE("compute rejects bad inputs with exit 2") {
  auto r = run({"compute", "--p", data("bad_mass.json"), "--r",
                data("uniform01.json"), "--family", "kl"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"] == "NotNormalized");

  auto r2 = run({"compute", "--p", data("half_half.json"), "--r",
                 data("quarter_three.json"), "--family", "renyi", "--order", "1"});
  CHECK(r2.code == 2);
  CHECK(nlohmann::json::parse(r2.err)["error"] == "OrderOutOfRange");

  auto r3 = run({"compute", "--p", "/nonexistent.json", "--r",
                 data("uniform01.json"), "--family", "kl"});
  CHECK(r3.code == 2);
}

TEST_CASE("refine beta fixture") {
  auto r = run({"refine", "--p", data("beta22.json"), "--r", data("uniform01.json"),
                "--family", "renyi", "--order", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["converged"] == true);
  CHECK(j["gap"].get<double>() <= 1e-4);
  CHECK(j["lower_bound"].get<double>() ==
        doctest::Approx(std::log(6.0 / 5.0)).epsilon(1e-3));
}

TEST_CASE("refine discrete pair is exact at the atom partition") {
  auto r = run({"refine", "--p", data("half_half.json"), "--r",
                data("quarter_three.json"), "--family", "renyi", "--order", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["cells"].get<int>() == 2);
  CHECK(j["gap"].get<double>() <= 1e-12);
}

TEST_CASE("refine writes a deterministic trace CSV") {
  std::string t1 = "/tmp/gyp_trace_1.csv", t2 = "/tmp/gyp_trace_2.csv";
  for (const std::string& t : {t1, t2}) {
    auto r = run({"refine", "--p", data("uniform_half.json"), "--r",
                  data("uniform01.json"), "--family", "renyi", "--order", "2",
                  "--trace", t});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["converged"] == true);
    CHECK(j["cells"].get<int>() == 2);
    CHECK(j["lower_bound"].get<double>() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));
  }
  std::string a = slurp(t1), b = slurp(t2);
  CHECK(a == b);
  CHECK(a.rfind("step,cells,partition_value,oracle_value,gap", 0) == 0);
  std::remove(t1.c_str());
  std::remove(t2.c_str());
}

TEST_CASE("sweep emits rows sorted by order") {
  auto r = run({"sweep", "--p", data("beta22.json"), "--r", data("uniform01.json"),
                "--family", "renyi", "--orders", "1.5:0.5:3.0"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  double prev_order = 0.0, prev_oracle = -1e300;
  int rows = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    double o = j["order"].get<double>();
    CHECK(o > prev_order);
    CHECK(j["oracle"].get<double>() >= prev_oracle - 1e-12);
    prev_order = o;
    prev_oracle = j["oracle"].get<double>();
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("verify suites pass on the fixed seed") {
  auto r = run({"verify", "--suite", "holder", "--seed", "42"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["max_violation"].get<double>() <= 1e-9);
  CHECK(j["seed"].get<int>() == 42);

  auto r2 = run({"verify", "--suite", "transform"});
  REQUIRE(r2.code == 0);
  CHECK(nlohmann::json::parse(r2.out)["max_violation"].get<double>() <= 1e-10);
}

TEST_CASE("verify rejects corrupted fixtures before running") {
  auto r = run({"verify", "--suite", "holder", "--p", data("bad_mass.json")});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"] == "NotNormalized");
}

TEST_CASE("unknown suite is an input error") {
  auto r = run({"verify", "--suite", "nope"});
  CHECK(r.code == 2);
}

TEST_CASE("json results round-trip byte-identically") {
  auto r = run({"compute", "--p", data("beta22_density.json"), "--r",
                data("uniform01.json"), "--family", "renyi", "--order", "2"});
  REQUIRE(r.code == 0);
  std::string line = r.out.substr(0, r.out.find('\n'));
  auto j = nlohmann::json::parse(line);
  JsonObject o;
  o.field("family", j["family"].get<std::string>())
      .field("order", j["order"].get<double>())
      .field("value", j["value"].get<double>())
      .field("method", j["method"].get<std::string>());
  CHECK(o.str() == line);
}

TEST_CASE("density and named beta measures agree") {
  auto a = run({"compute", "--p", data("beta22.json"), "--r", data("uniform01.json"),
                "--family", "renyi", "--order", "2"});
  auto b = run({"compute", "--p", data("beta22_density.json"), "--r",
                data("uniform01.json"), "--family", "renyi", "--order", "2"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
}
