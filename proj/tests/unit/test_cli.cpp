#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptwell/cli.hpp"
#include "ptwell/complex_math.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  [[nodiscard]] json parsed() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ptwell::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  auto r = run({"spectrum", "--frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"spectrum", "--coupling", "-1"}).code == 1);
  CHECK(run({"spectrum", "--levels", "0"}).code == 1);
  CHECK(run({"critical", "--index", "-1"}).code == 1);
  CHECK(run({"hierarchy", "--samples", "1"}).code == 1);
  CHECK(run({"hierarchy", "--plan", "real,nope"}).code == 1);
  CHECK(run({"hierarchy", "--format", "xml"}).code == 1);
  CHECK(run({"spectrum", "--format", "csv"}).code == 1);
  CHECK(run({"limit", "--m", "4"}).code == 1);
  CHECK(run({"verify", "--tol", "0"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("spectrum at Z = 0") {
  const auto r = run({"spectrum", "--coupling", "0", "--levels", "3"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  REQUIRE(j["levels"].size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(std::abs(j["levels"][n]["re"].get<double>() - (n + 1) * (n + 1) * ptwell::kPi * ptwell::kPi / 4) < 1e-10);
    CHECK(j["levels"][n]["im"].get<double>() == 0.0);
    CHECK(j["levels"][n]["branch"] == "real");
  }
  CHECK(j["broken_pairs"].empty());
  CHECK(j.contains("residuals"));
}

TEST_CASE("spectrum at Z = 8 tags the conjugate pair") {
  const auto r = run({"spectrum", "--coupling", "8", "--levels", "4"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["levels"][0]["branch"] != "real");
  CHECK(j["levels"][1]["branch"] != "real");
  CHECK(j["levels"][0]["re"] == j["levels"][1]["re"]);
  CHECK(j["levels"][0]["im"].get<double>() == -j["levels"][1]["im"].get<double>());
  CHECK(j["levels"][2]["branch"] == "real");
  REQUIRE(j["broken_pairs"].size() == 1);
}

TEST_CASE("critical couplings") {
  auto j = run({"critical", "--index", "0"}).parsed();
  CHECK(j["z_crit"].get<double>() == doctest::Approx(4.48).epsilon(0.003));
  j = run({"critical", "--index", "1"}).parsed();
  CHECK(j["z_crit"].get<double>() == doctest::Approx(12.80).epsilon(0.001));
  CHECK(j["nu"] == 1);
}

TEST_CASE("hierarchy at Z = 0 follows the sec^2 family") {
  const auto r = run({"hierarchy", "--coupling", "0", "--depth", "3", "--plan", "real,real"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  REQUIRE(j["members"].size() == 3);
  for (const auto& m : j["members"]) CHECK(m["sec2_deviation"].get<double>() < 1e-10);
  CHECK(j["relations"].is_null());
}

TEST_CASE("hierarchy at Z = 8 restores PT in member 3") {
  const auto r = run({"hierarchy", "--coupling", "8", "--depth", "3", "--plan", "cupper,clower"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["members"][1]["pt_symmetric"] == false);
  CHECK(j["members"][2]["pt_symmetric"] == true);
  CHECK(j["relations"]["v3_pt_symmetric"] == true);
}

TEST_CASE("illegal plan step exits 2") {
  const auto r = run({"hierarchy", "--coupling", "2", "--depth", "2", "--plan", "clower"});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"] == "solver");
}

TEST_CASE("hierarchy CSV") {
  const auto r = run({"hierarchy", "--coupling", "1", "--depth", "2", "--plan", "real", "--samples", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "member,x,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 10);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--coupling", "2", "--member", "1", "--levels", "6"});
  CHECK(r.code == 0);
  auto j = r.parsed();
  CHECK(j["pass"] == true);
  CHECK(j["max_deviation"].get<double>() < 1e-6);

  r = run({"verify", "--coupling", "2", "--member", "2", "--levels", "5"});
  CHECK(r.code == 0);
  j = r.parsed();
  for (std::size_t n = 0; n < 5; ++n) CHECK(j["levels"][n]["parent_index"] == n + 1);

  CHECK(run({"verify", "--coupling", "2", "--member", "1", "--levels", "2", "--tol", "1e-20"}).code == 3);
}

TEST_CASE("limit") {
  auto r = run({"limit", "--m", "2", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["checks"][0]["ratio_variance"].get<double>() < 1e-8);
  r = run({"limit", "--m", "3", "--n", "0"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["checks"][0]["potential_deviation"].get<double>() < 1e-10);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args{"spectrum", "--coupling", "8", "--levels", "6"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> h{"hierarchy", "--coupling", "8", "--plan", "cupper,clower", "--samples", "7"};
  CHECK(run(h).out == run(h).out);
}

TEST_CASE("numbers carry 17 significant digits") {
  const auto r = run({"spectrum", "--coupling", "0", "--levels", "1"});
  CHECK(r.out.find("2.4674011002723395") != std::string::npos);
}

TEST_CASE("--output writes the file") {
  const auto path = std::filesystem::temp_directory_path() / "ptwell_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run({"critical", "--index", "0", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  CHECK(j["nu"] == 0);
  std::filesystem::remove(path);
  CHECK(run({"critical", "--output", "/nonexistent-dir/x.json"}).code == 1);
}

TEST_CASE("PTWELL_TOL_OVERRIDE scales tolerances") {
  ::setenv("PTWELL_TOL_OVERRIDE", "1e-30", 1);
  CHECK(run({"verify", "--coupling", "2", "--member", "1", "--levels", "2"}).code == 3);
  ::setenv("PTWELL_TOL_OVERRIDE", "banana", 1);
  CHECK(run({"verify", "--coupling", "2", "--member", "1", "--levels", "2"}).code == 1);
  ::unsetenv("PTWELL_TOL_OVERRIDE");
  CHECK(run({"verify", "--coupling", "2", "--member", "1", "--levels", "2"}).code == 0);
}

}  // TEST_SUITE
