#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccslab/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = ccslab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("orbit of the wild cubic") {
  const auto r = run({"orbit", "--poly", "z^3-2z+2", "--start", "0", "--steps", "4"});
  REQUIRE(r.code == ccslab::cli::kExitOk);
  const auto j = r.report();
  CHECK(j["command"] == "orbit");
  CHECK(j["version"] == ccslab::cli::version());
  CHECK(j["result"]["orbit"] == json::array({0.0, 1.0, 0.0, 1.0, 0.0}));
  CHECK(j["result"]["period"] == 2);
  CHECK(j["parameters"]["poly"] == "z^3-2z+2");
}

TEST_CASE("vc of the threshold family") {
  const auto r = run({"vc", "--family", "threshold", "--depth", "6", "--cut", "0.25,0.75", "--cap", "4"});
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["result"]["dim"] == 1);
  CHECK(j["result"]["certificate_ok"] == true);
}

TEST_CASE("talagrand exact path") {
  const auto r = run({"talagrand", "--family", "cyl:1", "--E", "full", "--cut", "0.25,0.75", "--k", "1", "--exact"});
  REQUIRE(r.code == 0);
  const auto j = r.report()["result"];
  CHECK(j["exact"].get<double>() == doctest::Approx(0.25));
  CHECK(j["threshold"].get<double>() == 1.0);
}

TEST_CASE("talagrand sampling echoes the seed") {
  const std::vector<std::string> args{"talagrand", "--family", "prefix:2", "--k", "1", "--samples", "2000"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.report()["parameters"]["seed"] == 0);
  CHECK(a.report()["result"]["seed"] == 0);
}

TEST_CASE("limit, apply and families") {
  const auto lim = run({"limit", "--seq", "newton", "--poly", "x^2-2", "--x", "1"});
  REQUIRE(lim.code == 0);
  CHECK(lim.report()["result"]["status"] == "Stabilized");
  CHECK(lim.report()["result"]["value"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto delta = run({"limit", "--seq", "delta", "--target", "(01)", "--x", "(01)"});
  REQUIRE(delta.code == 0);
  CHECK(delta.report()["result"]["value"] == "(1)");

  const auto ap = run({"apply", "--transition", "threshold:01", "--state", "00(1)"});
  REQUIRE(ap.code == 0);
  CHECK(ap.report()["result"]["output"] == "(1)");

  const auto fam = run({"families", "--family", "D5", "--depth", "4", "--check"});
  REQUIRE(fam.code == 0);
  CHECK(fam.report()["result"]["passed"] == true);
}

TEST_CASE("render writes an image and reports to stdout") {
  const std::string path = "test_cli_render.ppm";
  const auto r = run({"render", "--poly", "z^3-1", "--size", "12x8", "--iters", "20", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.report()["result"]["width"] == 12);
  std::ifstream in(path, std::ios::binary);
  std::string header;
  std::getline(in, header);
  CHECK(header == "P6");
  std::remove(path.c_str());
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "test_cli_report.json";
  const auto r = run({"orbit", "--poly", "z^2-2", "--start", "1", "--steps", "3", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["command"] == "orbit");
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({}).code == ccslab::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == ccslab::cli::kExitUsage);
  CHECK(run({"orbit"}).code == ccslab::cli::kExitUsage);
  CHECK(run({"vc", "--family", "threshold", "--cut", "0.75,0.25"}).code != 0);

  const auto bad_poly = run({"orbit", "--poly", "z^3-2y", "--start", "0"});
  CHECK(bad_poly.code == ccslab::cli::kExitUsage);
  CHECK(bad_poly.err.find('^') != std::string::npos);

  const auto bad_flag = run({"vc", "--family", "threshold", "--depth", "nope"});
  CHECK(bad_flag.code == ccslab::cli::kExitUsage);
  CHECK(bad_flag.err.find("--depth") != std::string::npos);

  CHECK(run({"talagrand", "--family", "cyl:1", "--E", "empty"}).code == ccslab::cli::kExitDomain);
  CHECK(run({"orbit", "--poly", "3", "--start", "0"}).code == ccslab::cli::kExitDomain);
}
