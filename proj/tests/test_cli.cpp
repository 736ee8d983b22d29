#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "regsimplex/poly.hpp"
#include "regsimplex/poly_json.hpp"
#include "support/oracles.hpp"

using namespace regsimplex;
using nlohmann::json;
using oracle::q;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "regsimplex_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path.string();
}

std::string write_poly(const std::string& name, const poly::MultiPoly& p) {
  return write_file(name, poly::poly_to_json(p).dump());
}

}  // namespace

TEST_CASE("verify") {
  auto r = run({"verify", "--d", "2", "--count", "1000", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["all_zero"] == true);
  CHECK(r.doc()["result"]["violations"].empty());
  CHECK(r.doc()["config"]["count"] == 1000);
  CHECK(r.doc()["config"]["box"] == "3");

  CHECK(run({"verify", "--d", "1"}).code == 0);
  CHECK(run({"verify", "--d", "5", "--edge-sq", "4/9", "--count", "50"}).code == 0);
  CHECK(run({"verify", "--d", "0"}).code == 2);
  CHECK(run({"verify", "--edge-sq", "0"}).code == 2);
  CHECK(run({"verify", "--edge-sq", "abc"}).code == 2);
  CHECK(run({"verify", "--count", "0"}).code == 2);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--nope"}).code == 2);
  CHECK(run({"verify", "--d", "two"}).code == 2);
  const auto help = run({"discover", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--max-degree") != std::string::npos);
  CHECK(help.out.find("[4]") != std::string::npos);
}

TEST_CASE("discover") {
  auto r = run({"discover", "--d", "2", "--max-degree", "4"});
  CHECK(r.code == 0);
  const auto doc = r.doc();
  CHECK(doc["command"] == "discover");
  CHECK(doc["config"]["max_degree"] == 4);
  CHECK(doc["config"]["threshold"] == 1e-8);
  CHECK(doc["config"]["max_denominator"] == 1000000);
  REQUIRE(doc["result"]["candidates"].size() == 1);
  CHECK(doc["result"]["candidates"][0]["certificate"] == "divisible-by-F");
  const auto found = poly::poly_from_json(doc["result"]["candidates"][0]["poly"]);
  CHECK(poly::divide_by_F(found, 2, q(1)).remainder.is_zero());
  CHECK(r.err.find("divisible-by-F") != std::string::npos);

  CHECK(run({"discover", "--d", "2", "--max-degree", "3"}).code == 0);
  CHECK(run({"discover", "--d", "0"}).code == 2);
  CHECK(run({"discover", "--max-degree", "0"}).code == 2);
  CHECK(run({"discover", "--threshold", "-1"}).code == 2);
}

TEST_CASE("discover flags an inconclusive gap") {
  // far too few samples for the basis: the spectrum has no clean cut
  auto r = run({"discover", "--d", "2", "--max-degree", "4", "--count", "20"});
  CHECK(r.code == 1);
  CHECK(r.doc()["result"]["inconclusive"] == true);
  CHECK(r.doc()["result"]["candidates"].empty());
}

TEST_CASE("independence and sphere") {
  auto r = run({"independence", "--d", "3", "--subset", "1,2,3", "--max-degree", "4"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["verdict"] == "no-relation-found");
  CHECK(r.doc()["config"]["subset"] == json({1, 2, 3}));
  CHECK(run({"independence", "--d", "2", "--subset", "1,2,3"}).code == 2);
  CHECK(run({"independence", "--d", "2", "--subset", "1,x"}).code == 2);

  r = run({"sphere", "--d", "2", "--max-degree", "2"});
  CHECK(r.code == 0);
  REQUIRE(r.doc()["result"]["members"].size() == 1);
  const auto g = poly::poly_from_json(r.doc()["result"]["members"][0]["poly"]);
  CHECK(g == poly::scale(poly::build_G(2, q(1)), q(-1, 2)));
  CHECK(run({"sphere", "--d", "1"}).code == 2);
}

TEST_CASE("reduce") {
  const auto f = poly::build_F(2, q(1));
  const auto t1 = poly::MultiPoly::variable(3, 0);
  const auto t2 = poly::MultiPoly::variable(3, 1);

  auto r = run({"reduce", "--poly", write_poly("multiple.json", (t1 * t1 + poly::MultiPoly::constant(3, 3)) * f)});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["member"] == true);
  CHECK(poly::poly_from_json(r.doc()["result"]["quotient"]) == t1 * t1 + poly::MultiPoly::constant(3, 3));

  r = run({"reduce", "--poly", write_poly("g.json", poly::build_G(2, q(1)))});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["member"] == false);
  CHECK(poly::poly_from_json(r.doc()["result"]["remainder"]) == poly::build_G(2, q(1)));

  r = run({"reduce", "--poly", write_poly("shifted.json", f + t2)});
  CHECK(r.doc()["result"]["member"] == false);
  CHECK(poly::poly_from_json(r.doc()["result"]["remainder"]) == t2);

  r = run({"reduce", "--d", "3", "--poly", write_poly("arity.json", f)});
  CHECK(r.code == 2);

  r = run({"reduce", "--poly", write_file("bad_term.json", R"({"vars":["T1","T2","T3"],"terms":[
      {"coeff":"1","exps":[1,0,0]},{"coeff":"2","exps":[1,0]}]})")});
  CHECK(r.code == 2);
  CHECK(r.err.find("term 1") != std::string::npos);

  r = run({"reduce", "--poly", write_file("not_json.json", "{ nope")});
  CHECK(r.code == 2);
  CHECK(r.err.find("malformed JSON") != std::string::npos);

  CHECK(run({"reduce", "--poly", scratch("missing.json").string()}).code == 2);
  CHECK(run({"reduce"}).code == 2);
}

TEST_CASE("reconstruct") {
  auto r = run({"reconstruct", "--d", "2", "--t", "0,1,1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["status"] == "feasible");
  const auto p = r.doc()["result"]["point"];
  CHECK(std::abs(p[0].get<double>()) < 1e-12);
  CHECK(std::abs(p[1].get<double>()) < 1e-12);

  r = run({"reconstruct", "--d", "2", "--t", "1,1,1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["status"] == "infeasible");
  CHECK(std::abs(r.doc()["result"]["residual"].get<double>() - 2.0 / 3.0) < 1e-9);

  CHECK(run({"reconstruct", "--d", "2", "--t", "1,1"}).code == 2);
  CHECK(run({"reconstruct", "--d", "2", "--t", "1,x,1"}).code == 2);
  CHECK(run({"reconstruct", "--d", "2", "--t", "0,1,1", "--tol", "-1"}).code == 2);
}

TEST_CASE("probe63") {
  auto r = run({"probe63", "--count", "1000"});
  CHECK(r.code == 0);
  const auto doc = r.doc();
  CHECK(doc["result"]["trials"].size() == 1000);
  CHECK(doc["config"]["trials"] == 1000);
  CHECK(doc["result"]["summary"].contains("no_real_root"));
  CHECK(run({"probe63", "--count", "0"}).code == 2);
}

TEST_CASE("soddy") {
  auto r = run({"soddy", "--radii", "1,1,1"});
  CHECK(r.code == 0);
  const auto doc = r.doc();
  CHECK(doc["result"]["roots"][0].get<double>() == doctest::Approx(6.46410).epsilon(1e-5));
  CHECK(doc["result"]["roots"][1].get<double>() == doctest::Approx(-0.46410).epsilon(1e-4));
  for (const auto& c : doc["result"]["fourth_circles"]) CHECK(c["residual"].get<double>() < 1e-9);

  r = run({"soddy", "--radii", "1,1,1", "--k4", "1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["fourth_circles"][0]["residual"].get<double>() > 1e-3);

  r = run({"soddy", "--d", "3", "--radii", "1,1,1,1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["roots"][0].get<double>() == doctest::Approx(2.0 + std::sqrt(6.0)));
  CHECK_FALSE(r.doc()["result"].contains("fourth_circles"));

  CHECK(run({"soddy", "--radii", "1,1"}).code == 2);
  CHECK(run({"soddy", "--radii", "1,0,1"}).code == 2);
  CHECK(run({"soddy", "--radii", "1,1,1", "--k4", "0"}).code == 2);
  CHECK(run({"soddy", "--radii", "1,1,1", "--d", "1"}).code == 2);
}

TEST_CASE("cm") {
  auto r = run({"cm", "--edges-equilateral", "3", "--a", "1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["determinant"] == "-3");
  CHECK(r.doc()["result"]["volume"].get<double>() == doctest::Approx(0.43301).epsilon(1e-5));

  r = run({"cm", "--squared", "1,4,1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["determinant"] == "0");
  CHECK(r.doc()["result"]["volume"].get<double>() == 0.0);

  r = run({"cm", "--squared", "1,16,1"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["embeddable"] == false);

  r = run({"cm", "--edges-equilateral", "4", "--edge-sq", "1"});
  CHECK(r.doc()["result"]["volume"].get<double>() == doctest::Approx(1.0 / (6.0 * std::sqrt(2.0))));

  CHECK(run({"cm"}).code == 2);
  CHECK(run({"cm", "--squared", "1,1"}).code == 2);
  CHECK(run({"cm", "--squared", "1,1,1", "--edges-equilateral", "3"}).code == 2);
  CHECK(run({"cm", "--edges-equilateral", "3", "--a", "1", "--edge-sq", "2"}).code == 2);
  CHECK(run({"cm", "--squared", "1,-1,1"}).code == 2);
}

TEST_CASE("identical arguments give byte-identical JSON") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "--d", "3", "--count", "100", "--seed", "9"},
           {"discover", "--d", "2", "--max-degree", "4", "--seed", "5"},
           {"sphere", "--d", "2", "--max-degree", "3"},
           {"probe63", "--count", "50", "--seed", "4"},
           {"soddy", "--radii", "1,2,3"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("--out writes the report and prints the summary") {
  const auto path = scratch("report.json");
  std::filesystem::remove(path);
  auto r = run({"cm", "--edges-equilateral", "3", "--a", "1", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("determinant -3") != std::string::npos);
  std::ifstream in(path);
  const auto doc = json::parse(in);
  CHECK(doc["result"]["determinant"] == "-3");
  CHECK(run({"cm", "--edges-equilateral", "3", "--out", (scratch("no_such_dir") / "x" / "y.json").string()}).code == 2);
}
