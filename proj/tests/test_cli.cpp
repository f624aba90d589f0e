#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpart/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qpart::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("qpart_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("verify sdn") {
  const Run r = run({"verify", "--suite", "sdn", "--dmax", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("s_closed = s_brute on 55 cells") != std::string::npos);
}

TEST_CASE("series D-weighted ends with the q^15 row") {
  const Run r = run({"series", "--which", "D-weighted", "--caps", "q=15"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 16);
  CHECK(rows.back() == "15: 6+3x");
  CHECK(rows[12] == "12: 1+2x+x^2");
  CHECK(rows[1] == "1: 0");
}

TEST_CASE("basis listing") {
  const Run r = run({"basis", "--class", "billiard", "--parts", "5", "--smallest", "fixed:2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 8);
  const Run j = run({"basis", "--class", "billiard", "--parts", "3", "--smallest", "fixed:2", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["count"] == 3);
  CHECK(doc["partitions"] == nlohmann::json{"6+4+2", "5+4+2", "4+3+2"});
}

TEST_CASE("enumerate") {
  const Run r = run({"enumerate", "--class", "D", "--max-n", "15"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 15);
  CHECK(rows[0] == "1 (0):");
  CHECK(rows[14] == "15 (9): 13+2, 11+4, 10+3+2, 9+6, 9+4+2, 8+5+2, 7+6+2, 6+5+4, 6+4+3+2");
  const Run csv = run({"enumerate", "--class", "p32", "--max-n", "4", "--format", "csv"});
  CHECK(lines(csv.out).front() == "n,partition");
}

TEST_CASE("class spec from a JSON file") {
  const auto path = scratch_dir() / "class.json";
  std::ofstream(path) << R"({"k": 3, "c": [1, 2, 3], "d": [0, 0, 1]})";
  const Run file = run({"basis", "--class", path.string(), "--parts", "2"});
  const Run preset = run({"basis", "--class", "p32", "--parts", "2"});
  CHECK(file.code == 0);
  CHECK(file.out == preset.out);
  CHECK(lines(file.out).size() == 7);

  std::ofstream(path) << R"({"k": 3, "c": [1, 1, 3], "d": [0, 0, 1]})";
  CHECK(run({"basis", "--class", path.string(), "--parts", "2"}).code == 2);
  CHECK(run({"basis", "--class", (scratch_dir() / "missing.json").string(), "--parts", "2"}).code == 2);
}

TEST_CASE("table") {
  const Run r = run({"table", "--lucas", "--k", "3", "--l", "2", "--dmax", "4"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"d,f_d,a_d,b_d", "1,3,2,1", "2,7,4,3", "3,17,10,7", "4,41,24,17"});
  CHECK(run({"table", "--k", "3", "--l", "2"}).code == 2);
  CHECK(run({"table", "--lucas", "--k", "2", "--l", "3"}).code == 2);
}

TEST_CASE("series variants") {
  CHECK(run({"series", "--which", "s-closed", "--d", "5", "--m", "8"}).out == "x^2q^23+x^2q^25+x^2q^27\n");
  CHECK(run({"series", "--which", "t", "--d", "2", "--m", "4"}).out == "q^7\n");
  CHECK(run({"series", "--which", "sn-z", "--n", "1"}).out == "zq^2\n");
  CHECK(run({"series", "--which", "cn-z", "--n", "1"}).code == 0);
  const Run quiver = run({"series", "--which", "quiver", "--caps", "x=2"});
  CHECK(quiver.code == 0);
  CHECK(lines(quiver.out).size() == 3);
  const Run schr = run({"series", "--which", "schroeder", "--caps", "x=1", "--format", "json"});
  const auto doc = nlohmann::json::parse(schr.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["series"]["terms"].size() == 3);
  CHECK(run({"series", "--which", "D-weighted"}).code == 2);
  CHECK(run({"series", "--which", "nope", "--caps", "q=3"}).code == 2);
}

TEST_CASE("verify reports and exit codes") {
  const Run prop = run({"verify", "--suite", "prop2", "--caps", "x=4", "--format", "json"});
  CHECK(prop.code == 0);
  const auto doc = nlohmann::json::parse(prop.out);
  CHECK(doc["status"] == "pass");
  CHECK(doc["x_cap"] == 4);
  CHECK(doc["schema"] == 1);

  const Run schr = run({"verify", "--suite", "schroeder", "--caps", "x=4", "--format", "json"});
  CHECK(schr.code == 0);
  const auto sdoc = nlohmann::json::parse(schr.out);
  CHECK(sdoc["factor_F"] == "1");
  CHECK(sdoc["n_cap"] == 4);
  CHECK(sdoc["mismatches"].empty());

  const Run literal = run({"verify", "--suite", "schroeder", "--caps", "x=3", "--convention", "literal"});
  CHECK(literal.code == 1);
  CHECK(literal.out.find("first counterexample") != std::string::npos);
  const Run literal_json =
      run({"verify", "--suite", "schroeder", "--caps", "x=3", "--convention", "literal", "--format", "json"});
  CHECK(literal_json.code == 1);
  CHECK(nlohmann::json::parse(literal_json.out).contains("first_mismatch"));

  CHECK(run({"verify", "--suite", "lucas", "--dmax", "8"}).code == 0);
  CHECK(run({"verify", "--suite", "t-family", "--max-n", "3"}).code == 0);
  CHECK(run({"verify", "--suite", "decomposition", "--max-n", "12", "--weight-max-n", "14"}).code == 0);
  CHECK(run({"verify", "--suite", "generatingE", "--caps", "q=20"}).code == 0);
  CHECK(run({"verify", "--suite", "bogus"}).code == 2);
}

TEST_CASE("verify all") {
  const Run r = run({"verify", "--suite", "all", "--format", "csv"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",pass,") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"basis", "--class", "billiard", "--parts", "2", "--smallest", "fixed:4"}).code == 2);
  CHECK(run({"basis", "--class", "billiard", "--parts", "2", "--smallest", "odd"}).code == 2);
  CHECK(run({"basis", "--class", "D", "--parts", "2"}).code == 2);
  CHECK(run({"series", "--which", "D-weighted", "--caps", "q=0"}).code == 2);
  CHECK(run({"series", "--which", "D-weighted", "--caps", "w=3"}).code == 2);
  CHECK(run({"series", "--which", "D-weighted", "--caps", "q=3", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic and can go to a file") {
  const std::vector<std::string> args{"enumerate", "--class", "p31", "--max-n", "12", "--format", "json"};
  CHECK(run(args).out == run(args).out);

  const auto dir = scratch_dir();
  ::setenv("QPART_OUTPUT_DIR", dir.string().c_str(), 1);
  const Run r = run({"table", "--lucas", "--k", "2", "--l", "1", "--dmax", "5", "--out", "fib.csv"});
  ::unsetenv("QPART_OUTPUT_DIR");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(dir / "fib.csv");
  std::stringstream body;
  body << in.rdbuf();
  CHECK(lines(body.str()).size() == 6);
  std::filesystem::remove_all(dir);
}
