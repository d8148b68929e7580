#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fermatsym::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Timing fields are the only nondeterministic output.
json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Set FERMATSYM_UPDATE_GOLDEN=1 to rewrite the expected files.
void golden(const std::string& name, const std::vector<std::string>& args, int expected_code = 0) {
  const auto r = run(args);
  CAPTURE(name);
  CAPTURE(r.err);
  REQUIRE(r.code == expected_code);
  const fs::path path = fs::path(FERMATSYM_GOLDEN_DIR) / name;
  const bool is_json = path.extension() == ".json";
  std::string actual = r.out;
  if (is_json) actual = strip_timing(json::parse(r.out)).dump(2) + "\n";
  if (std::getenv("FERMATSYM_UPDATE_GOLDEN")) {
    std::ofstream(path) << actual;
    return;
  }
  REQUIRE(fs::exists(path));
  const std::string expected = slurp(path);
  if (is_json) {
    CHECK(json::parse(actual) == json::parse(expected));
  } else {
    CHECK(actual == expected);
  }
}

}  // namespace

TEST_CASE("golden outputs") {
  golden("analyze_3_8_21.txt", {"analyze", "--eq", "3,8,21", "--detail"});
  golden("analyze_3_4_5.json", {"analyze", "--eq", "3,4,5", "--json"});
  golden("local_3_4_5_p5_l11.txt", {"local", "--eq", "3,4,5", "--p", "5", "--ell", "11"});
  golden("local_3_4_5_p3_l3.json", {"local", "--eq", "3,4,5", "--p", "3", "--ell", "3", "--json"});
  golden("obstruct_3_8_21_p7.json", {"obstruct", "--eq", "3,8,21", "--p", "7", "--json"});
  golden("obstruct_3_4_5_p7.txt", {"obstruct", "--eq", "3,4,5", "--p", "7", "--all"});
  golden("sweep_3_4_5_11_200.json", {"sweep", "--eq", "3,4,5", "--pmin", "11", "--pmax", "200", "--json"});
  golden("density.txt", {"density", "(-2)=-1 & (2)=-1"});
  golden("curve_120b1.json", {"curve", "120b1", "--json"});
  golden("curve_30a1.txt", {"curve", "30a1"});
}

TEST_CASE("headline lines") {
  CHECK(run({"analyze", "--eq", "3,8,21"}).out ==
        "p ≡ 5 (mod 8) or p ≡ 23 (mod 24); density 3/8; valid for p > 7\n");
  CHECK(run({"analyze", "--eq", "3,4,5"}).out ==
        "p ≡ 5 (mod 8) or p ≡ 19 (mod 24); density 3/8; valid for p ≥ 5\n");
  CHECK(run({"density", "(-2)=-1 & (2)=-1"}).out == "p ≡ 5 (mod 8); density 1/4\n");
  CHECK(run({"local", "--eq", "3,4,5", "--p", "5", "--ell", "11"}).out.starts_with("unsolvable over Q_11"));
}

TEST_CASE("analyze JSON classes") {
  const auto j = json::parse(run({"analyze", "--eq", "3,4,5", "--json"}).out);
  CHECK(j["classes"]["modulus"] == 24);
  CHECK(j["classes"]["residues"] == json::array({5, 13, 19}));
  CHECK(j["classes"]["classes"] == json::parse(R"([{"residue":5,"modulus":8},{"residue":19,"modulus":24}])"));
  CHECK(j["density"] == "3/8");
}

TEST_CASE("exit codes and error messages") {
  auto r = run({"analyze", "--eq", "1,1,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--scenarios") != std::string::npos);

  r = run({"curve", "nosuch"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown label") != std::string::npos);

  r = run({"density", "(2)="});
  CHECK(r.code == 2);
  CHECK(r.err.find("column 5") != std::string::npos);

  CHECK(run({"local", "--eq", "3,4,5", "--p", "6", "--ell", "11"}).code == 2);
  CHECK(run({"local", "--eq", "3,4,x", "--p", "5", "--ell", "11"}).code == 2);
  CHECK(run({"local", "--eq", "3,4,0", "--p", "5", "--ell", "11"}).code == 2);
  CHECK(run({"sweep", "--eq", "3,4,5"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"analyze", "--help"}).out.find("--scenarios") != std::string::npos);
}

TEST_CASE("undecided and inconclusive results exit with 1") {
  // k_max = 0 tries no q = kp + 1, and the Weil cutoff for p = 1009 is far too large to certify.
  CHECK(run({"obstruct", "--eq", "3,8,21", "--p", "1009", "--k-max", "0"}).code == 1);
  CHECK(run({"sweep", "--eq", "3,8,21", "--pmin", "11", "--pmax", "13", "--k-max", "0"}).code == 1);
}

TEST_CASE("JSON output is deterministic, including parallel sweeps") {
  const std::vector<std::string> analyze{"analyze", "--eq", "3,8,21", "--json"};
  CHECK(run(analyze).out == run(analyze).out);
  const auto one = strip_timing(json::parse(run({"sweep", "--eq", "3,8,21", "--pmax", "2000", "--threads", "1", "--json"}).out));
  const auto four = strip_timing(json::parse(run({"sweep", "--eq", "3,8,21", "--pmax", "2000", "--threads", "4", "--json"}).out));
  CHECK(one.dump() == four.dump());
}

TEST_CASE("override files from flags and the environment") {
  const fs::path dir = fs::temp_directory_path() / "fermatsym_cli_test";
  fs::create_directories(dir);
  const fs::path curves = dir / "curves.txt";
  std::ofstream(curves) << "42a1 | 42 | - | 2:8,3:2,7:2 | mult | no | [1,1,1,-4,5]\n";

  auto r = run({"curve", "42a1", "--curves", curves.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("mismatch v_7") != std::string::npos);

  ::setenv("FERMATSYM_CURVES", curves.string().c_str(), 1);
  r = run({"curve", "42a1"});
  ::unsetenv("FERMATSYM_CURVES");
  CHECK(r.out.find("mismatch v_7") != std::string::npos);

  const fs::path scen = dir / "scen.txt";
  std::ofstream(scen) << "1,2,3 | y_odd | 42 | 2:8,3:2,7:1 | mult | 42a1 | >3\n";
  ::setenv("FERMATSYM_SCENARIOS", scen.string().c_str(), 1);
  r = run({"analyze", "--eq", "1,2,3"});
  ::unsetenv("FERMATSYM_SCENARIOS");
  CHECK(r.code == 0);
  CHECK(r.out == "no p; density 0; valid for p > 3\n");

  r = run({"analyze", "--eq", "3,8,21", "--scenarios", (dir / "missing.txt").string()});
  CHECK(r.code == 2);
  fs::remove_all(dir);
}
