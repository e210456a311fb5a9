#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string text;
  json doc;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "chabauty");
  std::string out;
  int code = chabauty::cli::run(args, out);
  json doc = json::parse(out, nullptr, false);
  return {code, out, doc};
}

const std::string kCurve = "-1,0,-9,0,-11,0,37";

}  // namespace

TEST_CASE("cli: chabauty on X0(37)") {
  auto r = call({"chabauty", "--curve", kCurve, "--prime", "3", "--precision", "11", "--generator", "(1,-4);(-1,4)",
                 "--basepoint", "(-1,4)"});
  REQUIRE(r.code == 0);
  CHECK(r.doc["schema"] == 1);
  CHECK(r.doc["result"]["rational_points"] == json::array({"(-1,-4)", "(-1,4)", "(1,-4)", "(1,4)"}));
  CHECK(r.doc["result"]["algebraic_points"].size() == 2);
  CHECK(r.doc["config"]["curve"] == kCurve);
  CHECK(r.doc["config"]["precision"] == 11);
  CHECK(r.doc["certificates"]["total_zeros"] == 6);
  CHECK_FALSE(r.doc.contains("timings"));
  // Deterministic output.
  auto again = call({"chabauty", "--curve", kCurve, "--prime", "3", "--precision", "11", "--generator",
                     "(1,-4);(-1,4)", "--basepoint", "(-1,4)"});
  CHECK(again.text == r.text);
}

TEST_CASE("cli: points mod 3 and disks") {
  auto r = call({"points-mod-p", "--curve", kCurve, "--prime", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.doc["result"]["count"] == 6);
  CHECK(r.doc["result"]["points"] == json::array({"(0,1)", "(0,2)", "(1,1)", "(1,2)", "(2,1)", "(2,2)"}));
  auto d = call({"disks", "--curve", kCurve, "--prime", "3"});
  REQUIRE(d.code == 0);
  CHECK(d.doc["result"]["disks"].size() == 6);
  auto e = call({"points-mod-p", "--curve", kCurve, "--prime", "3", "--extension", "2"});
  REQUIRE(e.code == 0);
  CHECK(e.doc["result"]["count"] > 6);
}

TEST_CASE("cli: integrate and frobenius") {
  auto r = call({"integrate", "--curve", kCurve, "--prime", "3", "--precision", "9", "--from", "(-1,4)", "--to", "(1,-4)"});
  REQUIRE(r.code == 0);
  auto& v = r.doc["result"]["integrals"];
  REQUIRE(v.size() == 2);
  CHECK(v[0]["value_for_x^i_dx_over_y"]["digits"] == "O(3^9)");
  CHECK(v[1]["value_for_x^i_dx_over_y"]["precision"] == 9);
  CHECK(v[1]["value_for_x^i_dx_over_y"]["valuation"] == 2);
  auto f = call({"frobenius", "--curve", "1,0,0,0,0,1", "--prime", "7", "--precision", "6"});
  REQUIRE(f.code == 0);
  for (auto& [k, c] : f.doc["certificates"]["point_counts"].items()) CHECK(c["agree"] == true);
}

TEST_CASE("cli: bielliptic and Bring's curve") {
  auto b = call({"bielliptic-verify", "--curve", kCurve, "--field", "-1", "--point", "(2*i,1)", "--point", "(i,1)"});
  REQUIRE(b.code == 0);
  CHECK(b.doc["result"]["points"][0]["on_curve"] == true);
  CHECK(b.doc["result"]["points"][1]["on_curve"] == false);
  CHECK(b.doc["result"]["C2"]["model"]["equation"] == "y^2 = x^3 - 11*x^2 - 333*x - 1369");
  CHECK(b.doc["certificates"]["f2_pullback_minus_dx_over_y"] == true);

  auto v = call({"brings-verify", "--point", "(1:i:-1:-i:0)"});
  REQUIRE(v.code == 0);
  CHECK(v.doc["result"]["points"][0]["orbit_size"] == 30);

  auto s = call({"brings-search", "--disc-bound", "5", "--height-bound", "2"});
  REQUIRE(s.code == 0);
  REQUIRE(s.doc["result"]["orbits"].size() == 1);
  CHECK(s.doc["result"]["orbits"][0]["representatives"] == json::array({"(1:i:-1:-i:0)", "(1:-i:-1:i:0)"}));
}

TEST_CASE("cli: exit codes") {
  auto floaty = call({"integrate", "--curve", kCurve, "--prime", "3", "--from", "(1.5,4)", "--to", "(1,4)"});
  CHECK(floaty.code == 2);
  CHECK(floaty.doc["error"]["kind"] == "ConfigError");
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"integrate", "--curve", kCurve, "--prime", "4", "--from", "(1,4)", "--to", "(1,4)"}).code == 2);
  CHECK(call({"integrate", "--curve", kCurve, "--prime", "3", "--from", "(2,4)", "--to", "(1,4)"}).code == 2);
  CHECK(call({"integrate", "--curve", kCurve, "--prime", "3", "--precision", "5000", "--from", "(1,4)", "--to", "(1,4)"})
            .code == 2);
  auto torsion = call({"chabauty", "--curve", kCurve, "--prime", "3", "--generator", "(1,4);(1,4)", "--basepoint", "(-1,4)"});
  CHECK(torsion.code == 3);
  CHECK(torsion.doc["error"]["kind"] == "PrecisionExhausted");
  CHECK(torsion.doc["error"].contains("shortfall"));
  auto disk = call({"integrate", "--curve", "1,0,-1,0", "--prime", "5", "--from", "(0,0)", "--to", "(1,0)"});
  CHECK(disk.code == 4);
  CHECK(disk.doc["error"]["kind"] == "UnsupportedDisk");
  auto rank = call({"chabauty", "--curve", kCurve, "--prime", "3", "--generator", "(1,-4);(-1,4)", "--generator",
                    "(1,4);(-1,-4)", "--basepoint", "(-1,4)"});
  CHECK(rank.code == 4);
}

TEST_CASE("cli: output file and timings") {
  std::string path = "cli_test_report.json";
  std::remove(path.c_str());
  auto r = call({"points-mod-p", "--curve", kCurve, "--prime", "5", "--output", path, "--timings"});
  REQUIRE(r.code == 0);
  CHECK(r.doc.contains("timings"));
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.text);
  std::ifstream tmp(path + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path.c_str());
}
