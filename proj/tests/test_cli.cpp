#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("CMTOOL_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CMTOOL_BIN not set");
  std::string cmd = env + " '" + std::string(bin) + "' " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  int status = pclose(f);
  return {WEXITSTATUS(status), out};
}

json run_json(const std::string& args, const std::string& env = "") {
  Run r = run(args, env);
  REQUIRE(r.rc == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("top-level schema") {
  json d = run_json("chars --p 7");
  for (const char* key : {"schema_version", "command", "config", "results", "residuals", "choices"})
    CHECK(d.contains(key));
  CHECK(d["schema_version"] == 1);
  CHECK(d["command"] == "chars");
  CHECK(d["config"]["prec"] == 256);
  CHECK(d["config"]["terms"] == 1000);
}

TEST_CASE("chars") {
  json d = run_json("chars --p 7");
  auto rows = d["results"]["orbits"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["d"] == 1);
  CHECK(rows[0]["dim_Af"] == 1);
  CHECK(rows[1]["d"] == 3);
  CHECK(rows[1]["dim_Af"] == 2);
  json d23 = run_json("chars --p 23");
  CHECK(d23["results"]["orbits"][0]["dim_Af"] == 3);
  CHECK(d23["results"]["orbits"][1]["d"] == 11);
  CHECK(d23["results"]["orbits"][1]["dim_Af"] == 30);
  CHECK(d23["results"]["orbits"][1]["L_over_K"] == 33);
}

TEST_CASE("usage errors") {
  CHECK(run("chars --p 13").rc == 2);
  CHECK(run("verify --p 49").rc == 2);
  CHECK(run("qexp --p 7 --terms 0").rc == 2);
  CHECK(run("qexp --p 7 --order 2").rc == 2);
  CHECK(run("qexp --p 7 --format xml").rc == 2);
  CHECK(run("gross --p 7 --format csv").rc == 2);
  CHECK(run("frobnicate --p 7").rc == 2);
  CHECK(run("chars").rc == 2);
}

TEST_CASE("qexp canonical") {
  json d = run_json("qexp --p 7 --terms 20");
  std::vector<long> expect{1, 1, 0, -1, 0, 0, 0, -3, -3, 0, 4};
  auto c = d["results"]["coefficients"];
  REQUIRE(c.size() == 20);
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(c[i]["n"] == i + 1);
    CHECK(c[i]["exact"].is_number_integer());  // integers, not floats
    CHECK(c[i]["exact"] == expect[i]);
  }
  CHECK(c[0]["value"]["prec_bits"] == 256);
  CHECK(d["results"]["level"] == 49);
  CHECK(d["residuals"]["hecke"]["pass"] == true);
  CHECK(d["choices"].contains("delta"));
  CHECK(d["choices"].contains("psi_extension"));
}

TEST_CASE("qexp twisted") {
  json d = run_json("qexp --p 7 --order 3 --terms 20");
  auto w = d["results"]["twist_witness"];
  CHECK(w["branch"] == 1);
  CHECK(w["u"]["field"] == "Q(zeta_7)");
  // zeta^2 - zeta in the power basis
  std::vector<std::string> u{"0", "-1", "1", "0", "0", "0"};
  CHECK(w["u"]["coeffs"].get<std::vector<std::string>>() == u);
  CHECK(d["results"]["coefficients"][0]["exact"] == 1);
  CHECK(d["results"]["nebentypus_order"] == 3);
  CHECK(d["residuals"]["trace_phi_minus_degree"].get<double>() < 1e-25);
}

TEST_CASE("csv output and --out") {
  Run r = run("qexp --p 7 --terms 12 --format csv");
  REQUIRE(r.rc == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,re,im,exact");
  std::getline(in, line);
  CHECK(line == "1,1,0,1");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 12);

  std::string path = "cli_test_out.json";
  REQUIRE(run("gross --p 7 --out " + path).rc == 0);
  std::ifstream f(path);
  json d = json::parse(f);
  CHECK(d["results"]["c4"] == 105);
  std::remove(path.c_str());
}

TEST_CASE("environment overrides") {
  json d = run_json("qexp --p 7", "CMTOOL_TERMS=15 CMTOOL_PREC=160");
  CHECK(d["config"]["terms"] == 15);
  CHECK(d["config"]["prec"] == 160);
  CHECK(d["results"]["coefficients"].size() == 15);
  // flags win over the environment
  json e = run_json("qexp --p 7 --terms 12", "CMTOOL_TERMS=15");
  CHECK(e["config"]["terms"] == 12);
  json g = run_json("chars", "CMTOOL_P=11");
  CHECK(g["config"]["p"] == 11);
}

TEST_CASE("gross and period") {
  json g = run_json("gross --p 7");
  CHECK(g["results"]["j0"] == -3375);
  CHECK(g["results"]["m"] == -15);
  CHECK(g["results"]["n"] == 27);
  CHECK(g["results"]["c4"] == 105);
  CHECK(g["results"]["c6"] == 1323);
  CHECK(g["results"]["disc"] == -343);
  json p7 = run_json("period --p 7");
  CHECK(p7["results"]["Omega_in"] == "R");
  CHECK(p7["results"]["cross_check"]["pass"] == true);
  json p11 = run_json("period --p 11");
  CHECK(p11["results"]["Omega_in"] == "iR");
}

TEST_CASE("verify") {
  json v = run_json("verify --p 7 --terms 200");
  CHECK(v["results"]["all_pass"] == true);
  json v23 = run_json("verify --p 23 --terms 200");
  CHECK(v23["results"]["all_pass"] == true);
  bool saw = false;
  for (const auto& c : v23["results"]["checks"])
    if (c["name"] == "trace_vanishing d=1") saw = c["pass"] == true;
  CHECK(saw);
}

TEST_CASE("byte-stable output") {
  Run a = run("qexp --p 11 --order 5 --terms 30");
  Run b = run("qexp --p 11 --order 5 --terms 30");
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);
}
