#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "toolkit/cli.hpp"
#include "toolkit/domaincat.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "toolkit");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = toolkit::run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool all_pass(const json& r) {
  for (auto& c : r["checks"])
    if (c["status"] != "pass") return false;
  return true;
}

}  // namespace

TEST_CASE("tables S.1 n=3") {
  auto r = run({"tables", "--family", "S.1", "--n", "3"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["payload"]["boundary_chain"] == json::array({"III_2", "III_1", "pt"}));
  CHECK(j["payload"]["index"] == "C_{3,3}");
  CHECK(j["config"]["subcommand"] == "tables");
  CHECK(j["config"]["seed"] == 0);
  CHECK(j["tool_version"] == toolkit::kToolVersion);
  CHECK(j["payload"]["incident_types"].size() == 3);
}

TEST_CASE("S.2 point exception in tables") {
  auto j = run({"tables", "--family", "S.2", "--n", "4", "--s", "2"}).report();
  auto& inc = j["payload"]["incident_types"];
  REQUIRE(inc.size() == 2);
  CHECK(inc[1]["exception"] == true);
  CHECK(inc[0]["exception"] == false);
}

TEST_CASE("argument errors exit 2") {
  auto u = run({"frobnicate"});
  CHECK(u.code == 2);
  CHECK(u.err.find("unknown subcommand 'frobnicate'") != std::string::npos);
  CHECK(u.out.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"tables", "--bogus"}).code == 2);
  CHECK(run({"tables", "--family", "S.1", "--n", "0"}).code == 2);
  CHECK(run({"tables", "--family", "Q.7"}).code == 2);
  CHECK(run({"tables", "--family", "S.1", "--n", "3", "--format", "xml"}).code == 2);
  CHECK(run({"incidence", "--domain", "IV_6", "--tau", "1"}).code == 2);
  CHECK(run({"lie", "verify", "--model", "g2"}).code == 2);
  CHECK(run({"lattice", "purity", "--basis", "1,2;2,4"}).code == 2);
  CHECK(run({"lattice", "gamma-integral", "--g", "1,0;0,1", "--w", "2,0"}).code == 2);  // impure w
  CHECK(run({"humbert", "classify", "--tuple", "0,0,0,0,0"}).code == 2);
  CHECK(run({"humbert", "classify", "--tuple", "1,2,x,0,0"}).code == 2);
  CHECK(run({"jordan", "eval", "--element", "{\"xi\":[1,2]}"}).code == 2);
  CHECK(run({"lie"}).code == 2);
}

TEST_CASE("help and version exit 0") {
  auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("verify-all") != std::string::npos);
  CHECK(run({"--version"}).out == std::string(toolkit::kToolVersion) + "\n");
}

TEST_CASE("exit code follows the checks") {
  std::vector<std::vector<std::string>> cmds = {
      {"lie", "verify", "--model", "e6", "--samples", "4", "--seed", "3"},
      {"jordan", "eval", "--gamma", "1,-1,1", "--element",
       R"({"xi":[1,2,"1/2"],"x":[[1,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0],[0,0,0,0,0,0,0,"3/2"]]})"},
      {"compalg", "derive", "--algebra", "quaternion"},
      {"order", "check", "--j", "5"},
      {"humbert", "enum", "--height", "1"},
  };
  for (auto& c : cmds) {
    auto r = run(c);
    CAPTURE(c[0]);
    REQUIRE(r.code != 2);
    auto j = r.report();
    CHECK_FALSE(j["checks"].empty());
    CHECK((r.code == 0) == all_pass(j));
  }
}

TEST_CASE("payload is deterministic for a fixed config") {
  for (auto& args : std::vector<std::vector<std::string>>{
           {"lie", "verify", "--model", "e7", "--samples", "6", "--seed", "11"},
           {"humbert", "enum", "--height", "2"},
           {"tables", "--all", "--max-rank", "2"}}) {
    auto a = run(args).report(), b = run(args).report();
    CHECK(a["payload"] == b["payload"]);
    CHECK(a["config"] == b["config"]);
  }
  auto s1 = run({"lie", "verify", "--model", "e6", "--samples", "2", "--seed", "1"}).report();
  CHECK(s1["config"]["seed"] == 1);
  CHECK(s1["payload"]["seed"] == 1);
}

TEST_CASE("progress goes to the diagnostic stream") {
  auto r = run({"lie", "verify", "--model", "e6", "--samples", "2"});
  CHECK(r.err.find("triples 2/2") != std::string::npos);
  CHECK(r.out.find("triples 2/2") == std::string::npos);
  CHECK_NOTHROW(r.report());
}

TEST_CASE("incidence preset") {
  auto j = run({"incidence", "--domain", "I_4_1", "--preset", "su41"}).report();
  auto& p = j["payload"];
  CHECK(p["psi_sym_size"] == 12);
  CHECK(p["psi_par_size"] == 13);
  CHECK(p["cardinality"] == 4);
  CHECK(p["effective_parameters"] == 3);
  CHECK(p["complement_roots"] == json::array({"e1-e2", "e1-e3", "e1-e4", "e1-e5"}));
  CHECK(run({"incidence", "--domain", "II_6", "--preset", "su41"}).code == 2);
}

TEST_CASE("humbert enum schema and json file") {
  std::string path = "test_cli_humbert.json";
  auto r = run({"humbert", "enum", "--height", "1", "--json", path});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  json file = json::parse(f);
  std::remove(path.c_str());
  CHECK(file == r.report());
  auto& p = file["payload"];
  CHECK(p["height"] == 1);
  CHECK(p["tuples"] == 121);
  for (auto& c : p["classes"]) {
    CHECK(c.contains("delta"));
    CHECK(c.contains("count"));
    CHECK(c.contains("split"));
  }
  CHECK(p["mu_estimate"] == p["integral_classes"].size());
}

TEST_CASE("rationals serialize as num/den strings") {
  auto j = run({"lattice", "gamma-integral", "--g", "2,0,0,0;0,1,0,0;0,0,1/2,0;0,0,0,1", "--w",
                "1,0,0,0;0,0,1,0"})
               .report();
  CHECK(j["payload"]["g"][2][2] == "1/2");
  CHECK(j["payload"]["g"][0][0] == "2");
  CHECK(j["payload"]["gamma_integral"] == false);
  auto m = run({"lattice", "gamma-integral", "--g", R"([["0","1"],[-1,0]])", "--w", "1,0"}).report();
  CHECK(m["payload"]["gamma_integral"] == true);
}

TEST_CASE("csv and text renderings") {
  auto c = run({"tables", "--all", "--max-rank", "2", "--format", "csv"});
  REQUIRE(c.code == 0);
  std::istringstream is(c.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "descriptor,index,domain,boundary_chain,incident_types,ed_flag,dim_V");
  size_t rows = 0;
  while (std::getline(is, line) && !line.empty()) ++rows;
  CHECK(rows == toolkit::snapshot_corpus(2).size());

  auto t = run({"lattice", "purity", "--ambient", "4", "--basis", "2,0,0,0;0,3,0,0", "--format", "text"});
  CHECK(t.out.find("pure                 false\n") != std::string::npos);
  CHECK(t.out.find("saturation_index     6\n") != std::string::npos);
}

TEST_CASE("output file") {
  std::string path = "test_cli_out.txt";
  auto r = run({"humbert", "classify", "--tuple", "2,2,-2,0,0", "--output", path, "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(path.c_str());
  CHECK(ss.str().find("real_quadratic(5)") != std::string::npos);
  CHECK(run({"tables", "--exceptional", "--output", "/nonexistent/dir/x"}).code == 2);
}

TEST_CASE("TOOLKIT_THREADS is validated") {
  setenv("TOOLKIT_THREADS", "zero", 1);
  CHECK(run({"humbert", "enum", "--height", "1"}).code == 2);
  setenv("TOOLKIT_THREADS", "3", 1);
  auto a = run({"humbert", "enum", "--height", "2"}).report();
  unsetenv("TOOLKIT_THREADS");
  auto b = run({"humbert", "enum", "--height", "2"}).report();
  CHECK(a["payload"] == b["payload"]);
}
