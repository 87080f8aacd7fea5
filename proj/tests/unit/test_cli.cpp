#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qft/cli.hpp"
#include "qft/examples.hpp"

using namespace qft;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "qft_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

}  // namespace

TEST_CASE("puzzle json round trip") {
  Puzzle p = examples::golden_mean(4);
  Puzzle q = puzzle_from_json(puzzle_to_json(p));
  CHECK(puzzle_to_json(q) == puzzle_to_json(p));
  CHECK_THROWS_AS(puzzle_from_json(json::parse(R"({"levels":[["r"],["a"]],"i":{},"f":{}})")), PuzzleError);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("puzzle subcommands") {
  std::string fs_path = (scratch() / "full.json").string();
  Run ex = run({"puzzle", "example", "--name", "full-shift", "--depth", "4", "-o", fs_path});
  REQUIRE(ex.rc == 0);

  Run v = run({"puzzle", "validate", "--in", fs_path});
  CHECK(v.rc == 0);
  json jv = json::parse(v.out);
  CHECK(jv["ok"] == true);
  CHECK(jv["manifest"]["command"] == "puzzle validate");
  CHECK(jv["manifest"]["inputs"].size() == 1);

  json irr = json::parse(run({"puzzle", "irreducibles", "--in", fs_path, "--level", "1"}).out);
  CHECK(irr["irreducible"] == json::array({"0", "1"}));
  json irr2 = json::parse(run({"puzzle", "irreducibles", "--in", fs_path, "--level", "2"}).out);
  CHECK(irr2["irreducible"].empty());
  CHECK(irr2["unknown"].empty());

  json vd = json::parse(run({"puzzle", "verdict", "--in", fs_path, "--piece", "01"}).out);
  CHECK(vd["status"] == "reducible");

  Run dot = run({"puzzle", "diagram", "--in", fs_path, "--cutoff", "2"});
  CHECK(dot.rc == 0);
  CHECK(dot.out.rfind("// manifest: ", 0) == 0);
  CHECK(dot.out.find("label=\"01\"") != std::string::npos);

  Run z = run({"puzzle", "zeta", "--in", fs_path, "--N", "1", "--M", "3", "--order", "5"});
  CHECK(z.rc == 0);
  CHECK(z.out.rfind("# manifest: ", 0) == 0);
  auto rows = data_rows(z.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "n,count,certified,coeff_num,coeff_den,total,low_return,high,undetermined,unliftable");
  CHECK(rows[3].rfind("2,4,1,4,1,", 0) == 0);

  std::string nd = (scratch() / "nd.json").string();
  run({"puzzle", "example", "--name", "non-determined", "-o", nd});
  json det = json::parse(run({"puzzle", "determined", "--in", nd}).out);
  CHECK(det["determined"] == false);
  CHECK(det["counterexample"] == json::array({"u", "v"}));
}

TEST_CASE("graph subcommands") {
  std::string k3 = write("k3.json", R"({"kind":"complete","d":3})");
  Run z = run({"graph", "zeta", "--spec", k3, "--subset", "0", "--order", "5"});
  CHECK(z.rc == 0);
  auto rows = data_rows(z.out);
  REQUIRE(rows.size() == 7);
  // 3^n - 2^n periodic words meet the vertex; zeta = (1 - 2z)/(1 - 3z)
  CHECK(rows[2] == "1,1,1,1,1");
  CHECK(rows[3] == "2,5,1,3,1");
  CHECK(rows[6] == "5,211,1,81,1");
  CHECK(data_rows(run({"graph", "zeta", "--spec", k3, "--subset", "0", "--order", "5", "--method", "brute"}).out) == rows);

  std::string lg = write("lg.json", R"({"kind":"loop_graph","f":[0,2]})");
  Run e = run({"graph", "entropy", "--spec", lg, "--vertex", "a", "--length", "4"});
  CHECK(e.rc == 0);
  CHECK(data_rows(e.out)[4].rfind("4,4,", 0) == 0);

  Run h = run({"graph", "hinf", "--spec", lg, "--avoid", "a", "--length", "2"});
  CHECK(h.rc == 0);

  json b = json::parse(run({"graph", "build", "--spec", lg, "--format", "json"}).out);
  CHECK(b.contains("vertices"));
  CHECK(b.contains("manifest"));
}

TEST_CASE("coupled subcommands") {
  Run r = run({"coupled", "resultant", "--n", "1", "--m", "2"});
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j["P_n"] == "1/2 - 4*x^2");
  CHECK(j["nonzero"] == true);

  Run b = run({"coupled", "build", "--depth", "1", "--res", "4"});
  CHECK(b.rc == 0);
  json jb = json::parse(b.out);
  CHECK(jb["pieces_per_level"] == json::array({1, 4}));
  CHECK(b.err.find("outside") != std::string::npos);  // (1, 1, 0) is on the boundary of the domain

  Run in = run({"coupled", "build", "--a", "1/2", "--b", "1/2", "--c", "1/2", "--depth", "1", "--res", "4"});
  CHECK(in.err.find("outside") == std::string::npos);
}

TEST_CASE("outputs are deterministic") {
  std::string k3 = write("k3.json", R"({"kind":"complete","d":3})");
  std::string gm = (scratch() / "gm.json").string();
  run({"puzzle", "example", "--name", "golden-mean", "--depth", "5", "-o", gm});
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"graph", "zeta", "--spec", k3, "--subset", "all", "--order", "8"},
           {"puzzle", "diagram", "--in", gm},
           {"puzzle", "zeta", "--in", gm, "--N", "2", "--order", "6"},
           {"coupled", "build", "--depth", "2", "--res", "5"}}) {
    Run a = run(args), b = run(args);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    auto threaded = args;
    threaded.insert(threaded.begin(), {"--threads", "1"});
    CHECK(run(threaded).out == a.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).rc == 1);
  Run flag = run({"graph", "zeta", "--bogus"});
  CHECK(flag.rc == 1);
  CHECK(flag.err.rfind("usage error: ", 0) == 0);
  CHECK(run({"puzzle", "validate", "--in", "/nonexistent/x.json"}).rc == 1);
  std::string bad = write("bad.json", "{ not json");
  Run b = run({"puzzle", "validate", "--in", bad});
  CHECK(b.rc == 1);
  CHECK(b.err.rfind("input error: ", 0) == 0);

  std::string skip = write("skip.json", R"({"depth":2,"levels":[["r"],["a"],["b"]],"i":{"a":"r","b":"r"},"f":{"a":"r","b":"a"}})");
  Run s = run({"puzzle", "validate", "--in", skip});
  CHECK(s.rc == 1);
  CHECK(json::parse(s.out)["ok"] == false);

  std::string fs_path = (scratch() / "full.json").string();
  run({"puzzle", "example", "--name", "full-shift", "--depth", "4", "-o", fs_path});
  Run pre = run({"puzzle", "diagram", "--in", fs_path, "--cutoff", "4"});
  CHECK(pre.rc == 2);
  CHECK(pre.err.rfind("precondition violation: ", 0) == 0);
  CHECK(run({"--help"}).rc == 0);
}
