#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ftcut/graph.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = FTCUT_CLI;
const std::string kData = FTCUT_TEST_DATA;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ftcut-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& dir) {
  const std::string cmd = "\"" + kCli + "\" " + args + " --out \"" + dir.string() + "\" > \"" +
                          (dir / "stdout.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_raw(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json report(const fs::path& dir, const std::string& stem) {
  return nlohmann::json::parse(slurp(dir / (stem + ".json")));
}

}  // namespace

TEST_CASE("mincut-det on two K4 joined by two edges") {
  const fs::path dir = scratch("mincut-det");
  REQUIRE(run("mincut-det --graph " + kData + "/twoK4.g --lambda 2", dir) == 0);
  const auto j = report(dir, "mincut-det");
  CHECK(j.at("result").at("value") == 2);
  CHECK(j.at("result").at("witness_edges") == nlohmann::json::array({13, 14}));
  CHECK(j.at("oracle").at("status") == "agree");
  CHECK(j.at("config").at("lambda") == 2);
  CHECK(j.contains("version"));
  CHECK(j.contains("seeds"));
  CHECK(j.at("transcript").contains("digest"));
  CHECK(fs::exists(dir / "mincut-det.time.json"));
}

TEST_CASE("verify-cut on the bridge") {
  const fs::path dir = scratch("verify");
  REQUIRE(run("verify-cut --graph " + kData + "/bridge.g --edges 7", dir) == 0);
  CHECK(report(dir, "verify-cut").at("result").at("is_cut") == true);
  REQUIRE(run("verify-cut --graph " + kData + "/bridge.g --edges 1", dir) == 0);
  CHECK(report(dir, "verify-cut").at("result").at("is_cut") == false);
}

TEST_CASE("universal-verify (10,3,1)") {
  const fs::path dir = scratch("universal");
  REQUIRE(run("universal-verify --n 10 --a 3 --b 1 --mode exhaustive", dir) == 0);
  const auto r = report(dir, "universal-verify").at("result");
  CHECK(r.at("violations") == 0);
  CHECK(r.at("pairs_checked").get<std::uint64_t>() > 0);
}

TEST_CASE("reports are byte-identical across runs") {
  const fs::path a = scratch("repro-a"), b = scratch("repro-b");
  const std::string args = "mincut-rand --gen cycle:6 --lambda 2 --seed 4 --scale 0.01";
  REQUIRE(run(args, a) == 0);
  REQUIRE(run(args, b) == 0);
  CHECK(slurp(a / "mincut-rand.json") == slurp(b / "mincut-rand.json"));
  const auto j = report(a, "mincut-rand");
  CHECK(j.at("seeds").size() >= 1);
  CHECK(j.at("config").at("scale") == 0.01);
}

TEST_CASE("other verbs run and agree with the oracle") {
  const fs::path dir = scratch("verbs");
  CHECK(run("vertexcut --gen cycle:5 --lambda 2 --seed 1 --scale 0.01", dir) == 0);
  CHECK(report(dir, "vertexcut").at("oracle").at("status") == "agree");
  CHECK(run("edgeconn --graph " + kData + "/bridge.g --lambda 2 --iterations 300", dir) == 0);
  CHECK(report(dir, "edgeconn").at("oracle").at("status") == "agree");
  CHECK(run("certificate --gen petersen --lambda 3 --seed 2", dir) == 0);
  CHECK(report(dir, "certificate").at("oracle").at("status") == "agree");
  CHECK(run("ft-spanner --gen complete:6 --k 2 --f 1 --faults edges", dir) == 0);
  CHECK(report(dir, "ft-spanner").at("oracle").at("status") == "agree");
  CHECK(run("universal-build --n 12 --a 3 --b 1", dir) == 0);
  CHECK(run("oracle --graph " + kData + "/twoK4.g", dir) == 0);
  const auto o = report(dir, "oracle").at("result");
  CHECK(o.at("edge_connectivity") == 2);
  CHECK(o.at("vertex_connectivity") == 2);
}

TEST_CASE("oracle cap marks large inputs unchecked") {
  const fs::path dir = scratch("cap");
  CHECK(run("mincut-rand --gen cycle:24 --lambda 2 --seed 1 --scale 0.001 --oracle-cap-n 20", dir) == 0);
  CHECK(report(dir, "mincut-rand").at("oracle").at("status") == "unchecked");
}

TEST_CASE("gen writes a loadable graph") {
  const fs::path dir = scratch("gen");
  REQUIRE(run_raw("gen --gen petersen -o \"" + (dir / "p.g").string() + "\"") == 0);
  const ftcut::Multigraph g = ftcut::load_graph_file((dir / "p.g").string());
  CHECK(g.node_count() == 10);
  CHECK(g.edge_count() == 15);
}

TEST_CASE("usage and runtime errors exit 1") {
  CHECK(run_raw("") == 1);
  CHECK(run_raw("no-such-verb") == 1);
  CHECK(run_raw("mincut-rand --graph /nonexistent.g --lambda 1") == 1);
  CHECK(run_raw("ft-spanner --gen cycle:6 --k 2 --f 1 --faults bogus") == 1);
  CHECK(run_raw("mincut-det --gen cycle:6 --lambda 0") == 1);
}

TEST_CASE("an oracle disagreement exits 2") {
  // One sampling iteration is far too few to find the three-edge cut.
  const fs::path dir = scratch("mismatch");
  CHECK(run("mincut-rand --gen petersen --lambda 3 --iterations 1 --seed 1", dir) == 2);
  const auto o = report(dir, "mincut-rand").at("oracle");
  CHECK(o.at("status") == "disagree");
  CHECK(o.at("value") == 3);
}
