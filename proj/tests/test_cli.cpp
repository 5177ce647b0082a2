#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "whitney/io.hpp"

using whitney::Json;

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string env(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, name << " is not set");
  return v;
}

std::string fx(const std::string& name) { return env("WHITNEY_FIXTURES") + "/" + name + ".json"; }

Run run(const std::string& args) {
  const std::string cmd = env("WHITNEY_CLI") + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("rank of the triangle") {
  auto r = run("rank " + fx("triangle") + " --subset a,b,c");
  CHECK(r.code == 0);
  CHECK(r.out == "{\"rank\":2}\n");
}

TEST_CASE("weak isomorphisms of K4") {
  auto r = run("weakiso search " + fx("k4") + " " + fx("k4") + " --limit 0");
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["count"] == 24);
  CHECK(j["bijections"].size() == 24);
}

TEST_CASE("verdicts map to exit codes") {
  auto yes = run("weakiso check " + fx("ladder") + " " + fx("ladder-twisted") + " --phi " + fx("ladder-phi"));
  CHECK(yes.code == 0);
  CHECK(Json::parse(yes.out)["verdict"] == true);
  auto no = run("weakiso check " + fx("triangle-tree") + " " + fx("triangle-tree-split") + " --phi " +
                fx("triangle-tree-phi"));
  CHECK(no.code == 1);
  auto j = Json::parse(no.out);
  CHECK(j["verdict"] == false);
  CHECK(j["cycle_preserving"]["holds"] == true);
  CHECK(j["tameness_preserving"]["holds"] == false);
  CHECK(run("connectivity " + fx("ladder") + " -n 3").code == 1);
  CHECK(run("connectivity " + fx("tree3") + " -n 3").code == 0);
  CHECK(run("connectivity " + fx("k4") + " -n 3 --strong").code == 0);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("rank /nonexistent/graph.json").code == 2);
  CHECK(run("rank " + fx("triangle") + " --bogus").code == 2);
  CHECK(run("rank " + fx("triangle") + " --format dot").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("connectivity " + fx("k4") + " -n 2").code == 2);
  CHECK(run("twists apply " + fx("triangle-tree-split-batch")).code == 2);
}

TEST_CASE("bananas of the gadget triangle") {
  auto r = run("bananas " + fx("gadget-triangle"));
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["bananas"].size() == 3);
  CHECK(j["ban_weakly_3_connected"] == true);
  CHECK(run("bananas " + fx("gadget-triangle") + " --seed 9").out == r.out);
}

TEST_CASE("sequences replay and invert") {
  auto twisted = run("twists apply " + fx("ladder-twist"));
  CHECK(twisted.code == 0);
  CHECK(whitney::graph_from_json(Json::parse(twisted.out)) == whitney::load_graph_file(fx("ladder-twisted")));
  auto inv = run("twists invert " + fx("ladder-twist"));
  CHECK(inv.code == 0);
  auto verify = run("twists verify " + fx("ladder-twist"));
  CHECK(verify.code == 0);
  auto dot = run("twists apply " + fx("ladder-twist") + " --format dot");
  CHECK(dot.out.find("graph") != std::string::npos);
}

TEST_CASE("pipeline and decomposition subcommands") {
  auto impl = run("pipeline implement --g1 " + fx("ladder") + " --g2 " + fx("ladder-twisted") + " --phi " +
                  fx("ladder-phi"));
  CHECK(impl.code == 0);
  CHECK(Json::parse(impl.out)["verified"] == true);
  auto rig = run("pipeline rigidity --g1 " + fx("k4") + " --g2 " + fx("k4"));
  CHECK(rig.code == 0);
  CHECK(Json::parse(rig.out)["route"] == "ray-free");
  auto dec = run("tutte decompose " + fx("theta"));
  CHECK(dec.code == 0);
  CHECK(run("tutte synth " + fx("square") + " " + fx("square")).code == 0);
  CHECK(run("fmsf " + fx("k4") + " --seed 3").out == run("fmsf " + fx("k4") + " --seed 3").out);
  CHECK(run("cover leafless " + fx("tree2")).code == 0);
  CHECK(run("cover wedges " + fx("wedge-gadget")).code == 0);
  CHECK(run("cells " + fx("tree2")).code == 0);
  CHECK(run("ends " + fx("lollipop")).code == 0);
  CHECK(run("axioms " + fx("triangle-lines")).code == 0);
}

TEST_CASE("fixtures emit regenerates the checked-in files") {
  auto dir = fs::temp_directory_path() / ("whitney-fixtures-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  REQUIRE(run("fixtures emit " + dir.string()).code == 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(env("WHITNEY_FIXTURES"))) {
    CAPTURE(entry.path().filename().string());
    auto fresh = dir / entry.path().filename();
    REQUIRE(fs::exists(fresh));
    CHECK(slurp(fresh) == slurp(entry.path()));
    ++compared;
  }
  CHECK(compared > 20);
  auto list = run("fixtures list");
  CHECK(list.code == 0);
  fs::remove_all(dir);
}
