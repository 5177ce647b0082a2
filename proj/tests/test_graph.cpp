#include <doctest.h>

#include "oracles.hpp"
#include "whitney/fixtures.hpp"
#include "whitney/graph.hpp"
#include "whitney/io.hpp"

using namespace whitney;

TEST_CASE("wedge counts on small graphs") {
  CHECK(wedges(fixture("path3").core).size() == 1);
  CHECK(wedges(fixture("triangle").core).size() == 3);
  CHECK(wedges(complete_graph(4).core).size() == 12);
  for (const auto& w : wedges(complete_graph(5).core)) {
    CHECK(w.left < w.right);
    CHECK(w.endpoints.first != w.center);
    CHECK(w.endpoints.second != w.center);
  }
}

TEST_CASE("loops never form wedges") {
  RayedGraph g;
  g.core.add_vertex("x");
  g.core.add_vertex("y");
  g.core.add_edge("l", "x", "x");
  g.core.add_edge("a", "x", "y");
  CHECK(wedges(g.core).empty());
  CHECK(g.core.degree("x") == 3);
}

TEST_CASE("components agree with breadth-first search") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_rayed_graph(seed);
    auto part = components(g);
    auto ref = oracle::bfs_components(g, g.core.edge_ids());
    REQUIRE(part.blocks.size() == ref.size());
    std::set<VertexSet> mine, theirs(ref.begin(), ref.end());
    for (const auto& b : part.blocks) {
      mine.insert(b.vertices);
      CHECK(end_count(g, b) == oracle::rays_in(g, b.vertices));
    }
    CHECK(mine == theirs);
  }
}

TEST_CASE("weak connectivity agrees with exhaustive removal") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 300 && checked < 60; ++seed) {
    auto g = random_rayed_graph(seed);
    bool all_rayed = true;
    for (const auto& b : components(g).blocks)
      if (b.rays.empty()) all_rayed = false;
    if (!all_rayed) {
      CHECK_THROWS_AS(is_weakly_n_connected(g, 2), PreconditionError);
      continue;
    }
    ++checked;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto rep = is_weakly_n_connected(g, n);
      CHECK(rep.holds == oracle::weakly_n_connected(g, n));
      if (!rep.holds) {
        CHECK(rep.removed.size() < n);
        CHECK(oracle::rays_in(g, rep.ray_free_component) == 0);
      }
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("weak connectivity of curated graphs") {
  CHECK(is_weakly_n_connected(fixture("tree3"), 3).holds);
  CHECK(is_weakly_n_connected(fixture("triangle-lines"), 3).holds);
  auto sub = is_weakly_n_connected(fixture("subtree2"), 3);
  CHECK_FALSE(sub.holds);
  CHECK(is_weakly_n_connected(fixture("subtree2"), 2).holds);
  CHECK_FALSE(is_weakly_n_connected(fixture("ladder"), 3).holds);
  CHECK(is_weakly_n_connected(fixture("ladder"), 2).holds);
  CHECK_THROWS_AS(is_weakly_n_connected(fixture("k4"), 2), PreconditionError);
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_n_connected(complete_graph(4).core, 3));
  // Removal definition without a vertex-count clause: deleting three vertices of K4 leaves one.
  CHECK(is_strongly_n_connected(complete_graph(4).core, 4));
  auto k4 = complete_graph(4);
  k4.core.remove_edge("12");
  CHECK_FALSE(is_strongly_n_connected(k4.core, 3));
  CHECK(is_strongly_n_connected(cycle_graph(5).core, 2));
  CHECK_FALSE(is_strongly_n_connected(cycle_graph(5).core, 3));
  CHECK(is_strongly_n_connected(fixture("octahedron").core, 4));
  CHECK(is_strongly_n_connected(fixture("prism").core, 3));
  RayedGraph two;
  two.core.add_vertex("a");
  two.core.add_vertex("b");
  CHECK_THROWS_AS(is_strongly_n_connected(two.core, 2), PreconditionError);
}

TEST_CASE("subgraphs keep rays at retained vertices") {
  auto g = fixture("line5");
  auto sub = induced_subgraph(g, {"l0", "l1", "l2"});
  CHECK(sub.core.edge_count() == 2);
  CHECK(sub.ray_count() == 1);
  auto es = edge_subgraph(g, {"l34"});
  CHECK(es.core.vertex_count() == 2);
  CHECK(es.rays_at("l4") == 1);
  CHECK(span(g.core, {"l01", "l12"}) == VertexSet{"l0", "l1", "l2"});
  CHECK(induced_edges(g.core, {"l1", "l2", "l3"}) == EdgeSet{"l12", "l23"});
}

TEST_CASE("identifier errors") {
  Multigraph g;
  g.add_vertex("a");
  CHECK_THROWS_AS(g.add_edge("e", "a", "b"), InputError);
  g.add_vertex("b");
  g.add_edge("e", "a", "b");
  CHECK_THROWS_AS(g.add_edge("e", "a", "b"), InputError);
  CHECK_THROWS_AS(g.remove_vertex("a"), InputError);
  CHECK_THROWS_AS(g.add_vertex(""), InputError);
  RayedGraph r;
  r.core = g;
  r.add_ray("r", "a");
  CHECK_THROWS_AS(r.add_ray("r", "b"), InputError);
  CHECK_THROWS_AS(r.add_ray("s", "z"), InputError);
  CHECK(fresh_id("v", {"v", "v~1"}) == "v~2");
}

TEST_CASE("JSON and edge-list round trips on every fixture") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto g = fixture(name);
    CHECK(load(save(g)) == g);
    CHECK(load_edge_list(save_edge_list(g)) == g);
    CHECK(to_dot(g).find("graph") != std::string::npos);
  }
}

TEST_CASE("malformed JSON names the offending path") {
  auto msg = [](const std::string& text) {
    try {
      load(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg("{").find("malformed") != std::string::npos);
  CHECK(msg(R"({"vertices":["a"],"edges":[{"id":"e","u":"a","v":"b"}],"rays":[]})").find("/edges/0") !=
        std::string::npos);
  CHECK(msg(R"({"vertices":["a","a"],"edges":[],"rays":[]})").find("/vertices/1") != std::string::npos);
  CHECK(msg(R"({"vertices":["a"],"edges":[],"rays":[],"extra":1})").find("/extra") != std::string::npos);
  CHECK(msg(R"({"vertices":["a"],"edges":[],"rays":[{"id":"r","at":"q"}]})").find("/rays/0") !=
        std::string::npos);
  CHECK_THROWS_AS(load_edge_list("a b\n"), InputError);
}

TEST_CASE("one-ended weakly 3-connected graphs are strongly 3-connected") {
  std::size_t seen = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    auto g = random_rayed_graph(seed, 6, 14, 1);
    if (g.ray_count() != 1 || !is_connected(g.core)) continue;
    if (!is_weakly_n_connected(g, 3).holds) continue;
    ++seen;
    CHECK(is_strongly_n_connected(g.core, 3));
  }
  CHECK(seen > 0);
}
