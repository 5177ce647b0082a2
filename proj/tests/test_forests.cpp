#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "whitney/fixtures.hpp"
#include "whitney/forests.hpp"
#include "whitney/matroid.hpp"
#include "whitney/tutte.hpp"

using namespace whitney;

namespace {

// Leafless by counting: acyclic, ray-free vertices of f-degree 1 absent, three rays per
// component with an edge.
bool leafless_oracle(const RayedGraph& g, const EdgeSet& f) {
  if (!oracle::acyclic(g, f)) return false;
  std::map<VertexId, std::size_t> deg;
  for (const auto& e : f) {
    const auto& ep = g.core.endpoints(e);
    ++deg[ep.u];
    ++deg[ep.v];
  }
  for (const auto& [v, d] : deg)
    if (d == 1 && g.rays_at(v) == 0) return false;
  for (const auto& c : oracle::bfs_components(g, f))
    if (c.size() > 1 && oracle::rays_in(g, c) < 3) return false;
  return true;
}

bool eligible(const RayedGraph& g) {
  for (const auto& [e, ep] : g.core.edges())
    if (ep.is_loop()) return false;
  for (const auto& b : components(g).blocks)
    if (b.rays.size() < 3) return false;
  return oracle::weakly_n_connected(g, 2);
}

WedgeCover only(const WedgeClassCover& part) {
  WedgeCover c;
  c.parts.push_back(part);
  return c;
}

}  // namespace

TEST_CASE("minimum spanning forest matches reverse delete") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto g = random_rayed_graph(seed, 7, 14, 3);
    for (std::uint64_t s = 0; s < 3; ++s) {
      auto order = s == 0 ? sorted_order(g) : seeded_order(g, seed * 7 + s);
      auto f = fmsf(g, order);
      CHECK(f == oracle::reverse_delete_forest(g, order));
      CHECK(oracle::acyclic(g, f));
      CHECK(oracle::union_find_rank(g, f) == oracle::union_find_rank(g, g.core.edge_ids()));
    }
  }
  auto g = fixture("k4");
  auto order = sorted_order(g);
  order.pop_back();
  CHECK_THROWS_AS(fmsf(g, order), InputError);
}

TEST_CASE("forest lemmas on unions of blocks") {
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto g = random_rayed_graph(seed, 7, 12, 4);
    auto blocks = biconnected_blocks(g.core);
    EdgeSet s;
    for (const auto& b : blocks)
      if (rng() % 2) s.insert(b.begin(), b.end());
    CHECK(is_cycle_closed(g, s));
    auto rep = check_fmsf_lemmas(g, seeded_order(g, seed), s);
    CHECK(rep.ok());
    ++checked;
    // A single edge of a cycle is not cycle-closed.
    for (const auto& b : blocks)
      if (b.size() >= 3) {
        EdgeSet one{*b.begin()};
        CHECK_FALSE(is_cycle_closed(g, one));
        CHECK_THROWS_AS(check_fmsf_lemmas(g, sorted_order(g), one), PreconditionError);
        break;
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("pruning leaves a leafless forest") {
  RayedGraph tripod;
  for (auto v : {"c", "a", "b", "d"}) tripod.core.add_vertex(v);
  tripod.core.add_edge("ca", "c", "a");
  tripod.core.add_edge("cb", "c", "b");
  tripod.core.add_edge("cd", "c", "d");
  for (auto v : {"a", "b", "d"}) tripod.add_ray(std::string("r") + v, v);
  CHECK(verify_leafless(tripod, tripod.core.edge_ids()));
  CHECK_FALSE(verify_leafless(fixture("line5"), fixture("line5").core.edge_ids()));
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = random_rayed_graph(seed, 7, 12, 4);
    auto f = fmsf(g, seeded_order(g, seed));
    auto p = prune_leafless(g, f);
    CHECK(std::includes(f.begin(), f.end(), p.begin(), p.end()));
    CHECK(verify_leafless(g, p) == leafless_oracle(g, p));
    CHECK(verify_leafless(g, f) == leafless_oracle(g, f));
  }
}

TEST_CASE("leafless forests are superfluous") {
  for (std::string name : {"tree2", "tree3", "subtree2", "subtree3", "gadget-triangle", "triangle-lines", "wedge-gadget"}) {
    CAPTURE(name);
    auto g = fixture(name);
    REQUIRE(eligible(g));
    auto cover = leafless_cover(g);
    CHECK(cover.target == g.core.edge_ids());
    EdgeSet all;
    RankOracle o(g);
    for (const auto& f : cover.forests) {
      CHECK(verify_leafless(g, f));
      CHECK(leafless_oracle(g, f));
      CHECK(is_superfluous_analog(o, f));
      all.insert(f.begin(), f.end());
    }
    CHECK(all == g.core.edge_ids());
  }
  std::size_t seen = 0;
  for (std::uint64_t seed = 0; seed < 5000 && seen < 30; ++seed) {
    auto g = random_rayed_graph(seed, 7, 12, 6);
    if (!eligible(g)) continue;
    ++seen;
    auto cover = leafless_cover(g);
    EdgeSet all;
    RankOracle o(g);
    for (const auto& f : cover.forests) {
      CHECK(leafless_oracle(g, f));
      CHECK(is_superfluous_analog(o, f));
      all.insert(f.begin(), f.end());
    }
    CHECK(all == g.core.edge_ids());
  }
  CHECK(seen >= 10);
  CHECK_THROWS_AS(leafless_cover(fixture("ladder")), PreconditionError);
}

TEST_CASE("trees through an edge") {
  auto g = fixture("tree2");
  for (const auto& e : g.core.edge_ids()) {
    auto t = tree_through_edge(g, e);
    REQUIRE_FALSE(t.empty());
    CHECK(t.count(e));
    CHECK(leafless_oracle(g, t));
  }
  // With the allowed vertices cut down to the edge itself only two rays remain.
  auto e = *g.core.edge_ids().begin();
  const auto& ep = g.core.endpoints(e);
  CHECK(tree_through_edge(g, e, {ep.u, ep.v}).empty());
}

TEST_CASE("wedge on a cycle avoiding its center is covered by that cycle") {
  auto g = fixture("wedge-gadget");
  Wedge w;
  for (const auto& x : wedges(g.core))
    if (x.center == "z") w = x;
  REQUIRE(w.center == "z");
  auto c = wedge_cover(g, {w});
  REQUIRE(c.ok());
  REQUIRE(c.parts.size() == 1);
  CHECK(c.parts.front().kind == CoverKind::Cycles);
  REQUIRE(c.parts.front().cycles.size() == 1);
  const auto& cyc = c.parts.front().cycles.front();
  CHECK(oracle::is_cycle(g, cyc));
  CHECK_FALSE(span(g.core, cyc).count("z"));
  CHECK(span(g.core, cyc).count("x"));
  CHECK(span(g.core, cyc).count("y"));
  CHECK(verify_wedge_cover(g, c).empty());
}

TEST_CASE("wedge classes are far apart and close wedges are rejected") {
  auto g = fixture("tree3");
  auto ws = wedges(g.core);
  auto classes = far_apart_classes(g, ws, 6);
  std::size_t total = 0;
  for (const auto& cls : classes) {
    total += cls.size();
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j) CHECK(wedge_distance(g, cls[i], cls[j]) >= 6);
  }
  CHECK(total == ws.size());
  REQUIRE(ws.size() >= 2);
  CHECK(wedge_distance(g, ws[0], ws[1]) < 6);
  CHECK_THROWS_AS(wedge_cover(g, {ws[0], ws[1]}), PreconditionError);
}

TEST_CASE("every successful wedge cover part satisfies its invariants") {
  for (std::string name : {"tree3", "subtree2", "gadget-triangle", "triangle-lines", "wedge-gadget"}) {
    CAPTURE(name);
    auto g = fixture(name);
    auto ws = wedges(g.core);
    std::size_t ok = 0, failed = 0;
    for (const auto& cls : far_apart_classes(g, ws, 6)) {
      auto c = wedge_cover(g, cls, 6);
      std::vector<Wedge> seen;
      for (const auto& part : c.parts) {
        seen.insert(seen.end(), part.wedges.begin(), part.wedges.end());
        if (part.kind == CoverKind::Failed) {
          CHECK_FALSE(part.failure.empty());
          ++failed;
          continue;
        }
        ++ok;
        CHECK(verify_wedge_cover(g, only(part)).empty());
        if (part.kind == CoverKind::Forest) {
          CHECK(leafless_oracle(g, part.forest));
          for (const auto& w : part.wedges) CHECK_FALSE(span(g.core, part.forest).count(w.center));
        } else {
          CHECK(part.cycles.size() == part.wedges.size());
          for (const auto& cyc : part.cycles) CHECK(oracle::is_cycle(g, cyc));
        }
      }
      std::sort(seen.begin(), seen.end());
      auto expected = cls;
      std::sort(expected.begin(), expected.end());
      CHECK(seen == expected);
    }
    CHECK(ok + failed > 0);
    MESSAGE(name << ": " << ok << " parts covered, " << failed << " failed");
  }
  CHECK(wedge_cover_to_json(WedgeCover{}).is_array());
}
