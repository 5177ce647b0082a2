#include <doctest.h>

#include "oracles.hpp"
#include "whitney/fixtures.hpp"
#include "whitney/iso.hpp"
#include "whitney/matroid.hpp"
#include "whitney/ops.hpp"

using namespace whitney;

namespace {

bool has_message(const std::vector<std::string>& msgs, const std::string& needle) {
  for (const auto& m : msgs)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

RayedGraph two_level_tree() {
  RayedGraph g;
  for (auto v : {"r", "c1", "c2", "l1", "l2", "l3", "l4"}) g.core.add_vertex(v);
  g.core.add_edge("rc1", "r", "c1");
  g.core.add_edge("rc2", "r", "c2");
  g.core.add_edge("c1l1", "c1", "l1");
  g.core.add_edge("c1l2", "c1", "l2");
  g.core.add_edge("c2l3", "c2", "l3");
  g.core.add_edge("c2l4", "c2", "l4");
  return g;
}

}  // namespace

TEST_CASE("finite split of the lollipop") {
  auto g = fixture("lollipop");
  FiniteSplit op{"w", {"a", "b", "c"}, std::nullopt};
  CHECK(validate(op, g).empty());
  auto a = whitney::apply(op, g);
  CHECK(a.graph.core.edge_ids() == g.core.edge_ids());
  auto parts = components(a.graph).blocks;
  REQUIRE(parts.size() == 2);
  std::size_t ray_free = 0;
  for (const auto& p : parts) {
    if (p.rays.empty()) {
      ++ray_free;
      CHECK(p.edges == EdgeSet{"a", "b", "c"});
    }
  }
  CHECK(ray_free == 1);
  CHECK(check_sequence_weak_iso(OpSequence{g, {op}}).verdict);
  auto back = whitney::apply(invert(a.recorded), a.graph);
  CHECK(back.graph == g);
}

TEST_CASE("split at a non-cut vertex is rejected") {
  auto g = fixture("triangle");
  // Every side at u would have to be the whole rest of the triangle.
  auto v = validate(FiniteSplit{"u", {"a", "b", "c"}, std::nullopt}, g);
  CHECK(has_message(v, "not a cut vertex"));
  CHECK(has_message(validate(FiniteSplit{"u", {"a"}, std::nullopt}, g), "side cuts through a component"));
  CHECK_THROWS_AS(whitney::apply(FiniteSplit{"u", {"a"}, std::nullopt}, g), PreconditionError);
  CHECK(has_message(validate(FiniteSplit{"zz", {"a"}, std::nullopt}, g), "unknown vertex"));
}

TEST_CASE("pendant triangles split off a two-ray line") {
  auto g = fixture("pendant-line");
  std::vector<WhitneyOp> batch;
  for (int i = 1; i <= 4; ++i) {
    const auto gi = "g" + std::to_string(i);
    batch.push_back(FiniteSplit{"l" + std::to_string(i), {gi + ":1", gi + ":2", gi + ":3"}, std::nullopt});
  }
  auto a = apply_batch(batch, g);
  auto parts = components(a.graph).blocks;
  CHECK(parts.size() == 5);
  std::size_t triangles = 0;
  for (const auto& p : parts) {
    if (p.rays.size() == 2) CHECK(p.edges.size() == 5);
    if (p.rays.empty() && p.edges.size() == 3) ++triangles;
  }
  CHECK(triangles == 4);
}

TEST_CASE("twist of the square hung on a line") {
  auto g = fixture("square-on-line");
  FiniteTwist op{"l1", "l2", {"s1", "s2", "s3", "d"}};
  CHECK(validate(op, g).empty());
  auto a = whitney::apply(op, g);
  RayedGraph expected;
  for (auto v : {"l0", "l1", "l2", "l3", "p", "q"}) expected.core.add_vertex(v);
  expected.core.add_edge("l01", "l0", "l1");
  expected.core.add_edge("l12", "l1", "l2");
  expected.core.add_edge("l23", "l2", "l3");
  expected.core.add_edge("s1", "l2", "p");
  expected.core.add_edge("s2", "p", "q");
  expected.core.add_edge("s3", "q", "l1");
  expected.core.add_edge("d", "l2", "q");
  expected.add_ray("r:l0", "l0");
  expected.add_ray("r:l3", "l3");
  CHECK(a.graph == expected);
  CHECK(a.altered == EdgeSet{"d", "s1", "s3"});
  // Involution.
  CHECK(whitney::apply(invert(a.recorded), a.graph).graph == g);
  CHECK(whitney::apply(op, a.graph).graph == g);
  CHECK(check_sequence_weak_iso(OpSequence{g, {op}}).verdict);
}

TEST_CASE("twist validation clauses") {
  auto g = fixture("square-on-line");
  CHECK(has_message(validate(FiniteTwist{"l1", "l1", {"s1"}}, g), "coincide"));
  CHECK(has_message(validate(FiniteTwist{"l1", "l2", {"l23"}}, g), "not ray-free"));
  CHECK_FALSE(validate(FiniteTwist{"l1", "l2", {"s1"}}, g).empty());
}

TEST_CASE("split batch of the triangle tree is rejected") {
  auto g = fixture("triangle-tree");
  bool rejected = false;
  for (const auto& op : triangle_tree_split_batch()) rejected |= has_message(validate(op, g), "not ray-free");
  CHECK(rejected);
  OpSequence seq{g, triangle_tree_split_batch()};
  CHECK_THROWS_AS(replay(seq), PreconditionError);
}

TEST_CASE("two-ended split and join round trip") {
  auto g = fixture("line5");
  TwoEndedSplit op{{"l2"}, std::nullopt, {}};
  CHECK(validate(op, g).empty());
  auto a = whitney::apply(op, g);
  auto parts = components(a.graph).blocks;
  CHECK(parts.size() == 2);
  for (const auto& p : parts) CHECK(p.rays.size() == 1);
  auto back = whitney::apply(invert(a.recorded), a.graph);
  CHECK(back.graph == g);
  CHECK(has_message(validate(TwoEndedSplit{{"u"}, std::nullopt, {}}, fixture("triangle")),
                    "exactly 2 rays"));
}

TEST_CASE("the ladder twist sequence reproduces the twisted ladder") {
  auto pair = fixture_pair("ladder");
  OpSequence seq{pair.source, {ladder_twist()}};
  auto r = replay(seq);
  CHECK(r.final_graph() == pair.target);
  auto phi = compose(seq);
  CHECK(phi.map() == pair.phi);
  CHECK(check_sequence_weak_iso(seq).verdict);
  for (const auto& [e, n] : r.alterations) CHECK(n <= 1);
}

TEST_CASE("empty sequence composes to the identity") {
  auto g = fixture("k4");
  auto phi = compose(OpSequence{g, {}});
  for (const auto& [e, f] : phi.map()) CHECK(e == f);
  CHECK(phi.target() == g);
}

TEST_CASE("replay names the failing index") {
  auto g = fixture("lollipop");
  OpSequence seq{g, {FiniteSplit{"w", {"a", "b", "c"}, std::nullopt}, FiniteSplit{"u", {"a"}, std::nullopt}}};
  try {
    replay(seq);
    FAIL("replay accepted an invalid op");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("op 1") != std::string::npos);
  }
}

TEST_CASE("split chain on a tree inverts to an isomorphic tree") {
  auto g = two_level_tree();
  OpSequence seq{g,
                 {FiniteSplit{"r", {"rc1", "c1l1", "c1l2"}, std::nullopt},
                  FiniteSplit{"c1", {"c1l1"}, std::nullopt}, FiniteSplit{"c2", {"c2l4"}, std::nullopt}}};
  auto r = replay(seq);
  CHECK(components(r.final_graph()).blocks.size() == 4);
  auto inv = invert_sequence(seq);
  auto back = replay(inv).final_graph();
  CHECK(isomorphic(back, g));
  CHECK(back.core.edge_ids() == g.core.edge_ids());
}

TEST_CASE("every candidate op is sound on the small fixtures") {
  for (const auto& name : fixture_names()) {
    auto g = fixture(name);
    if (g.core.edge_count() > 9) continue;
    CAPTURE(name);
    RankOracle before(g);
    auto es = oracle::edge_list(g);
    for (const auto& op : candidate_ops(g)) {
      CAPTURE(kind_name(op));
      REQUIRE(validate(op, g).empty());
      auto a = whitney::apply(op, g);
      CHECK(a.graph.core.edge_ids() == g.core.edge_ids());
      RankOracle after(a.graph);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << es.size()); ++m) {
        auto f = oracle::subset(es, m);
        REQUIRE(before.forest_rank(f) == after.forest_rank(f));
        if (!is_two_ended(op)) REQUIRE(oracle::rank(g, f) == oracle::rank(a.graph, f));
      }
      auto back = whitney::apply(invert(a.recorded), a.graph);
      CHECK(isomorphic(back.graph, g));
      CHECK(oracle::weak_iso(g, a.graph, EdgeBijection::identity(g).map()));
    }
  }
}

TEST_CASE("random twist sequences stay weak isomorphisms") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_two_connected(seed, 9);
    auto seq = random_twist_sequence(g, seed, 4);
    auto r = replay(seq);
    CHECK(oracle::weak_iso(g, r.final_graph(), EdgeBijection::identity(g).map()));
    auto inv = invert_sequence(seq);
    CHECK(replay(inv).final_graph() == g);
  }
}

TEST_CASE("operations round trip through JSON") {
  auto g = fixture("ladder");
  OpSequence seq{g, {ladder_twist()}};
  auto j = sequence_to_json(seq);
  auto back = sequence_from_json(j);
  CHECK(back.initial == g);
  CHECK(sequence_to_json(back) == j);
  for (const auto& op : candidate_ops(fixture("lollipop"))) CHECK(op_to_json(op_from_json(op_to_json(op))) == op_to_json(op));
  CHECK_THROWS_AS(op_from_json(Json{{"kind", "nonsense"}}), InputError);
}
