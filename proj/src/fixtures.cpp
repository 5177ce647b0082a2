#include "whitney/fixtures.hpp"

#include <functional>
#include <queue>
#include <random>

namespace whitney {

namespace {

struct Builder {
  RayedGraph g;
  Builder& edge(const EdgeId& e, const VertexId& u, const VertexId& v) {
    g.core.add_vertex(u);
    g.core.add_vertex(v);
    g.core.add_edge(e, u, v);
    return *this;
  }
  Builder& rays(const VertexId& v, std::size_t k) {
    g.core.add_vertex(v);
    for (std::size_t i = 0; i < k; ++i) g.add_ray(k == 1 ? "r:" + v : "r:" + v + ":" + std::to_string(i), v);
    return *this;
  }
};

std::string letter(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "e" + std::to_string(i);
}

std::string padded(const std::string& prefix, std::size_t i) {
  return prefix + (i < 10 ? "0" : "") + std::to_string(i);
}

RayedGraph triangle() {
  return Builder{}.edge("a", "u", "v").edge("b", "v", "w").edge("c", "w", "u").g;
}

RayedGraph path3() { return Builder{}.edge("a", "u", "v").edge("b", "v", "w").g; }

RayedGraph line5() {
  Builder b;
  for (int i = 0; i < 4; ++i) b.edge("l" + std::to_string(i) + std::to_string(i + 1), "l" + std::to_string(i), "l" + std::to_string(i + 1));
  return b.rays("l0", 1).rays("l4", 1).g;
}

RayedGraph lollipop() {
  return Builder{}.edge("a", "u", "v").edge("b", "v", "w").edge("c", "w", "u").edge("d", "w", "p1").edge("e", "p1", "p2").rays("p2", 1).g;
}

// Two-ray line with a triangle hanging from each interior vertex.
RayedGraph pendant_line() {
  Builder b;
  for (int i = 0; i < 5; ++i) b.edge("l" + std::to_string(i) + std::to_string(i + 1), "l" + std::to_string(i), "l" + std::to_string(i + 1));
  for (int i = 1; i <= 4; ++i) {
    const std::string l = "l" + std::to_string(i), g = "g" + std::to_string(i);
    b.edge(g + ":1", l, g + "a").edge(g + ":2", g + "a", g + "b").edge(g + ":3", g + "b", l);
  }
  return b.rays("l0", 1).rays("l5", 1).g;
}

// Square with a diagonal hung on a two-ray line at the pair {l1, l2}.
RayedGraph square_on_line() {
  return Builder{}
      .edge("l01", "l0", "l1")
      .edge("l12", "l1", "l2")
      .edge("l23", "l2", "l3")
      .edge("s1", "l1", "p")
      .edge("s2", "p", "q")
      .edge("s3", "q", "l2")
      .edge("d", "l1", "q")
      .rays("l0", 1)
      .rays("l3", 1)
      .g;
}

// Triangle A, B, C whose sides are replaced by banana gadgets; two rays at each corner.
RayedGraph gadget_triangle() {
  Builder b;
  auto gadget = [&](const std::string& x, const std::string& y) {
    const std::string n = x + y;
    b.edge(n + ":1", x, n + "a").edge(n + ":2", x, n + "b");
    b.edge(n + ":3", y, n + "c").edge(n + ":4", y, n + "d");
    b.edge(n + ":5", n + "a", n + "c").edge(n + ":6", n + "c", n + "d");
    b.edge(n + ":7", n + "d", n + "b").edge(n + ":8", n + "b", n + "a");
  };
  gadget("A", "B");
  gadget("B", "C");
  gadget("C", "A");
  return b.rays("A", 2).rays("B", 2).rays("C", 2).g;
}

// Triangle with a two-ray line through each vertex.
RayedGraph triangle_with_lines() {
  return Builder{}.edge("a", "x", "y").edge("b", "y", "z").edge("c", "z", "x").rays("x", 2).rays("y", 2).rays("z", 2).g;
}

// Wedge (x, z, y) whose endpoints lie on the square x-u-y-v; one infinite side at z, one
// across u and v.
RayedGraph wedge_gadget() {
  return Builder{}
      .edge("xz", "x", "z")
      .edge("zy", "z", "y")
      .edge("yu", "y", "u")
      .edge("ux", "u", "x")
      .edge("xv", "x", "v")
      .edge("vy", "v", "y")
      .rays("z", 2)
      .rays("u", 1)
      .rays("v", 1)
      .g;
}

using Maker = std::function<RayedGraph()>;

struct Entry {
  std::string name;
  std::string description;
  Maker make;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"triangle", "3-cycle u, v, w with edges a, b, c", triangle},
      {"path3", "path on three vertices", path3},
      {"square", "4-cycle", [] { return cycle_graph(4); }},
      {"theta", "two hubs joined by three paths of length two", theta_graph},
      {"k4", "complete graph on four vertices", [] { return complete_graph(4); }},
      {"k5", "complete graph on five vertices", [] { return complete_graph(5); }},
      {"prism", "triangular prism", prism_graph},
      {"wheel5", "hub joined to a 5-cycle", [] { return wheel_graph(5); }},
      {"octahedron", "octahedron", octahedron_graph},
      {"line5", "path on five vertices with a ray at each end", line5},
      {"lollipop", "triangle with a pendant path ending in a ray", lollipop},
      {"pendant-line", "two-ray line with four pendant triangles", pendant_line},
      {"square-on-line", "square with a diagonal hung on a two-ray line", square_on_line},
      {"gadget-triangle", "triangle of banana gadgets, two rays at each corner", gadget_triangle},
      {"triangle-lines", "triangle with a two-ray line through each vertex", triangle_with_lines},
      {"wedge-gadget", "wedge whose endpoints lie on a cycle avoiding its center", wedge_gadget},
      {"tree2", "3-regular tree truncated at depth 2, two rays per leaf", [] { return regular_tree(2); }},
      {"tree3", "3-regular tree truncated at depth 3, two rays per leaf", [] { return regular_tree(3); }},
      {"subtree2", "subdivided 3-regular tree, depth 2", [] { return regular_tree(2, true); }},
      {"subtree3", "subdivided 3-regular tree, depth 3", [] { return regular_tree(3, true); }},
      {"ladder", "open ladder with alternate diagonals, one ray per end", ladder_graph},
      {"ladder-twisted", "ladder with every second square flipped", [] { return fixture_pair("ladder").target; }},
      {"triangle-tree", "four triangles around a central one, three rays", triangle_tree},
      {"triangle-tree-split", "triangle tree detached at the shared vertices", triangle_tree_split},
  };
  return entries;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

RayedGraph fixture(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e.make();
  throw InputError("unknown fixture '" + name + "'");
}

std::string fixture_description(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e.description;
  throw InputError("unknown fixture '" + name + "'");
}

std::vector<std::string> pair_names() { return {"ladder", "triangle-tree"}; }

FixturePair fixture_pair(const std::string& name) {
  FixturePair p;
  if (name == "ladder") {
    p.source = ladder_graph();
    p.target = whitney::apply(ladder_twist(), p.source).graph;
  } else if (name == "triangle-tree") {
    p.source = triangle_tree();
    p.target = triangle_tree_split();
  } else {
    throw InputError("unknown fixture pair '" + name + "'");
  }
  for (const auto& [e, ep] : p.source.core.edges()) p.phi[e] = e;
  return p;
}

RayedGraph cycle_graph(std::size_t n) {
  Builder b;
  for (std::size_t i = 0; i < n; ++i) b.edge(letter(i), "v" + std::to_string(i), "v" + std::to_string((i + 1) % n));
  return b.g;
}

RayedGraph complete_graph(std::size_t n) {
  Builder b;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) b.edge(std::to_string(i) + std::to_string(j), std::to_string(i), std::to_string(j));
  return b.g;
}

RayedGraph wheel_graph(std::size_t rim) {
  Builder b;
  for (std::size_t i = 0; i < rim; ++i) {
    const auto v = "r" + std::to_string(i);
    b.edge("s" + std::to_string(i), "h", v);
    b.edge("c" + std::to_string(i), v, "r" + std::to_string((i + 1) % rim));
  }
  return b.g;
}

RayedGraph prism_graph() {
  Builder b;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const auto s = std::to_string(i), t = std::to_string(j);
    b.edge("a" + s + t, "a" + s, "a" + t).edge("b" + s + t, "b" + s, "b" + t).edge("m" + s, "a" + s, "b" + s);
  }
  return b.g;
}

RayedGraph octahedron_graph() {
  Builder b;
  // Opposite vertices sum to 7.
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      if (i + j != 7) b.edge(std::to_string(i) + std::to_string(j), std::to_string(i), std::to_string(j));
  return b.g;
}

RayedGraph theta_graph() {
  Builder b;
  for (int i = 1; i <= 3; ++i) {
    const auto k = std::to_string(i);
    b.edge("s" + k, "s", "m" + k).edge("t" + k, "m" + k, "t");
  }
  return b.g;
}

RayedGraph regular_tree(std::size_t depth, bool subdivided) {
  Builder b;
  b.g.core.add_vertex("t");
  std::vector<std::string> level{"t"};
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<std::string> next;
    for (const auto& p : level) {
      const int kids = p == "t" ? 3 : 2;
      for (int k = 0; k < kids; ++k) {
        const auto c = p + std::to_string(k);
        if (subdivided) {
          b.edge("e:" + c + ":a", p, "m" + c).edge("e:" + c + ":b", "m" + c, c);
        } else {
          b.edge("e:" + c, p, c);
        }
        next.push_back(c);
      }
    }
    level = std::move(next);
  }
  for (const auto& leaf : level) b.rays(leaf, 2);
  return b.g;
}

RayedGraph ladder_graph() {
  // Top a0 c0 a1 c1 a2, bottom b0 d0 b1 d1 b2; diagonals a_i-d_i and c_i-b_(i+1).
  const std::vector<std::string> top{"a0", "c0", "a1", "c1", "a2"}, bottom{"b0", "d0", "b1", "d1", "b2"};
  Builder b;
  for (std::size_t i = 0; i < top.size(); ++i) b.edge("r" + std::to_string(i), top[i], bottom[i]);
  for (std::size_t i = 0; i + 1 < top.size(); ++i) {
    const auto k = std::to_string(i);
    b.edge("t" + k, top[i], top[i + 1]).edge("u" + k, bottom[i], bottom[i + 1]);
    b.edge("x" + k, top[i], bottom[i + 1]);
  }
  // x_i joins top[i] to bottom[i+1]: a0-d0, c0-b1, a1-d1, c1-b2.
  return b.rays("a0", 1).rays("b2", 1).g;
}

SimultaneousTwist ladder_twist() {
  const auto g = ladder_graph();
  // Side of a pair: the edges reaching the right-hand ray without passing the pair.
  auto right_side = [&](const VertexId& x, const VertexId& y) {
    VertexSet seen{"b2"};
    std::queue<VertexId> q;
    q.push("b2");
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (const auto& e : g.core.incident(v)) {
        const auto& w = g.core.endpoints(e).other(v);
        if (w == x || w == y || !seen.insert(w).second) continue;
        q.push(w);
      }
    }
    EdgeSet side;
    for (const auto& [e, ep] : g.core.edges())
      if (seen.count(ep.u) || seen.count(ep.v)) side.insert(e);
    return side;
  };
  // Flipping the squares c0-a1 and c1-a2: pairs (c0, d0) and (a1, b1) cancel outside the
  // first square; (c1, d1) flips the last one.
  SimultaneousTwist t;
  for (const auto& [x, y] : std::vector<std::pair<VertexId, VertexId>>{{"c0", "d0"}, {"a1", "b1"}, {"c1", "d1"}})
    t.records.push_back({x, y, right_side(x, y)});
  return t;
}

namespace {

void outer_triangle(Builder& b, const std::string& shared, const std::string& at) {
  const auto p1 = shared + "1", p2 = shared + "2";
  b.edge(shared + ":1", at, p1).edge(shared + ":2", p1, p2).edge(shared + ":3", p2, at);
  b.rays(p1, 1);
}

RayedGraph triangle_tree_with(bool split) {
  Builder b;
  b.edge("pq", "p", "q").edge("qr", "q", "r").edge("rp", "r", "p");
  for (const std::string v : {"p", "q", "r"}) outer_triangle(b, v, split ? v + "+" : v);
  return b.g;
}

}  // namespace

RayedGraph triangle_tree() { return triangle_tree_with(false); }
RayedGraph triangle_tree_split() { return triangle_tree_with(true); }

std::vector<WhitneyOp> triangle_tree_split_batch() {
  std::vector<WhitneyOp> out;
  for (const std::string v : {"p", "q", "r"}) out.push_back(FiniteSplit{v, {v + ":1", v + ":2", v + ":3"}, v + "+"});
  return out;
}

RayedGraph random_rayed_graph(std::uint64_t seed, std::size_t max_vertices, std::size_t max_edges, std::size_t max_rays) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  RayedGraph g;
  const std::size_t n = pick(1, max_vertices);
  for (std::size_t i = 0; i < n; ++i) g.core.add_vertex("v" + std::to_string(i));
  const std::size_t m = pick(0, max_edges);
  for (std::size_t k = 0; k < m; ++k)
    g.core.add_edge(padded("e", k), "v" + std::to_string(pick(0, n - 1)), "v" + std::to_string(pick(0, n - 1)));
  const std::size_t r = pick(0, max_rays);
  for (std::size_t k = 0; k < r; ++k) g.add_ray("r" + std::to_string(k), "v" + std::to_string(pick(0, n - 1)));
  return g;
}

RayedGraph random_simple_graph(std::uint64_t seed, std::size_t vertices) {
  std::mt19937_64 rng(seed);
  RayedGraph g;
  for (std::size_t i = 0; i < vertices; ++i) g.core.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i < vertices; ++i)
    for (std::size_t j = i + 1; j < vertices; ++j)
      if (rng() & 1) g.core.add_edge("v" + std::to_string(i) + "v" + std::to_string(j), "v" + std::to_string(i), "v" + std::to_string(j));
  return g;
}

RayedGraph random_two_connected(std::uint64_t seed, std::size_t max_edges) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  RayedGraph g;
  std::size_t vertices = 0, edges = 0;
  auto vertex = [&] {
    auto v = padded("v", vertices++);
    g.core.add_vertex(v);
    return v;
  };
  auto edge = [&](const VertexId& u, const VertexId& v) { g.core.add_edge(padded("e", edges++), u, v); };
  const std::size_t cycle = std::min<std::size_t>(pick(3, 5), max_edges);
  std::vector<VertexId> ring;
  for (std::size_t i = 0; i < cycle; ++i) ring.push_back(vertex());
  for (std::size_t i = 0; i < cycle; ++i) edge(ring[i], ring[(i + 1) % cycle]);
  const std::size_t target = pick(cycle, std::max(cycle, max_edges));
  while (edges < target) {
    std::vector<VertexId> vs(g.core.vertices().begin(), g.core.vertices().end());
    const auto u = vs[pick(0, vs.size() - 1)];
    auto v = u;
    while (v == u) v = vs[pick(0, vs.size() - 1)];
    const std::size_t len = pick(1, std::min<std::size_t>(3, target - edges));
    auto at = u;
    for (std::size_t k = 1; k < len; ++k) {
      auto w = vertex();
      edge(at, w);
      at = w;
    }
    edge(at, v);
  }
  return g;
}

OpSequence random_twist_sequence(const RayedGraph& g, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  OpSequence seq{g, {}};
  RayedGraph cur = g;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<WhitneyOp> twists;
    for (auto& op : candidate_ops(cur))
      if (std::holds_alternative<FiniteTwist>(op)) twists.push_back(std::move(op));
    if (twists.empty()) break;
    const auto& op = twists[std::uniform_int_distribution<std::size_t>(0, twists.size() - 1)(rng)];
    auto a = whitney::apply(op, cur);
    seq.ops.push_back(a.recorded);
    cur = std::move(a.graph);
  }
  return seq;
}

}  // namespace whitney
