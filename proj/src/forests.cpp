#include "whitney/forests.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <random>

#include "whitney/flow.hpp"
#include "whitney/indexed.hpp"
#include "whitney/tutte.hpp"

namespace whitney {

EdgeOrder sorted_order(const RayedGraph& g) {
  EdgeOrder out;
  for (const auto& [e, ep] : g.core.edges()) out.push_back(e);
  return out;
}

EdgeOrder seeded_order(const RayedGraph& g, std::uint64_t seed) {
  auto out = sorted_order(g);
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

EdgeSet fmsf(const RayedGraph& g, const EdgeOrder& order) {
  if (order.size() != g.core.edge_count() || EdgeSet(order.begin(), order.end()) != g.core.edge_ids())
    throw InputError("edge order must list every edge exactly once");
  IndexedGraph ig(g);
  UnionFind uf(ig.n());
  EdgeSet out;
  for (const auto& e : order) {
    int k = ig.edge(e);
    if (uf.unite(ig.eu[k], ig.ev[k])) out.insert(e);
  }
  return out;
}

bool is_cycle_closed(const RayedGraph& g, const EdgeSet& s) {
  for (const auto& e : s)
    if (!g.core.has_edge(e)) throw InputError("unknown edge id '" + e + "'");
  for (const auto& block : biconnected_blocks(g.core)) {
    bool in = false, out = false;
    for (const auto& e : block) (s.count(e) ? in : out) = true;
    // A single bridge lies on no cycle, so it never ties s to the rest.
    if (in && out && block.size() > 1) return false;
  }
  return true;
}

FmsfLemmaReport check_fmsf_lemmas(const RayedGraph& g, const EdgeOrder& order, const EdgeSet& s) {
  if (!is_cycle_closed(g, s)) throw PreconditionError("edge set is not cycle-closed");
  FmsfLemmaReport r;
  auto full = fmsf(g, order);
  EdgeOrder sub_order;
  for (const auto& e : order)
    if (s.count(e)) sub_order.push_back(e);
  auto restricted = fmsf(edge_subgraph(g, s), sub_order);
  for (const auto& e : s)
    if (full.count(e) != restricted.count(e)) r.restriction_difference.insert(e);
  r.restriction_holds = r.restriction_difference.empty();

  auto forest = components(g, full);
  for (const auto& block : components(g).blocks) {
    if (block.rays.empty()) continue;
    for (const auto& v : block.vertices)
      if (forest.blocks[forest.block_of(v)].rays.empty()) r.stranded.insert(v);
  }
  r.rayed_components_hold = r.stranded.empty();
  return r;
}

namespace {

bool acyclic(const RayedGraph& g, const EdgeSet& f) {
  IndexedGraph ig(g);
  UnionFind uf(ig.n());
  for (const auto& e : f) {
    int k = ig.edge(e);
    if (!uf.unite(ig.eu[k], ig.ev[k])) return false;
  }
  return true;
}

std::size_t rays_in(const RayedGraph& g, const VertexSet& vs) {
  std::size_t n = 0;
  for (const auto& v : vs) n += g.rays_at(v);
  return n;
}

std::map<VertexId, std::size_t> degrees(const RayedGraph& g, const EdgeSet& f) {
  std::map<VertexId, std::size_t> d;
  for (const auto& e : f) {
    const auto& ep = g.core.endpoints(e);
    ++d[ep.u];
    ++d[ep.v];
  }
  return d;
}

void check_many_ended(const RayedGraph& g) {
  for (const auto& [e, ep] : g.core.edges())
    if (ep.is_loop()) throw PreconditionError("loop '" + e + "' lies in no forest");
  for (const auto& b : components(g).blocks)
    if (b.rays.size() < 3) throw PreconditionError("component at '" + *b.vertices.begin() + "' has fewer than 3 rays");
  auto w = is_weakly_n_connected(g, 2);
  if (!w.holds) throw PreconditionError("not weakly 2-connected: removing '" + *w.removed.begin() + "' leaves a ray-free component");
}

// Drops forest components holding fewer than three rays.
EdgeSet keep_many_rayed(const RayedGraph& g, const EdgeSet& f) {
  EdgeSet out;
  for (const auto& b : components(edge_subgraph(g, f)).blocks)
    if (b.rays.size() >= 3) out.insert(b.edges.begin(), b.edges.end());
  return out;
}

// Shortest path inside `allowed` from any vertex of `from` to a vertex satisfying `goal` that
// is outside `from`; the path meets `from` only at its first vertex.
std::vector<EdgeId> branch_path(const RayedGraph& g, const VertexSet& from, const VertexSet& allowed,
                                const std::function<bool(const VertexId&)>& goal) {
  std::map<VertexId, EdgeId> via;
  VertexSet seen = from;
  std::queue<VertexId> q;
  for (const auto& v : from) q.push(v);
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    if (!from.count(v) && goal(v)) {
      std::vector<EdgeId> path;
      for (VertexId at = v; !from.count(at);) {
        const auto& e = via.at(at);
        path.push_back(e);
        at = g.core.endpoints(e).other(at);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const auto& e : g.core.incident(v)) {
      const auto& w = g.core.endpoints(e).other(v);
      if (!allowed.count(w) || !seen.insert(w).second) continue;
      via[w] = e;
      q.push(w);
    }
  }
  return {};
}

// Internally vertex-disjoint paths from `source` to ray vertices (other than `source`), inside
// `allowed`, avoiding `skip`. Each path is an edge-id list starting at `source`.
std::vector<std::vector<EdgeId>> paths_to_rays(const RayedGraph& g, const std::vector<VertexId>& sources,
                                               const VertexSet& allowed, const EdgeSet& skip, int limit) {
  std::vector<VertexId> names(allowed.begin(), allowed.end());
  std::map<VertexId, int> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
  // One source routes from itself; two share an auxiliary source joined to both.
  const bool single = sources.size() == 1;
  const int s = single ? idx.at(sources.front()) : static_cast<int>(names.size()), t = static_cast<int>(names.size()) + 1;
  std::vector<std::pair<int, int>> edges;
  std::vector<EdgeId> ids;
  for (const auto& [e, ep] : g.core.edges()) {
    if (skip.count(e) || ep.is_loop() || !idx.count(ep.u) || !idx.count(ep.v)) continue;
    edges.emplace_back(idx[ep.u], idx[ep.v]);
    ids.push_back(e);
  }
  const std::size_t real = ids.size();
  if (!single)
    for (const auto& src : sources) edges.emplace_back(s, idx.at(src));
  for (const auto& v : names)
    if (g.rays_at(v) && (!single || v != sources.front())) edges.emplace_back(idx[v], t);
  std::vector<std::vector<EdgeId>> out;
  for (const auto& p : vertex_disjoint_paths(t + 1, edges, s, t, limit)) {
    std::vector<EdgeId> path;
    for (int k : p)
      if (static_cast<std::size_t>(k) < real) path.push_back(ids[k]);
    out.push_back(std::move(path));
  }
  return out;
}

// Adds branches to ray vertices outside the tree until it holds three rays.
bool complete_rays(const RayedGraph& g, EdgeSet& tree, const VertexSet& allowed) {
  for (;;) {
    auto vs = span(g.core, tree);
    if (rays_in(g, vs) >= 3) return true;
    auto p = branch_path(g, vs, allowed, [&](const VertexId& v) { return g.rays_at(v) > 0; });
    if (p.empty()) return false;
    tree.insert(p.begin(), p.end());
  }
}

VertexSet all_vertices_or(const RayedGraph& g, const VertexSet& allowed) {
  return allowed.empty() ? g.core.vertices() : allowed;
}

}  // namespace

EdgeSet prune_leafless(const RayedGraph& g, const EdgeSet& f) {
  for (const auto& e : f)
    if (!g.core.has_edge(e)) throw InputError("unknown edge id '" + e + "'");
  if (!acyclic(g, f)) throw PreconditionError("edge set is not acyclic");
  EdgeSet cur = f;
  for (bool changed = true; changed;) {
    changed = false;
    auto d = degrees(g, cur);
    for (auto it = cur.begin(); it != cur.end();) {
      const auto& ep = g.core.endpoints(*it);
      bool leaf = (d[ep.u] == 1 && !g.rays_at(ep.u)) || (d[ep.v] == 1 && !g.rays_at(ep.v));
      if (leaf) {
        it = cur.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return cur;
}

bool verify_leafless(const RayedGraph& g, const EdgeSet& f) {
  for (const auto& e : f)
    if (!g.core.has_edge(e)) return false;
  if (!acyclic(g, f)) return false;
  for (const auto& [v, d] : degrees(g, f))
    if (d == 1 && !g.rays_at(v)) return false;
  for (const auto& b : components(edge_subgraph(g, f)).blocks)
    if (!b.edges.empty() && b.rays.size() < 3) return false;
  return true;
}

EdgeSet tree_through_edge(const RayedGraph& g, const EdgeId& e, const VertexSet& allowed_in) {
  const auto& ep = g.core.endpoints(e);
  if (ep.is_loop()) return {};
  auto allowed = all_vertices_or(g, allowed_in);
  if (!allowed.count(ep.u) || !allowed.count(ep.v)) return {};
  // Paths start at u and at v; they are internally disjoint, so the one through u avoids v.
  auto paths = paths_to_rays(g, {ep.u, ep.v}, allowed, {e}, 2);
  if (paths.size() < 2) return {};
  EdgeSet tree{e};
  for (const auto& p : paths) tree.insert(p.begin(), p.end());
  if (!complete_rays(g, tree, allowed)) return {};
  return tree;
}

ForestCover leafless_cover(const RayedGraph& g) {
  check_many_ended(g);
  ForestCover out;
  out.target = g.core.edge_ids();
  EdgeSet covered;
  while (covered != out.target) {
    EdgeSet packed;
    VertexSet used;
    for (const auto& e : out.target) {
      if (covered.count(e) || packed.count(e)) continue;
      const auto& ep = g.core.endpoints(e);
      if (used.count(ep.u) || used.count(ep.v)) continue;
      VertexSet allowed;
      for (const auto& v : g.core.vertices())
        if (!used.count(v)) allowed.insert(v);
      auto tree = tree_through_edge(g, e, allowed);
      if (tree.empty()) {
        if (packed.empty()) throw TheoremViolation("no leafless tree with three rays through '" + e + "'");
        continue;
      }
      packed.insert(tree.begin(), tree.end());
      auto vs = span(g.core, tree);
      used.insert(vs.begin(), vs.end());
    }
    EdgeOrder order(packed.begin(), packed.end());
    for (const auto& e : out.target)
      if (!packed.count(e)) order.push_back(e);
    auto forest = keep_many_rayed(g, prune_leafless(g, fmsf(g, order)));
    if (!std::includes(forest.begin(), forest.end(), packed.begin(), packed.end()))
      throw TheoremViolation("pruning removed an edge of a leafless tree");
    covered.insert(forest.begin(), forest.end());
    out.forests.push_back(std::move(forest));
  }
  return out;
}

std::string cover_kind_name(CoverKind k) {
  switch (k) {
    case CoverKind::Cycles:
      return "cycles";
    case CoverKind::Forest:
      return "forest";
    case CoverKind::Failed:
      return "failed";
  }
  return "?";
}

bool WedgeCover::ok() const {
  return std::none_of(parts.begin(), parts.end(), [](const WedgeClassCover& p) { return p.kind == CoverKind::Failed; });
}

std::size_t wedge_distance(const RayedGraph& g, const Wedge& a, const Wedge& b) {
  VertexSet target{b.center, b.endpoints.first, b.endpoints.second};
  std::map<VertexId, std::size_t> dist;
  std::queue<VertexId> q;
  for (const auto& v : {a.center, a.endpoints.first, a.endpoints.second})
    if (dist.emplace(v, 0).second) q.push(v);
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    if (target.count(v)) return dist[v];
    for (const auto& e : g.core.incident(v)) {
      const auto& w = g.core.endpoints(e).other(v);
      if (dist.emplace(w, dist[v] + 1).second) q.push(w);
    }
  }
  return static_cast<std::size_t>(-1);
}

std::vector<std::vector<Wedge>> far_apart_classes(const RayedGraph& g, std::vector<Wedge> ws, std::size_t separation) {
  std::sort(ws.begin(), ws.end());
  std::vector<std::vector<Wedge>> classes;
  for (const auto& w : ws) {
    bool placed = false;
    for (auto& c : classes) {
      if (std::all_of(c.begin(), c.end(), [&](const Wedge& o) { return wedge_distance(g, w, o) >= separation; })) {
        c.push_back(w);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({w});
  }
  return classes;
}

namespace {

// Cycle through x and y (or through x alone when x == y) inside `allowed`.
EdgeSet cycle_through(const RayedGraph& g, const VertexId& x, const VertexId& y, const VertexSet& allowed) {
  if (!allowed.count(x) || !allowed.count(y)) return {};
  if (x == y) {
    for (const auto& e : g.core.incident(x)) {
      const auto& w = g.core.endpoints(e).other(x);
      if (!allowed.count(w)) continue;
      if (w == x) return {e};
      // Shortest path from w back to x without e.
      std::map<VertexId, EdgeId> via;
      std::queue<VertexId> q;
      q.push(w);
      VertexSet seen{w};
      while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (const auto& f : g.core.incident(v)) {
          if (f == e) continue;
          const auto& u = g.core.endpoints(f).other(v);
          if (!allowed.count(u) || seen.count(u)) continue;
          via[u] = f;
          if (u == x) {
            EdgeSet cyc{e};
            for (VertexId at = x; at != w;) {
              cyc.insert(via.at(at));
              at = g.core.endpoints(via.at(at)).other(at);
            }
            return cyc;
          }
          seen.insert(u);
          q.push(u);
        }
      }
    }
    return {};
  }
  std::vector<VertexId> names(allowed.begin(), allowed.end());
  std::map<VertexId, int> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  std::vector<EdgeId> ids;
  for (const auto& [e, ep] : g.core.edges()) {
    if (ep.is_loop() || !idx.count(ep.u) || !idx.count(ep.v)) continue;
    edges.emplace_back(idx[ep.u], idx[ep.v]);
    ids.push_back(e);
  }
  auto paths = vertex_disjoint_paths(static_cast<int>(names.size()), edges, idx[x], idx[y], 2);
  if (paths.size() < 2) return {};
  EdgeSet cyc;
  for (const auto& p : paths)
    for (int k : p) cyc.insert(ids[k]);
  return cyc;
}

// A vertex outside span(F) is its own component of (V, F); with three rays it is leafless and
// many-ended, so it counts as covered without edges.
bool self_covered(const RayedGraph& g, const VertexId& v) { return g.rays_at(v) >= 3; }

// Tree containing every vertex of `required` with ray-carrying leaves and at least three rays
// per component, inside `allowed`. nullopt on failure; an empty set when every required vertex
// covers itself.
std::optional<EdgeSet> covering_tree(const RayedGraph& g, const std::vector<VertexId>& required,
                                     const VertexSet& allowed) {
  for (const auto& r : required)
    if (!allowed.count(r)) return std::nullopt;
  EdgeSet tree;
  auto extend_leaf = [&](const VertexId& leaf) {
    auto vs = span(g.core, tree);
    VertexSet room = allowed;
    for (const auto& v : vs)
      if (v != leaf) room.erase(v);
    auto p = branch_path(g, {leaf}, room, [&](const VertexId& v) { return g.rays_at(v) > 0; });
    if (p.empty()) return false;
    tree.insert(p.begin(), p.end());
    return true;
  };
  // Both endpoints on one path when they are joined inside `allowed`.
  if (required.size() == 2 && required[0] != required[1]) {
    auto p = branch_path(g, {required[0]}, allowed, [&](const VertexId& v) { return v == required[1]; });
    if (!p.empty()) {
      tree.insert(p.begin(), p.end());
      bool ok = true;
      for (const auto& end : required)
        if (!g.rays_at(end) && !extend_leaf(end)) ok = false;
      if (ok && complete_rays(g, tree, allowed)) return tree;
      tree.clear();
    }
  }
  // Otherwise each required vertex gets its own paths to rays, the later ones avoiding the
  // earlier trees.
  VertexSet room = allowed;
  for (const auto& r : required) {
    if (self_covered(g, r) || span(g.core, tree).count(r)) continue;
    const int need = g.rays_at(r) ? 1 : 2;
    auto paths = paths_to_rays(g, {r}, room, {}, need);
    if (static_cast<int>(paths.size()) < need) return std::nullopt;
    EdgeSet part;
    for (const auto& p : paths) part.insert(p.begin(), p.end());
    if (!complete_rays(g, part, room)) return std::nullopt;
    tree.insert(part.begin(), part.end());
    for (const auto& v : span(g.core, part)) room.erase(v);
  }
  return tree;
}

std::vector<std::string> check_wedges(const RayedGraph& g, const std::vector<Wedge>& ws) {
  std::vector<std::string> bad;
  for (const auto& w : ws) {
    if (!g.core.has_edge(w.left) || !g.core.has_edge(w.right) || w.left == w.right) {
      bad.push_back("wedge (" + w.left + ", " + w.right + ") does not name two edges");
      continue;
    }
    const auto& a = g.core.endpoints(w.left);
    const auto& b = g.core.endpoints(w.right);
    if (!a.touches(w.center) || !b.touches(w.center) || a.other(w.center) != w.endpoints.first ||
        b.other(w.center) != w.endpoints.second)
      bad.push_back("wedge (" + w.left + ", " + w.right + ") does not match its center and endpoints");
  }
  return bad;
}

}  // namespace

WedgeCover wedge_cover(const RayedGraph& g, const std::vector<Wedge>& wedge_class, std::size_t separation) {
  check_many_ended(g);
  if (auto bad = check_wedges(g, wedge_class); !bad.empty()) throw InputError(bad.front());
  std::string close;
  for (std::size_t i = 0; i < wedge_class.size(); ++i)
    for (std::size_t j = i + 1; j < wedge_class.size(); ++j)
      if (wedge_distance(g, wedge_class[i], wedge_class[j]) < separation)
        close += " (" + wedge_class[i].left + "," + wedge_class[i].right + ")~(" + wedge_class[j].left + "," +
                 wedge_class[j].right + ")";
  if (!close.empty()) throw PreconditionError("wedges closer than " + std::to_string(separation) + ":" + close);

  VertexSet centers;
  for (const auto& w : wedge_class) centers.insert(w.center);
  VertexSet free;
  for (const auto& v : g.core.vertices())
    if (!centers.count(v)) free.insert(v);

  WedgeClassCover cyc{CoverKind::Cycles, {}, {}, {}, {}};
  std::vector<Wedge> rest;
  VertexSet room = free;
  for (const auto& w : wedge_class) {
    auto c = cycle_through(g, w.endpoints.first, w.endpoints.second, room);
    if (c.empty()) {
      rest.push_back(w);
      continue;
    }
    for (const auto& v : span(g.core, c)) room.erase(v);
    cyc.wedges.push_back(w);
    cyc.cycles.push_back(std::move(c));
  }
  WedgeCover out;
  if (!cyc.wedges.empty()) out.parts.push_back(std::move(cyc));
  if (rest.empty()) return out;

  WedgeClassCover forest{CoverKind::Forest, rest, {}, {}, {}};
  // Vertex-disjoint trees first; independent trees merged through the forest otherwise.
  EdgeSet packed;
  VertexSet left = free;
  bool disjoint = true;
  for (const auto& w : rest) {
    auto t = covering_tree(g, {w.endpoints.first, w.endpoints.second}, left);
    if (!t) {
      disjoint = false;
      break;
    }
    packed.insert(t->begin(), t->end());
    for (const auto& v : span(g.core, *t)) left.erase(v);
  }
  if (!disjoint) {
    packed.clear();
    for (const auto& w : rest) {
      auto t = covering_tree(g, {w.endpoints.first, w.endpoints.second}, free);
      if (!t) {
        forest.kind = CoverKind::Failed;
        forest.failure = "no leafless tree through the endpoints of (" + w.left + ", " + w.right + ") avoids the centers";
        out.parts.push_back(std::move(forest));
        return out;
      }
      packed.insert(t->begin(), t->end());
    }
  }
  auto sub = induced_subgraph(g, free);
  EdgeOrder order;
  {
    // Tree edges first, in the sorted order; the union may hold cycles in the merged case.
    for (const auto& e : packed) order.push_back(e);
    for (const auto& [e, ep] : sub.core.edges())
      if (!packed.count(e)) order.push_back(e);
  }
  auto f = keep_many_rayed(sub, prune_leafless(sub, fmsf(sub, order)));
  auto covered = span(g.core, f);
  for (const auto& w : rest)
    for (const auto& v : {w.endpoints.first, w.endpoints.second})
      if (!covered.count(v) && !self_covered(g, v)) {
        forest.kind = CoverKind::Failed;
        forest.failure = "forest misses endpoint '" + v + "'";
      }
  if (forest.kind != CoverKind::Failed && !verify_leafless(g, f)) {
    forest.kind = CoverKind::Failed;
    forest.failure = "forest is not leafless with three rays per component";
  }
  forest.forest = std::move(f);
  out.parts.push_back(std::move(forest));
  return out;
}

std::vector<std::string> verify_wedge_cover(const RayedGraph& g, const WedgeCover& c) {
  std::vector<std::string> out;
  VertexSet centers;
  for (const auto& p : c.parts)
    for (const auto& w : p.wedges) centers.insert(w.center);
  auto avoid = [&](const EdgeSet& es, const std::string& what) {
    for (const auto& v : span(g.core, es))
      if (centers.count(v)) out.push_back(what + " passes through center '" + v + "'");
  };
  for (const auto& p : c.parts) {
    if (p.kind == CoverKind::Failed) {
      out.push_back("class part failed: " + p.failure);
      continue;
    }
    if (p.kind == CoverKind::Cycles) {
      if (p.cycles.size() != p.wedges.size()) out.push_back("cycle list does not match the wedges");
      VertexSet used;
      for (std::size_t i = 0; i < p.cycles.size() && i < p.wedges.size(); ++i) {
        const auto& cyc = p.cycles[i];
        auto vs = span(g.core, cyc);
        auto d = degrees(g, cyc);
        bool is_cyc = !cyc.empty() && components(edge_subgraph(g, cyc)).blocks.size() == 1;
        for (const auto& e : cyc)
          if (g.core.endpoints(e).is_loop()) is_cyc = cyc.size() == 1;
        if (cyc.size() > 1)
          for (const auto& [v, k] : d)
            if (k != 2) is_cyc = false;
        if (!is_cyc) out.push_back("cycle " + std::to_string(i) + " is not a cycle");
        if (!vs.count(p.wedges[i].endpoints.first) || !vs.count(p.wedges[i].endpoints.second))
          out.push_back("cycle " + std::to_string(i) + " misses an endpoint");
        avoid(cyc, "cycle " + std::to_string(i));
        for (const auto& v : vs)
          if (!used.insert(v).second) out.push_back("cycles share vertex '" + v + "'");
      }
    } else {
      if (!verify_leafless(g, p.forest)) out.push_back("forest is not leafless with three rays per component");
      auto vs = span(g.core, p.forest);
      for (const auto& w : p.wedges)
        if ((!vs.count(w.endpoints.first) && !self_covered(g, w.endpoints.first)) ||
            (!vs.count(w.endpoints.second) && !self_covered(g, w.endpoints.second)))
          out.push_back("forest misses an endpoint of (" + w.left + ", " + w.right + ")");
      avoid(p.forest, "forest");
    }
  }
  return out;
}

Json cover_to_json(const ForestCover& c) {
  Json j;
  j["target"] = edge_set_to_json(c.target);
  j["forests"] = Json::array();
  for (const auto& f : c.forests) j["forests"].push_back(edge_set_to_json(f));
  return j;
}

Json wedge_cover_to_json(const WedgeCover& c) {
  Json j = Json::array();
  for (const auto& p : c.parts) {
    Json o;
    o["kind"] = cover_kind_name(p.kind);
    o["wedges"] = Json::array();
    for (const auto& w : p.wedges)
      o["wedges"].push_back({{"left", w.left}, {"center", w.center}, {"right", w.right},
                             {"endpoints", {w.endpoints.first, w.endpoints.second}}});
    if (p.kind == CoverKind::Cycles) {
      o["cycles"] = Json::array();
      for (const auto& cyc : p.cycles) o["cycles"].push_back(edge_set_to_json(cyc));
    } else if (p.kind == CoverKind::Forest) {
      o["forest"] = edge_set_to_json(p.forest);
    } else {
      o["failure"] = p.failure;
    }
    j.push_back(std::move(o));
  }
  return j;
}

}  // namespace whitney
