#pragma once

// Brute-force reference computations for the tests. None of them calls into the library
// beyond the plain graph containers, so they are independent of the routes they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "whitney/graph.hpp"

namespace oracle {

using whitney::EdgeId;
using whitney::EdgeSet;
using whitney::RayedGraph;
using whitney::VertexId;
using whitney::VertexSet;

// Components of (V, f) by breadth-first search.
inline std::vector<VertexSet> bfs_components(const RayedGraph& g, const EdgeSet& f) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& e : f) {
    const auto& ep = g.core.endpoints(e);
    adj[ep.u].push_back(ep.v);
    adj[ep.v].push_back(ep.u);
  }
  std::set<VertexId> seen;
  std::vector<VertexSet> out;
  for (const auto& s : g.core.vertices()) {
    if (seen.count(s)) continue;
    VertexSet comp;
    std::queue<VertexId> q;
    q.push(s);
    seen.insert(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      comp.insert(v);
      for (const auto& w : adj[v])
        if (seen.insert(w).second) q.push(w);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::size_t rays_in(const RayedGraph& g, const VertexSet& vs) {
  std::size_t k = 0;
  for (const auto& [r, at] : g.rays)
    if (vs.count(at)) ++k;
  return k;
}

// |V| minus the ray-free components of (V, f).
inline std::size_t rank(const RayedGraph& g, const EdgeSet& f) {
  std::size_t ray_free = 0;
  for (const auto& c : bfs_components(g, f))
    if (rays_in(g, c) == 0) ++ray_free;
  return g.core.vertex_count() - ray_free;
}

// Graphic rank by a local union-find: number of successful unions.
inline std::size_t union_find_rank(const RayedGraph& g, const EdgeSet& f) {
  std::map<VertexId, VertexId> parent;
  for (const auto& v : g.core.vertices()) parent[v] = v;
  std::function<VertexId(const VertexId&)> find = [&](const VertexId& x) -> VertexId {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t joins = 0;
  for (const auto& e : f) {
    const auto& ep = g.core.endpoints(e);
    auto a = find(ep.u), b = find(ep.v);
    if (a != b) {
      parent[a] = b;
      ++joins;
    }
  }
  return joins;
}

// |E(C)| = |V(C)| - 1 for every component.
inline bool acyclic(const RayedGraph& g, const EdgeSet& f) {
  for (const auto& c : bfs_components(g, f)) {
    std::size_t edges = 0;
    for (const auto& e : f)
      if (c.count(g.core.endpoints(e).u)) ++edges;
    if (edges + 1 != c.size()) return false;
  }
  return true;
}

// Every component with an edge of f has at most two rays.
inline bool tame(const RayedGraph& g, const EdgeSet& f) {
  auto vs = whitney::span(g.core, f);
  for (const auto& c : bfs_components(g, f))
    if (vs.count(*c.begin()) && rays_in(g, c) > 2) return false;
  return true;
}

// Simple cycle: connected, nonempty, every vertex of the span has degree two (loops count
// twice).
inline bool is_cycle(const RayedGraph& g, const EdgeSet& f) {
  if (f.empty()) return false;
  std::map<VertexId, int> deg;
  for (const auto& e : f) {
    const auto& ep = g.core.endpoints(e);
    ++deg[ep.u];
    ++deg[ep.v];
  }
  for (const auto& [v, d] : deg)
    if (d != 2) return false;
  std::size_t nonempty = 0;
  for (const auto& c : bfs_components(g, f))
    if (deg.count(*c.begin())) ++nonempty;
  return nonempty == 1;
}

inline std::vector<EdgeId> edge_list(const RayedGraph& g) {
  std::vector<EdgeId> out;
  for (const auto& [e, ep] : g.core.edges()) out.push_back(e);
  return out;
}

inline EdgeSet subset(const std::vector<EdgeId>& es, std::uint64_t mask) {
  EdgeSet out;
  for (std::size_t i = 0; i < es.size(); ++i)
    if (mask >> i & 1) out.insert(es[i]);
  return out;
}

// Reverse delete: walk the order from the largest edge down and drop an edge whenever its
// endpoints stay joined without it.
inline EdgeSet reverse_delete_forest(const RayedGraph& g, const std::vector<EdgeId>& order) {
  EdgeSet kept(order.begin(), order.end());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& ep = g.core.endpoints(*it);
    EdgeSet without = kept;
    without.erase(*it);
    bool joined = false;
    for (const auto& c : bfs_components(g, without))
      if (c.count(ep.u)) joined = c.count(ep.v) != 0;
    if (joined) kept = without;
  }
  return kept;
}

// Vertices of V(B) touching an edge outside B or carrying a ray.
inline VertexSet boundary(const RayedGraph& g, const EdgeSet& b) {
  VertexSet vs = whitney::span(g.core, b), out;
  for (const auto& v : vs) {
    if (g.rays_at(v)) out.insert(v);
    for (const auto& [e, ep] : g.core.edges())
      if (!b.count(e) && ep.touches(v)) out.insert(v);
  }
  return out;
}

inline bool connected_edges(const RayedGraph& g, const EdgeSet& b) {
  if (b.empty()) return false;
  auto vs = whitney::span(g.core, b);
  std::size_t n = 0;
  for (const auto& c : bfs_components(g, b))
    if (vs.count(*c.begin())) ++n;
  return n == 1;
}

// Maximal bananas by exhaustion over all edge subsets (at most 20 edges).
inline std::set<EdgeSet> maximal_bananas(const RayedGraph& g) {
  auto es = edge_list(g);
  std::vector<EdgeSet> all;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << es.size()); ++m) {
    auto b = subset(es, m);
    if (connected_edges(g, b) && boundary(g, b).size() == 2) all.push_back(std::move(b));
  }
  std::set<EdgeSet> out;
  for (const auto& b : all) {
    bool maximal = true;
    for (const auto& c : all)
      if (c.size() > b.size() && std::includes(c.begin(), c.end(), b.begin(), b.end())) {
        maximal = false;
        break;
      }
    if (maximal) out.insert(b);
  }
  return out;
}

// Removing any n-1 vertices leaves every component with a ray.
inline bool weakly_n_connected(const RayedGraph& g, std::size_t n) {
  std::vector<VertexId> vs(g.core.vertices().begin(), g.core.vertices().end());
  const std::size_t k = n - 1;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() <= k) {
      VertexSet removed;
      for (auto i : pick) removed.insert(vs[i]);
      VertexSet keep;
      for (const auto& v : vs)
        if (!removed.count(v)) keep.insert(v);
      auto sub = whitney::induced_subgraph(g, keep);
      for (const auto& c : bfs_components(sub, sub.core.edge_ids()))
        if (rays_in(sub, c) == 0) return false;
    }
    if (pick.size() == k) return true;
    for (std::size_t i = from; i < vs.size(); ++i) {
      pick.push_back(i);
      bool ok = rec(i + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

// Every vertex bijection g -> h preserving edges with multiplicity and ray counts; as edge
// maps when both graphs are simple.
inline std::vector<std::map<EdgeId, EdgeId>> simple_graph_automorphism_edge_maps(const RayedGraph& g,
                                                                                  const RayedGraph& h) {
  std::vector<VertexId> a(g.core.vertices().begin(), g.core.vertices().end());
  std::vector<VertexId> b(h.core.vertices().begin(), h.core.vertices().end());
  std::vector<std::map<EdgeId, EdgeId>> out;
  if (a.size() != b.size() || g.core.edge_count() != h.core.edge_count()) return out;
  std::map<std::pair<VertexId, VertexId>, EdgeId> hb;
  for (const auto& [e, ep] : h.core.edges()) hb[{ep.u, ep.v}] = e;
  std::sort(b.begin(), b.end());
  do {
    std::map<VertexId, VertexId> psi;
    for (std::size_t i = 0; i < a.size(); ++i) psi[a[i]] = b[i];
    bool ok = true;
    for (const auto& v : a)
      if (g.rays_at(v) != h.rays_at(psi[v])) ok = false;
    std::map<EdgeId, EdgeId> mp;
    for (const auto& [e, ep] : g.core.edges()) {
      if (!ok) break;
      auto x = psi[ep.u], y = psi[ep.v];
      if (x > y) std::swap(x, y);
      auto it = hb.find({x, y});
      if (it == hb.end()) ok = false;
      else mp[e] = it->second;
    }
    if (ok) out.push_back(std::move(mp));
  } while (std::next_permutation(b.begin(), b.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Cycles and tameness preserved in both directions, over every subset (at most 20 edges).
inline bool weak_iso(const RayedGraph& g, const RayedGraph& h, const std::map<EdgeId, EdgeId>& phi) {
  auto es = edge_list(g);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << es.size()); ++m) {
    auto x = subset(es, m);
    EdgeSet y;
    for (const auto& e : x) y.insert(phi.at(e));
    if (is_cycle(g, x) != is_cycle(h, y) || tame(g, x) != tame(h, y)) return false;
  }
  return true;
}

// Largest acyclic tame subset, by exhaustion over the subsets of f.
inline std::size_t forest_rank(const RayedGraph& g, const EdgeSet& f) {
  std::vector<EdgeId> es(f.begin(), f.end());
  std::size_t best = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << es.size()); ++m) {
    auto x = subset(es, m);
    if (x.size() > best && acyclic(g, x) && tame(g, x)) best = x.size();
  }
  return best;
}

// Multigraph isomorphism with ray counts by plain backtracking over vertex assignments.
inline bool isomorphic(const whitney::Multigraph& g, const whitney::Multigraph& h, const RayedGraph* gr = nullptr,
                       const RayedGraph* hr = nullptr) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  std::vector<VertexId> a(g.vertices().begin(), g.vertices().end());
  std::vector<VertexId> b(h.vertices().begin(), h.vertices().end());
  auto mult = [](const whitney::Multigraph& m) {
    std::map<std::pair<VertexId, VertexId>, int> out;
    for (const auto& [e, ep] : m.edges()) ++out[{ep.u, ep.v}];
    return out;
  };
  auto ma = mult(g), mb = mult(h);
  auto count = [](const std::map<std::pair<VertexId, VertexId>, int>& m, VertexId x, VertexId y) {
    if (x > y) std::swap(x, y);
    auto it = m.find({x, y});
    return it == m.end() ? 0 : it->second;
  };
  std::map<VertexId, VertexId> psi;
  std::set<VertexId> used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) return true;
    const auto& v = a[i];
    for (const auto& w : b) {
      if (used.count(w) || g.degree(v) != h.degree(w)) continue;
      if (gr && hr && gr->rays_at(v) != hr->rays_at(w)) continue;
      bool ok = count(ma, v, v) == count(mb, w, w);
      for (std::size_t j = 0; j < i && ok; ++j) ok = count(ma, v, a[j]) == count(mb, w, psi[a[j]]);
      if (!ok) continue;
      psi[v] = w;
      used.insert(w);
      if (rec(i + 1)) return true;
      used.erase(w);
    }
    return false;
  };
  return rec(0);
}

}  // namespace oracle
