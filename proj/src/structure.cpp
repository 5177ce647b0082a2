#include "whitney/structure.hpp"

#include <algorithm>
#include <queue>
#include <random>

#include "whitney/enumerate.hpp"
#include "whitney/flow.hpp"
#include "whitney/indexed.hpp"

namespace whitney {

namespace {

bool vertices_connected(const RayedGraph& g, const VertexSet& a) {
  if (a.empty()) return false;
  VertexSet seen{*a.begin()};
  std::vector<VertexId> stack{*a.begin()};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& e : g.core.incident(v)) {
      const auto& w = g.core.endpoints(e).other(v);
      if (a.count(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == a.size();
}

// Component of g holding `start`.
VertexSet component_of(const RayedGraph& g, const VertexId& start) {
  VertexSet seen{start};
  std::vector<VertexId> stack{start};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& e : g.core.incident(v)) {
      const auto& w = g.core.endpoints(e).other(v);
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen;
}

}  // namespace

Sides sides_of_vertices(const RayedGraph& g, const VertexSet& a) {
  for (const auto& v : a)
    if (!g.core.has_vertex(v)) throw InputError("unknown vertex id '" + v + "'");
  if (!vertices_connected(g, a)) throw PreconditionError("set is empty or not connected");
  Sides out;
  for (const auto& v : a) out.boundary_rays += g.rays_at(v);
  VertexSet comp = component_of(g, *a.begin());
  VertexSet seen = a;
  for (const auto& s : comp) {
    if (seen.count(s)) continue;
    VertexSet side{s};
    seen.insert(s);
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& e : g.core.incident(v)) {
        const auto& w = g.core.endpoints(e).other(v);
        if (!seen.count(w)) {
          seen.insert(w);
          side.insert(w);
          stack.push_back(w);
        }
      }
    }
    bool rayed = std::any_of(side.begin(), side.end(), [&](const VertexId& v) { return g.rays_at(v) > 0; });
    (rayed ? out.infinite : out.finite).push_back(std::move(side));
  }
  return out;
}

Sides sides_of_edges(const RayedGraph& g, const EdgeSet& a) {
  for (const auto& e : a)
    if (!g.core.has_edge(e)) throw InputError("unknown edge id '" + e + "'");
  if (a.empty()) throw PreconditionError("furcation edge set is empty");
  if (components(edge_subgraph(g, a)).blocks.size() != 1)
    throw PreconditionError("furcation edge set is not connected");
  return sides_of_vertices(g, span(g.core, a));
}

bool is_n_furcation(const RayedGraph& g, const EdgeSet& a, std::size_t n) {
  return sides_of_edges(g, a).infinite_count() >= n;
}

bool is_vertex_n_furcation(const RayedGraph& g, const VertexSet& a, std::size_t n) {
  return sides_of_vertices(g, a).infinite_count() >= n;
}

std::vector<Furcation> maximal_disjoint_trifurcations(const RayedGraph& g,
                                                      const std::vector<VertexId>& ordering,
                                                      std::size_t size_cap) {
  IndexedGraph ig(g);
  if (ig.n() > 64) throw PreconditionError("trifurcation search supports at most 64 vertices");
  std::vector<int> rank(ig.n());
  if (ordering.empty()) {
    for (int v = 0; v < ig.n(); ++v) rank[v] = v;
  } else {
    if (ordering.size() != static_cast<std::size_t>(ig.n()))
      throw InputError("ordering must list every vertex once");
    std::vector<char> hit(ig.n(), 0);
    for (std::size_t i = 0; i < ordering.size(); ++i) {
      int v = ig.vertex(ordering[i]);
      if (hit[v]) throw InputError("ordering lists '" + ordering[i] + "' twice");
      hit[v] = 1;
      rank[v] = static_cast<int>(i);
    }
  }
  auto to_set = [&](Mask m) {
    VertexSet s;
    for (Mask r = m; r; r &= r - 1) s.insert(ig.vnames[__builtin_ctzll(r)]);
    return s;
  };
  std::vector<std::pair<std::vector<int>, Mask>> cands;
  for_each_connected_set(vertex_adjacency(ig), static_cast<int>(size_cap), [&](Mask m) {
    if (is_vertex_n_furcation(g, to_set(m), 3)) {
      std::vector<int> key{popcount(m)};
      std::vector<int> ranks;
      for (Mask r = m; r; r &= r - 1) ranks.push_back(rank[__builtin_ctzll(r)]);
      std::sort(ranks.begin(), ranks.end());
      key.insert(key.end(), ranks.begin(), ranks.end());
      cands.emplace_back(std::move(key), m);
    }
    return Visit::Continue;
  });
  std::sort(cands.begin(), cands.end());
  std::vector<Furcation> out;
  Mask used = 0;
  for (const auto& [key, m] : cands) {
    if (m & used) continue;
    used |= m;
    auto vs = to_set(m);
    out.push_back({vs, induced_edges(g.core, vs)});
  }
  return out;
}

CellPartition voronoi_cells(const RayedGraph& g, const std::vector<Furcation>& seeds) {
  if (seeds.empty()) throw PreconditionError("no seeds");
  std::map<VertexId, std::size_t> owner;
  std::map<VertexId, std::size_t> dist;
  std::queue<VertexId> q;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (const auto& v : seeds[i].vertices) {
      if (!g.core.has_vertex(v)) throw InputError("unknown vertex id '" + v + "'");
      if (owner.count(v)) throw PreconditionError("seeds overlap at '" + v + "'");
      owner[v] = i;
      dist[v] = 0;
      q.push(v);
    }
  // Breadth-first layers; a vertex reached at equal distance keeps the smallest seed index.
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (const auto& e : g.core.incident(v)) {
      const auto& w = g.core.endpoints(e).other(v);
      auto it = dist.find(w);
      if (it == dist.end()) {
        dist[w] = dist[v] + 1;
        owner[w] = owner[v];
        q.push(w);
      } else if (it->second == dist[v] + 1 && owner[v] < owner[w]) {
        owner[w] = owner[v];
      }
    }
  }
  CellPartition out;
  auto cell_name = [&](std::size_t i) { return "cell" + std::to_string(i); };
  for (const auto& v : g.core.vertices()) {
    auto it = owner.find(v);
    if (it == owner.end()) throw PreconditionError("vertex '" + v + "' reaches no seed");
    out.cells[cell_name(it->second)].insert(v);
    out.cell_of[v] = cell_name(it->second);
  }
  for (const auto& [name, vs] : out.cells) {
    if (!vertices_connected(g, vs)) throw TheoremViolation(name + " is not connected");
    if (!is_vertex_n_furcation(g, vs, 3)) throw TheoremViolation(name + " is not a trifurcation");
    out.quotient.core.add_vertex(name);
  }
  for (const auto& [e, ep] : g.core.edges()) {
    const auto& a = out.cell_of.at(ep.u);
    const auto& b = out.cell_of.at(ep.v);
    if (a != b) out.quotient.core.add_edge(e, a, b);
  }
  for (const auto& [r, at] : g.rays) out.quotient.add_ray(r, out.cell_of.at(at));
  return out;
}

VertexSet banana_boundary(const RayedGraph& g, const EdgeSet& b) {
  VertexSet out;
  for (const auto& v : span(g.core, b)) {
    if (g.rays_at(v)) {
      out.insert(v);
      continue;
    }
    for (const auto& e : g.core.incident(v))
      if (!b.count(e)) {
        out.insert(v);
        break;
      }
  }
  return out;
}

bool is_banana(const RayedGraph& g, const EdgeSet& b) {
  if (b.empty()) return false;
  if (components(edge_subgraph(g, b)).blocks.size() != 1) return false;
  return banana_boundary(g, b).size() == 2;
}

namespace {

void check_banana_hypotheses(const RayedGraph& g) {
  for (const auto& [e, ep] : g.core.edges())
    if (ep.is_loop()) throw PreconditionError("loop '" + e + "' lies in no banana");
  for (const auto& blk : components(g).blocks)
    if (blk.rays.size() < 3)
      throw PreconditionError("component at '" + *blk.vertices.begin() + "' has fewer than 3 rays");
  auto rep = is_weakly_n_connected(g, 2);
  if (!rep.holds)
    throw PreconditionError("not weakly 2-connected: removing '" + *rep.removed.begin() +
                            "' leaves a ray-free component");
}

// All edges of ray-free components of g - {p,q}, their attachments, and the p-q edges.
EdgeSet pair_union(const IndexedGraph& ig, int p, int q) {
  std::vector<int> comp(ig.n(), -1);
  comp[p] = comp[q] = -2;
  std::vector<char> ray_free;
  for (int s = 0; s < ig.n(); ++s) {
    if (comp[s] != -1) continue;
    int id = static_cast<int>(ray_free.size());
    bool free = true;
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (ig.rays[v]) free = false;
      for (const auto& a : ig.adj[v])
        if (comp[a.to] == -1) {
          comp[a.to] = id;
          stack.push_back(a.to);
        }
    }
    ray_free.push_back(free);
  }
  std::vector<int> idx;
  for (int k = 0; k < ig.m(); ++k) {
    int a = ig.eu[k], b = ig.ev[k];
    int c = comp[a] >= 0 ? comp[a] : comp[b];
    if (c >= 0 ? ray_free[c] : ((a == p && b == q) || (a == q && b == p))) idx.push_back(k);
  }
  return ig.edges_of(idx);
}

}  // namespace

BananaDecomposition enumerate_maximal_bananas(const RayedGraph& g, std::uint64_t shuffle_seed) {
  check_banana_hypotheses(g);
  IndexedGraph ig(g);
  // Seeds: every edge, and for every vertex pair the union of what hangs between them.
  std::vector<EdgeSet> seeds;
  for (const auto& e : ig.enames) seeds.push_back({e});
  for (int p = 0; p < ig.n(); ++p)
    for (int q = p + 1; q < ig.n(); ++q) {
      auto u = pair_union(ig, p, q);
      if (u.size() > 1 && is_banana(g, u)) seeds.push_back(std::move(u));
    }
  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle_seed) std::shuffle(order.begin(), order.end(), std::mt19937_64(shuffle_seed));

  // Overlapping bananas merge into a banana; merge to a fixpoint.
  std::vector<EdgeSet> classes;
  for (std::size_t i : order) {
    EdgeSet cur = seeds[i];
    bool merged = true;
    while (merged) {
      merged = false;
      for (std::size_t j = 0; j < classes.size(); ++j) {
        bool overlap = std::any_of(cur.begin(), cur.end(), [&](const EdgeId& e) { return classes[j].count(e); });
        if (!overlap) continue;
        cur.insert(classes[j].begin(), classes[j].end());
        classes.erase(classes.begin() + static_cast<long>(j));
        if (!is_banana(g, cur)) throw TheoremViolation("union of overlapping bananas is not a banana");
        merged = true;
        break;
      }
    }
    classes.push_back(std::move(cur));
  }
  BananaDecomposition out;
  for (auto& c : classes) {
    auto bd = banana_boundary(g, c);
    Banana b{"banana:" + *c.begin(), std::move(c), {*bd.begin(), *bd.rbegin()}};
    out.bananas.push_back(std::move(b));
  }
  std::sort(out.bananas.begin(), out.bananas.end(), [](const Banana& a, const Banana& b) { return a.id < b.id; });
  for (const auto& b : out.bananas) {
    for (const auto& e : b.edges) out.banana_of[e] = b.id;
    out.quotient.core.add_vertex(b.boundary.first);
    out.quotient.core.add_vertex(b.boundary.second);
  }
  for (const auto& b : out.bananas) out.quotient.core.add_edge(b.id, b.boundary.first, b.boundary.second);
  for (const auto& [r, at] : g.rays) {
    // An edgeless vertex lies in no banana and stays a vertex of the quotient.
    if (g.core.degree(at) == 0) out.quotient.core.add_vertex(at);
    if (!out.quotient.core.has_vertex(at)) throw TheoremViolation("ray vertex '" + at + "' is not a boundary");
    out.quotient.add_ray(r, at);
  }
  return out;
}

bool check_ban_weakly_3_connected(const BananaDecomposition& d) {
  for (const auto& blk : components(d.quotient).blocks)
    if (blk.rays.empty()) return false;
  return is_weakly_n_connected(d.quotient, 3).holds;
}

std::vector<EdgeId> path_through_edge_in_banana(const RayedGraph& g, const BananaDecomposition& d,
                                                const std::string& b, const EdgeId& e) {
  auto it = std::find_if(d.bananas.begin(), d.bananas.end(), [&](const Banana& x) { return x.id == b; });
  if (it == d.bananas.end()) throw InputError("unknown banana id '" + b + "'");
  if (!it->edges.count(e)) throw InputError("edge '" + e + "' is not in banana '" + b + "'");
  // Auxiliary graph: e subdivided by v_e, plus v_inf joined to both boundary vertices.
  std::map<VertexId, int> index;
  for (const auto& v : span(g.core, it->edges)) index.emplace(v, static_cast<int>(index.size()));
  const int ve = static_cast<int>(index.size()), vinf = ve + 1;
  std::vector<std::pair<int, int>> edges;
  std::vector<EdgeId> label;
  const auto& ep = g.core.endpoints(e);
  for (const auto& f : it->edges) {
    if (f == e) continue;
    const auto& fp = g.core.endpoints(f);
    edges.emplace_back(index.at(fp.u), index.at(fp.v));
    label.push_back(f);
  }
  edges.emplace_back(index.at(ep.u), ve);
  label.push_back(e);
  edges.emplace_back(ve, index.at(ep.v));
  label.push_back(e);
  edges.emplace_back(index.at(it->boundary.first), vinf);
  label.push_back("");
  edges.emplace_back(index.at(it->boundary.second), vinf);
  label.push_back("");
  auto paths = vertex_disjoint_paths(vinf + 1, edges, ve, vinf, 2);
  if (paths.size() != 2) throw TheoremViolation("no boundary path through '" + e + "' in " + b);
  // Each path runs v_e -> ... -> boundary -> v_inf; join them at v_e.
  auto boundary_end = [&](const std::vector<int>& p) {
    int k = p.back();
    return edges[k].first == vinf ? edges[k].second : edges[k].first;
  };
  std::vector<int> first = paths[0], second = paths[1];
  if (boundary_end(first) != index.at(it->boundary.first)) std::swap(first, second);
  std::vector<EdgeId> out;
  // Halves of e: first[0] and second[0]; only the first is kept.
  for (auto k = first.rbegin() + 1; k != first.rend(); ++k) out.push_back(label[*k]);
  for (std::size_t i = 1; i + 1 < second.size(); ++i) out.push_back(label[second[i]]);
  return out;
}

}  // namespace whitney
