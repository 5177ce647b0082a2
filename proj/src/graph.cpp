#include "whitney/graph.hpp"

#include <algorithm>
#include <functional>

#include "whitney/indexed.hpp"

namespace whitney {

Endpoints::Endpoints(VertexId a, VertexId b) : u(std::move(a)), v(std::move(b)) {
  if (v < u) std::swap(u, v);
}

void Multigraph::add_vertex(const VertexId& v) {
  if (v.empty()) throw InputError("empty vertex id");
  vertices_.insert(v);
}

void Multigraph::add_edge(const EdgeId& e, const VertexId& u, const VertexId& v) {
  if (e.empty()) throw InputError("empty edge id");
  if (edges_.count(e)) throw InputError("duplicate edge id '" + e + "'");
  if (!has_vertex(u) || !has_vertex(v))
    throw InputError("edge '" + e + "' has an undeclared endpoint");
  edges_.emplace(e, Endpoints(u, v));
}

void Multigraph::remove_edge(const EdgeId& e) {
  if (!edges_.erase(e)) throw InputError("unknown edge id '" + e + "'");
}

void Multigraph::remove_vertex(const VertexId& v) {
  if (!has_vertex(v)) throw InputError("unknown vertex id '" + v + "'");
  for (const auto& [id, ep] : edges_)
    if (ep.touches(v)) throw InputError("vertex '" + v + "' still carries edge '" + id + "'");
  vertices_.erase(v);
}

void Multigraph::set_endpoints(const EdgeId& e, const VertexId& u, const VertexId& v) {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw InputError("unknown edge id '" + e + "'");
  if (!has_vertex(u) || !has_vertex(v))
    throw InputError("edge '" + e + "' re-attached to an undeclared vertex");
  it->second = Endpoints(u, v);
}

const Endpoints& Multigraph::endpoints(const EdgeId& e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw InputError("unknown edge id '" + e + "'");
  return it->second;
}

EdgeSet Multigraph::edge_ids() const {
  EdgeSet out;
  for (const auto& kv : edges_) out.insert(out.end(), kv.first);
  return out;
}

std::vector<EdgeId> Multigraph::incident(const VertexId& v) const {
  std::vector<EdgeId> out;
  for (const auto& [id, ep] : edges_)
    if (ep.touches(v)) out.push_back(id);
  return out;
}

std::size_t Multigraph::degree(const VertexId& v) const {
  std::size_t d = 0;
  for (const auto& kv : edges_) {
    if (kv.second.u == v) ++d;
    if (kv.second.v == v) ++d;
  }
  return d;
}

void RayedGraph::add_ray(const RayId& r, const VertexId& at) {
  if (r.empty()) throw InputError("empty ray id");
  if (rays.count(r)) throw InputError("duplicate ray id '" + r + "'");
  if (!core.has_vertex(at)) throw InputError("ray '" + r + "' attached to undeclared vertex");
  rays.emplace(r, at);
}

std::size_t RayedGraph::rays_at(const VertexId& v) const {
  std::size_t c = 0;
  for (const auto& kv : rays)
    if (kv.second == v) ++c;
  return c;
}

VertexSet RayedGraph::ray_vertices() const {
  VertexSet out;
  for (const auto& kv : rays) out.insert(kv.second);
  return out;
}

RayedGraph rayless(Multigraph g) {
  RayedGraph r;
  r.core = std::move(g);
  return r;
}

std::size_t ComponentPartition::block_of(const VertexId& v) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].vertices.count(v)) return i;
  throw InputError("vertex '" + v + "' not in partition");
}

IndexedGraph::IndexedGraph(const RayedGraph& g) {
  vnames.assign(g.core.vertices().begin(), g.core.vertices().end());
  for (int i = 0; i < n(); ++i) vindex.emplace(vnames[i], i);
  rays.assign(vnames.size(), 0);
  for (const auto& kv : g.rays) ++rays[vindex.at(kv.second)];
  adj.resize(vnames.size());
  for (const auto& [id, ep] : g.core.edges()) {
    int k = static_cast<int>(enames.size());
    enames.push_back(id);
    eindex.emplace(id, k);
    int a = vindex.at(ep.u), b = vindex.at(ep.v);
    eu.push_back(a);
    ev.push_back(b);
    adj[a].push_back({k, b});
    if (a != b) adj[b].push_back({k, a});
  }
}

int IndexedGraph::vertex(const VertexId& v) const {
  auto it = vindex.find(v);
  if (it == vindex.end()) throw InputError("unknown vertex id '" + v + "'");
  return it->second;
}

int IndexedGraph::edge(const EdgeId& e) const {
  auto it = eindex.find(e);
  if (it == eindex.end()) throw InputError("unknown edge id '" + e + "'");
  return it->second;
}

Mask IndexedGraph::mask_of(const EdgeSet& es) const {
  Mask mask = 0;
  for (const auto& e : es) mask |= Mask{1} << edge(e);
  return mask;
}

EdgeSet IndexedGraph::edges_of(Mask mask) const {
  EdgeSet out;
  for (int i = 0; i < m(); ++i)
    if (mask >> i & 1) out.insert(out.end(), enames[i]);
  return out;
}

EdgeSet IndexedGraph::edges_of(const std::vector<int>& idx) const {
  EdgeSet out;
  for (int i : idx) out.insert(enames[i]);
  return out;
}

ComponentPartition components(const RayedGraph& g, const EdgeSet& restrict) {
  IndexedGraph ig(g);
  UnionFind uf(ig.vnames.size());
  std::vector<int> chosen;
  for (const auto& e : restrict) {
    int k = ig.edge(e);
    chosen.push_back(k);
    uf.unite(ig.eu[k], ig.ev[k]);
  }
  std::map<std::size_t, std::size_t> root_to_block;
  ComponentPartition out;
  for (int v = 0; v < ig.n(); ++v) {
    auto r = uf.find(v);
    auto [it, fresh] = root_to_block.emplace(r, out.blocks.size());
    if (fresh) out.blocks.emplace_back();
    out.blocks[it->second].vertices.insert(ig.vnames[v]);
  }
  for (int k : chosen) out.blocks[root_to_block.at(uf.find(ig.eu[k]))].edges.insert(ig.enames[k]);
  for (const auto& [rid, at] : g.rays)
    out.blocks[root_to_block.at(uf.find(ig.vertex(at)))].rays.insert(rid);
  return out;
}

ComponentPartition components(const RayedGraph& g) { return components(g, g.core.edge_ids()); }

std::size_t end_count(const RayedGraph&, const Block& block) { return block.rays.size(); }

namespace {

// Components of g minus `removed`, as lists of vertex indices.
std::vector<std::vector<int>> components_without(const IndexedGraph& ig,
                                                 const std::vector<char>& removed) {
  std::vector<int> seen(ig.n(), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < ig.n(); ++s) {
    if (removed[s] || seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (const auto& a : ig.adj[comp[i]])
        if (!removed[a.to] && !seen[a.to]) {
          seen[a.to] = 1;
          comp.push_back(a.to);
        }
    out.push_back(std::move(comp));
  }
  return out;
}

// Calls f on every subset of {0..n-1} of size k in lexicographic order; stops when f returns false.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return true;
  while (true) {
    if (!f(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ConnectivityReport is_weakly_n_connected(const RayedGraph& g, std::size_t n) {
  if (n < 1) throw InputError("connectivity order must be at least 1");
  IndexedGraph ig(g);
  std::vector<char> none(ig.n(), 0);
  for (const auto& comp : components_without(ig, none)) {
    int rays = 0;
    for (int v : comp) rays += ig.rays[v];
    if (rays == 0)
      throw PreconditionError("component containing '" + ig.vnames[comp.front()] +
                              "' has no ray; use the strong connectivity check");
  }
  ConnectivityReport report;
  for (int k = 1; k < static_cast<int>(n) && k <= ig.n(); ++k) {
    bool ok = for_each_subset(ig.n(), k, [&](const std::vector<int>& s) {
      std::vector<char> removed(ig.n(), 0);
      for (int v : s) removed[v] = 1;
      for (const auto& comp : components_without(ig, removed)) {
        int rays = 0;
        for (int v : comp) rays += ig.rays[v];
        if (rays == 0) {
          report.holds = false;
          for (int v : s) report.removed.insert(ig.vnames[v]);
          for (int v : comp) report.ray_free_component.insert(ig.vnames[v]);
          return false;
        }
      }
      return true;
    });
    if (!ok) break;
  }
  return report;
}

bool is_connected(const Multigraph& g) {
  IndexedGraph ig(rayless(g));
  std::vector<char> none(ig.n(), 0);
  return components_without(ig, none).size() <= 1;
}

bool is_strongly_n_connected(const Multigraph& g, std::size_t n) {
  if (!is_connected(g)) throw PreconditionError("strong connectivity needs a connected graph");
  IndexedGraph ig(rayless(g));
  for (int k = 1; k < static_cast<int>(n) && k <= ig.n(); ++k) {
    bool ok = for_each_subset(ig.n(), k, [&](const std::vector<int>& s) {
      std::vector<char> removed(ig.n(), 0);
      for (int v : s) removed[v] = 1;
      return components_without(ig, removed).size() <= 1;
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<Wedge> wedges(const Multigraph& g) {
  std::vector<Wedge> out;
  for (const auto& z : g.vertices()) {
    std::vector<EdgeId> star;
    for (const auto& e : g.incident(z))
      if (!g.endpoints(e).is_loop()) star.push_back(e);
    for (std::size_t i = 0; i < star.size(); ++i)
      for (std::size_t j = i + 1; j < star.size(); ++j)
        out.push_back({star[i], z, star[j],
                       {g.endpoints(star[i]).other(z), g.endpoints(star[j]).other(z)}});
  }
  return out;
}

EdgeSet induced_edges(const Multigraph& g, const VertexSet& vs) {
  EdgeSet out;
  for (const auto& [id, ep] : g.edges())
    if (vs.count(ep.u) && vs.count(ep.v)) out.insert(out.end(), id);
  return out;
}

VertexSet span(const Multigraph& g, const EdgeSet& es) {
  VertexSet out;
  for (const auto& e : es) {
    const auto& ep = g.endpoints(e);
    out.insert(ep.u);
    out.insert(ep.v);
  }
  return out;
}

RayedGraph induced_subgraph(const RayedGraph& g, const VertexSet& vs) {
  RayedGraph out;
  for (const auto& v : vs) {
    if (!g.core.has_vertex(v)) throw InputError("unknown vertex id '" + v + "'");
    out.core.add_vertex(v);
  }
  for (const auto& e : induced_edges(g.core, vs)) {
    const auto& ep = g.core.endpoints(e);
    out.core.add_edge(e, ep.u, ep.v);
  }
  for (const auto& [r, at] : g.rays)
    if (vs.count(at)) out.add_ray(r, at);
  return out;
}

RayedGraph edge_subgraph(const RayedGraph& g, const EdgeSet& es) {
  RayedGraph out;
  for (const auto& v : span(g.core, es)) out.core.add_vertex(v);
  for (const auto& e : es) {
    const auto& ep = g.core.endpoints(e);
    out.core.add_edge(e, ep.u, ep.v);
  }
  for (const auto& [r, at] : g.rays)
    if (out.core.has_vertex(at)) out.add_ray(r, at);
  return out;
}

std::string fresh_id(const std::string& base, const std::set<std::string>& taken) {
  for (int k = 1;; ++k) {
    std::string cand = base + "~" + std::to_string(k);
    if (!taken.count(cand)) return cand;
  }
}

}  // namespace whitney
