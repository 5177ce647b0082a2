#include "whitney/iso.hpp"

#include <algorithm>
#include <functional>

#include "whitney/indexed.hpp"

namespace whitney {

std::optional<VertexMap> induced_vertex_map(const RayedGraph& g, const RayedGraph& h,
                                            const std::map<EdgeId, EdgeId>& phi, bool respect_rays) {
  if (g.core.vertex_count() != h.core.vertex_count() || g.core.edge_count() != h.core.edge_count())
    return std::nullopt;
  std::vector<VertexId> verts(g.core.vertices().begin(), g.core.vertices().end());
  std::map<VertexId, std::vector<VertexId>> cand;
  std::vector<VertexId> isolated_h;
  for (const auto& w : h.core.vertices())
    if (h.core.degree(w) == 0) isolated_h.push_back(w);
  for (const auto& v : verts) {
    auto star = g.core.incident(v);
    std::vector<VertexId> c;
    if (star.empty()) {
      c = isolated_h;
    } else {
      std::optional<VertexSet> common;
      for (const auto& e : star) {
        auto it = phi.find(e);
        if (it == phi.end() || !h.core.has_edge(it->second)) return std::nullopt;
        const auto& ep = h.core.endpoints(it->second);
        VertexSet s{ep.u, ep.v};
        if (g.core.endpoints(e).is_loop() && !ep.is_loop()) return std::nullopt;
        if (!common) {
          common = s;
        } else {
          VertexSet keep;
          std::set_intersection(common->begin(), common->end(), s.begin(), s.end(),
                                std::inserter(keep, keep.begin()));
          common = std::move(keep);
        }
      }
      c.assign(common->begin(), common->end());
    }
    if (respect_rays)
      std::erase_if(c, [&](const VertexId& w) { return g.rays_at(v) != h.rays_at(w); });
    if (c.empty()) return std::nullopt;
    cand[v] = std::move(c);
  }
  std::stable_sort(verts.begin(), verts.end(),
                   [&](const VertexId& a, const VertexId& b) { return cand[a].size() < cand[b].size(); });
  VertexMap psi;
  std::set<VertexId> used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == verts.size()) return true;
    const auto& v = verts[i];
    for (const auto& w : cand[v]) {
      if (used.count(w)) continue;
      psi[v] = w;
      bool ok = true;
      for (const auto& e : g.core.incident(v)) {
        const auto& ep = g.core.endpoints(e);
        auto a = psi.find(ep.u), b = psi.find(ep.v);
        if (a == psi.end() || b == psi.end()) continue;
        if (!(Endpoints(a->second, b->second) == h.core.endpoints(phi.at(e)))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used.insert(w);
        if (rec(i + 1)) return true;
        used.erase(w);
      }
      psi.erase(v);
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return psi;
}

namespace {

struct Dense {
  IndexedGraph ig;
  std::vector<std::vector<int>> mult;  // edge multiplicity; loops on the diagonal
  std::vector<std::tuple<int, int, int>> sig;  // degree, rays, loops

  explicit Dense(const RayedGraph& g) : ig(g), mult(ig.n(), std::vector<int>(ig.n(), 0)), sig(ig.n()) {
    for (int k = 0; k < ig.m(); ++k) {
      ++mult[ig.eu[k]][ig.ev[k]];
      if (ig.eu[k] != ig.ev[k]) ++mult[ig.ev[k]][ig.eu[k]];
    }
    for (int v = 0; v < ig.n(); ++v) {
      int deg = 0;
      for (int w = 0; w < ig.n(); ++w) deg += mult[v][w] * (w == v ? 2 : 1);
      sig[v] = {deg, ig.rays[v], mult[v][v]};
    }
  }
};

}  // namespace

std::vector<VertexMap> vertex_isomorphisms(const RayedGraph& g, const RayedGraph& h, std::size_t limit) {
  std::vector<VertexMap> out;
  if (g.core.vertex_count() != h.core.vertex_count() || g.core.edge_count() != h.core.edge_count() ||
      g.ray_count() != h.ray_count())
    return out;
  Dense a(g), b(h);
  const int n = a.ig.n();
  auto sa = a.sig, sb = b.sig;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return out;

  // Order: breadth-first from the vertex with the rarest signature, so each new vertex has
  // assigned neighbours where possible.
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  while (static_cast<int>(order.size()) < n) {
    int start = -1;
    for (int v = 0; v < n; ++v)
      if (!placed[v] && (start < 0 || std::get<0>(a.sig[v]) > std::get<0>(a.sig[start]))) start = v;
    placed[start] = 1;
    std::size_t head = order.size();
    order.push_back(start);
    for (; head < order.size(); ++head)
      for (const auto& arc : a.ig.adj[order[head]])
        if (!placed[arc.to]) {
          placed[arc.to] = 1;
          order.push_back(arc.to);
        }
  }
  std::vector<int> map(n, -1), inv(n, -1);
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == n) {
      VertexMap vm;
      for (int v = 0; v < n; ++v) vm[a.ig.vnames[v]] = b.ig.vnames[map[v]];
      out.push_back(std::move(vm));
      if (limit && out.size() >= limit) stop = true;
      return;
    }
    const int v = order[i];
    for (int w = 0; w < n && !stop; ++w) {
      if (inv[w] >= 0 || a.sig[v] != b.sig[w]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        int u = order[j];
        ok = a.mult[v][u] == b.mult[w][map[u]];
      }
      if (!ok) continue;
      map[v] = w;
      inv[w] = v;
      rec(i + 1);
      map[v] = -1;
      inv[w] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<VertexMap> find_isomorphism(const RayedGraph& g, const RayedGraph& h) {
  auto all = vertex_isomorphisms(g, h, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool isomorphic(const RayedGraph& g, const RayedGraph& h) { return find_isomorphism(g, h).has_value(); }

std::vector<std::map<EdgeId, EdgeId>> edge_maps_of(const RayedGraph& g, const RayedGraph& h,
                                                   const VertexMap& psi) {
  // Group edges by their (mapped) endpoint pair.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> from, to;
  for (const auto& [e, ep] : g.core.edges()) {
    Endpoints img(psi.at(ep.u), psi.at(ep.v));
    from[{img.u, img.v}].push_back(e);
  }
  for (const auto& [e, ep] : h.core.edges()) to[{ep.u, ep.v}].push_back(e);
  if (from.size() != to.size()) return {};
  std::vector<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> classes;
  for (const auto& [key, es] : from) {
    auto it = to.find(key);
    if (it == to.end() || it->second.size() != es.size()) return {};
    classes.emplace_back(es, it->second);
  }
  std::vector<std::map<EdgeId, EdgeId>> out{{}};
  for (auto& [src, dst] : classes) {
    std::vector<std::map<EdgeId, EdgeId>> next;
    std::sort(dst.begin(), dst.end());
    do {
      for (const auto& partial : out) {
        auto m = partial;
        for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = dst[i];
        next.push_back(std::move(m));
      }
    } while (std::next_permutation(dst.begin(), dst.end()));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace whitney
