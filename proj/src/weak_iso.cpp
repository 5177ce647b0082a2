#include "whitney/weak_iso.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "whitney/enumerate.hpp"
#include "whitney/matroid.hpp"
#include "whitney/structure.hpp"

namespace whitney {

EdgeBijection::EdgeBijection(std::shared_ptr<const RayedGraph> source,
                             std::shared_ptr<const RayedGraph> target, std::map<EdgeId, EdgeId> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (source_->core.edge_count() != target_->core.edge_count())
    throw InputError("edge bijection between graphs with different edge counts");
  if (map_.size() != source_->core.edge_count()) throw InputError("edge bijection is not total");
  EdgeSet seen;
  for (const auto& [a, b] : map_) {
    if (!source_->core.has_edge(a)) throw InputError("bijection maps unknown source edge '" + a + "'");
    if (!target_->core.has_edge(b)) throw InputError("bijection maps to unknown target edge '" + b + "'");
    if (!seen.insert(b).second) throw InputError("bijection is not injective at '" + b + "'");
  }
}

EdgeBijection::EdgeBijection(RayedGraph source, RayedGraph target, std::map<EdgeId, EdgeId> map)
    : EdgeBijection(std::make_shared<const RayedGraph>(std::move(source)),
                    std::make_shared<const RayedGraph>(std::move(target)), std::move(map)) {}

EdgeBijection EdgeBijection::identity(const RayedGraph& g) {
  auto p = std::make_shared<const RayedGraph>(g);
  return identity(p, p);
}

EdgeBijection EdgeBijection::identity(std::shared_ptr<const RayedGraph> source,
                                      std::shared_ptr<const RayedGraph> target) {
  std::map<EdgeId, EdgeId> m;
  for (const auto& kv : source->core.edges()) m.emplace(kv.first, kv.first);
  return EdgeBijection(std::move(source), std::move(target), std::move(m));
}

const EdgeId& EdgeBijection::operator()(const EdgeId& e) const {
  auto it = map_.find(e);
  if (it == map_.end()) throw InputError("edge '" + e + "' not in bijection domain");
  return it->second;
}

EdgeSet EdgeBijection::image(const EdgeSet& es) const {
  EdgeSet out;
  for (const auto& e : es) out.insert((*this)(e));
  return out;
}

EdgeBijection EdgeBijection::inverse() const {
  std::map<EdgeId, EdgeId> inv;
  for (const auto& [a, b] : map_) inv.emplace(b, a);
  return EdgeBijection(target_, source_, std::move(inv));
}

EdgeBijection EdgeBijection::then(const EdgeBijection& next) const {
  std::map<EdgeId, EdgeId> m;
  for (const auto& [a, b] : map_) m.emplace(a, next(b));
  return EdgeBijection(source_, next.target_, std::move(m));
}

CycleEnumeration enumerate_cycles(const IndexedGraph& ig, std::size_t cap) {
  CycleEnumeration out;
  std::vector<char> on_path(ig.n(), 0);
  std::vector<int> path;
  for (int s = 0; s < ig.m() && out.complete; ++s) {
    if (ig.eu[s] == ig.ev[s]) {
      out.cycles.push_back({s});
      if (out.cycles.size() >= cap) out.complete = false;
      continue;
    }
    const int start = ig.eu[s], goal = ig.ev[s];
    // Depth-first search for simple start-goal paths through edges above s.
    std::function<void(int)> dfs = [&](int v) {
      if (!out.complete) return;
      for (const auto& a : ig.adj[v]) {
        if (a.edge <= s || a.to == v || on_path[a.to]) continue;
        path.push_back(a.edge);
        if (a.to == goal) {
          std::vector<int> cyc = path;
          cyc.push_back(s);
          std::sort(cyc.begin(), cyc.end());
          out.cycles.push_back(std::move(cyc));
          if (out.cycles.size() >= cap) out.complete = false;
        } else {
          on_path[a.to] = 1;
          dfs(a.to);
          on_path[a.to] = 0;
        }
        path.pop_back();
        if (!out.complete) return;
      }
    };
    on_path[start] = 1;
    dfs(start);
    on_path[start] = 0;
  }
  return out;
}

bool is_cycle(const IndexedGraph& ig, const std::vector<int>& edges) {
  if (edges.empty()) return false;
  std::vector<int> deg(ig.n(), 0);
  UnionFind uf(ig.vnames.size());
  for (int k : edges) {
    ++deg[ig.eu[k]];
    ++deg[ig.ev[k]];
    uf.unite(ig.eu[k], ig.ev[k]);
  }
  std::optional<std::size_t> root;
  for (int v = 0; v < ig.n(); ++v) {
    if (!deg[v]) continue;
    if (deg[v] != 2) return false;
    if (!root) root = uf.find(v);
    if (uf.find(v) != *root) return false;
  }
  return true;
}

std::vector<EdgeSet> simple_cycles(const RayedGraph& g, std::size_t cap) {
  IndexedGraph ig(g);
  std::vector<EdgeSet> out;
  for (const auto& c : enumerate_cycles(ig, cap).cycles) out.push_back(ig.edges_of(c));
  return out;
}

namespace {

struct Pair {
  IndexedGraph a, b;
  std::vector<int> fwd, bwd;

  explicit Pair(const EdgeBijection& phi) : a(phi.source()), b(phi.target()) {
    fwd.resize(a.m());
    bwd.resize(b.m());
    for (int k = 0; k < a.m(); ++k) {
      fwd[k] = b.edge(phi(a.enames[k]));
      bwd[fwd[k]] = k;
    }
  }
  Mask image(Mask x) const {
    Mask y = 0;
    for (Mask r = x; r; r &= r - 1) y |= Mask{1} << fwd[__builtin_ctzll(r)];
    return y;
  }
  Mask preimage(Mask y) const {
    Mask x = 0;
    for (Mask r = y; r; r &= r - 1) x |= Mask{1} << bwd[__builtin_ctzll(r)];
    return x;
  }
};

std::vector<int> map_indices(const std::vector<int>& idx, const std::vector<int>& f) {
  std::vector<int> out;
  for (int k : idx) out.push_back(f[k]);
  std::sort(out.begin(), out.end());
  return out;
}

// Fundamental cycles of a spanning forest.
std::vector<std::vector<int>> fundamental_cycles(const IndexedGraph& ig) {
  std::vector<int> parent(ig.n(), -1), pedge(ig.n(), -1), depth(ig.n(), -1);
  std::vector<char> tree(ig.m(), 0);
  for (int s = 0; s < ig.n(); ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    std::vector<int> q{s};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (const auto& arc : ig.adj[q[i]])
        if (depth[arc.to] < 0) {
          depth[arc.to] = depth[q[i]] + 1;
          parent[arc.to] = q[i];
          pedge[arc.to] = arc.edge;
          tree[arc.edge] = 1;
          q.push_back(arc.to);
        }
  }
  std::vector<std::vector<int>> out;
  for (int k = 0; k < ig.m(); ++k) {
    if (tree[k]) continue;
    std::vector<int> cyc{k};
    int x = ig.eu[k], y = ig.ev[k];
    while (x != y) {
      if (depth[x] < depth[y]) std::swap(x, y);
      cyc.push_back(pedge[x]);
      x = parent[x];
    }
    std::sort(cyc.begin(), cyc.end());
    out.push_back(cyc);
  }
  return out;
}

Mask full_mask(int m) { return m == 64 ? ~Mask{0} : (Mask{1} << m) - 1; }

std::vector<Mask> component_masks(const IndexedGraph& ig) {
  UnionFind uf(ig.vnames.size());
  for (int k = 0; k < ig.m(); ++k) uf.unite(ig.eu[k], ig.ev[k]);
  std::map<std::size_t, Mask> by_root;
  for (int k = 0; k < ig.m(); ++k) by_root[uf.find(ig.eu[k])] |= Mask{1} << k;
  std::vector<Mask> out;
  for (const auto& kv : by_root) out.push_back(kv.second);
  return out;
}

// Source-side subsets used when 2^m is out of reach.
std::vector<Mask> structured_family(const Pair& p, const CheckOptions& opt) {
  if (p.a.m() > 64) throw PreconditionError("structured subset family supports at most 64 edges");
  std::vector<Mask> fam{full_mask(p.a.m())};
  std::vector<Mask> comps = component_masks(p.a);
  for (Mask c : component_masks(p.b)) comps.push_back(p.preimage(c));
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    fam.push_back(comps[i]);
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      fam.push_back(comps[i] | comps[j]);
      for (std::size_t k = j + 1; k < comps.size(); ++k) fam.push_back(comps[i] | comps[j] | comps[k]);
    }
  }
  const int cap = static_cast<int>(opt.connected_subset_size);
  for_each_connected_set(line_graph(p.a), cap, [&](Mask s) {
    fam.push_back(s);
    return Visit::Continue;
  });
  for_each_connected_set(line_graph(p.b), cap, [&](Mask s) {
    fam.push_back(p.preimage(s));
    return Visit::Continue;
  });
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.random_subsets; ++i) fam.push_back(rng() & full_mask(p.a.m()));
  return fam;
}

}  // namespace

CycleCheck check_cycle_preserving(const EdgeBijection& phi, const CheckOptions& opt) {
  Pair p(phi);
  CycleCheck out;
  auto run = [&](const IndexedGraph& from, const IndexedGraph& to, const std::vector<int>& f,
                 bool in_source) {
    auto en = enumerate_cycles(from, opt.cycle_cap);
    if (!en.complete) {
      out.exhaustive = false;
      auto basis = fundamental_cycles(from);
      en.cycles.insert(en.cycles.end(), basis.begin(), basis.end());
    }
    for (const auto& c : en.cycles) {
      ++out.checked;
      if (!is_cycle(to, map_indices(c, f))) {
        out.holds = false;
        out.witness_in_source = in_source;
        out.witness = from.edges_of(c);
        return false;
      }
    }
    return true;
  };
  if (run(p.a, p.b, p.fwd, true)) run(p.b, p.a, p.bwd, false);
  return out;
}

TamenessCheck check_tameness_preserving(const EdgeBijection& phi, const CheckOptions& opt) {
  Pair p(phi);
  TamenessCheck out;
  auto fail = [&](Mask x) {
    out.holds = false;
    out.witness_in_source = true;
    out.witness = p.a.edges_of(x);
  };
  if (static_cast<std::size_t>(p.a.m()) <= opt.exhaustive_threshold) {
    auto ta = tameness_table(p.a), tb = tameness_table(p.b);
    std::vector<Mask> priority{full_mask(p.a.m())};
    for (Mask c : component_masks(p.a)) priority.push_back(c);
    for (Mask x : priority) {
      ++out.checked;
      if (ta[x] != tb[p.image(x)]) {
        fail(x);
        return out;
      }
    }
    std::vector<Mask> img(ta.size(), 0);
    for (Mask x = 1; x < ta.size(); ++x) {
      img[x] = img[x & (x - 1)] | (Mask{1} << p.fwd[__builtin_ctzll(x)]);
      ++out.checked;
      if (ta[x] != tb[img[x]]) {
        fail(x);
        return out;
      }
    }
    return out;
  }
  out.exhaustive = false;
  for (Mask x : structured_family(p, opt)) {
    ++out.checked;
    if (tame_of(p.a, x) != tame_of(p.b, p.image(x))) {
      fail(x);
      return out;
    }
  }
  return out;
}

WeakIsoReport check_weak_isomorphism(const EdgeBijection& phi, const CheckOptions& opt) {
  WeakIsoReport rep;
  rep.cycle = check_cycle_preserving(phi, opt);
  rep.tameness = check_tameness_preserving(phi, opt);
  rep.verdict = rep.cycle.holds && rep.tameness.holds;

  Pair p(phi);
  if (static_cast<std::size_t>(p.a.m()) <= opt.exhaustive_threshold) {
    auto ra = forest_rank_table(independence_table(p.a), p.a.m());
    auto rb = forest_rank_table(independence_table(p.b), p.b.m());
    Mask img = 0;
    std::vector<Mask> image(ra.size(), 0);
    for (Mask x = 0; x < ra.size(); ++x) {
      if (x) image[x] = image[x & (x - 1)] | (Mask{1} << p.fwd[__builtin_ctzll(x)]);
      img = image[x];
      ++rep.rank.checked;
      if (ra[x] != rb[img]) {
        rep.rank.holds = false;
        rep.rank.witness = p.a.edges_of(x);
        break;
      }
    }
  } else {
    rep.rank.exhaustive = false;
    for (Mask x : structured_family(p, opt)) {
      ++rep.rank.checked;
      bool ia = acyclic_of(p.a, x) && tame_of(p.a, x);
      bool ib = acyclic_of(p.b, p.image(x)) && tame_of(p.b, p.image(x));
      if (ia != ib) {
        rep.rank.holds = false;
        rep.rank.witness = p.a.edges_of(x);
        break;
      }
    }
  }
  if (rep.verdict && !rep.rank.holds)
    throw TheoremViolation("weak isomorphism changes the rank of a subset");
  const bool ray_free = phi.source().rays.empty() && phi.target().rays.empty();
  if (ray_free && rep.rank.exhaustive && rep.cycle.exhaustive && rep.rank.holds != rep.verdict)
    throw TheoremViolation("rank preservation and weak isomorphism disagree on a ray-free graph");
  return rep;
}

namespace {

struct Families {
  std::vector<Mask> members;
  std::vector<int> tag;  // 0 cycle, 1 minimal untame
  std::unordered_set<Mask> set[2];
  bool exact = true;
};

Families families(const IndexedGraph& ig, const SearchOptions& opt) {
  Families f;
  auto add = [&](Mask m, int t) {
    f.members.push_back(m);
    f.tag.push_back(t);
    f.set[t].insert(m);
  };
  auto cyc = enumerate_cycles(ig, opt.check.cycle_cap);
  f.exact = cyc.complete;
  for (const auto& c : cyc.cycles) {
    Mask m = 0;
    for (int k : c) m |= Mask{1} << k;
    add(m, 0);
  }
  int total_rays = 0;
  for (int r : ig.rays) total_rays += r;
  if (total_rays < 3) return f;
  if (static_cast<std::size_t>(ig.m()) <= opt.check.exhaustive_threshold) {
    auto tame = tameness_table(ig);
    for (Mask x = 1; x < tame.size(); ++x) {
      if (tame[x]) continue;
      bool minimal = true;
      for (Mask r = x; r && minimal; r &= r - 1) minimal = tame[x & ~(r & -r)];
      if (minimal) add(x, 1);
    }
    return f;
  }
  // Minimal untame sets are trees carrying three or four rays.
  const int cap = static_cast<int>(opt.untame_size_cap);
  for_each_connected_set(line_graph(ig), cap, [&](Mask s) {
    if (!acyclic_of(ig, s)) return Visit::Prune;
    int rays = 0;
    std::vector<char> spanned(ig.n(), 0);
    for (Mask r = s; r; r &= r - 1) {
      int k = __builtin_ctzll(r);
      spanned[ig.eu[k]] = spanned[ig.ev[k]] = 1;
    }
    for (int v = 0; v < ig.n(); ++v)
      if (spanned[v]) rays += ig.rays[v];
    if (rays > 4) return Visit::Prune;
    if (rays >= 3) {
      bool minimal = true;
      for (Mask r = s; r && minimal; r &= r - 1) minimal = tame_of(ig, s & ~(r & -r));
      if (minimal) add(s, 1);
    } else if (popcount(s) == cap) {
      f.exact = false;
    }
    return Visit::Continue;
  });
  return f;
}

std::vector<int> signature(const Families& f, int edge, int m) {
  std::vector<int> sig(2 * (m + 1), 0);
  for (std::size_t i = 0; i < f.members.size(); ++i)
    if (f.members[i] >> edge & 1) ++sig[f.tag[i] * (m + 1) + popcount(f.members[i])];
  return sig;
}

}  // namespace

SearchResult search_weak_isomorphisms(const RayedGraph& g1, const RayedGraph& g2,
                                      const SearchOptions& opt) {
  SearchResult res;
  if (g1.core.edge_count() != g2.core.edge_count()) return res;
  IndexedGraph a(g1), b(g2);
  const int m = a.m();
  if (m > 64) throw PreconditionError("search supports at most 64 edges");
  auto fa = families(a, opt), fb = families(b, opt);
  res.exact = fa.exact && fb.exact;
  auto profile = [&](const Families& f) {
    std::vector<std::pair<int, int>> p;
    for (std::size_t i = 0; i < f.members.size(); ++i) p.emplace_back(f.tag[i], popcount(f.members[i]));
    std::sort(p.begin(), p.end());
    return p;
  };
  if (profile(fa) != profile(fb)) return res;

  std::vector<std::vector<int>> sig_a(m), sig_b(m);
  for (int k = 0; k < m; ++k) {
    sig_a[k] = signature(fa, k, m);
    sig_b[k] = signature(fb, k, m);
  }
  std::vector<std::vector<int>> cand(m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      if (sig_a[k] == sig_b[j] && (a.eu[k] == a.ev[k]) == (b.eu[j] == b.ev[j])) cand[k].push_back(j);

  std::vector<std::vector<int>> mem_a(m), mem_b(m);
  for (std::size_t i = 0; i < fa.members.size(); ++i)
    for (Mask r = fa.members[i]; r; r &= r - 1) mem_a[__builtin_ctzll(r)].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < fb.members.size(); ++i)
    for (Mask r = fb.members[i]; r; r &= r - 1) mem_b[__builtin_ctzll(r)].push_back(static_cast<int>(i));

  // Order: start at the most constrained edge, then grow through shared family members.
  std::vector<int> order;
  std::vector<char> placed(m, 0);
  std::vector<int> links(m, 0);
  auto line = line_graph(a);
  while (static_cast<int>(order.size()) < m) {
    int best = -1;
    for (int k = 0; k < m; ++k) {
      if (placed[k]) continue;
      auto key = [&](int e) {
        return std::make_tuple(links[e], -static_cast<int>(cand[e].size()), static_cast<int>(mem_a[e].size()));
      };
      if (best < 0 || key(k) > key(best)) best = k;
    }
    placed[best] = 1;
    order.push_back(best);
    for (int i : mem_a[best])
      for (Mask r = fa.members[i]; r; r &= r - 1) ++links[__builtin_ctzll(r)];
    for (Mask r = line[best]; r; r &= r - 1) ++links[__builtin_ctzll(r)];
  }

  std::vector<int> fwd(m, -1), bwd(m, -1);
  Mask assigned = 0, covered = 0;
  auto src = std::make_shared<const RayedGraph>(g1);
  auto dst = std::make_shared<const RayedGraph>(g2);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == order.size()) {
      std::map<EdgeId, EdgeId> mp;
      for (int k = 0; k < m; ++k) mp.emplace(a.enames[k], b.enames[fwd[k]]);
      EdgeBijection phi(src, dst, std::move(mp));
      if (!res.exact && !check_weak_isomorphism(phi, opt.check).verdict) return;
      res.found.push_back(std::move(phi));
      if (opt.limit && res.found.size() >= opt.limit) stop = true;
      return;
    }
    const int e = order[depth];
    for (int t : cand[e]) {
      if (bwd[t] >= 0) continue;
      fwd[e] = t;
      bwd[t] = e;
      assigned |= Mask{1} << e;
      covered |= Mask{1} << t;
      bool ok = true;
      for (int i : mem_a[e]) {
        Mask mm = fa.members[i];
        if (mm & ~assigned) continue;
        Mask img = 0;
        for (Mask r = mm; r; r &= r - 1) img |= Mask{1} << fwd[__builtin_ctzll(r)];
        if (!fb.set[fa.tag[i]].count(img)) {
          ok = false;
          break;
        }
      }
      for (std::size_t j = 0; ok && j < mem_b[t].size(); ++j) {
        int i = mem_b[t][j];
        Mask mm = fb.members[i];
        if (mm & ~covered) continue;
        Mask pre = 0;
        for (Mask r = mm; r; r &= r - 1) pre |= Mask{1} << bwd[__builtin_ctzll(r)];
        if (!fa.set[fb.tag[i]].count(pre)) ok = false;
      }
      if (ok) rec(depth + 1);
      fwd[e] = -1;
      bwd[t] = -1;
      assigned &= ~(Mask{1} << e);
      covered &= ~(Mask{1} << t);
      if (stop) return;
    }
  };
  rec(0);
  std::sort(res.found.begin(), res.found.end(),
            [](const EdgeBijection& x, const EdgeBijection& y) { return x.map() < y.map(); });
  return res;
}

WedgeImage wedge_image(const EdgeBijection& phi, const Wedge& w) {
  WedgeImage out;
  out.left = phi(w.left);
  out.right = phi(w.right);
  const auto& l = phi.target().core.endpoints(out.left);
  const auto& r = phi.target().core.endpoints(out.right);
  for (const auto& x : {l.u, l.v})
    if (r.touches(x)) {
      out.is_wedge = true;
      out.center = x;
      break;
    }
  return out;
}

InducedIsomorphism extract_induced_isomorphism(const EdgeBijection& phi) {
  const auto& g1 = phi.source().core;
  const auto& g2 = phi.target().core;
  // Rays count toward the degree: a vertex with one edge and a ray is not a leaf.
  for (const auto& v : g1.vertices())
    if (g1.degree(v) + phi.source().rays_at(v) < 2) throw PreconditionError("vertex '" + v + "' is a ray-free leaf");
  InducedIsomorphism out;
  for (const auto& w : wedges(g1))
    if (!wedge_image(phi, w).is_wedge) {
      out.failure = "wedge " + w.left + "," + w.right + " at '" + w.center + "' maps to a non-wedge";
      out.failing_star = w.center;
      return out;
    }
  if (g1.vertex_count() != g2.vertex_count()) {
    out.failure = "vertex counts differ";
    return out;
  }
  std::vector<VertexId> verts(g1.vertices().begin(), g1.vertices().end());
  std::map<VertexId, std::vector<VertexId>> cand;
  for (const auto& v : verts) {
    std::optional<VertexSet> common;
    for (const auto& e : g1.incident(v)) {
      const auto& ep = g2.endpoints(phi(e));
      VertexSet s{ep.u, ep.v};
      if (!common) {
        common = s;
      } else {
        VertexSet keep;
        for (const auto& x : *common)
          if (s.count(x)) keep.insert(x);
        common = keep;
      }
    }
    if (!common || common->empty()) {
      out.failure = "star of '" + v + "' does not map to a star";
      out.failing_star = v;
      return out;
    }
    cand[v].assign(common->begin(), common->end());
  }
  std::stable_sort(verts.begin(), verts.end(),
                   [&](const VertexId& x, const VertexId& y) { return cand[x].size() < cand[y].size(); });
  std::map<VertexId, VertexId> psi;
  std::set<VertexId> used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == verts.size()) return true;
    const auto& v = verts[i];
    for (const auto& c : cand[v]) {
      if (used.count(c)) continue;
      psi[v] = c;
      bool ok = true;
      for (const auto& e : g1.incident(v)) {
        const auto& ep = g1.endpoints(e);
        auto o = ep.other(v);
        if (!psi.count(o)) continue;
        if (!(Endpoints(psi[ep.u], psi[ep.v]) == g2.endpoints(phi(e)))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used.insert(c);
        if (rec(i + 1)) return true;
        used.erase(c);
      }
      psi.erase(v);
    }
    return false;
  };
  if (!rec(0)) {
    out.failure = "stars admit no consistent vertex map";
    return out;
  }
  out.ok = true;
  out.psi = psi;
  out.rays_respected = true;
  for (const auto& [v, w] : psi)
    if (phi.source().rays_at(v) != phi.target().rays_at(w)) out.rays_respected = false;
  return out;
}

namespace {

// Component index of each edge.
std::map<EdgeId, std::size_t> edge_components(const ComponentPartition& cp) {
  std::map<EdgeId, std::size_t> out;
  for (std::size_t i = 0; i < cp.blocks.size(); ++i)
    for (const auto& e : cp.blocks[i].edges) out.emplace(e, i);
  return out;
}

void hypotheses(const RayedGraph& g, const std::string& side, PreservationReport& rep) {
  for (const auto& blk : components(g).blocks) {
    if (blk.edges.empty()) continue;
    auto sub = induced_subgraph(g, blk.vertices);
    const auto name = side + " component at '" + *blk.vertices.begin() + "'";
    if (blk.rays.size() <= 2) {
      if (!is_strongly_n_connected(sub.core, 2)) rep.hypothesis_failures.push_back(name + " is not 2-connected");
    } else if (!is_weakly_n_connected(sub, 2).holds) {
      rep.hypothesis_failures.push_back(name + " is not weakly 2-connected");
    }
  }
}

}  // namespace

PreservationReport preservation_diagnostics(const EdgeBijection& phi) {
  PreservationReport rep;
  if (!check_weak_isomorphism(phi).verdict) rep.hypothesis_failures.push_back("not a weak isomorphism");
  hypotheses(phi.source(), "source", rep);
  hypotheses(phi.target(), "target", rep);
  if (!rep.hypothesis_failures.empty()) {
    rep.hypotheses_hold = false;
    return rep;
  }
  auto ca = components(phi.source()), cb = components(phi.target());
  auto ea = edge_components(ca), eb = edge_components(cb);
  std::map<std::size_t, std::size_t> match, back;
  for (const auto& [e, i] : ea) {
    std::size_t j = eb.at(phi(e));
    auto [it, fresh] = match.emplace(i, j);
    auto [jt, fresh2] = back.emplace(j, i);
    if (it->second != j || jt->second != i) {
      rep.components_ok = false;
      rep.violations.push_back("edge '" + e + "' leaves its matched component");
    }
  }
  for (const auto& [i, j] : match) {
    if (ca.blocks[i].rays.size() != cb.blocks[j].rays.size()) {
      rep.ends_ok = false;
      rep.violations.push_back("component at '" + *ca.blocks[i].vertices.begin() + "' changes end count");
    }
    if (ca.blocks[i].rays.size() < 3 || !rep.components_ok) continue;
    ++rep.banana_components;
    auto da = enumerate_maximal_bananas(induced_subgraph(phi.source(), ca.blocks[i].vertices));
    auto db = enumerate_maximal_bananas(induced_subgraph(phi.target(), cb.blocks[j].vertices));
    std::set<EdgeSet> target_bananas;
    for (const auto& bn : db.bananas) target_bananas.insert(bn.edges);
    for (const auto& bn : da.bananas)
      if (!target_bananas.count(phi.image(bn.edges))) {
        rep.bananas_ok = false;
        rep.violations.push_back("banana '" + bn.id + "' does not map onto a maximal banana");
      }
  }
  return rep;
}

}  // namespace whitney
