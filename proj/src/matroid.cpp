#include "whitney/matroid.hpp"

#include <random>

namespace whitney {

namespace {

std::string cache_key(const EdgeSet& f) {
  std::string key;
  for (const auto& e : f) {
    key += e;
    key += '\x1f';
  }
  return key;
}

// Union-find over vertices restricted to f; returns parent roots via callback-free arrays.
struct MaskForest {
  std::vector<int> parent;
  bool cyclic = false;

  MaskForest(const IndexedGraph& ig, Mask f) : parent(ig.n()) {
    for (int i = 0; i < ig.n(); ++i) parent[i] = i;
    for (int k = 0; k < ig.m(); ++k) {
      if (!(f >> k & 1)) continue;
      int a = find(ig.eu[k]), b = find(ig.ev[k]);
      if (a == b)
        cyclic = true;
      else
        parent[a] = b;
    }
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

}  // namespace

int rank_of(const IndexedGraph& ig, Mask f) {
  MaskForest uf(ig, f);
  std::vector<char> root_has_ray(ig.n(), 0);
  for (int v = 0; v < ig.n(); ++v)
    if (ig.rays[v]) root_has_ray[uf.find(v)] = 1;
  int ray_free = 0;
  for (int v = 0; v < ig.n(); ++v)
    if (uf.find(v) == v && !root_has_ray[v]) ++ray_free;
  return ig.n() - ray_free;
}

bool acyclic_of(const IndexedGraph& ig, Mask f) { return !MaskForest(ig, f).cyclic; }

bool tame_of(const IndexedGraph& ig, Mask f) {
  MaskForest uf(ig, f);
  std::vector<int> rays(ig.n(), 0);
  std::vector<char> spanned(ig.n(), 0);
  for (int k = 0; k < ig.m(); ++k)
    if (f >> k & 1) spanned[ig.eu[k]] = spanned[ig.ev[k]] = 1;
  for (int v = 0; v < ig.n(); ++v)
    if (spanned[v] && (rays[uf.find(v)] += ig.rays[v]) > 2) return false;
  return true;
}

namespace {

void check_table_size(int m) {
  if (m > 24) throw PreconditionError("subset tables need at most 24 edges, got " + std::to_string(m));
}

}  // namespace

std::vector<int> rank_table(const IndexedGraph& ig) {
  check_table_size(ig.m());
  std::vector<int> out(std::size_t{1} << ig.m());
  for (Mask f = 0; f < out.size(); ++f) out[f] = rank_of(ig, f);
  return out;
}

std::vector<char> tameness_table(const IndexedGraph& ig) {
  check_table_size(ig.m());
  std::vector<char> out(std::size_t{1} << ig.m());
  for (Mask f = 0; f < out.size(); ++f) out[f] = tame_of(ig, f);
  return out;
}

std::vector<char> independence_table(const IndexedGraph& ig) {
  check_table_size(ig.m());
  std::vector<char> out(std::size_t{1} << ig.m());
  for (Mask f = 0; f < out.size(); ++f) {
    MaskForest uf(ig, f);
    out[f] = !uf.cyclic && tame_of(ig, f);
  }
  return out;
}

std::vector<int> forest_rank_table(const std::vector<char>& independent, int m) {
  std::vector<int> r(independent.size(), 0);
  for (Mask f = 1; f < r.size(); ++f) {
    if (independent[f]) {
      r[f] = popcount(f);
      continue;
    }
    int best = 0;
    for (int k = 0; k < m; ++k)
      if (f >> k & 1) best = std::max(best, r[f & ~(Mask{1} << k)]);
    r[f] = best;
  }
  return r;
}

RankOracle::RankOracle(RayedGraph g, std::size_t cache_capacity)
    : g_(std::move(g)), ig_(g_), capacity_(cache_capacity) {
  empty_rank_ = g_.ray_vertices().size();
}

std::size_t RankOracle::rank(const EdgeSet& f) const {
  auto key = cache_key(f);
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
  }
  UnionFind uf(ig_.vnames.size());
  for (const auto& e : f) {
    int k = ig_.edge(e);
    uf.unite(ig_.eu[k], ig_.ev[k]);
  }
  std::vector<char> has_ray(ig_.vnames.size(), 0);
  for (int v = 0; v < ig_.n(); ++v)
    if (ig_.rays[v]) has_ray[uf.find(v)] = 1;
  std::size_t ray_free = 0;
  for (int v = 0; v < ig_.n(); ++v)
    if (uf.find(v) == static_cast<std::size_t>(v) && !has_ray[v]) ++ray_free;
  std::size_t value = ig_.vnames.size() - ray_free;
  std::lock_guard lock(mu_);
  if (capacity_ == 0 || cache_.count(key)) return value;
  lru_.emplace_front(key, value);
  cache_.emplace(std::move(key), lru_.begin());
  if (cache_.size() > capacity_) {
    cache_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return value;
}

std::size_t RankOracle::relative_rank(const EdgeSet& f) const { return rank(f) - empty_rank_; }

std::size_t RankOracle::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

bool RankOracle::is_acyclic(const EdgeSet& f) const {
  UnionFind uf(ig_.vnames.size());
  for (const auto& e : f) {
    int k = ig_.edge(e);
    if (!uf.unite(ig_.eu[k], ig_.ev[k])) return false;
  }
  return true;
}

bool RankOracle::is_tame(const EdgeSet& f) const {
  UnionFind uf(ig_.vnames.size());
  std::vector<char> spanned(ig_.vnames.size(), 0);
  for (const auto& e : f) {
    int k = ig_.edge(e);
    uf.unite(ig_.eu[k], ig_.ev[k]);
    spanned[ig_.eu[k]] = spanned[ig_.ev[k]] = 1;
  }
  std::vector<int> rays(ig_.vnames.size(), 0);
  for (int v = 0; v < ig_.n(); ++v)
    if (spanned[v] && (rays[uf.find(v)] += ig_.rays[v]) > 2) return false;
  return true;
}

bool RankOracle::is_independent(const EdgeSet& f) const { return is_acyclic(f) && is_tame(f); }

std::size_t RankOracle::forest_rank(const EdgeSet& f) const {
  std::size_t total = 0;
  for (const auto& block : components(g_, f).blocks) {
    if (block.edges.empty()) continue;
    IndexedGraph local(edge_subgraph(g_, block.edges));
    if (local.m() > 24)
      throw PreconditionError("forest rank needs components with at most 24 edges");
    int best = 0;
    auto indep = independence_table(local);
    for (Mask s = 0; s < indep.size(); ++s)
      if (indep[s]) best = std::max(best, popcount(s));
    total += static_cast<std::size_t>(best);
  }
  return total;
}

RankAxiomReport verify_rank_axioms(const RankOracle& o, std::uint64_t seed, std::size_t threshold,
                                   std::size_t samples) {
  const auto& ig = o.indexed();
  RankAxiomReport rep;
  rep.offset = o.empty_rank();
  const int off = static_cast<int>(rep.offset);
  auto record = [&](const char* kind, Mask x, Mask y) {
    ++rep.violation_count;
    if (rep.violations.size() < 100) rep.violations.push_back({kind, ig.edges_of(x), ig.edges_of(y)});
  };
  if (static_cast<std::size_t>(ig.m()) <= threshold) {
    auto r = rank_table(ig);
    const Mask full = r.size();
    for (Mask x = 0; x < full; ++x) {
      int rel = r[x] - off;
      if (rel < 0 || rel > popcount(x)) record("cardinality", x, x);
    }
    for (Mask x = 0; x < full; ++x) {
      const int rx = r[x];
      for (Mask y = 0; y < full; ++y) {
        if ((x & y) == x && rx > r[y]) record("monotonicity", x, y);
        if (rx + r[y] < r[x & y] + r[x | y]) record("submodularity", x, y);
      }
    }
    rep.pairs_checked = static_cast<std::uint64_t>(full) * full;
    return rep;
  }
  if (ig.m() > 64) throw PreconditionError("sampled axiom check supports at most 64 edges");
  rep.exhaustive = false;
  std::mt19937_64 rng(seed);
  const Mask all = ig.m() == 64 ? ~Mask{0} : (Mask{1} << ig.m()) - 1;
  for (std::size_t i = 0; i < samples; ++i) {
    Mask x = rng() & all, y = rng() & all;
    int rx = rank_of(ig, x), ry = rank_of(ig, y), ri = rank_of(ig, x & y), ru = rank_of(ig, x | y);
    for (Mask s : {x, y})
      if (int rel = rank_of(ig, s) - off; rel < 0 || rel > popcount(s)) record("cardinality", s, s);
    if (ri > rx || rx > ru) record("monotonicity", x & y, x);
    if (rx + ry < ri + ru) record("submodularity", x, y);
    ++rep.pairs_checked;
  }
  return rep;
}

std::vector<EdgeSet> circuits(const RankOracle& o) {
  const auto& ig = o.indexed();
  if (ig.m() > 22) throw PreconditionError("circuit enumeration supports at most 22 edges");
  auto indep = independence_table(ig);
  std::vector<std::pair<int, Mask>> found;
  for (Mask f = 1; f < indep.size(); ++f) {
    if (indep[f]) continue;
    bool minimal = true;
    for (int k = 0; k < ig.m() && minimal; ++k)
      if (f >> k & 1) minimal = indep[f & ~(Mask{1} << k)];
    if (minimal) found.emplace_back(popcount(f), f);
  }
  std::vector<EdgeSet> out;
  for (const auto& [size, f] : found) out.push_back(ig.edges_of(f));
  std::sort(out.begin(), out.end(), [](const EdgeSet& a, const EdgeSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Minor minor(const RayedGraph& g, const EdgeSet& del, const EdgeSet& contract) {
  for (const auto& e : del)
    if (!g.core.has_edge(e)) throw InputError("unknown edge id '" + e + "'");
  for (const auto& e : contract) {
    if (!g.core.has_edge(e)) throw InputError("unknown edge id '" + e + "'");
    if (del.count(e)) throw InputError("edge '" + e + "' both deleted and contracted");
  }
  Minor out;
  out.base = g;
  out.deleted = del;
  IndexedGraph ig(g);
  UnionFind uf(ig.vnames.size());
  for (const auto& e : contract) {
    int k = ig.edge(e);
    if (uf.unite(ig.eu[k], ig.ev[k]))
      out.contracted.insert(e);
    else
      out.deleted.insert(e);
  }
  std::map<std::size_t, VertexId> name;
  for (int v = 0; v < ig.n(); ++v) name.emplace(uf.find(v), ig.vnames[v]);  // smallest id wins
  for (int v = 0; v < ig.n(); ++v) {
    const auto& q = name.at(uf.find(v));
    out.projection.emplace(ig.vnames[v], q);
    out.quotient.core.add_vertex(q);
  }
  for (const auto& [id, ep] : g.core.edges())
    if (!out.deleted.count(id) && !out.contracted.count(id))
      out.quotient.core.add_edge(id, out.projection.at(ep.u), out.projection.at(ep.v));
  for (const auto& [r, at] : g.rays) out.quotient.add_ray(r, out.projection.at(at));
  return out;
}

EdgeSet disposable_edges(const RankOracle& o, const EdgeSet& f) {
  const auto full = o.rank(f);
  EdgeSet out;
  for (const auto& e : f) {
    EdgeSet rest = f;
    rest.erase(e);
    if (o.rank(rest) == full) out.insert(e);
  }
  return out;
}

bool is_superfluous_analog(const RankOracle& o, const EdgeSet& f) { return disposable_edges(o, f) == f; }

}  // namespace whitney
