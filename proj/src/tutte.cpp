#include "whitney/tutte.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

#include "whitney/indexed.hpp"
#include "whitney/iso.hpp"

namespace whitney {

std::vector<EdgeSet> biconnected_blocks(const Multigraph& g) {
  std::vector<EdgeSet> out;
  std::map<VertexId, int> disc, low;
  int timer = 0;
  std::vector<EdgeId> stack;
  std::function<void(const VertexId&, const EdgeId*)> dfs = [&](const VertexId& v, const EdgeId* parent) {
    disc[v] = low[v] = timer++;
    for (const auto& e : g.incident(v)) {
      if (parent && e == *parent) continue;
      const auto& ep = g.endpoints(e);
      if (ep.is_loop()) {
        out.push_back({e});
        continue;
      }
      const auto& w = ep.other(v);
      auto it = disc.find(w);
      if (it == disc.end()) {
        stack.push_back(e);
        dfs(w, &e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          EdgeSet block;
          while (true) {
            auto top = stack.back();
            stack.pop_back();
            block.insert(top);
            if (top == e) break;
          }
          out.push_back(std::move(block));
        }
      } else if (it->second < disc[v]) {
        // Back edge (or a parallel copy of the tree edge); the descendant side pushed it already otherwise.
        stack.push_back(e);
        low[v] = std::min(low[v], it->second);
      }
    }
  };
  for (const auto& v : g.vertices())
    if (!disc.count(v)) dfs(v, nullptr);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_two_connected(const Multigraph& g) {
  if (g.edge_count() == 0 || !is_connected(g)) return false;
  for (const auto& [e, ep] : g.edges())
    if (ep.is_loop()) return false;
  return biconnected_blocks(g).size() == 1;
}

namespace {

std::size_t rays_in(const RayedGraph& g, const VertexSet& vs) {
  std::size_t n = 0;
  for (const auto& v : vs) n += g.rays_at(v);
  return n;
}

// Components of g - removed, each with every edge touching it.
struct Piece {
  VertexSet vertices;
  EdgeSet edges;
};

std::vector<Piece> pieces_around(const Multigraph& g, const VertexSet& removed) {
  VertexSet seen = removed;
  std::vector<Piece> out;
  for (const auto& r : removed)
    for (const auto& e0 : g.incident(r)) {
      const auto& s = g.endpoints(e0).other(r);
      if (seen.count(s)) continue;
      Piece p;
      p.vertices.insert(s);
      seen.insert(s);
      std::vector<VertexId> stack{s};
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (const auto& e : g.incident(v)) {
          p.edges.insert(e);
          const auto& w = g.endpoints(e).other(v);
          if (!removed.count(w) && seen.insert(w).second) {
            p.vertices.insert(w);
            stack.push_back(w);
          }
        }
      }
      out.push_back(std::move(p));
    }
  std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) { return *a.edges.begin() < *b.edges.begin(); });
  return out;
}

std::optional<WhitneyOp> next_finite_split(const RayedGraph& g) {
  for (const auto& block : components(g).blocks) {
    const std::size_t comp_rays = block.rays.size();
    for (const auto& v : block.vertices) {
      auto pieces = pieces_around(g.core, {v});
      std::vector<EdgeId> loops;
      for (const auto& e : g.core.incident(v))
        if (g.core.endpoints(e).is_loop()) loops.push_back(e);
      const std::size_t count = pieces.size() + loops.size();
      // With three or more rays a ray-carrying vertex may shed its only finite piece; with at
      // most two the vertex must be a genuine cut vertex.
      const bool cut = count >= 2 || (comp_rays >= 3 && g.rays_at(v) > 0 && count >= 1);
      if (!cut) continue;
      if (!loops.empty() && count >= 2) return FiniteSplit{v, {loops.front()}, std::nullopt};
      for (const auto& p : pieces)
        if (rays_in(g, p.vertices) == 0) return FiniteSplit{v, p.edges, std::nullopt};
    }
  }
  return std::nullopt;
}

std::optional<WhitneyOp> next_two_ended_split(const RayedGraph& g) {
  for (const auto& block : components(g).blocks) {
    if (block.rays.size() != 2) continue;
    std::vector<VertexId> cuts;
    for (const auto& v : block.vertices) {
      if (g.rays_at(v)) continue;
      auto pieces = pieces_around(g.core, {v});
      if (pieces.size() != 2) continue;
      if (rays_in(g, pieces[0].vertices) == 1 && rays_in(g, pieces[1].vertices) == 1) cuts.push_back(v);
    }
    if (!cuts.empty()) return TwoEndedSplit{cuts, std::nullopt, {}};
  }
  return std::nullopt;
}

}  // namespace

BlockDecomposition block_decompose(const RayedGraph& g) {
  BlockDecomposition out;
  out.splits.initial = g;
  RayedGraph cur = g;
  for (;;) {
    auto op = next_finite_split(cur);
    if (!op) op = next_two_ended_split(cur);
    if (!op) break;
    auto a = whitney::apply(*op, cur);
    out.splits.ops.push_back(a.recorded);
    cur = std::move(a.graph);
  }
  out.result = std::move(cur);
  return out;
}

std::string node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Cycle:
      return "cycle";
    case NodeKind::Bond:
      return "bond";
    case NodeKind::ThreeConnected:
      return "three-connected";
  }
  return "?";
}

const TutteNode& TutteTree::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw InputError("unknown tree node '" + id + "'");
}

EdgeSet TutteTree::real_edges() const {
  EdgeSet out;
  for (const auto& n : nodes)
    for (const auto& [e, ep] : n.graph.edges())
      if (!n.virtuals.count(e)) out.insert(e);
  return out;
}

namespace {

Multigraph subgraph_on(const Multigraph& g, const EdgeSet& es) {
  Multigraph h;
  for (const auto& e : es) {
    const auto& ep = g.endpoints(e);
    h.add_vertex(ep.u);
    h.add_vertex(ep.v);
    h.add_edge(e, ep.u, ep.v);
  }
  return h;
}

bool is_cycle_graph(const Multigraph& h) {
  if (h.vertex_count() < 3 || h.edge_count() != h.vertex_count() || !is_connected(h)) return false;
  for (const auto& v : h.vertices())
    if (h.degree(v) != 2) return false;
  for (const auto& [e, ep] : h.edges())
    if (ep.is_loop()) return false;
  return true;
}

bool is_bond_graph(const Multigraph& h) {
  if (h.vertex_count() != 2) return false;
  for (const auto& [e, ep] : h.edges())
    if (ep.is_loop()) return false;
  return true;
}

bool is_simple(const Multigraph& h) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [e, ep] : h.edges())
    if (ep.is_loop() || !seen.insert({ep.u, ep.v}).second) return false;
  return true;
}

struct RawNode {
  NodeKind kind;
  Multigraph graph;
  bool alive = true;
};

}  // namespace

TutteTree tutte_decompose(const Multigraph& g) {
  if (!is_two_connected(g)) throw PreconditionError("graph is not 2-connected");
  std::vector<RawNode> nodes;
  std::vector<std::pair<EdgeId, EdgeId>> links;
  auto fresh_pair = [&]() {
    auto k = std::to_string(links.size());
    links.emplace_back("\x1fv" + k + "a", "\x1fv" + k + "b");
    return links.back();
  };

  std::vector<Multigraph> work{g};
  while (!work.empty()) {
    Multigraph h = std::move(work.back());
    work.pop_back();
    std::map<std::pair<VertexId, VertexId>, EdgeSet> classes;
    for (const auto& [e, ep] : h.edges()) classes[{ep.u, ep.v}].insert(e);
    if (classes.size() >= 2) {
      auto it = std::find_if(classes.begin(), classes.end(), [](const auto& kv) { return kv.second.size() >= 2; });
      if (it != classes.end()) {
        auto [va, vb] = fresh_pair();
        Multigraph bond = subgraph_on(h, it->second);
        bond.add_edge(va, it->first.first, it->first.second);
        EdgeSet rest;
        for (const auto& [e, ep] : h.edges())
          if (!it->second.count(e)) rest.insert(e);
        Multigraph other = subgraph_on(h, rest);
        other.add_edge(vb, it->first.first, it->first.second);
        nodes.push_back({NodeKind::Bond, std::move(bond)});
        work.push_back(std::move(other));
        continue;
      }
    }
    if (is_bond_graph(h)) {
      nodes.push_back({NodeKind::Bond, std::move(h)});
      continue;
    }
    if (is_cycle_graph(h)) {
      nodes.push_back({NodeKind::Cycle, std::move(h)});
      continue;
    }
    // h is simple and 2-connected here; look for a separation pair.
    bool split = false;
    const auto& V = h.vertices();
    for (auto a = V.begin(); a != V.end() && !split; ++a)
      for (auto b = std::next(a); b != V.end() && !split; ++b) {
        auto pieces = pieces_around(h, {*a, *b});
        if (pieces.size() < 2) continue;
        const EdgeSet& first = pieces.front().edges;
        EdgeSet rest;
        for (const auto& [e, ep] : h.edges())
          if (!first.count(e)) rest.insert(e);
        auto [va, vb] = fresh_pair();
        Multigraph left = subgraph_on(h, first);
        left.add_edge(va, *a, *b);
        Multigraph right = subgraph_on(h, rest);
        right.add_edge(vb, *a, *b);
        work.push_back(std::move(right));
        work.push_back(std::move(left));
        split = true;
      }
    if (!split) nodes.push_back({NodeKind::ThreeConnected, std::move(h)});
  }

  // Merge adjacent bonds and adjacent cycles.
  std::map<EdgeId, std::size_t> holder;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (const auto& [e, ep] : nodes[i].graph.edges())
      if (e.rfind("\x1fv", 0) == 0) holder[e] = i;
  std::vector<char> link_alive(links.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (!link_alive[k]) continue;
      auto ia = holder.at(links[k].first), ib = holder.at(links[k].second);
      auto& A = nodes[ia];
      auto& B = nodes[ib];
      if (A.kind != B.kind || A.kind == NodeKind::ThreeConnected) continue;
      A.graph.remove_edge(links[k].first);
      for (const auto& [e, ep] : B.graph.edges()) {
        if (e == links[k].second) continue;
        A.graph.add_vertex(ep.u);
        A.graph.add_vertex(ep.v);
        A.graph.add_edge(e, ep.u, ep.v);
        if (holder.count(e)) holder[e] = ia;
      }
      B.alive = false;
      link_alive[k] = 0;
      changed = true;
    }
  }

  // Renumber links and name nodes in discovery order.
  TutteTree t;
  std::map<EdgeId, EdgeId> rename;
  std::set<std::string> taken;
  for (const auto& [e, ep] : g.edges()) taken.insert(e);
  auto final_name = [&](const std::string& base) {
    auto id = taken.count(base) ? fresh_id(base, taken) : base;
    taken.insert(id);
    return id;
  };
  std::size_t next_link = 0;
  std::vector<std::size_t> kept_links;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (!link_alive[k]) continue;
    auto id = std::to_string(next_link++);
    rename[links[k].first] = final_name("virt:" + id + "a");
    rename[links[k].second] = final_name("virt:" + id + "b");
    kept_links.push_back(k);
  }
  std::map<std::size_t, std::string> node_id;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].alive) continue;
    TutteNode n;
    n.id = "node" + std::to_string(t.nodes.size());
    n.kind = nodes[i].kind;
    const std::string prefix = "n" + std::to_string(t.nodes.size()) + ":";
    for (const auto& v : nodes[i].graph.vertices()) {
      n.graph.add_vertex(prefix + v);
      n.origin[prefix + v] = v;
    }
    for (const auto& [e, ep] : nodes[i].graph.edges()) {
      auto it = rename.find(e);
      const EdgeId& id = it == rename.end() ? e : it->second;
      n.graph.add_edge(id, prefix + ep.u, prefix + ep.v);
      if (it != rename.end()) n.virtuals.insert(id);
    }
    node_id[i] = n.id;
    t.nodes.push_back(std::move(n));
  }
  for (auto k : kept_links) {
    TutteLink l;
    l.a = node_id.at(holder.at(links[k].first));
    l.va = rename.at(links[k].first);
    l.b = node_id.at(holder.at(links[k].second));
    l.vb = rename.at(links[k].second);
    const auto& na = t.node(l.a);
    const auto& nb = t.node(l.b);
    l.same_orientation = na.origin.at(na.graph.endpoints(l.va).u) == nb.origin.at(nb.graph.endpoints(l.vb).u);
    t.links.push_back(std::move(l));
  }
  return t;
}

std::vector<std::string> validate_tree(const TutteTree& t) {
  std::vector<std::string> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (!index.emplace(t.nodes[i].id, i).second) out.push_back("duplicate node id '" + t.nodes[i].id + "'");
  std::map<EdgeId, std::size_t> uses;
  UnionFind uf(t.nodes.size());
  std::size_t joined = 0;
  for (const auto& l : t.links) {
    auto ia = index.find(l.a), ib = index.find(l.b);
    if (ia == index.end() || ib == index.end()) {
      out.push_back("link references an unknown node");
      continue;
    }
    if (!t.nodes[ia->second].virtuals.count(l.va)) out.push_back("'" + l.va + "' is not a virtual edge of " + l.a);
    if (!t.nodes[ib->second].virtuals.count(l.vb)) out.push_back("'" + l.vb + "' is not a virtual edge of " + l.b);
    ++uses[l.va];
    ++uses[l.vb];
    if (uf.unite(ia->second, ib->second)) {
      ++joined;
    } else {
      out.push_back("links contain a cycle at " + l.a + "-" + l.b);
    }
    auto ka = t.nodes[ia->second].kind, kb = t.nodes[ib->second].kind;
    if (ka == kb && ka != NodeKind::ThreeConnected)
      out.push_back("adjacent " + node_kind_name(ka) + " nodes " + l.a + " and " + l.b);
  }
  if (!t.nodes.empty() && joined + 1 != t.nodes.size()) out.push_back("links do not connect the nodes");
  EdgeSet real;
  for (const auto& n : t.nodes) {
    for (const auto& v : n.virtuals)
      if (uses[v] != 1) out.push_back("virtual edge '" + v + "' is in " + std::to_string(uses[v]) + " links");
    for (const auto& [e, ep] : n.graph.edges())
      if (!n.virtuals.count(e) && !real.insert(e).second) out.push_back("real edge '" + e + "' repeated");
    switch (n.kind) {
      case NodeKind::Cycle:
        if (!is_cycle_graph(n.graph)) out.push_back(n.id + " is not a cycle");
        break;
      case NodeKind::Bond:
        if (!is_bond_graph(n.graph) || (t.nodes.size() > 1 && n.graph.edge_count() < 3))
          out.push_back(n.id + " is not a bond");
        break;
      case NodeKind::ThreeConnected:
        if (!is_simple(n.graph) || n.graph.vertex_count() < 4 || !is_strongly_n_connected(n.graph, 3))
          out.push_back(n.id + " is not simple and 3-connected");
        break;
    }
  }
  return out;
}

Multigraph reassemble(const TutteTree& t) {
  std::vector<VertexId> locals;
  std::map<VertexId, std::size_t> li;
  std::map<VertexId, VertexId> origin;
  std::map<EdgeId, const TutteNode*> vholder;
  for (const auto& n : t.nodes) {
    for (const auto& v : n.graph.vertices()) {
      li[v] = locals.size();
      locals.push_back(v);
      auto it = n.origin.find(v);
      origin[v] = it == n.origin.end() ? v : it->second;
    }
    for (const auto& v : n.virtuals) vholder[v] = &n;
  }
  UnionFind uf(locals.size());
  std::map<EdgeId, std::size_t> uses;
  for (const auto& l : t.links) {
    auto ia = vholder.find(l.va), ib = vholder.find(l.vb);
    if (ia == vholder.end() || ib == vholder.end()) throw InputError("link names a missing virtual edge");
    ++uses[l.va];
    ++uses[l.vb];
    const auto& ea = ia->second->graph.endpoints(l.va);
    const auto& eb = ib->second->graph.endpoints(l.vb);
    if (l.same_orientation) {
      uf.unite(li.at(ea.u), li.at(eb.u));
      uf.unite(li.at(ea.v), li.at(eb.v));
    } else {
      uf.unite(li.at(ea.u), li.at(eb.v));
      uf.unite(li.at(ea.v), li.at(eb.u));
    }
  }
  for (const auto& [v, n] : vholder)
    if (uses[v] != 1) throw InputError("dangling virtual edge '" + v + "'");
  // Name each class by its smallest origin; classes are visited by smallest local name.
  std::map<std::size_t, VertexId> class_name;
  std::set<std::string> taken;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    auto r = uf.find(i);
    if (class_name.count(r)) continue;
    VertexId best;
    for (std::size_t j = 0; j < locals.size(); ++j)
      if (uf.find(j) == r && (best.empty() || origin[locals[j]] < best)) best = origin[locals[j]];
    if (taken.count(best)) best = fresh_id(best, taken);
    taken.insert(best);
    class_name[r] = best;
  }
  Multigraph out;
  for (const auto& [r, name] : class_name) out.add_vertex(name);
  for (const auto& n : t.nodes)
    for (const auto& [e, ep] : n.graph.edges()) {
      if (n.virtuals.count(e)) continue;
      out.add_edge(e, class_name.at(uf.find(li.at(ep.u))), class_name.at(uf.find(li.at(ep.v))));
    }
  return out;
}

namespace {

struct TreeIndex {
  std::map<std::string, std::size_t> index;
  // Per node: (neighbour, own virtual edge, neighbour's virtual edge).
  std::vector<std::vector<std::tuple<std::size_t, EdgeId, EdgeId>>> adj;
  // Real edges beyond each virtual edge, seen from its node.
  std::map<EdgeId, EdgeSet> far;
};

EdgeSet node_real_edges(const TutteNode& n) {
  EdgeSet out;
  for (const auto& [e, ep] : n.graph.edges())
    if (!n.virtuals.count(e)) out.insert(e);
  return out;
}

TreeIndex index_tree(const TutteTree& t) {
  TreeIndex ti;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) ti.index[t.nodes[i].id] = i;
  ti.adj.resize(t.nodes.size());
  for (const auto& l : t.links) {
    auto a = ti.index.at(l.a), b = ti.index.at(l.b);
    ti.adj[a].emplace_back(b, l.va, l.vb);
    ti.adj[b].emplace_back(a, l.vb, l.va);
  }
  for (std::size_t a = 0; a < t.nodes.size(); ++a)
    for (const auto& [b, own, theirs] : ti.adj[a]) {
      EdgeSet acc;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{b, a}};
      while (!stack.empty()) {
        auto [x, from] = stack.back();
        stack.pop_back();
        auto r = node_real_edges(t.nodes[x]);
        acc.insert(r.begin(), r.end());
        for (const auto& [y, o, th] : ti.adj[x])
          if (y != from) stack.emplace_back(y, x);
      }
      ti.far[own] = std::move(acc);
    }
  return ti;
}

std::string join(const EdgeSet& es, char sep) {
  std::string s;
  for (const auto& e : es) {
    if (!s.empty()) s += sep;
    s += e;
  }
  return s;
}

// Virtual edges are labelled by the real edges behind them; labels cannot clash with ids.
std::string virtual_label(const EdgeSet& far) { return "\x1f{" + join(far, '\x1e') + "}"; }

struct LabelledNode {
  NodeKind kind;
  Multigraph graph;  // origin vertex names, labelled edges
  std::map<std::string, EdgeSet> behind;
  std::map<EdgeId, std::string> label_of;  // tree edge id -> label
  std::string key;
};

std::vector<LabelledNode> label_nodes(const TutteTree& t, const TreeIndex& ti) {
  std::vector<LabelledNode> out;
  for (const auto& n : t.nodes) {
    LabelledNode ln;
    ln.kind = n.kind;
    EdgeSet labels;
    for (const auto& [e, ep] : n.graph.edges()) {
      std::string label = n.virtuals.count(e) ? virtual_label(ti.far.at(e)) : e;
      ln.behind[label] = n.virtuals.count(e) ? ti.far.at(e) : EdgeSet{e};
      ln.label_of[e] = label;
      const auto& u = n.origin.at(ep.u);
      const auto& v = n.origin.at(ep.v);
      ln.graph.add_vertex(u);
      ln.graph.add_vertex(v);
      ln.graph.add_edge(label, u, v);
      labels.insert(label);
    }
    ln.key = join(labels, '\x1d');
    out.push_back(std::move(ln));
  }
  return out;
}

}  // namespace

TreeMatch match_decompositions(const EdgeBijection& phi) {
  if (!is_two_connected(phi.source().core) || !is_two_connected(phi.target().core))
    throw PreconditionError("both graphs must be 2-connected");
  auto cyc = check_cycle_preserving(phi);
  if (!cyc.holds) throw PreconditionError("bijection is not cycle-preserving; witness {" + join(cyc.witness, ',') + "}");
  TreeMatch m{tutte_decompose(phi.source().core), tutte_decompose(phi.target().core), {}, {}};
  auto t1 = index_tree(m.first), t2 = index_tree(m.second);
  std::map<EdgeSet, EdgeId> by_far;
  for (const auto& [v, far] : t2.far) by_far[far] = v;
  for (const auto& [v, far] : t1.far) {
    auto it = by_far.find(phi.image(far));
    if (it == by_far.end()) throw TheoremViolation("no virtual edge of the target matches '" + v + "'");
    m.virtuals[v] = it->second;
  }
  std::map<EdgeId, std::size_t> holder2;
  for (std::size_t i = 0; i < m.second.nodes.size(); ++i)
    for (const auto& [e, ep] : m.second.nodes[i].graph.edges()) holder2[e] = i;
  for (const auto& n : m.first.nodes) {
    std::optional<std::size_t> target;
    for (const auto& [e, ep] : n.graph.edges()) {
      const EdgeId& img = n.virtuals.count(e) ? m.virtuals.at(e) : phi(e);
      auto h = holder2.at(img);
      if (target && *target != h) throw TheoremViolation("edges of " + n.id + " land in different target nodes");
      target = h;
    }
    const auto& tn = m.second.nodes[*target];
    if (tn.kind != n.kind || tn.graph.edge_count() != n.graph.edge_count())
      throw TheoremViolation(n.id + " and " + tn.id + " differ in kind or size");
    m.nodes[n.id] = tn.id;
  }
  return m;
}

namespace {

RayedGraph relabel_target(const EdgeBijection& phi) {
  auto inv = phi.inverse();
  RayedGraph h;
  for (const auto& v : phi.target().core.vertices()) h.core.add_vertex(v);
  for (const auto& [f, ep] : phi.target().core.edges()) h.core.add_edge(inv(f), ep.u, ep.v);
  h.rays = phi.target().rays;
  return h;
}

// A twist of `side` at {x, y}, or of its complement when `side` holds a pinned edge or rays.
WhitneyOp twist_op(const RayedGraph& g, const VertexId& x, const VertexId& y, EdgeSet side, const EdgeSet& pinned) {
  auto strip = [&](EdgeSet s) {
    std::erase_if(s, [&](const EdgeId& e) {
      const auto& ep = g.core.endpoints(e);
      return ep.touches(x) && ep.touches(y);
    });
    return s;
  };
  side = strip(std::move(side));
  EdgeSet comp;
  for (const auto& [e, ep] : g.core.edges())
    if (!side.count(e)) comp.insert(e);
  comp = strip(std::move(comp));
  auto interior_rays = [&](const EdgeSet& s) {
    auto vs = span(g.core, s);
    vs.erase(x);
    vs.erase(y);
    return rays_in(g, vs);
  };
  std::vector<EdgeSet> cands;
  for (auto* s : {&side, &comp})
    if (!s->empty() && std::none_of(s->begin(), s->end(), [&](const EdgeId& e) { return pinned.count(e) > 0; }))
      cands.push_back(*s);
  for (const auto& s : cands)
    if (interior_rays(s) == 0) return FiniteTwist{x, y, s};
  for (const auto& s : cands)
    if (interior_rays(s) == 1 && g.ray_count() == 2 && !g.rays_at(x) && !g.rays_at(y))
      return SimultaneousTwist{{TwistRecord{x, y, s}}};
  throw TheoremViolation("no admissible side for a twist at {" + x + ", " + y + "}");
}

struct CycleWalk {
  std::vector<std::string> labels;  // edge i joins vertices[i] and vertices[i+1 mod n]
  std::vector<VertexId> vertices;
};

CycleWalk walk_cycle(const Multigraph& c) {
  CycleWalk w;
  auto first = c.edges().begin();
  VertexId at = first->second.u;
  EdgeId e = first->first;
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    w.labels.push_back(e);
    w.vertices.push_back(at);
    at = c.endpoints(e).other(at);
    for (const auto& f : c.incident(at))
      if (f != e) {
        e = f;
        break;
      }
  }
  return w;
}

bool same_cyclic_order(const std::vector<std::string>& a, std::vector<std::string> b) {
  if (a.size() != b.size()) return false;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < b.size(); ++r) {
      std::rotate(b.begin(), b.begin() + 1, b.end());
      if (a == b) return true;
    }
    std::reverse(b.begin(), b.end());
  }
  return false;
}

// The same cycle read in the opposite direction from the same first edge.
CycleWalk reversed_walk(const CycleWalk& w) {
  const std::size_t n = w.labels.size();
  CycleWalk r;
  for (std::size_t k = 0; k < n; ++k) {
    r.labels.push_back(w.labels[(n - k) % n]);
    r.vertices.push_back(w.vertices[(n - k + 1) % n]);
  }
  return r;
}

std::size_t agreeing_prefix(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t k = 0;
  while (k < a.size() && a[k] == b[k]) ++k;
  return k;
}

// Target read from the first label of `cur`, in its own fixed direction.
std::vector<std::string> anchored(const std::vector<std::string>& cur, std::vector<std::string> target) {
  auto pos = std::find(target.begin(), target.end(), cur[0]) - target.begin();
  std::rotate(target.begin(), target.begin() + pos, target.end());
  return target;
}

}  // namespace

OpSequence synthesize_twists(const EdgeBijection& phi, const SynthesisOptions& opt) {
  const auto& g1 = phi.source();
  if (!is_two_connected(g1.core) || !is_two_connected(phi.target().core))
    throw PreconditionError("both graphs must be 2-connected");
  auto cyc = check_cycle_preserving(phi);
  if (!cyc.holds)
    throw PreconditionError("bijection is not cycle-preserving; witness {" + join(cyc.witness, ',') + "} in " +
                            (cyc.witness_in_source ? "source" : "target"));
  const RayedGraph h = relabel_target(phi);
  OpSequence seq{g1, {}};
  RayedGraph cur = g1;

  auto emit = [&](const VertexId& x, const VertexId& y, const EdgeSet& side) {
    if (seq.ops.size() >= opt.max_ops) throw TheoremViolation("twist synthesis exceeded its op budget");
    auto op = twist_op(cur, x, y, side, opt.pinned);
    if (auto v = validate(op, cur); !v.empty()) throw TheoremViolation("synthesized twist is invalid: " + v.front());
    auto a = whitney::apply(op, cur);
    seq.ops.push_back(a.recorded);
    cur = std::move(a.graph);
  };

  for (;;) {
    auto t1 = tutte_decompose(cur.core), t2 = tutte_decompose(h.core);
    auto i1 = index_tree(t1), i2 = index_tree(t2);
    auto l1 = label_nodes(t1, i1), l2 = label_nodes(t2, i2);
    std::map<std::string, std::size_t> partner_index;
    for (std::size_t i = 0; i < l2.size(); ++i) partner_index[l2[i].key] = i;
    std::vector<std::size_t> partner(l1.size());
    for (std::size_t i = 0; i < l1.size(); ++i) {
      auto it = partner_index.find(l1[i].key);
      if (it == partner_index.end() || l2[it->second].kind != l1[i].kind)
        throw TheoremViolation("Tutte nodes do not correspond under the bijection");
      partner[i] = it->second;
    }
    std::vector<std::size_t> order(l1.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return l1[a].key < l1[b].key; });

    // Cycle nodes: sort the cyclic order by segment reversals.
    bool acted = false;
    for (auto i : order) {
      if (l1[i].kind != NodeKind::Cycle) continue;
      auto w1 = walk_cycle(l1[i].graph);
      auto w2 = walk_cycle(l2[partner[i]].graph);
      if (same_cyclic_order(w1.labels, w2.labels)) continue;
      // Read the current cycle in the direction agreeing longer with the fixed target; one
      // reversal then extends the agreeing prefix, so the loop terminates.
      auto target = anchored(w1.labels, w2.labels);
      auto back = reversed_walk(w1);
      if (agreeing_prefix(back.labels, target) > agreeing_prefix(w1.labels, target)) w1 = std::move(back);
      const std::size_t a = agreeing_prefix(w1.labels, target);
      const std::size_t b = static_cast<std::size_t>(std::find(w1.labels.begin(), w1.labels.end(), target[a]) - w1.labels.begin());
      EdgeSet side;
      for (std::size_t k = a; k <= b; ++k) {
        const auto& s = l1[i].behind.at(w1.labels[k]);
        side.insert(s.begin(), s.end());
      }
      emit(w1.vertices[a], w1.vertices[(b + 1) % w1.vertices.size()], side);
      acted = true;
      break;
    }
    if (acted) continue;

    // Orientation at each link, top-down from the smallest non-bond node.
    auto root = std::find_if(order.begin(), order.end(), [&](auto i) { return l1[i].kind != NodeKind::Bond; });
    if (root == order.end()) break;
    std::vector<std::optional<VertexMap>> eff(l1.size());
    auto node_map = [&](std::size_t i) {
      std::map<EdgeId, EdgeId> ident;
      for (const auto& [e, ep] : l1[i].graph.edges()) ident[e] = e;
      auto m = induced_vertex_map(rayless(l1[i].graph), rayless(l2[partner[i]].graph), ident, false);
      if (!m) throw TheoremViolation("Tutte node graphs are not isomorphic under the bijection");
      return *m;
    };
    eff[*root] = node_map(*root);
    std::queue<std::size_t> q;
    q.push(*root);
    while (!q.empty() && !acted) {
      auto p = q.front();
      q.pop();
      const auto& pn = t1.nodes[p];
      auto kids = i1.adj[p];
      std::sort(kids.begin(), kids.end(), [&](const auto& a, const auto& b) { return l1[std::get<0>(a)].key < l1[std::get<0>(b)].key; });
      for (const auto& [c, own, theirs] : kids) {
        if (eff[c]) continue;
        const auto& ep = pn.graph.endpoints(own);
        const auto& x = pn.origin.at(ep.u);
        const auto& y = pn.origin.at(ep.v);
        const auto& px = eff[p]->at(x);
        const auto& py = eff[p]->at(y);
        if (l1[c].kind == NodeKind::Bond) {
          eff[c] = VertexMap{{x, px}, {y, py}};
          q.push(c);
          continue;
        }
        auto m = node_map(c);
        if (m.at(x) == px && m.at(y) == py) {
          eff[c] = std::move(m);
          q.push(c);
        } else if (m.at(x) == py && m.at(y) == px) {
          emit(x, y, i1.far.at(own));
          acted = true;
          break;
        } else {
          throw TheoremViolation("link vertices of " + t1.nodes[c].id + " map outside the parent pair");
        }
      }
    }
    if (!acted) break;
  }

  std::map<EdgeId, EdgeId> ident;
  for (const auto& [e, ep] : cur.core.edges()) ident[e] = e;
  if (!induced_vertex_map(cur, h, ident, true))
    throw TheoremViolation("twists match the graphs but the rays cannot be placed");
  return seq;
}

bool verify_implements(const OpSequence& seq, const EdgeBijection& phi) {
  if (!(seq.initial == phi.source())) return false;
  try {
    auto r = replay(seq);
    return induced_vertex_map(r.final_graph(), phi.target(), phi.map(), true).has_value();
  } catch (const PreconditionError&) {
    return false;
  } catch (const InputError&) {
    return false;
  }
}

Json tree_to_json(const TutteTree& t) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto& n : t.nodes) {
    Json o;
    o["id"] = n.id;
    o["kind"] = node_kind_name(n.kind);
    o["graph"] = graph_to_json(rayless(n.graph));
    o["virtuals"] = edge_set_to_json(n.virtuals);
    o["origin"] = Json::object();
    for (const auto& [l, v] : n.origin) o["origin"][l] = v;
    j["nodes"].push_back(std::move(o));
  }
  j["links"] = Json::array();
  for (const auto& l : t.links)
    j["links"].push_back({{"a", l.a}, {"va", l.va}, {"b", l.b}, {"vb", l.vb}, {"same_orientation", l.same_orientation}});
  return j;
}

TutteTree tree_from_json(const Json& j) {
  auto need = [](const Json& o, const char* k) -> const Json& {
    if (!o.is_object() || !o.contains(k)) throw InputError(std::string("tree field '") + k + "' missing");
    return o[k];
  };
  auto text = [](const Json& v) {
    if (!v.is_string()) throw InputError("tree field must be a string");
    return v.get<std::string>();
  };
  TutteTree t;
  for (const auto& o : need(j, "nodes")) {
    TutteNode n;
    n.id = text(need(o, "id"));
    auto kind = text(need(o, "kind"));
    if (kind == "cycle") {
      n.kind = NodeKind::Cycle;
    } else if (kind == "bond") {
      n.kind = NodeKind::Bond;
    } else if (kind == "three-connected") {
      n.kind = NodeKind::ThreeConnected;
    } else {
      throw InputError("unknown node kind '" + kind + "'");
    }
    n.graph = graph_from_json(need(o, "graph")).core;
    for (const auto& v : need(o, "virtuals")) n.virtuals.insert(text(v));
    const auto& org = need(o, "origin");
    for (auto it = org.begin(); it != org.end(); ++it) n.origin[it.key()] = text(it.value());
    t.nodes.push_back(std::move(n));
  }
  for (const auto& o : need(j, "links")) {
    TutteLink l{text(need(o, "a")), text(need(o, "va")), text(need(o, "b")), text(need(o, "vb")), true};
    const auto& s = need(o, "same_orientation");
    if (!s.is_boolean()) throw InputError("tree field 'same_orientation' must be a boolean");
    l.same_orientation = s.get<bool>();
    t.links.push_back(std::move(l));
  }
  return t;
}

}  // namespace whitney
