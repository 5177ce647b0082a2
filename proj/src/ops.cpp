#include "whitney/ops.hpp"

#include <algorithm>

namespace whitney {

namespace {

VertexSet component_vertices(const RayedGraph& g, const VertexId& start) {
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

std::size_t rays_in(const RayedGraph& g, const VertexSet& vs) {
  std::size_t n = 0;
  for (const auto& v : vs) n += g.rays_at(v);
  return n;
}

// A component of comp(removed) - removed with every edge touching it.
struct Piece {
  VertexSet vertices;
  EdgeSet edges;
  VertexSet attached;  // removed vertices adjacent to it
  std::size_t rays = 0;
};

std::vector<Piece> pieces_around(const RayedGraph& g, const VertexSet& removed) {
  VertexSet seen = removed;
  std::vector<Piece> out;
  for (const auto& r : removed)
    for (const auto& e0 : g.core.incident(r)) {
      const auto& s = g.core.endpoints(e0).other(r);
      if (seen.count(s)) continue;
      Piece p;
      p.vertices.insert(s);
      seen.insert(s);
      std::vector<VertexId> stack{s};
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (const auto& e : g.core.incident(v)) {
          p.edges.insert(e);
          const auto& w = g.core.endpoints(e).other(v);
          if (removed.count(w)) {
            p.attached.insert(w);
          } else if (seen.insert(w).second) {
            p.vertices.insert(w);
            stack.push_back(w);
          }
        }
      }
      p.rays = rays_in(g, p.vertices);
      out.push_back(std::move(p));
    }
  return out;
}

bool subset(const EdgeSet& a, const EdgeSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool disjoint(const EdgeSet& a, const EdgeSet& b) {
  return std::none_of(a.begin(), a.end(), [&](const EdgeId& e) { return b.count(e); });
}

// Checks that `side` is a union of whole pieces, except for allowed loose edges.
// Returns the included pieces; records a violation otherwise.
std::vector<Piece> side_pieces(const RayedGraph& g, const VertexSet& removed, const EdgeSet& side,
                               const std::function<bool(const EdgeId&)>& loose_ok,
                               std::vector<std::string>& out) {
  std::vector<Piece> used;
  EdgeSet covered;
  for (auto& p : pieces_around(g, removed)) {
    if (subset(p.edges, side)) {
      covered.insert(p.edges.begin(), p.edges.end());
      used.push_back(std::move(p));
    } else if (!disjoint(p.edges, side)) {
      out.push_back("side cuts through a component at '" + *p.vertices.begin() + "'");
    }
  }
  for (const auto& e : side)
    if (!covered.count(e) && !loose_ok(e)) out.push_back("side edge '" + e + "' is not in a component hanging at the cut");
  return used;
}

bool check_ids(const RayedGraph& g, const std::vector<VertexId>& vs, const EdgeSet& es,
               std::vector<std::string>& out) {
  bool ok = true;
  for (const auto& v : vs)
    if (!g.core.has_vertex(v)) {
      out.push_back("unknown vertex '" + v + "'");
      ok = false;
    }
  for (const auto& e : es)
    if (!g.core.has_edge(e)) {
      out.push_back("unknown edge '" + e + "'");
      ok = false;
    }
  return ok;
}

std::vector<std::string> validate_split(const FiniteSplit& op, const RayedGraph& g) {
  std::vector<std::string> out;
  if (!check_ids(g, {op.vertex}, op.side, out)) return out;
  if (op.side.empty()) out.push_back("side is empty");
  if (op.copy && g.core.has_vertex(*op.copy)) out.push_back("copy id '" + *op.copy + "' already exists");
  auto loop_at_v = [&](const EdgeId& e) {
    const auto& ep = g.core.endpoints(e);
    return ep.is_loop() && ep.u == op.vertex;
  };
  for (const auto& p : side_pieces(g, {op.vertex}, op.side, loop_at_v, out))
    if (p.rays) out.push_back("side is not ray-free");
  bool rest = g.rays_at(op.vertex) > 0;
  for (const auto& e : g.core.incident(op.vertex))
    if (!op.side.count(e)) rest = true;
  if (!rest) out.push_back("not a cut vertex");
  return out;
}

std::vector<std::string> validate_join(const FiniteJoin& op, const RayedGraph& g) {
  std::vector<std::string> out;
  if (!check_ids(g, {op.keep, op.merge}, {}, out)) return out;
  if (op.keep == op.merge) {
    out.push_back("join vertices coincide");
    return out;
  }
  auto cm = component_vertices(g, op.merge);
  if (cm.count(op.keep)) out.push_back("join vertices lie in one component");
  if (rays_in(g, cm)) out.push_back("joined component is not ray-free");
  if (g.core.degree(op.merge) == 0) out.push_back("merged vertex is isolated");
  if (g.core.degree(op.keep) == 0 && g.rays_at(op.keep) == 0) out.push_back("kept vertex is isolated");
  return out;
}

struct CutInfo {
  VertexId other_ray_vertex;
  VertexId toward_ray_vertex;
  RayId toward;
};

// Shared checks for a 2-ray component; fills `info` when the component qualifies.
bool two_ray_component(const RayedGraph& g, const VertexId& v, std::optional<RayId> toward, CutInfo& info,
                       std::vector<std::string>& out) {
  auto comp = component_vertices(g, v);
  std::vector<std::pair<RayId, VertexId>> rays;
  for (const auto& [r, at] : g.rays)
    if (comp.count(at)) rays.emplace_back(r, at);
  if (rays.size() != 2) {
    out.push_back("component does not have exactly 2 rays");
    return false;
  }
  if (!toward) toward = rays[1].first;
  if (*toward == rays[0].first) {
    info = {rays[1].second, rays[0].second, *toward};
  } else if (*toward == rays[1].first) {
    info = {rays[0].second, rays[1].second, *toward};
  } else {
    out.push_back("ray '" + *toward + "' is not in the component");
    return false;
  }
  return true;
}

// Edges at x leading toward the toward-ray, and the size of the other side.
struct CutSplit {
  EdgeSet right;
  std::size_t left_size = 0;
};

std::optional<CutSplit> split_at(const RayedGraph& g, const VertexId& x, const CutInfo& info,
                                 std::vector<std::string>& out) {
  if (g.rays_at(x)) {
    out.push_back("cut vertex '" + x + "' carries a ray");
    return std::nullopt;
  }
  auto ps = pieces_around(g, {x});
  CutSplit cs;
  bool has_left = false, has_right = false;
  for (const auto& p : ps) {
    if (p.vertices.count(info.toward_ray_vertex)) {
      has_right = true;
      for (const auto& e : g.core.incident(x))
        if (p.edges.count(e)) cs.right.insert(e);
    } else if (p.vertices.count(info.other_ray_vertex)) {
      has_left = true;
      cs.left_size = p.vertices.size();
    } else {
      out.push_back("dangling finite part at cut vertex '" + x + "'");
      return std::nullopt;
    }
  }
  if (!has_left || !has_right) {
    out.push_back("'" + x + "' does not separate the two rays");
    return std::nullopt;
  }
  return cs;
}

std::vector<std::string> validate_two_ended_split(const TwoEndedSplit& op, const RayedGraph& g) {
  std::vector<std::string> out;
  if (op.cuts.empty()) {
    out.push_back("no cut vertices");
    return out;
  }
  if (!check_ids(g, op.cuts, {}, out)) return out;
  if (VertexSet(op.cuts.begin(), op.cuts.end()).size() != op.cuts.size()) out.push_back("cut vertices repeat");
  CutInfo info;
  if (!two_ray_component(g, op.cuts.front(), op.toward, info, out)) return out;
  auto comp = component_vertices(g, op.cuts.front());
  for (const auto& x : op.cuts) {
    if (!comp.count(x)) {
      out.push_back("cut vertex '" + x + "' is in another component");
      continue;
    }
    split_at(g, x, info, out);
  }
  if (!op.copies.empty()) {
    if (op.copies.size() != op.cuts.size()) out.push_back("copy list length differs from cut list");
    VertexSet seen;
    for (const auto& c : op.copies)
      if (g.core.has_vertex(c) || !seen.insert(c).second) out.push_back("copy id '" + c + "' is not fresh");
  }
  return out;
}

struct Chain {
  std::vector<VertexSet> pieces;
};

std::vector<std::string> validate_two_ended_join(const TwoEndedJoin& op, const RayedGraph& g, Chain* chain = nullptr) {
  std::vector<std::string> out;
  if (op.junctions.empty()) {
    out.push_back("no junctions");
    return out;
  }
  std::vector<VertexId> all;
  for (const auto& [a, b] : op.junctions) {
    all.push_back(a);
    all.push_back(b);
  }
  if (!check_ids(g, all, {}, out)) return out;
  if (VertexSet(all.begin(), all.end()).size() != all.size()) out.push_back("junction vertices repeat");
  std::vector<VertexSet> pieces{component_vertices(g, op.junctions[0].first)};
  for (std::size_t i = 0; i < op.junctions.size(); ++i) {
    pieces.push_back(component_vertices(g, op.junctions[i].second));
    if (i + 1 < op.junctions.size() && !pieces.back().count(op.junctions[i + 1].first))
      out.push_back("junction " + std::to_string(i + 1) + " does not continue the chain");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (pieces[i] == pieces[j]) out.push_back("chain visits a component twice");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto r = rays_in(g, pieces[i]);
    bool end = i == 0 || i + 1 == pieces.size();
    if (end && r != 1) out.push_back("end piece " + std::to_string(i) + " does not carry exactly one ray");
    if (!end && r != 0) out.push_back("middle piece " + std::to_string(i) + " is not ray-free");
  }
  if (chain) chain->pieces = std::move(pieces);
  return out;
}

std::vector<std::string> validate_twist_core(const VertexId& x, const VertexId& y, const EdgeSet& side,
                                             const RayedGraph& g, std::size_t* side_rays) {
  std::vector<std::string> out;
  if (!check_ids(g, {x, y}, side, out)) return out;
  if (x == y) {
    out.push_back("cut pair vertices coincide");
    return out;
  }
  if (side.empty()) out.push_back("side is empty");
  auto comp = component_vertices(g, x);
  if (!comp.count(y)) {
    out.push_back("cut pair lies in two components");
    return out;
  }
  auto used = side_pieces(g, {x, y}, side, [](const EdgeId&) { return false; }, out);
  std::size_t rays = 0;
  for (const auto& p : used) {
    rays += p.rays;
    if (p.attached.size() != 2) out.push_back("component at '" + *p.vertices.begin() + "' is not attached to both cut vertices");
  }
  bool rest = g.rays_at(x) + g.rays_at(y) > 0;
  for (const auto& e : induced_edges(g.core, comp))
    if (!side.count(e)) rest = true;
  if (!rest) out.push_back("nothing outside the twisted side");
  if (side_rays) *side_rays = rays;
  return out;
}

std::vector<std::string> validate_finite_twist(const FiniteTwist& op, const RayedGraph& g) {
  std::size_t rays = 0;
  auto out = validate_twist_core(op.x, op.y, op.side, g, &rays);
  if (rays) out.push_back("side is not ray-free");
  return out;
}

std::vector<std::string> validate_record(const TwistRecord& r, const RayedGraph& g) {
  std::size_t rays = 0;
  auto out = validate_twist_core(r.x, r.y, r.side, g, &rays);
  if (!out.empty() || rays == 0) return out;
  CutInfo info;
  if (!two_ray_component(g, r.x, std::nullopt, info, out)) return out;
  if (g.rays_at(r.x) || g.rays_at(r.y)) out.push_back("two-ended cut pair carries a ray");
  if (rays != 1) out.push_back("two-ended side holds both rays");
  return out;
}

std::vector<std::string> validate_simultaneous(const SimultaneousTwist& op, const RayedGraph& g) {
  std::vector<std::string> out;
  if (op.records.empty()) out.push_back("no twist records");
  for (std::size_t i = 0; i < op.records.size(); ++i)
    for (const auto& m : validate_record(op.records[i], g)) out.push_back("record " + std::to_string(i) + ": " + m);
  for (std::size_t i = 0; i < op.records.size(); ++i)
    for (std::size_t j = i + 1; j < op.records.size(); ++j) {
      const auto &a = op.records[i], &b = op.records[j];
      if (a.x == b.x || a.x == b.y || a.y == b.x || a.y == b.y)
        out.push_back("records " + std::to_string(i) + " and " + std::to_string(j) + " share a cut vertex");
      // Sides nest or are disjoint, and no record cuts inside a side it does not contain.
      auto inside = [&](const TwistRecord& r, const VertexId& v) {
        return v != r.x && v != r.y && span(g.core, r.side).count(v) != 0;
      };
      bool crossing = !subset(a.side, b.side) && !subset(b.side, a.side) && !disjoint(a.side, b.side);
      if (!subset(a.side, b.side) && (inside(b, a.x) || inside(b, a.y))) crossing = true;
      if (!subset(b.side, a.side) && (inside(a, b.x) || inside(a, b.y))) crossing = true;
      if (crossing) out.push_back("records " + std::to_string(i) + " and " + std::to_string(j) + " are crossing");
    }
  return out;
}

std::set<std::string> vertex_names(const RayedGraph& g) { return g.core.vertices(); }

void move_edge_end(RayedGraph& g, const EdgeId& e, const VertexId& from, const VertexId& to) {
  auto ep = g.core.endpoints(e);
  VertexId u = ep.u == from ? to : ep.u;
  VertexId v = ep.v == from ? to : ep.v;
  g.core.set_endpoints(e, u, v);
}

// Moves every edge end and ray at `from` to `to`, then deletes `from`.
void merge_vertex(RayedGraph& g, const VertexId& keep, const VertexId& from) {
  for (const auto& e : g.core.incident(from)) move_edge_end(g, e, from, keep);
  for (auto& [r, at] : g.rays)
    if (at == from) at = keep;
  g.core.remove_vertex(from);
}

EdgeSet changed_edges(const RayedGraph& a, const RayedGraph& b) {
  EdgeSet out;
  for (const auto& [e, ep] : a.core.edges())
    if (!(b.core.endpoints(e) == ep)) out.insert(e);
  return out;
}

[[noreturn]] void reject(const std::string& kind, const std::vector<std::string>& v) {
  std::string msg = kind + " rejected:";
  for (const auto& m : v) msg += " " + m + ";";
  throw PreconditionError(msg);
}

}  // namespace

std::string kind_name(const WhitneyOp& op) {
  static const char* names[] = {"FiniteSplit", "FiniteJoin", "TwoEndedSplit", "TwoEndedJoin", "FiniteTwist", "SimultaneousTwist"};
  return names[op.index()];
}

bool is_two_ended(const WhitneyOp& op) {
  return std::holds_alternative<TwoEndedSplit>(op) || std::holds_alternative<TwoEndedJoin>(op) ||
         std::holds_alternative<SimultaneousTwist>(op);
}

std::vector<std::string> validate(const WhitneyOp& op, const RayedGraph& g) {
  return std::visit(
      [&](const auto& o) -> std::vector<std::string> {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FiniteSplit>) return validate_split(o, g);
        if constexpr (std::is_same_v<T, FiniteJoin>) return validate_join(o, g);
        if constexpr (std::is_same_v<T, TwoEndedSplit>) return validate_two_ended_split(o, g);
        if constexpr (std::is_same_v<T, TwoEndedJoin>) return validate_two_ended_join(o, g);
        if constexpr (std::is_same_v<T, FiniteTwist>) return validate_finite_twist(o, g);
        if constexpr (std::is_same_v<T, SimultaneousTwist>) return validate_simultaneous(o, g);
      },
      op);
}

Applied apply(const WhitneyOp& op, const RayedGraph& g) {
  if (auto v = validate(op, g); !v.empty()) reject(kind_name(op), v);
  Applied res{g, op, {}};
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        RayedGraph& h = res.graph;
        if constexpr (std::is_same_v<T, FiniteSplit>) {
          FiniteSplit rec = o;
          if (!rec.copy) rec.copy = fresh_id(o.vertex, vertex_names(g));
          h.core.add_vertex(*rec.copy);
          for (const auto& e : o.side) move_edge_end(h, e, o.vertex, *rec.copy);
          res.recorded = rec;
        } else if constexpr (std::is_same_v<T, FiniteJoin>) {
          FiniteJoin rec = o;
          rec.merged = induced_edges(g.core, component_vertices(g, o.merge));
          merge_vertex(h, o.keep, o.merge);
          res.recorded = rec;
        } else if constexpr (std::is_same_v<T, TwoEndedSplit>) {
          std::vector<std::string> sink;
          CutInfo info;
          two_ray_component(g, o.cuts.front(), o.toward, info, sink);
          std::vector<std::pair<std::size_t, std::size_t>> order;  // (left size, index)
          std::vector<CutSplit> splits;
          for (std::size_t i = 0; i < o.cuts.size(); ++i) {
            splits.push_back(*split_at(g, o.cuts[i], info, sink));
            order.emplace_back(splits.back().left_size, i);
          }
          std::sort(order.begin(), order.end());
          TwoEndedSplit rec;
          rec.toward = info.toward;
          auto taken = vertex_names(g);
          for (auto [size, i] : order) {
            rec.cuts.push_back(o.cuts[i]);
            VertexId c = o.copies.empty() ? fresh_id(o.cuts[i], taken) : o.copies[i];
            taken.insert(c);
            rec.copies.push_back(c);
            h.core.add_vertex(c);
          }
          // All right-hand edge sets come from g, so the splits act simultaneously.
          for (std::size_t k = 0; k < order.size(); ++k) {
            const auto i = order[k].second;
            for (const auto& e : splits[i].right) move_edge_end(h, e, o.cuts[i], rec.copies[k]);
          }
          res.recorded = rec;
        } else if constexpr (std::is_same_v<T, TwoEndedJoin>) {
          Chain chain;
          validate_two_ended_join(o, g, &chain);
          TwoEndedJoin rec = o;
          for (const auto& [r, at] : g.rays)
            if (chain.pieces.back().count(at)) rec.toward = r;
          for (const auto& [exit, entry] : o.junctions) merge_vertex(h, exit, entry);
          res.recorded = rec;
        } else if constexpr (std::is_same_v<T, FiniteTwist>) {
          for (const auto& e : o.side) {
            const auto& ep = g.core.endpoints(e);
            auto sw = [&](const VertexId& p) { return p == o.x ? o.y : p == o.y ? o.x : p; };
            h.core.set_endpoints(e, sw(ep.u), sw(ep.v));
          }
        } else if constexpr (std::is_same_v<T, SimultaneousTwist>) {
          for (const auto& [e, ep] : g.core.edges()) {
            auto sw = [&](const VertexId& p) {
              for (const auto& r : o.records)
                if (r.side.count(e) && (p == r.x || p == r.y)) return p == r.x ? r.y : r.x;
              return p;
            };
            h.core.set_endpoints(e, sw(ep.u), sw(ep.v));
          }
        }
      },
      op);
  res.altered = changed_edges(g, res.graph);
  return res;
}

WhitneyOp invert(const WhitneyOp& recorded) {
  return std::visit(
      [&](const auto& o) -> WhitneyOp {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FiniteSplit>) {
          if (!o.copy) throw InputError("split has no recorded copy id");
          return FiniteJoin{o.vertex, *o.copy, o.side};
        } else if constexpr (std::is_same_v<T, FiniteJoin>) {
          if (o.merged.empty()) throw InputError("join has no recorded edge set");
          return FiniteSplit{o.keep, o.merged, o.merge};
        } else if constexpr (std::is_same_v<T, TwoEndedSplit>) {
          if (o.copies.size() != o.cuts.size()) throw InputError("two-ended split has no recorded copies");
          TwoEndedJoin j;
          for (std::size_t i = 0; i < o.cuts.size(); ++i) j.junctions.emplace_back(o.cuts[i], o.copies[i]);
          return j;
        } else if constexpr (std::is_same_v<T, TwoEndedJoin>) {
          if (!o.toward) throw InputError("two-ended join has no recorded ray");
          TwoEndedSplit s;
          s.toward = o.toward;
          for (const auto& [exit, entry] : o.junctions) {
            s.cuts.push_back(exit);
            s.copies.push_back(entry);
          }
          return s;
        } else {
          return o;  // twists are involutions
        }
      },
      recorded);
}

Applied apply_batch(const std::vector<WhitneyOp>& ops, const RayedGraph& g, std::vector<WhitneyOp>* recorded) {
  Applied cur{g, SimultaneousTwist{}, {}};
  EdgeSet altered;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (auto v = validate(ops[i], cur.graph); !v.empty()) reject("batch op " + std::to_string(i) + " (" + kind_name(ops[i]) + ")", v);
    auto next = whitney::apply(ops[i], cur.graph);
    altered.insert(next.altered.begin(), next.altered.end());
    if (recorded) recorded->push_back(next.recorded);
    cur = std::move(next);
  }
  cur.altered = altered;
  return cur;
}

Replay replay(const OpSequence& seq) {
  Replay r;
  r.graphs.push_back(seq.initial);
  for (const auto& [e, ep] : seq.initial.core.edges()) r.alterations[e] = 0;
  for (std::size_t i = 0; i < seq.ops.size(); ++i) {
    if (auto v = validate(seq.ops[i], r.graphs.back()); !v.empty()) reject("op " + std::to_string(i) + " (" + kind_name(seq.ops[i]) + ")", v);
    auto a = whitney::apply(seq.ops[i], r.graphs.back());
    for (const auto& e : a.altered) ++r.alterations[e];
    r.recorded.push_back(a.recorded);
    r.graphs.push_back(std::move(a.graph));
  }
  if (r.final_graph().core.edge_ids() != seq.initial.core.edge_ids())
    throw TheoremViolation("operation sequence changed the edge set");
  return r;
}

EdgeBijection compose(const OpSequence& seq) {
  auto r = replay(seq);
  return EdgeBijection::identity(std::make_shared<const RayedGraph>(seq.initial),
                                 std::make_shared<const RayedGraph>(r.final_graph()));
}

OpSequence invert_sequence(const OpSequence& seq) {
  auto r = replay(seq);
  OpSequence out;
  out.initial = r.final_graph();
  const bool split_chain = !seq.ops.empty() && std::all_of(seq.ops.begin(), seq.ops.end(), [](const WhitneyOp& op) {
    return std::holds_alternative<FiniteSplit>(op) || std::holds_alternative<TwoEndedSplit>(op);
  });
  if (split_chain) {
    // Joins in the original order, unless a later split acted on an earlier copy; then the
    // original order is not replayable and the reverse order is used.
    for (const auto& op : r.recorded) out.ops.push_back(invert(op));
    try {
      replay(out);
      return out;
    } catch (const PreconditionError&) {
      out.ops.clear();
    }
  }
  for (auto it = r.recorded.rbegin(); it != r.recorded.rend(); ++it) out.ops.push_back(invert(*it));
  return out;
}

WeakIsoReport check_sequence_weak_iso(const OpSequence& seq, const CheckOptions& opt) {
  return check_weak_isomorphism(compose(seq), opt);
}

std::vector<WhitneyOp> candidate_ops(const RayedGraph& g) {
  std::vector<WhitneyOp> raw;
  const auto& V = g.core.vertices();
  auto comps = components(g).blocks;
  for (const auto& v : V) {
    for (const auto& p : pieces_around(g, {v}))
      if (!p.rays) raw.push_back(FiniteSplit{v, p.edges, std::nullopt});
    for (const auto& e : g.core.incident(v))
      if (g.core.endpoints(e).is_loop()) raw.push_back(FiniteSplit{v, {e}, std::nullopt});
  }
  for (const auto& c2 : comps) {
    if (!c2.rays.empty() || c2.edges.empty()) continue;
    for (const auto& c1 : comps) {
      if (c1.vertices == c2.vertices) continue;
      for (const auto& keep : c1.vertices)
        for (const auto& merge : c2.vertices) raw.push_back(FiniteJoin{keep, merge, {}});
    }
  }
  std::vector<TwistRecord> records;
  for (auto x = V.begin(); x != V.end(); ++x)
    for (auto y = std::next(x); y != V.end(); ++y)
      for (const auto& p : pieces_around(g, {*x, *y})) {
        if (p.attached.size() != 2) continue;
        if (!p.rays) raw.push_back(FiniteTwist{*x, *y, p.edges});
        TwistRecord rec{*x, *y, p.edges};
        if (validate_record(rec, g).empty()) {
          if (p.rays) raw.push_back(SimultaneousTwist{{rec}});
          records.push_back(rec);
        }
      }
  // One combined simultaneous twist from a greedy compatible subfamily.
  SimultaneousTwist combined;
  for (const auto& r : records) {
    auto trial = combined;
    trial.records.push_back(r);
    if (validate_simultaneous(trial, g).empty()) combined = std::move(trial);
  }
  if (combined.records.size() > 1) raw.push_back(combined);
  for (const auto& c : comps) {
    if (c.rays.size() != 2) continue;
    std::vector<VertexId> cuts;
    for (const auto& v : c.vertices) {
      TwoEndedSplit s{{v}, std::nullopt, {}};
      if (validate_two_ended_split(s, g).empty()) {
        raw.push_back(s);
        cuts.push_back(v);
      }
    }
    if (cuts.size() > 1) raw.push_back(TwoEndedSplit{cuts, std::nullopt, {}});
  }
  for (const auto& a : comps) {
    if (a.rays.size() != 1) continue;
    for (const auto& b : comps) {
      if (b.rays.size() != 1 || a.vertices == b.vertices) continue;
      for (const auto& exit : a.vertices)
        for (const auto& entry : b.vertices) raw.push_back(TwoEndedJoin{{{exit, entry}}, std::nullopt});
    }
  }
  std::vector<WhitneyOp> out;
  for (auto& op : raw)
    if (validate(op, g).empty()) out.push_back(std::move(op));
  return out;
}

namespace {

Json ids(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

std::vector<std::string> str_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("op field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& x : j[key]) {
    if (!x.is_string()) throw InputError(std::string("op field '") + key + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string str(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw InputError(std::string("op field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

EdgeSet edge_set(const Json& j, const char* key) {
  auto v = str_list(j, key);
  return EdgeSet(v.begin(), v.end());
}

Json record_json(const TwistRecord& r) {
  return Json{{"x", r.x}, {"y", r.y}, {"side", edge_set_to_json(r.side)}};
}

}  // namespace

Json op_to_json(const WhitneyOp& op) {
  Json j{{"kind", kind_name(op)}};
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FiniteSplit>) {
          j["vertex"] = o.vertex;
          j["side"] = edge_set_to_json(o.side);
          if (o.copy) j["copy"] = *o.copy;
        } else if constexpr (std::is_same_v<T, FiniteJoin>) {
          j["keep"] = o.keep;
          j["merge"] = o.merge;
          if (!o.merged.empty()) j["merged"] = edge_set_to_json(o.merged);
        } else if constexpr (std::is_same_v<T, TwoEndedSplit>) {
          j["cuts"] = ids(o.cuts);
          if (o.toward) j["toward"] = *o.toward;
          if (!o.copies.empty()) j["copies"] = ids(o.copies);
        } else if constexpr (std::is_same_v<T, TwoEndedJoin>) {
          Json a = Json::array();
          for (const auto& [x, y] : o.junctions) a.push_back(Json{{"exit", x}, {"entry", y}});
          j["junctions"] = a;
          if (o.toward) j["toward"] = *o.toward;
        } else if constexpr (std::is_same_v<T, FiniteTwist>) {
          j["x"] = o.x;
          j["y"] = o.y;
          j["side"] = edge_set_to_json(o.side);
        } else {
          Json a = Json::array();
          for (const auto& r : o.records) a.push_back(record_json(r));
          j["records"] = a;
        }
      },
      op);
  return j;
}

WhitneyOp op_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("op must be an object");
  auto kind = str(j, "kind");
  if (kind == "FiniteSplit") {
    FiniteSplit o{str(j, "vertex"), edge_set(j, "side"), std::nullopt};
    if (j.contains("copy")) o.copy = str(j, "copy");
    return o;
  }
  if (kind == "FiniteJoin") {
    FiniteJoin o{str(j, "keep"), str(j, "merge"), {}};
    if (j.contains("merged")) o.merged = edge_set(j, "merged");
    return o;
  }
  if (kind == "TwoEndedSplit") {
    TwoEndedSplit o{str_list(j, "cuts"), std::nullopt, {}};
    if (j.contains("toward")) o.toward = str(j, "toward");
    if (j.contains("copies")) o.copies = str_list(j, "copies");
    return o;
  }
  if (kind == "TwoEndedJoin") {
    TwoEndedJoin o;
    if (!j.contains("junctions") || !j["junctions"].is_array()) throw InputError("op field 'junctions' must be an array");
    for (const auto& x : j["junctions"]) o.junctions.emplace_back(str(x, "exit"), str(x, "entry"));
    if (j.contains("toward")) o.toward = str(j, "toward");
    return o;
  }
  if (kind == "FiniteTwist") return FiniteTwist{str(j, "x"), str(j, "y"), edge_set(j, "side")};
  if (kind == "SimultaneousTwist") {
    SimultaneousTwist o;
    if (!j.contains("records") || !j["records"].is_array()) throw InputError("op field 'records' must be an array");
    for (const auto& r : j["records"]) o.records.push_back({str(r, "x"), str(r, "y"), edge_set(r, "side")});
    return o;
  }
  throw InputError("unknown op kind '" + kind + "'");
}

Json sequence_to_json(const OpSequence& seq) {
  Json ops = Json::array();
  for (const auto& op : seq.ops) ops.push_back(op_to_json(op));
  return Json{{"initial", graph_to_json(seq.initial)}, {"ops", ops}};
}

OpSequence sequence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("initial") || !j.contains("ops") || !j["ops"].is_array())
    throw InputError("sequence needs 'initial' and 'ops'");
  OpSequence s;
  s.initial = graph_from_json(j["initial"]);
  for (const auto& o : j["ops"]) s.ops.push_back(op_from_json(o));
  return s;
}

}  // namespace whitney
