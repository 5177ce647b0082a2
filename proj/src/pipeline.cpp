#include "whitney/pipeline.hpp"

#include <algorithm>

#include "whitney/forests.hpp"
#include "whitney/indexed.hpp"
#include "whitney/structure.hpp"
#include "whitney/tutte.hpp"

namespace whitney {

namespace {

void require_weak_iso(const EdgeBijection& phi, const CheckOptions& opt) {
  auto rep = check_weak_isomorphism(phi, opt);
  if (rep.verdict) return;
  std::string why = !rep.cycle.holds ? "cycles are not preserved" : "tameness is not preserved";
  throw PreconditionError("bijection is not a weak isomorphism: " + why);
}

std::map<VertexId, std::size_t> degrees_of(const Multigraph& g, const EdgeSet& es) {
  std::map<VertexId, std::size_t> d;
  for (const auto& e : es) {
    const auto& ep = g.endpoints(e);
    ++d[ep.u];
    ++d[ep.v];
  }
  return d;
}

}  // namespace

RigidityResult rigidity_check(const EdgeBijection& phi, const CheckOptions& opt) {
  const auto& g = phi.source();
  const auto& h = phi.target();
  require_weak_iso(phi, opt);

  RigidityResult out;
  if (g.ray_count() == 0) {
    if (!is_connected(g.core)) throw PreconditionError("ray-free input must be connected");
    if (!is_strongly_n_connected(g.core, 3)) throw PreconditionError("ray-free input is not strongly 3-connected");
    out.route = "ray-free";
  } else {
    for (const auto& [e, ep] : g.core.edges())
      if (ep.is_loop()) throw PreconditionError("loop '" + e + "' in the source");
    for (const auto& b : components(g).blocks)
      if (b.rays.size() < 3)
        throw PreconditionError("component at '" + *b.vertices.begin() + "' has " + std::to_string(b.rays.size()) +
                                " rays; rigidity needs at least three");
    auto w = is_weakly_n_connected(g, 3);
    if (!w.holds) {
      std::string sep;
      for (const auto& v : w.removed) sep += (sep.empty() ? "" : ",") + v;
      throw PreconditionError("source is not weakly 3-connected: removing {" + sep + "} leaves a ray-free component");
    }
    out.route = "many-ended";
  }

  const auto all = wedges(g.core);
  IndexedGraph ih(h);
  if (out.route == "many-ended") {
    // Cover structures of each far-apart class keep their shape under phi, and the wedges of
    // the class map to wedges.
    for (const auto& cls : far_apart_classes(g, all)) {
      ++out.classes;
      auto cover = wedge_cover(g, cls);
      for (const auto& msg : verify_wedge_cover(g, cover)) out.failures.push_back("wedge cover: " + msg);
      for (const auto& part : cover.parts) {
        if (part.kind == CoverKind::Cycles) {
          for (const auto& c : part.cycles) {
            std::vector<int> idx;
            for (const auto& e : phi.image(c)) idx.push_back(ih.edge(e));
            std::sort(idx.begin(), idx.end());
            if (!is_cycle(ih, idx)) out.failures.push_back("image of a covering cycle is not a cycle");
          }
        } else if (part.kind == CoverKind::Forest) {
          for (const auto& [v, d] : degrees_of(h.core, phi.image(part.forest)))
            if (d == 1 && !h.rays_at(v)) out.failures.push_back("forest image has a ray-free leaf at '" + v + "'");
        }
      }
      for (const auto& w : cls) {
        ++out.wedges_checked;
        if (!wedge_image(phi, w).is_wedge)
          out.failures.push_back("wedge (" + w.left + ", " + w.right + ") maps to a non-wedge");
      }
    }
  } else {
    for (const auto& w : all) {
      ++out.wedges_checked;
      if (!wedge_image(phi, w).is_wedge)
        out.failures.push_back("wedge (" + w.left + ", " + w.right + ") maps to a non-wedge");
    }
  }

  auto iso = extract_induced_isomorphism(phi);
  if (!iso.ok) {
    out.failures.push_back("no induced isomorphism: " + iso.failure);
  } else if (!iso.rays_respected) {
    out.failures.push_back("induced vertex map does not respect rays");
  } else {
    out.psi = iso.psi;
  }
  out.ok = out.failures.empty();
  return out;
}

namespace {

// Stage failures carry their stage name.
[[noreturn]] void stage_failure(const std::string& stage, const std::string& what) {
  throw TheoremViolation(stage + ": " + what);
}

template <class F>
auto in_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const TheoremViolation& e) {
    stage_failure(stage, e.what());
  } catch (const PreconditionError& e) {
    stage_failure(stage, e.what());
  }
}

VertexId mapped(const VertexMap& m, const VertexId& v) {
  auto it = m.find(v);
  if (it == m.end()) throw TheoremViolation("vertex '" + v + "' has no image");
  return it->second;
}

EdgeSet mapped(const std::map<EdgeId, EdgeId>& m, const EdgeSet& es) {
  EdgeSet out;
  for (const auto& e : es) out.insert(m.at(e));
  return out;
}

// Renames the vertices and edges of a join onto the current graph.
WhitneyOp rename_join(const WhitneyOp& op, const VertexMap& vm, const std::map<EdgeId, EdgeId>& em) {
  return std::visit(
      [&](const auto& o) -> WhitneyOp {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FiniteJoin>) {
          return FiniteJoin{mapped(vm, o.keep), mapped(vm, o.merge), mapped(em, o.merged)};
        } else if constexpr (std::is_same_v<T, TwoEndedJoin>) {
          TwoEndedJoin j;
          for (const auto& [exit, entry] : o.junctions) j.junctions.emplace_back(mapped(vm, exit), mapped(vm, entry));
          return j;
        } else {
          throw TheoremViolation("inverse of a split is not a join: " + kind_name(op));
        }
      },
      op);
}

RayedGraph with_aux(const RayedGraph& g, const EdgeSet& b, const std::pair<VertexId, VertexId>& ends, const EdgeId& aux) {
  RayedGraph out;
  for (const auto& v : span(g.core, b)) out.core.add_vertex(v);
  for (const auto& e : b) {
    const auto& ep = g.core.endpoints(e);
    out.core.add_edge(e, ep.u, ep.v);
  }
  out.core.add_edge(aux, ends.first, ends.second);
  return out;
}

RayedGraph apply_all(RayedGraph g, const std::vector<WhitneyOp>& ops, std::vector<WhitneyOp>& recorded) {
  for (const auto& op : ops) {
    if (auto v = validate(op, g); !v.empty()) throw TheoremViolation("emitted " + kind_name(op) + " is invalid: " + v.front());
    auto a = whitney::apply(op, g);
    recorded.push_back(a.recorded);
    g = std::move(a.graph);
  }
  return g;
}

// Bananas of a component with three or more rays: the banana partitions correspond, each
// banana closed by an auxiliary boundary edge is synthesized on its own, and bananas whose
// boundary comes out reversed against the banana-level map are flipped as a whole.
std::vector<WhitneyOp> banana_route(const RayedGraph& s1, const RayedGraph& s2, const std::map<EdgeId, EdgeId>& phi,
                                    ComponentStage& stage) {
  auto d1 = enumerate_maximal_bananas(s1);
  auto d2 = enumerate_maximal_bananas(s2);
  std::map<EdgeId, EdgeId> ban_map;
  for (const auto& b : d1.bananas) {
    auto img = mapped(phi, b.edges);
    auto it = d2.banana_of.find(*img.begin());
    if (it == d2.banana_of.end()) throw TheoremViolation("banana image lies outside the target");
    const auto& b2 = *std::find_if(d2.bananas.begin(), d2.bananas.end(), [&](const Banana& x) { return x.id == it->second; });
    if (b2.edges != img) throw TheoremViolation(b.id + " does not map onto a maximal banana");
    ban_map[b.id] = b2.id;
  }
  auto psi = induced_vertex_map(d1.quotient, d2.quotient, ban_map, true);
  if (!psi) throw TheoremViolation("banana quotients are not isomorphic under the bijection");

  std::set<std::string> taken;
  for (const auto& [e, ep] : s1.core.edges()) taken.insert(e);
  for (const auto& [e, ep] : s2.core.edges()) taken.insert(e);

  std::vector<WhitneyOp> ops;
  RayedGraph cur = s1;
  for (const auto& b : d1.bananas) {
    const auto& b2 = *std::find_if(d2.bananas.begin(), d2.bananas.end(), [&](const Banana& x) { return x.id == ban_map[b.id]; });
    const EdgeId aux = fresh_id("aux:" + b.id, taken);
    auto bar1 = with_aux(s1, b.edges, b.boundary, aux);
    auto bar2 = with_aux(s2, b2.edges, b2.boundary, aux);
    std::map<EdgeId, EdgeId> m{{aux, aux}};
    for (const auto& e : b.edges) m[e] = phi.at(e);
    EdgeBijection local(bar1, bar2, m);
    auto seq = synthesize_twists(local, SynthesisOptions{{aux}});
    std::vector<WhitneyOp> rec;
    auto done = apply_all(bar1, seq.ops, rec);
    auto theta = induced_vertex_map(done, bar2, m, false);
    if (!theta) throw TheoremViolation("synthesis for " + b.id + " does not reach the target banana");
    std::vector<WhitneyOp> local_ops = seq.ops;
    const auto& [p, q] = b.boundary;
    if (theta->at(p) != psi->at(p)) {
      EdgeSet side;
      for (const auto& e : b.edges) {
        const auto& ep = s1.core.endpoints(e);
        if (!(ep.touches(p) && ep.touches(q))) side.insert(e);
      }
      if (!side.empty()) {
        local_ops.push_back(FiniteTwist{p, q, side});
        stage.bananas.push_back(b.id);
      }
    }
    std::vector<WhitneyOp> applied;
    cur = apply_all(cur, local_ops, applied);
    ops.insert(ops.end(), applied.begin(), applied.end());
  }
  return ops;
}

}  // namespace

PipelineResult implement_weak_iso(const EdgeBijection& phi, const CheckOptions& opt) {
  require_weak_iso(phi, opt);
  PipelineResult out;
  const auto& phimap = phi.map();

  auto b1 = in_stage("split source", [&] { return block_decompose(phi.source()); });
  auto b2 = in_stage("split target", [&] { return block_decompose(phi.target()); });
  out.source_splits = b1.splits;
  out.target_splits = b2.splits;
  const RayedGraph& g1 = b1.result;
  const RayedGraph& g2 = b2.result;

  out.sequence.initial = phi.source();
  out.sequence.ops = b1.splits.ops;
  RayedGraph cur = g1;

  auto parts1 = components(g1);
  auto parts2 = components(g2);
  for (const auto& block : parts1.blocks) {
    ComponentStage stage;
    stage.component = *block.vertices.begin();
    stage.rays = block.rays.size();
    const std::string name = "component " + stage.component;
    if (block.edges.empty()) {
      stage.route = "finite";
      out.components.push_back(std::move(stage));
      continue;
    }
    std::set<std::size_t> targets;
    for (const auto& e : block.edges) targets.insert(parts2.block_of(g2.core.endpoints(phimap.at(e)).u));
    if (targets.size() != 1) stage_failure(name, "edges map into several target components");
    const auto& tb = parts2.blocks[*targets.begin()];
    if (tb.edges.size() != block.edges.size()) stage_failure(name, "target component has a different edge count");
    if (tb.rays.size() != block.rays.size()) stage_failure(name, "target component has a different ray count");

    auto s1 = induced_subgraph(g1, block.vertices);
    auto s2 = induced_subgraph(g2, tb.vertices);
    std::map<EdgeId, EdgeId> local;
    for (const auto& e : block.edges) local[e] = phimap.at(e);

    std::vector<WhitneyOp> ops;
    if (block.rays.size() >= 3) {
      stage.route = "bananas";
      ops = in_stage(name, [&] { return banana_route(s1, s2, local, stage); });
    } else {
      stage.route = block.rays.empty() ? "finite" : block.rays.size() == 1 ? "one-ended" : "two-ended";
      // A lone loop is already in place.
      if (block.edges.size() > 1 || !s1.core.endpoints(*block.edges.begin()).is_loop())
        ops = in_stage(name, [&] { return synthesize_twists(EdgeBijection(s1, s2, local)).ops; });
    }
    std::vector<WhitneyOp> rec;
    cur = in_stage(name, [&] { return apply_all(cur, ops, rec); });
    stage.ops = rec;
    out.sequence.ops.insert(out.sequence.ops.end(), rec.begin(), rec.end());
    out.components.push_back(std::move(stage));
  }

  // The split target, reached up to isomorphism; its splits are undone by joins renamed
  // through that isomorphism.
  auto theta = induced_vertex_map(cur, g2, phimap, true);
  if (!theta) stage_failure("match split graphs", "components do not assemble to the split target");
  VertexMap back;
  for (const auto& [v, w] : *theta) back[w] = v;
  std::map<EdgeId, EdgeId> edge_back;
  for (const auto& [e, f] : phimap) edge_back[f] = e;
  auto inverse = in_stage("join", [&] { return invert_sequence(b2.splits); });
  std::vector<WhitneyOp> renamed;
  for (const auto& op : inverse.ops) renamed.push_back(rename_join(op, back, edge_back));
  std::vector<WhitneyOp> rec;
  cur = in_stage("join", [&] { return apply_all(cur, renamed, rec); });
  out.joins = rec;
  out.sequence.ops.insert(out.sequence.ops.end(), rec.begin(), rec.end());

  auto fin = induced_vertex_map(cur, phi.target(), phimap, true);
  if (!fin) stage_failure("final isomorphism", "joined graph is not isomorphic to the target under the bijection");
  out.final_isomorphism = *fin;
  out.verified = verify_implements(out.sequence, phi);
  if (!out.verified) stage_failure("verify", "sequence does not implement the bijection");
  return out;
}

Json rigidity_to_json(const RigidityResult& r) {
  Json j;
  j["ok"] = r.ok;
  j["route"] = r.route;
  j["classes"] = r.classes;
  j["wedges_checked"] = r.wedges_checked;
  j["psi"] = Json::object();
  for (const auto& [v, w] : r.psi) j["psi"][v] = w;
  j["failures"] = r.failures;
  return j;
}

namespace {

Json ops_json(const std::vector<WhitneyOp>& ops) {
  Json a = Json::array();
  for (const auto& op : ops) a.push_back(op_to_json(op));
  return a;
}

}  // namespace

Json pipeline_to_json(const PipelineResult& r) {
  Json j;
  j["source_splits"] = ops_json(r.source_splits.ops);
  j["target_splits"] = ops_json(r.target_splits.ops);
  j["components"] = Json::array();
  for (const auto& c : r.components) {
    Json o;
    o["component"] = c.component;
    o["rays"] = c.rays;
    o["route"] = c.route;
    o["ops"] = ops_json(c.ops);
    if (!c.bananas.empty()) o["flipped_bananas"] = c.bananas;
    j["components"].push_back(std::move(o));
  }
  j["joins"] = ops_json(r.joins);
  j["sequence"] = sequence_to_json(r.sequence);
  j["final_isomorphism"] = Json::object();
  for (const auto& [v, w] : r.final_isomorphism) j["final_isomorphism"][v] = w;
  j["verified"] = r.verified;
  return j;
}

}  // namespace whitney
