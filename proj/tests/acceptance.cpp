// Acceptance run: one PASS or FAIL line per criterion, details indented below it.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "whitney/fixtures.hpp"
#include "whitney/forests.hpp"
#include "whitney/iso.hpp"
#include "whitney/matroid.hpp"
#include "whitney/ops.hpp"
#include "whitney/pipeline.hpp"
#include "whitney/structure.hpp"
#include "whitney/tutte.hpp"
#include "whitney/weak_iso.hpp"

using namespace whitney;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "    violated: " << what << "\n";
    }
  }
};

std::map<EdgeId, EdgeId> zip(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  std::map<EdgeId, EdgeId> m;
  for (std::size_t i = 0; i < a.size(); ++i) m[a[i]] = b[i];
  return m;
}

// Every labeled simple graph on `n` vertices, as edge masks over the vertex pairs.
std::vector<RayedGraph> all_simple_graphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<RayedGraph> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs.size()); ++m) {
    RayedGraph g;
    for (std::size_t i = 0; i < n; ++i) g.core.add_vertex("v" + std::to_string(i));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (m >> k & 1)
        g.core.add_edge("e" + std::to_string(k), "v" + std::to_string(pairs[k].first),
                        "v" + std::to_string(pairs[k].second));
    out.push_back(std::move(g));
  }
  return out;
}

bool eligible_for_bananas(const RayedGraph& g) {
  for (const auto& [e, ep] : g.core.edges())
    if (ep.is_loop()) return false;
  for (const auto& b : components(g).blocks)
    if (b.rays.size() < 3) return false;
  return oracle::weakly_n_connected(g, 2);
}

bool leafless_oracle(const RayedGraph& g, const EdgeSet& f) {
  if (!oracle::acyclic(g, f)) return false;
  std::map<VertexId, std::size_t> deg;
  for (const auto& e : f) {
    const auto& ep = g.core.endpoints(e);
    ++deg[ep.u];
    ++deg[ep.v];
  }
  for (const auto& [v, d] : deg)
    if (d == 1 && g.rays_at(v) == 0) return false;
  for (const auto& c : oracle::bfs_components(g, f))
    if (c.size() > 1 && oracle::rays_in(g, c) < 3) return false;
  return true;
}

// Criterion 1: rank axioms, every graph on at most five vertices and 200 random rayed graphs.
Outcome rank_axioms() {
  Outcome o;
  std::size_t graphs = 0, pairs = 0;
  auto check = [&](const RayedGraph& g, const std::string& label) {
    auto rep = verify_rank_axioms(RankOracle(g));
    ++graphs;
    pairs += rep.pairs_checked;
    o.require(rep.exhaustive, label + " not checked exhaustively");
    o.require(rep.ok(), label + " has " + std::to_string(rep.violations.size()) + " axiom violations");
  };
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : all_simple_graphs(n)) check(g, "simple graph on " + std::to_string(n) + " vertices");
  // Ray placements with up to two rays per vertex on every graph with at most four vertices.
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& base : all_simple_graphs(n)) {
      std::size_t placements = 1;
      for (std::size_t i = 0; i < n; ++i) placements *= 3;
      for (std::size_t p = 1; p < placements; ++p) {
        auto g = base;
        std::size_t code = p;
        for (std::size_t i = 0; i < n; ++i, code /= 3)
          for (std::size_t r = 0; r < code % 3; ++r)
            g.add_ray("r" + std::to_string(i) + "_" + std::to_string(r), "v" + std::to_string(i));
        check(g, "rayed graph on " + std::to_string(n) + " vertices");
      }
    }
  for (std::uint64_t seed = 0; seed < 200; ++seed) check(random_rayed_graph(seed, 6, 14, 4), "random seed " + std::to_string(seed));
  // Independent spot check of submodularity with the component-counting rank.
  std::mt19937_64 rng(1);
  std::size_t spot = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_rayed_graph(seed, 6, 14, 4);
    auto es = oracle::edge_list(g);
    if (es.empty()) continue;
    const std::uint64_t full = (std::uint64_t{1} << es.size()) - 1;
    for (int t = 0; t < 50; ++t, ++spot) {
      auto a = oracle::subset(es, rng() & full), b = oracle::subset(es, rng() & full);
      EdgeSet u = a, i;
      u.insert(b.begin(), b.end());
      for (const auto& e : a)
        if (b.count(e)) i.insert(e);
      o.require(oracle::rank(g, u) + oracle::rank(g, i) <= oracle::rank(g, a) + oracle::rank(g, b),
                "oracle submodularity, seed " + std::to_string(seed));
    }
  }
  o.detail << "    " << graphs << " graphs, " << pairs << " subset pairs, " << spot << " oracle spot checks\n";
  return o;
}

// Criterion 2: ray-free rank against union-find.
Outcome finite_rank() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    auto g = random_simple_graph(k, 2 + k % 7);
    auto es = oracle::edge_list(g);
    const std::uint64_t full = es.empty() ? 0 : (std::uint64_t{1} << es.size()) - 1;
    auto f = oracle::subset(es, rng() & full);
    RankOracle r(g);
    o.require(r.rank(f) == oracle::union_find_rank(g, f), "pair " + std::to_string(k));
  }
  o.detail << "    1000 (graph, subset) pairs\n";
  return o;
}

// Criterion 3: weak isomorphisms of rigid graphs are exactly the induced ones.
Outcome rigidity() {
  Outcome o;
  for (std::string name : {"k4", "k5", "prism", "wheel5", "octahedron", "tree3"}) {
    auto g = fixture(name);
    auto found = search_weak_isomorphisms(g, g);
    std::set<std::map<EdgeId, EdgeId>> searched, induced;
    for (const auto& phi : found.found) searched.insert(phi.map());
    for (const auto& psi : vertex_isomorphisms(g, g))
      for (const auto& m : edge_maps_of(g, g, psi)) induced.insert(m);
    o.require(found.exact, name + ": search truncated");
    o.require(searched == induced, name + ": " + std::to_string(searched.size()) + " found, " +
                                       std::to_string(induced.size()) + " induced");
    o.detail << "    " << name << ": " << searched.size() << " weak isomorphisms, " << induced.size() << " induced\n";
  }
  auto k4 = fixture("k4");
  auto es = oracle::edge_list(k4);
  auto perm = es;
  std::set<std::map<EdgeId, EdgeId>> brute;
  std::size_t tried = 0;
  do {
    ++tried;
    auto m = zip(es, perm);
    if (oracle::weak_iso(k4, k4, m)) brute.insert(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::map<EdgeId, EdgeId>> autos;
  for (const auto& m : oracle::simple_graph_automorphism_edge_maps(k4, k4)) autos.insert(m);
  o.require(tried == 720, "K4 brute force did not see 720 bijections");
  o.require(brute.size() == 24 && brute == autos, "K4 brute force gives " + std::to_string(brute.size()));
  o.detail << "    K4 brute force: " << brute.size() << " of " << tried << " bijections\n";
  return o;
}

// Criterion 4: twist synthesis on the 4-cycle and on random 2-connected graphs.
Outcome synthesis() {
  Outcome o;
  auto c = cycle_graph(4);
  auto es = oracle::edge_list(c);
  auto perm = es;
  std::size_t n = 0;
  do {
    EdgeBijection phi(c, c, zip(es, perm));
    o.require(verify_implements(synthesize_twists(phi), phi), "4-cycle permutation " + std::to_string(n));
    ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::size_t ops = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_two_connected(seed, 12);
    auto phi = compose(random_twist_sequence(g, seed, 5));
    try {
      auto seq = synthesize_twists(phi);
      ops += seq.ops.size();
      o.require(verify_implements(seq, phi), "random graph " + std::to_string(seed) + " does not verify");
    } catch (const std::exception& e) {
      o.require(false, "random graph " + std::to_string(seed) + ": " + e.what());
    }
  }
  o.detail << "    " << n << " permutations of the 4-cycle, 100 random graphs, " << ops << " twists synthesized\n";
  return o;
}

// Criterion 5: Tutte decomposition round trip.
Outcome tutte_round_trip() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_two_connected(seed, 12);
    auto t = tutte_decompose(g.core);
    const auto label = "seed " + std::to_string(seed);
    o.require(validate_tree(t).empty(), label + ": invalid tree");
    o.require(oracle::isomorphic(reassemble(t), g.core), label + ": reassembly not isomorphic");
    for (const auto& l : t.links) {
      const auto a = t.node(l.a).kind, b = t.node(l.b).kind;
      o.require(!(a == b && a != NodeKind::ThreeConnected), label + ": adjacent " + node_kind_name(a) + " nodes");
    }
  }
  auto theta = tutte_decompose(theta_graph().core);
  std::size_t bonds = 0, cycles = 0;
  for (const auto& n : theta.nodes) {
    bonds += n.kind == NodeKind::Bond;
    cycles += n.kind == NodeKind::Cycle;
  }
  o.require(theta.nodes.size() == 4 && bonds == 1 && cycles == 3, "theta graph shape");
  o.detail << "    200 random graphs; theta: " << bonds << " bond, " << cycles << " cycles\n";
  return o;
}

// Criterion 6: minimum spanning forests and their lemmas.
Outcome fmsf_suite() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_rayed_graph(seed, 7, 14, 4);
    auto order = seeded_order(g, seed);
    o.require(fmsf(g, order) == oracle::reverse_delete_forest(g, order), "seed " + std::to_string(seed));
  }
  std::mt19937_64 rng(6);
  std::size_t subsets = 0;
  for (std::uint64_t seed = 0; subsets < 100; ++seed) {
    auto g = random_rayed_graph(seed, 7, 14, 4);
    EdgeSet s;
    for (const auto& b : biconnected_blocks(g.core))
      if (rng() % 2) s.insert(b.begin(), b.end());
    auto order = seeded_order(g, seed + 1000);
    // Restriction computed by the oracle on the subgraph.
    std::vector<EdgeId> sub_order;
    for (const auto& e : order)
      if (s.count(e)) sub_order.push_back(e);
    auto restricted = oracle::reverse_delete_forest(edge_subgraph(g, s), sub_order);
    EdgeSet full_on_s;
    for (const auto& e : fmsf(g, order))
      if (s.count(e)) full_on_s.insert(e);
    o.require(full_on_s == restricted, "restriction, seed " + std::to_string(seed));
    o.require(check_fmsf_lemmas(g, order, s).restriction_holds, "library restriction report, seed " + std::to_string(seed));
    ++subsets;
  }
  std::size_t rayed = 0;
  for (const auto& name : fixture_names()) {
    auto g = fixture(name);
    if (g.ray_count() == 0) continue;
    ++rayed;
    auto f = fmsf(g, sorted_order(g));
    auto forest = oracle::bfs_components(g, f);
    for (const auto& c : oracle::bfs_components(g, g.core.edge_ids())) {
      if (oracle::rays_in(g, c) == 0) continue;
      for (const auto& v : c)
        for (const auto& fc : forest)
          if (fc.count(v)) o.require(oracle::rays_in(g, fc) > 0, name + ": '" + v + "' stranded");
    }
    o.require(check_fmsf_lemmas(g, sorted_order(g), g.core.edge_ids()).ok(), name + ": lemma report");
  }
  o.detail << "    200 seeds, " << subsets << " cycle-closed subsets, " << rayed << " rayed fixtures\n";
  return o;
}

// Criterion 7: maximal bananas.
Outcome banana_suite() {
  Outcome o;
  std::size_t compared = 0;
  for (const auto& name : fixture_names()) {
    auto g = fixture(name);
    if (g.core.edge_count() > 18 || !eligible_for_bananas(g)) continue;
    ++compared;
    auto d = enumerate_maximal_bananas(g);
    std::set<EdgeSet> mine;
    for (const auto& b : d.bananas) mine.insert(b.edges);
    o.require(mine == oracle::maximal_bananas(g), name + ": differs from exhaustive search");
    o.detail << "    " << name << ": " << d.bananas.size() << " bananas match exhaustive search\n";
  }
  for (std::string name : {"gadget-triangle", "subtree2", "subtree3"}) {
    auto g = fixture(name);
    auto d = enumerate_maximal_bananas(g);
    std::map<EdgeId, std::size_t> hits;
    for (const auto& b : d.bananas)
      for (const auto& e : b.edges) ++hits[e];
    bool partition = hits.size() == g.core.edge_count();
    for (const auto& [e, n] : hits) partition &= n == 1;
    o.require(partition, name + ": bananas do not partition the edges");
    o.require(check_ban_weakly_3_connected(d) && oracle::weakly_n_connected(d.quotient, 3),
              name + ": banana quotient not weakly 3-connected");
    std::size_t paths = 0;
    for (const auto& b : d.bananas)
      for (const auto& e : b.edges) {
        auto p = path_through_edge_in_banana(g, d, b.id, e);
        VertexId at = b.boundary.first;
        VertexSet seen{at};
        bool ok = std::find(p.begin(), p.end(), e) != p.end();
        for (const auto& f : p) {
          const auto& ep = g.core.endpoints(f);
          ok &= b.edges.count(f) && ep.touches(at);
          if (!ok) break;
          at = ep.other(at);
          ok &= seen.insert(at).second;
        }
        o.require(ok && at == b.boundary.second, name + ": no boundary path through " + e);
        ++paths;
      }
    o.detail << "    " << name << ": " << d.bananas.size() << " bananas, quotient weakly 3-connected, " << paths
             << " boundary paths\n";
  }
  o.require(compared >= 4, "too few fixtures compared");
  return o;
}

// Criterion 8: leafless forest covers.
Outcome forest_covers() {
  Outcome o;
  for (std::string name : {"tree3", "subtree3", "gadget-triangle"}) {
    auto g = fixture(name);
    auto cover = leafless_cover(g);
    RankOracle r(g);
    EdgeSet all;
    for (const auto& f : cover.forests) {
      o.require(verify_leafless(g, f) && leafless_oracle(g, f), name + ": forest not leafless");
      o.require(is_superfluous_analog(r, f), name + ": forest not superfluous");
      all.insert(f.begin(), f.end());
    }
    o.require(all == g.core.edge_ids(), name + ": forests miss edges");
    o.detail << "    " << name << ": " << cover.forests.size() << " forests cover " << all.size() << " of "
             << g.core.edge_count() << " edges\n";
  }
  return o;
}

// Independent check of one wedge cover part.
bool part_holds(const RayedGraph& g, const WedgeClassCover& p) {
  VertexSet centers;
  for (const auto& w : p.wedges) centers.insert(w.center);
  if (p.kind == CoverKind::Cycles) {
    if (p.cycles.size() != p.wedges.size()) return false;
    VertexSet used;
    for (std::size_t i = 0; i < p.cycles.size(); ++i) {
      const auto& cyc = p.cycles[i];
      if (!oracle::is_cycle(g, cyc)) return false;
      auto vs = span(g.core, cyc);
      if (!vs.count(p.wedges[i].endpoints.first) || !vs.count(p.wedges[i].endpoints.second)) return false;
      for (const auto& v : vs)
        if (centers.count(v) || !used.insert(v).second) return false;
    }
    return true;
  }
  if (p.kind == CoverKind::Forest) {
    if (!leafless_oracle(g, p.forest)) return false;
    auto vs = span(g.core, p.forest);
    for (const auto& v : vs)
      if (centers.count(v)) return false;
    for (const auto& w : p.wedges)
      for (const auto& v : {w.endpoints.first, w.endpoints.second})
        if (!vs.count(v) && g.rays_at(v) < 3) return false;
    return true;
  }
  return false;
}

// Criterion 9: wedge covers.
Outcome wedge_covers() {
  Outcome o;
  for (std::string name : {"tree3", "subtree3", "gadget-triangle", "wedge-gadget"}) {
    auto g = fixture(name);
    auto classes = far_apart_classes(g, wedges(g.core), 6);
    std::size_t covered = 0, failed = 0;
    std::string first_failure;
    for (const auto& cls : classes) {
      auto c = wedge_cover(g, cls, 6);
      bool ok = c.ok() && verify_wedge_cover(g, c).empty();
      for (const auto& p : c.parts) {
        ok &= part_holds(g, p);
        if (p.kind == CoverKind::Failed && first_failure.empty()) first_failure = p.failure;
      }
      (ok ? covered : failed) += 1;
    }
    o.require(failed == 0, name + ": " + std::to_string(failed) + " of " + std::to_string(classes.size()) +
                               " classes uncovered, first: " + first_failure);
    o.detail << "    " << name << ": " << covered << " of " << classes.size() << " classes covered\n";
  }
  auto g = fixture("wedge-gadget");
  bool cycles = false;
  for (const auto& w : wedges(g.core))
    if (w.center == "z") {
      auto c = wedge_cover(g, {w});
      cycles = c.ok() && c.parts.size() == 1 && c.parts.front().kind == CoverKind::Cycles && part_holds(g, c.parts.front());
    }
  o.require(cycles, "wedge-gadget: the wedge at z does not take the Cycles branch");
  o.detail << "    wedge-gadget wedge at z: " << (cycles ? "Cycles branch" : "not Cycles") << "\n";
  return o;
}

// Criterion 10: ladder and triangle-tree controls.
Outcome controls() {
  Outcome o;
  auto ladder = fixture_pair("ladder");
  EdgeBijection phi(ladder.source, ladder.target, ladder.phi);
  o.require(check_weak_isomorphism(phi).verdict, "ladder bijection rejected");
  o.require(oracle::weak_iso(ladder.source, ladder.target, ladder.phi), "ladder bijection fails the oracle");
  auto r = implement_weak_iso(phi);
  bool simultaneous = false;
  for (const auto& op : r.sequence.ops) simultaneous |= std::holds_alternative<SimultaneousTwist>(op);
  o.require(r.verified && verify_implements(r.sequence, phi), "ladder transcript does not verify");
  o.require(simultaneous, "ladder transcript has no simultaneous twist");
  auto tt = fixture_pair("triangle-tree");
  EdgeBijection split(tt.source, tt.target, tt.phi);
  auto rep = check_weak_isomorphism(split);
  o.require(rep.cycle.holds, "triangle-tree split is not cycle-preserving");
  o.require(!rep.tameness.holds, "triangle-tree split preserves tameness");
  o.require(rep.tameness.witness == tt.source.core.edge_ids(), "tameness witness is not the full edge set");
  o.require(!oracle::weak_iso(tt.source, tt.target, tt.phi), "oracle accepts the triangle-tree split");
  bool rejected = false;
  for (const auto& op : triangle_tree_split_batch()) rejected |= !validate(op, tt.source).empty();
  o.require(rejected, "triangle-tree split batch validates");
  o.detail << "    ladder: " << r.sequence.ops.size() << " ops verified; triangle-tree: tameness witness of "
           << rep.tameness.witness.size() << " edges, batch rejected\n";
  return o;
}

// Criterion 11: every candidate op keeps the rank of every subset.
Outcome op_soundness() {
  Outcome o;
  std::size_t ops = 0, subsets = 0;
  for (const auto& name : fixture_names()) {
    auto g = fixture(name);
    if (g.core.edge_count() > 14) continue;
    RankOracle before(g);
    auto es = oracle::edge_list(g);
    for (const auto& op : candidate_ops(g)) {
      ++ops;
      if (!validate(op, g).empty()) {
        o.require(false, name + ": candidate " + kind_name(op) + " does not validate");
        continue;
      }
      auto a = whitney::apply(op, g);
      RankOracle after(a.graph);
      const bool raw = !is_two_ended(op);
      bool ok = true;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << es.size()) && ok; ++m, ++subsets) {
        auto f = oracle::subset(es, m);
        ok &= before.forest_rank(f) == after.forest_rank(f);
        if (raw) ok &= oracle::rank(g, f) == oracle::rank(a.graph, f);
      }
      o.require(ok, name + ": " + kind_name(op) + " changes a rank");
    }
  }
  o.detail << "    " << ops << " ops, " << subsets << " subsets; forest rank for every op, component rank for "
           << "ops other than two-ended splits, joins and simultaneous twists\n";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rank axioms", rank_axioms},
      {"finite rank formula", finite_rank},
      {"Whitney rigidity", rigidity},
      {"twist synthesis", synthesis},
      {"Tutte round trip", tutte_round_trip},
      {"minimum spanning forests", fmsf_suite},
      {"bananas", banana_suite},
      {"forest covers", forest_covers},
      {"wedge covers", wedge_covers},
      {"weak isomorphism controls", controls},
      {"operation soundness", op_soundness},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "    exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all &= out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ") "
              << std::fixed << std::setprecision(1) << secs << "s\n"
              << out.detail.str() << std::flush;
  }
  return all ? 0 : 1;
}
