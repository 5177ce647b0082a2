// Command-line front end. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 success, 1 verdict false, 2 input or precondition error, 3 internal assertion.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "whitney/fixtures.hpp"
#include "whitney/forests.hpp"
#include "whitney/io.hpp"
#include "whitney/matroid.hpp"
#include "whitney/ops.hpp"
#include "whitney/pipeline.hpp"
#include "whitney/structure.hpp"
#include "whitney/tutte.hpp"
#include "whitney/weak_iso.hpp"

using namespace whitney;

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::string format = "json";
};

Options opts;
int verdict_code = 0;

void emit(const Json& j) {
  if (opts.format == "json") {
    std::cout << j.dump() << "\n";
  } else if (opts.format == "text") {
    std::cout << j.dump(2) << "\n";
  } else {
    throw InputError("--format dot applies to graph outputs only");
  }
}

void emit_graph(const RayedGraph& g) {
  if (opts.format == "dot") {
    std::cout << to_dot(g);
  } else if (opts.format == "text") {
    std::cout << save_edge_list(g);
  } else {
    std::cout << graph_to_json(g).dump() << "\n";
  }
}

EdgeSet parse_list(const std::string& s) {
  EdgeSet out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

std::vector<std::string> parse_ordered(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

std::map<EdgeId, EdgeId> load_map(const std::string& path) {
  auto j = read_json(path);
  if (!j.is_object() || !j.contains("map") || !j["map"].is_object()) throw InputError(path + ": /map must be an object");
  std::map<EdgeId, EdgeId> m;
  for (const auto& [k, v] : j["map"].items()) {
    if (!v.is_string()) throw InputError(path + ": /map/" + k + " must be a string");
    m[k] = v.get<std::string>();
  }
  return m;
}

Json map_json(const std::map<EdgeId, EdgeId>& m) {
  Json j;
  j["map"] = Json::object();
  for (const auto& [k, v] : m) j["map"][k] = v;
  return j;
}

EdgeBijection load_bijection(const std::string& g1, const std::string& g2, const std::string& phi) {
  auto a = load_graph_file(g1);
  auto b = load_graph_file(g2);
  if (phi.empty()) {
    std::map<EdgeId, EdgeId> id;
    for (const auto& [e, ep] : a.core.edges()) id[e] = e;
    return EdgeBijection(std::move(a), std::move(b), std::move(id));
  }
  return EdgeBijection(std::move(a), std::move(b), load_map(phi));
}

OpSequence load_sequence(const std::string& path, const std::string& graph) {
  auto j = read_json(path);
  if (j.is_array()) {
    if (graph.empty()) throw InputError("a bare op list needs --graph");
    OpSequence s{load_graph_file(graph), {}};
    for (const auto& o : j) s.ops.push_back(op_from_json(o));
    return s;
  }
  auto s = sequence_from_json(j);
  if (!graph.empty()) s.initial = load_graph_file(graph);
  return s;
}

Json report_json(const WeakIsoReport& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["cycle_preserving"] = {{"holds", r.cycle.holds},
                           {"exhaustive", r.cycle.exhaustive},
                           {"checked", r.cycle.checked},
                           {"witness", edge_set_to_json(r.cycle.witness)},
                           {"witness_in", r.cycle.witness_in_source ? "source" : "target"}};
  j["tameness_preserving"] = {{"holds", r.tameness.holds},
                              {"exhaustive", r.tameness.exhaustive},
                              {"checked", r.tameness.checked},
                              {"witness", edge_set_to_json(r.tameness.witness)},
                              {"witness_in", r.tameness.witness_in_source ? "source" : "target"}};
  j["rank_preserving"] = {{"holds", r.rank.holds},
                          {"exhaustive", r.rank.exhaustive},
                          {"checked", r.rank.checked},
                          {"witness", edge_set_to_json(r.rank.witness)}};
  return j;
}

Json bananas_json(const BananaDecomposition& d) {
  Json j;
  j["bananas"] = Json::array();
  for (const auto& b : d.bananas)
    j["bananas"].push_back({{"id", b.id}, {"boundary", {b.boundary.first, b.boundary.second}}, {"edges", edge_set_to_json(b.edges)}});
  j["quotient"] = graph_to_json(d.quotient);
  j["ban_weakly_3_connected"] = check_ban_weakly_3_connected(d);
  return j;
}

Json wedge_json(const Wedge& w) {
  return {{"left", w.left}, {"center", w.center}, {"right", w.right}, {"endpoints", {w.endpoints.first, w.endpoints.second}}};
}

void emit_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto path = [&](const std::string& name) { return (std::filesystem::path(dir) / name).string(); };
  for (const auto& name : fixture_names()) write_file(path(name + ".json"), save(fixture(name)));
  for (const auto& name : pair_names()) write_file(path(name + "-phi.json"), map_json(fixture_pair(name).phi).dump(2) + "\n");
  OpSequence twist{ladder_graph(), {ladder_twist()}};
  write_file(path("ladder-twist.json"), sequence_to_json(twist).dump(2) + "\n");
  OpSequence batch{triangle_tree(), triangle_tree_split_batch()};
  write_file(path("triangle-tree-split-batch.json"), sequence_to_json(batch).dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak isomorphisms, Whitney operations and forest covers on rayed graphs"};
  app.require_subcommand(1);
  // Global flags are accepted after the subcommand as well.
  app.fallthrough();
  app.add_option("--seed", opts.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}))->capture_default_str();

  std::string graph, graph2, phi, subset, ops_path, order;
  std::size_t n = 3, limit = 0, threshold = 14, samples = 10'000, separation = 6;
  bool strong = false;

  auto* rank = app.add_subcommand("rank", "rank of an edge subset");
  rank->add_option("graph", graph)->required();
  rank->add_option("--subset", subset, "comma-separated edge ids (default: all edges)");
  rank->callback([&] {
    auto g = load_graph_file(graph);
    EdgeSet f = rank->count("--subset") ? parse_list(subset) : g.core.edge_ids();
    for (const auto& e : f)
      if (!g.core.has_edge(e)) throw InputError("unknown edge id '" + e + "'");
    RankOracle o(g);
    emit({{"rank", o.rank(f)}});
  });

  auto* axioms = app.add_subcommand("axioms", "rank axiom suite");
  axioms->add_option("graph", graph)->required();
  axioms->add_option("--threshold", threshold, "exhaustive up to this many edges")->capture_default_str();
  axioms->add_option("--samples", samples, "sampled pairs beyond the threshold")->capture_default_str();
  axioms->callback([&] {
    RankOracle o(load_graph_file(graph));
    auto r = verify_rank_axioms(o, opts.seed, threshold, samples);
    Json j{{"ok", r.ok()}, {"exhaustive", r.exhaustive}, {"pairs_checked", r.pairs_checked},
           {"violations", r.violation_count}, {"offset", r.offset}};
    j["first"] = Json::array();
    for (const auto& v : r.violations)
      j["first"].push_back({{"kind", v.kind}, {"x", edge_set_to_json(v.x)}, {"y", edge_set_to_json(v.y)}});
    emit(j);
    if (!r.ok()) verdict_code = 1;
  });

  auto* conn = app.add_subcommand("connectivity", "weak (or strong) n-connectivity");
  conn->add_option("graph", graph)->required();
  conn->add_option("-n", n, "connectivity order")->capture_default_str();
  conn->add_flag("--strong", strong, "strong connectivity of the underlying multigraph");
  conn->callback([&] {
    auto g = load_graph_file(graph);
    if (strong) {
      bool ok = is_strongly_n_connected(g.core, n);
      emit({{"strongly_n_connected", ok}, {"n", n}});
      if (!ok) verdict_code = 1;
      return;
    }
    auto r = is_weakly_n_connected(g, n);
    emit({{"weakly_n_connected", r.holds}, {"n", n}, {"removed", vertex_set_to_json(r.removed)},
          {"ray_free_component", vertex_set_to_json(r.ray_free_component)}});
    if (!r.holds) verdict_code = 1;
  });

  auto* ends = app.add_subcommand("ends", "components and their ray counts");
  ends->add_option("graph", graph)->required();
  ends->callback([&] {
    auto g = load_graph_file(graph);
    Json j = Json::array();
    for (const auto& b : components(g).blocks)
      j.push_back({{"vertices", vertex_set_to_json(b.vertices)}, {"edges", edge_set_to_json(b.edges)}, {"ends", end_count(g, b)}});
    emit({{"components", j}});
  });

  auto* weakiso = app.add_subcommand("weakiso", "weak isomorphism check and search");
  weakiso->require_subcommand(1);
  auto* wcheck = weakiso->add_subcommand("check", "verify a bijection");
  wcheck->add_option("g1", graph)->required();
  wcheck->add_option("g2", graph2)->required();
  wcheck->add_option("--phi", phi, "bijection JSON (default: identity on edge ids)");
  wcheck->callback([&] {
    CheckOptions c;
    c.seed = opts.seed;
    auto r = check_weak_isomorphism(load_bijection(graph, graph2, phi), c);
    emit(report_json(r));
    if (!r.verdict) verdict_code = 1;
  });
  auto* wsearch = weakiso->add_subcommand("search", "enumerate weak isomorphisms");
  wsearch->add_option("g1", graph)->required();
  wsearch->add_option("g2", graph2)->required();
  wsearch->add_option("--limit", limit, "0 means all")->capture_default_str();
  wsearch->callback([&] {
    SearchOptions s;
    s.limit = limit;
    s.check.seed = opts.seed;
    auto r = search_weak_isomorphisms(load_graph_file(graph), load_graph_file(graph2), s);
    Json list = Json::array();
    for (const auto& b : r.found) list.push_back(map_json(b.map())["map"]);
    emit({{"count", r.found.size()}, {"exact", r.exact}, {"bijections", list}});
  });

  auto* twists = app.add_subcommand("twists", "apply, invert or verify operation sequences");
  twists->require_subcommand(1);
  auto* tapply = twists->add_subcommand("apply", "replay a sequence and print the final graph");
  tapply->add_option("ops", ops_path, "sequence JSON or op list")->required();
  tapply->add_option("--graph", graph, "initial graph (overrides the sequence's)");
  tapply->callback([&] { emit_graph(replay(load_sequence(ops_path, graph)).final_graph()); });
  auto* tinvert = twists->add_subcommand("invert", "inverse sequence");
  tinvert->add_option("ops", ops_path)->required();
  tinvert->add_option("--graph", graph);
  tinvert->callback([&] { emit(sequence_to_json(invert_sequence(load_sequence(ops_path, graph)))); });
  auto* tverify = twists->add_subcommand("verify", "weak-isomorphism check of the induced bijection");
  tverify->add_option("ops", ops_path)->required();
  tverify->add_option("--graph", graph);
  tverify->add_option("--target", graph2, "also check that the sequence implements --phi onto this graph");
  tverify->add_option("--phi", phi);
  tverify->callback([&] {
    auto seq = load_sequence(ops_path, graph);
    CheckOptions c;
    c.seed = opts.seed;
    auto r = check_sequence_weak_iso(seq, c);
    Json j = report_json(r);
    bool ok = r.verdict;
    if (!graph2.empty()) {
      auto target = load_graph_file(graph2);
      std::map<EdgeId, EdgeId> m;
      if (phi.empty()) {
        for (const auto& [e, ep] : seq.initial.core.edges()) m[e] = e;
      } else {
        m = load_map(phi);
      }
      bool impl = verify_implements(seq, EdgeBijection(seq.initial, target, m));
      j["implements"] = impl;
      ok = ok && impl;
    }
    emit(j);
    if (!ok) verdict_code = 1;
  });

  auto* tutte = app.add_subcommand("tutte", "Tutte decomposition and twist synthesis");
  tutte->require_subcommand(1);
  auto* tdec = tutte->add_subcommand("decompose", "decompose a 2-connected graph");
  tdec->add_option("graph", graph)->required();
  tdec->callback([&] { emit(tree_to_json(tutte_decompose(load_graph_file(graph).core))); });
  auto* treas = tutte->add_subcommand("reassemble", "amalgamate a decomposition");
  treas->add_option("tree", graph)->required();
  treas->callback([&] {
    auto t = tree_from_json(read_json(graph));
    if (auto v = validate_tree(t); !v.empty()) throw InputError("invalid tree: " + v.front());
    emit_graph(rayless(reassemble(t)));
  });
  auto* tsynth = tutte->add_subcommand("synth", "twist sequence implementing a bijection");
  tsynth->add_option("g1", graph)->required();
  tsynth->add_option("g2", graph2)->required();
  tsynth->add_option("--phi", phi);
  tsynth->callback([&] { emit(sequence_to_json(synthesize_twists(load_bijection(graph, graph2, phi)))); });

  auto* bananas = app.add_subcommand("bananas", "maximal banana decomposition");
  bananas->add_option("graph", graph)->required();
  bananas->callback([&] { emit(bananas_json(enumerate_maximal_bananas(load_graph_file(graph), opts.seed))); });

  auto* cells = app.add_subcommand("cells", "trifurcation seeds and Voronoi cells");
  cells->add_option("graph", graph)->required();
  cells->callback([&] {
    auto g = load_graph_file(graph);
    auto seeds = maximal_disjoint_trifurcations(g);
    auto c = voronoi_cells(g, seeds);
    Json j;
    j["seeds"] = Json::array();
    for (const auto& s : seeds) j["seeds"].push_back(vertex_set_to_json(s.vertices));
    j["cells"] = Json::object();
    for (const auto& [id, vs] : c.cells) j["cells"][id] = vertex_set_to_json(vs);
    j["quotient"] = graph_to_json(c.quotient);
    emit(j);
  });

  auto* fm = app.add_subcommand("fmsf", "minimum spanning forest for an edge order");
  fm->add_option("graph", graph)->required();
  fm->add_option("--order", order, "comma-separated edge order (default: sorted, or shuffled when --seed is given)");
  fm->callback([&] {
    auto g = load_graph_file(graph);
    EdgeOrder o = !order.empty() ? parse_ordered(order) : app.count("--seed") ? seeded_order(g, opts.seed) : sorted_order(g);
    emit({{"order", o}, {"forest", edge_set_to_json(fmsf(g, o))}});
  });

  auto* cover = app.add_subcommand("cover", "leafless forest and wedge covers");
  cover->require_subcommand(1);
  auto* cleaf = cover->add_subcommand("leafless", "cover the edges by leafless forests");
  cleaf->add_option("graph", graph)->required();
  cleaf->callback([&] { emit(cover_to_json(leafless_cover(load_graph_file(graph)))); });
  auto* cwedge = cover->add_subcommand("wedges", "cover every far-apart wedge class");
  cwedge->add_option("graph", graph)->required();
  cwedge->add_option("--separation", separation, "minimum distance inside a class")->capture_default_str();
  cwedge->callback([&] {
    auto g = load_graph_file(graph);
    Json classes = Json::array();
    bool ok = true;
    for (const auto& cls : far_apart_classes(g, wedges(g.core), separation)) {
      auto c = wedge_cover(g, cls, separation);
      auto problems = verify_wedge_cover(g, c);
      ok = ok && problems.empty();
      Json ws = Json::array();
      for (const auto& w : cls) ws.push_back(wedge_json(w));
      classes.push_back({{"wedges", ws}, {"cover", wedge_cover_to_json(c)}, {"problems", problems}});
    }
    emit({{"classes", classes}, {"ok", ok}});
    if (!ok) verdict_code = 1;
  });

  auto* pipe = app.add_subcommand("pipeline", "end-to-end constructions");
  pipe->require_subcommand(1);
  auto* pimpl = pipe->add_subcommand("implement", "Whitney operations implementing a weak isomorphism");
  pimpl->add_option("--g1", graph)->required();
  pimpl->add_option("--g2", graph2)->required();
  pimpl->add_option("--phi", phi);
  pimpl->callback([&] {
    CheckOptions c;
    c.seed = opts.seed;
    auto r = implement_weak_iso(load_bijection(graph, graph2, phi), c);
    emit(pipeline_to_json(r));
    if (!r.verified) verdict_code = 1;
  });
  auto* prig = pipe->add_subcommand("rigidity", "vertex isomorphism inducing a weak isomorphism");
  prig->add_option("--g1", graph)->required();
  prig->add_option("--g2", graph2)->required();
  prig->add_option("--phi", phi);
  prig->callback([&] {
    CheckOptions c;
    c.seed = opts.seed;
    auto r = rigidity_check(load_bijection(graph, graph2, phi), c);
    emit(rigidity_to_json(r));
    if (!r.ok) verdict_code = 1;
  });

  auto* fx = app.add_subcommand("fixtures", "curated graphs");
  fx->require_subcommand(1);
  auto* flist = fx->add_subcommand("list", "names and descriptions");
  flist->callback([&] {
    Json j = Json::array();
    for (const auto& name : fixture_names()) j.push_back({{"name", name}, {"description", fixture_description(name)}});
    emit(j);
  });
  std::string dir = "fixtures";
  auto* femit = fx->add_subcommand("emit", "write every fixture file");
  femit->add_option("dir", dir, "output directory")->capture_default_str();
  femit->callback([&] { emit_fixtures(dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const TheoremViolation& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return verdict_code;
}
