#pragma once

#include <string>
#include <vector>

#include "whitney/graph.hpp"
#include "whitney/io.hpp"
#include "whitney/ops.hpp"
#include "whitney/weak_iso.hpp"

namespace whitney {

// Edge sets of the 2-connected blocks of g; a loop is a block on its own.
std::vector<EdgeSet> biconnected_blocks(const Multigraph& g);

// Loopless, connected, at least one edge, and no cut vertex.
bool is_two_connected(const Multigraph& g);

struct BlockDecomposition {
  OpSequence splits;  // recorded ops, applied to the input in order
  RayedGraph result;
};

// Splits ray-free pieces off at cut vertices until every component with at most two rays is
// 2-connected apart from cuts separating two rays, which are then removed by one two-ended
// split per component. Components with three or more rays end weakly 2-connected.
BlockDecomposition block_decompose(const RayedGraph& g);

enum class NodeKind { Cycle, Bond, ThreeConnected };

std::string node_kind_name(NodeKind k);

// Node graphs use local vertex names "n<k>:<v>"; `origin` maps them back to the vertices of
// the decomposed graph. Virtual edges are named "virt:<link>a" and "virt:<link>b".
struct TutteNode {
  std::string id;
  NodeKind kind = NodeKind::Bond;
  Multigraph graph;
  EdgeSet virtuals;
  std::map<VertexId, VertexId> origin;
};

// Amalgamation identifies the endpoints of `va` with those of `vb` (u with u and v with v
// when `same_orientation`, crossed otherwise) and removes both edges.
struct TutteLink {
  std::string a;
  EdgeId va;
  std::string b;
  EdgeId vb;
  bool same_orientation = true;
};

struct TutteTree {
  std::vector<TutteNode> nodes;  // sorted by id
  std::vector<TutteLink> links;

  const TutteNode& node(const std::string& id) const;
  EdgeSet real_edges() const;
};

// Throws PreconditionError unless g is 2-connected. Graphs with at most two edges give a
// single Bond node.
TutteTree tutte_decompose(const Multigraph& g);

// Empty when valid: links form a tree, each virtual edge in exactly one link, no adjacent
// Cycle-Cycle or Bond-Bond pair, node kinds match their graphs, real edges not repeated.
std::vector<std::string> validate_tree(const TutteTree& t);

// Throws InputError on a dangling virtual edge. Vertices are named by the smallest origin in
// each identified class.
Multigraph reassemble(const TutteTree& t);

struct TreeMatch {
  TutteTree first;
  TutteTree second;
  std::map<std::string, std::string> nodes;
  std::map<EdgeId, EdgeId> virtuals;
};

// Extends phi to virtual edges by the real edge sets behind them. Throws PreconditionError
// when phi is not cycle-preserving or an input is not 2-connected, TheoremViolation when the
// trees do not correspond.
TreeMatch match_decompositions(const EdgeBijection& phi);

struct SynthesisOptions {
  // Twisted sides never contain these edges; the complementary side is used instead.
  EdgeSet pinned;
  std::size_t max_ops = 10'000;
};

// Twists on the source of phi (2-connected ignoring rays) whose final graph maps onto the
// target by a vertex isomorphism carrying each edge e to phi(e). A side without rays gives a
// FiniteTwist; a side holding one of the two rays of the component gives a SimultaneousTwist
// with a single two-ended record. Throws PreconditionError with a witness cycle when phi is
// not cycle-preserving, TheoremViolation when the rays cannot be placed.
OpSequence synthesize_twists(const EdgeBijection& phi, const SynthesisOptions& opt = {});

// True iff seq replays on the source of phi and a ray-respecting vertex isomorphism takes its
// final graph onto the target of phi with each edge e sent to phi(e).
bool verify_implements(const OpSequence& seq, const EdgeBijection& phi);

Json tree_to_json(const TutteTree& t);
TutteTree tree_from_json(const Json& j);

}  // namespace whitney
