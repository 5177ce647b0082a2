#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "whitney/graph.hpp"
#include "whitney/io.hpp"
#include "whitney/weak_iso.hpp"

namespace whitney {

// Detach `side` from `vertex` onto a new vertex. `side` is a union of ray-free components of
// comp(vertex) - vertex with their attaching edges, and/or loops at `vertex`.
struct FiniteSplit {
  VertexId vertex;
  EdgeSet side;
  std::optional<VertexId> copy;  // fresh "<vertex>~k" when unset
};

// Identify `merge` (in a ray-free component) into `keep` (in another component).
struct FiniteJoin {
  VertexId keep;
  VertexId merge;
  EdgeSet merged;  // edges of merge's component, recorded at apply
};

// Split a 2-ray component at cut vertices separating its rays. The copy of each cut takes the
// edges leading toward ray `toward`; cuts are kept sorted along the line from the other ray.
struct TwoEndedSplit {
  std::vector<VertexId> cuts;
  std::optional<RayId> toward;
  std::vector<VertexId> copies;  // fresh when empty
};

// Chain pieces P0, P1, ..., Pk: junction i identifies `entry` of P(i+1) into `exit` of Pi.
// P0 and Pk carry one ray each, the middle pieces none.
struct TwoEndedJoin {
  std::vector<std::pair<VertexId, VertexId>> junctions;  // (exit, entry)
  std::optional<RayId> toward;                           // ray of Pk, recorded at apply
};

// Swap x and y on every endpoint of `side` edges. `side` is a union of components of
// comp - {x, y} (with attachments), each adjacent to both x and y.
struct FiniteTwist {
  VertexId x;
  VertexId y;
  EdgeSet side;
};

// A finite record has a ray-free side; a two-ended record acts on a 2-ray component, has
// ray-free x and y, and its side holds exactly one of the two rays.
struct TwistRecord {
  VertexId x;
  VertexId y;
  EdgeSet side;
  friend bool operator==(const TwistRecord&, const TwistRecord&) = default;
};

// Records have pairwise disjoint pairs and pairwise nested-or-disjoint sides.
struct SimultaneousTwist {
  std::vector<TwistRecord> records;
};

using WhitneyOp = std::variant<FiniteSplit, FiniteJoin, TwoEndedSplit, TwoEndedJoin, FiniteTwist, SimultaneousTwist>;

std::string kind_name(const WhitneyOp& op);
// Two-ended splits and joins and simultaneous twists.
bool is_two_ended(const WhitneyOp& op);

// Empty when valid; otherwise one message per violated clause.
std::vector<std::string> validate(const WhitneyOp& op, const RayedGraph& g);

struct Applied {
  RayedGraph graph;
  WhitneyOp recorded;  // fresh ids filled in, cuts in canonical order
  EdgeSet altered;     // edges whose endpoints changed
};

// Throws PreconditionError listing the violations.
Applied apply(const WhitneyOp& op, const RayedGraph& g);

// Requires a recorded op (as returned by apply).
WhitneyOp invert(const WhitneyOp& recorded);

// Sequential application in the given order (sorted by the caller when order matters).
Applied apply_batch(const std::vector<WhitneyOp>& ops, const RayedGraph& g, std::vector<WhitneyOp>* recorded = nullptr);

struct OpSequence {
  RayedGraph initial;
  std::vector<WhitneyOp> ops;
};

struct Replay {
  std::vector<RayedGraph> graphs;   // initial, then after each op
  std::vector<WhitneyOp> recorded;
  std::map<EdgeId, std::size_t> alterations;
  const RayedGraph& final_graph() const { return graphs.back(); }
};

// Throws PreconditionError naming the failing index.
Replay replay(const OpSequence& seq);
// Edge ids never change, so the bijection is the identity from the initial to the final graph.
EdgeBijection compose(const OpSequence& seq);
OpSequence invert_sequence(const OpSequence& seq);
WeakIsoReport check_sequence_weak_iso(const OpSequence& seq, const CheckOptions& opt = {});

// Every single valid op of each kind on g: splits along each side, joins of ray-free
// components, twists at each pair, two-ended splits and twist records. Used for exhaustive
// soundness sweeps.
std::vector<WhitneyOp> candidate_ops(const RayedGraph& g);

Json op_to_json(const WhitneyOp& op);
WhitneyOp op_from_json(const Json& j);
Json sequence_to_json(const OpSequence& seq);
OpSequence sequence_from_json(const Json& j);

}  // namespace whitney
