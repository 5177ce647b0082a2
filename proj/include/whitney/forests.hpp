#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "whitney/graph.hpp"
#include "whitney/io.hpp"

namespace whitney {

// Strict total order on edge ids, smallest first.
using EdgeOrder = std::vector<EdgeId>;

EdgeOrder sorted_order(const RayedGraph& g);
EdgeOrder seeded_order(const RayedGraph& g, std::uint64_t seed);

// Minimum spanning forest for the order: the order-largest edge of every cycle is dropped.
// Throws InputError unless `order` lists every edge of g exactly once.
EdgeSet fmsf(const RayedGraph& g, const EdgeOrder& order);

// A set is cycle-closed when every cycle meeting it lies inside it, i.e. it is a union of
// blocks.
bool is_cycle_closed(const RayedGraph& g, const EdgeSet& s);

struct FmsfLemmaReport {
  bool restriction_holds = true;  // fmsf(g) ∩ s == fmsf(g restricted to s)
  EdgeSet restriction_difference;
  bool rayed_components_hold = true;  // a vertex with a rayed component keeps a rayed forest component
  VertexSet stranded;
  bool ok() const { return restriction_holds && rayed_components_hold; }
};

// Throws PreconditionError unless s is cycle-closed.
FmsfLemmaReport check_fmsf_lemmas(const RayedGraph& g, const EdgeOrder& order, const EdgeSet& s);

// Repeatedly removes edges at ray-free vertices of degree 1. Requires f acyclic.
EdgeSet prune_leafless(const RayedGraph& g, const EdgeSet& f);

// Acyclic, every degree-1 vertex of f carries a ray, every component of f with an edge has at
// least three rays.
bool verify_leafless(const RayedGraph& g, const EdgeSet& f);

struct ForestCover {
  std::vector<EdgeSet> forests;
  EdgeSet target;
};

// Requires: no loops, every component weakly 2-connected with at least three rays.
// Each uncovered edge e gets a tree through e whose leaves carry rays and which holds at least
// three rays; trees are packed vertex-disjointly, extended by the minimum spanning forest with
// tree edges ordered first, and pruned.
ForestCover leafless_cover(const RayedGraph& g);

// Tree through e = (u, v): vertex-disjoint paths from u and from v to distinct ray vertices,
// plus a branch to a third ray when needed. Only vertices in `allowed` are used (all when
// empty). Empty result when no such tree exists.
EdgeSet tree_through_edge(const RayedGraph& g, const EdgeId& e, const VertexSet& allowed = {});

enum class CoverKind { Cycles, Forest, Failed };

std::string cover_kind_name(CoverKind k);

struct WedgeClassCover {
  CoverKind kind = CoverKind::Failed;
  std::vector<Wedge> wedges;
  std::vector<EdgeSet> cycles;  // parallel to `wedges` in the Cycles case
  EdgeSet forest;
  std::string failure;
};

struct WedgeCover {
  // A class whose wedges split between the two cases yields one Cycles and one Forest entry.
  std::vector<WedgeClassCover> parts;
  bool ok() const;
};

// Minimum over pairs of graph distance between the vertex sets of two wedges.
std::size_t wedge_distance(const RayedGraph& g, const Wedge& a, const Wedge& b);

// Greedy partition of the wedges (sorted) into classes of pairwise distance at least `separation`.
std::vector<std::vector<Wedge>> far_apart_classes(const RayedGraph& g, std::vector<Wedge> ws,
                                                  std::size_t separation = 6);

// Requires: no loops, every component weakly 2-connected with at least three rays, and the
// wedges pairwise at distance at least `separation` (PreconditionError listing close pairs).
// Cycles avoid every center of the class and are pairwise vertex-disjoint; the forest avoids
// every center, contains every endpoint and passes verify_leafless.
WedgeCover wedge_cover(const RayedGraph& g, const std::vector<Wedge>& wedge_class, std::size_t separation = 6);

// Checks the cover invariants against g; one message per violation.
std::vector<std::string> verify_wedge_cover(const RayedGraph& g, const WedgeCover& c);

Json cover_to_json(const ForestCover& c);
Json wedge_cover_to_json(const WedgeCover& c);

}  // namespace whitney
