#pragma once

#include <memory>
#include <optional>

#include "whitney/graph.hpp"
#include "whitney/indexed.hpp"

namespace whitney {

class EdgeBijection {
 public:
  // Throws InputError unless `map` is a bijection between the two edge sets.
  EdgeBijection(std::shared_ptr<const RayedGraph> source, std::shared_ptr<const RayedGraph> target,
                std::map<EdgeId, EdgeId> map);
  EdgeBijection(RayedGraph source, RayedGraph target, std::map<EdgeId, EdgeId> map);

  static EdgeBijection identity(const RayedGraph& g);
  static EdgeBijection identity(std::shared_ptr<const RayedGraph> source,
                                std::shared_ptr<const RayedGraph> target);

  const RayedGraph& source() const { return *source_; }
  const RayedGraph& target() const { return *target_; }
  const std::shared_ptr<const RayedGraph>& source_ptr() const { return source_; }
  const std::shared_ptr<const RayedGraph>& target_ptr() const { return target_; }
  const std::map<EdgeId, EdgeId>& map() const { return map_; }
  const EdgeId& operator()(const EdgeId& e) const;
  EdgeSet image(const EdgeSet& es) const;

  EdgeBijection inverse() const;
  // Applies *this first, then `next`.
  EdgeBijection then(const EdgeBijection& next) const;

  friend bool operator==(const EdgeBijection& a, const EdgeBijection& b) { return a.map_ == b.map_; }

 private:
  std::shared_ptr<const RayedGraph> source_;
  std::shared_ptr<const RayedGraph> target_;
  std::map<EdgeId, EdgeId> map_;
};

struct CycleEnumeration {
  std::vector<std::vector<int>> cycles;  // edge indices, ascending
  bool complete = true;
};

// Simple cycles (loops and 2-cycles included), each listed once, until `cap` is reached.
CycleEnumeration enumerate_cycles(const IndexedGraph& ig, std::size_t cap = 1'000'000);
bool is_cycle(const IndexedGraph& ig, const std::vector<int>& edges);
std::vector<EdgeSet> simple_cycles(const RayedGraph& g, std::size_t cap = 1'000'000);

struct CycleCheck {
  bool holds = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  bool witness_in_source = true;
  EdgeSet witness;
};

struct TamenessCheck {
  bool holds = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  bool witness_in_source = true;
  EdgeSet witness;
};

struct RankCheck {
  bool holds = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  EdgeSet witness;
};

struct WeakIsoReport {
  CycleCheck cycle;
  TamenessCheck tameness;
  RankCheck rank;  // largest acyclic tame subset, compared on the tameness family
  bool verdict = false;
};

struct CheckOptions {
  std::size_t cycle_cap = 1'000'000;
  std::size_t exhaustive_threshold = 20;
  std::size_t connected_subset_size = 8;
  std::size_t random_subsets = 10'000;
  std::uint64_t seed = 0;
};

CycleCheck check_cycle_preserving(const EdgeBijection& phi, const CheckOptions& opt = {});
TamenessCheck check_tameness_preserving(const EdgeBijection& phi, const CheckOptions& opt = {});
// Verdict implies rank preservation; on ray-free inputs checked exhaustively the converse
// holds too. A violation of either throws TheoremViolation.
WeakIsoReport check_weak_isomorphism(const EdgeBijection& phi, const CheckOptions& opt = {});

struct SearchOptions {
  std::size_t limit = 0;  // 0 = all
  std::size_t untame_size_cap = 12;
  CheckOptions check;
};

struct SearchResult {
  std::vector<EdgeBijection> found;  // sorted by map
  bool exact = true;                 // false when a family had to be truncated
};

SearchResult search_weak_isomorphisms(const RayedGraph& g1, const RayedGraph& g2,
                                      const SearchOptions& opt = {});

struct WedgeImage {
  bool is_wedge = false;
  EdgeId left;
  EdgeId right;
  std::optional<VertexId> center;
};

WedgeImage wedge_image(const EdgeBijection& phi, const Wedge& w);

struct InducedIsomorphism {
  bool ok = false;
  std::map<VertexId, VertexId> psi;
  bool rays_respected = false;  // ray count at v equals ray count at psi(v)
  std::string failure;
  std::optional<VertexId> failing_star;
};

// Rays count toward degree; PreconditionError on a vertex with fewer than two edges and rays.
InducedIsomorphism extract_induced_isomorphism(const EdgeBijection& phi);

struct PreservationReport {
  bool hypotheses_hold = true;
  std::vector<std::string> hypothesis_failures;
  bool components_ok = true;
  bool ends_ok = true;
  bool bananas_ok = true;
  std::size_t banana_components = 0;  // components where the banana check ran
  std::vector<std::string> violations;
  bool ok() const { return hypotheses_hold && components_ok && ends_ok && bananas_ok; }
};

PreservationReport preservation_diagnostics(const EdgeBijection& phi);

}  // namespace whitney
