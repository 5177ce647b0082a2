#pragma once

#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "whitney/graph.hpp"
#include "whitney/indexed.hpp"

namespace whitney {

// Rank of the rayed cycle matroid: |V| minus the number of ray-free components of (V, f).
// Ray-free isolated vertices count as components, so rank(∅) is the number of ray-bearing
// vertices. relative_rank subtracts that offset and equals the graphic rank of the graph
// with all ray-bearing vertices identified.
class RankOracle {
 public:
  explicit RankOracle(RayedGraph g, std::size_t cache_capacity = 1'000'000);

  const RayedGraph& graph() const { return g_; }
  const IndexedGraph& indexed() const { return ig_; }

  std::size_t rank(const EdgeSet& f) const;
  std::size_t relative_rank(const EdgeSet& f) const;
  std::size_t empty_rank() const { return empty_rank_; }

  bool is_acyclic(const EdgeSet& f) const;
  // Every component spanned by f carries at most two rays.
  bool is_tame(const EdgeSet& f) const;
  // Acyclic and tame.
  bool is_independent(const EdgeSet& f) const;
  // Largest independent subset of f. Exponential in the largest f-component (at most 24 edges).
  std::size_t forest_rank(const EdgeSet& f) const;

  std::size_t cache_size() const;

 private:
  RayedGraph g_;
  IndexedGraph ig_;
  std::size_t empty_rank_ = 0;
  std::size_t capacity_;
  mutable std::mutex mu_;
  mutable std::list<std::pair<std::string, std::size_t>> lru_;
  mutable std::unordered_map<std::string, std::list<std::pair<std::string, std::size_t>>::iterator>
      cache_;
};

// Mask-level kernels over a dense graph.
int rank_of(const IndexedGraph& ig, Mask f);
bool acyclic_of(const IndexedGraph& ig, Mask f);
bool tame_of(const IndexedGraph& ig, Mask f);
std::vector<int> rank_table(const IndexedGraph& ig);            // 2^m entries
std::vector<char> independence_table(const IndexedGraph& ig);   // acyclic and tame
std::vector<char> tameness_table(const IndexedGraph& ig);
// Largest independent subset of every mask.
std::vector<int> forest_rank_table(const std::vector<char>& independent, int m);

struct AxiomViolation {
  std::string kind;  // "cardinality", "monotonicity", "submodularity"
  EdgeSet x;
  EdgeSet y;
};

struct RankAxiomReport {
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<AxiomViolation> violations;  // first 100
  std::size_t offset = 0;                  // rank(∅), removed before the cardinality bound
  bool ok() const { return violation_count == 0; }
};

// Monotonicity and submodularity on the rank itself, the cardinality bound on
// rank(X) - rank(∅). All subset pairs up to `threshold` edges, seeded samples beyond.
RankAxiomReport verify_rank_axioms(const RankOracle& o, std::uint64_t seed = 0,
                                   std::size_t threshold = 14, std::size_t samples = 10'000);

// Minimal dependent sets; at most 22 edges.
std::vector<EdgeSet> circuits(const RankOracle& o);

struct Minor {
  RayedGraph base;
  EdgeSet deleted;     // after normalization
  EdgeSet contracted;  // acyclic in base - deleted
  RayedGraph quotient;
  std::map<VertexId, VertexId> projection;
};

Minor minor(const RayedGraph& g, const EdgeSet& del, const EdgeSet& contract);

// Edges e of f with rank(f) = rank(f - e).
EdgeSet disposable_edges(const RankOracle& o, const EdgeSet& f);
bool is_superfluous_analog(const RankOracle& o, const EdgeSet& f);

}  // namespace whitney
