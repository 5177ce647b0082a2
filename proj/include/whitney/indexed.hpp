#pragma once

#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "whitney/graph.hpp"

namespace whitney {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // False when already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Dense index view of a rayed graph; vertex and edge indices follow sorted id order.
struct IndexedGraph {
  struct Arc {
    int edge;
    int to;
  };

  std::vector<VertexId> vnames;
  std::vector<EdgeId> enames;
  std::vector<int> eu, ev;
  std::vector<int> rays;               // ray count per vertex
  std::vector<std::vector<Arc>> adj;   // loops appear once
  std::unordered_map<VertexId, int> vindex;
  std::unordered_map<EdgeId, int> eindex;

  explicit IndexedGraph(const RayedGraph& g);

  int n() const { return static_cast<int>(vnames.size()); }
  int m() const { return static_cast<int>(enames.size()); }
  int vertex(const VertexId& v) const;
  int edge(const EdgeId& e) const;
  Mask mask_of(const EdgeSet& es) const;  // requires m() <= 64
  EdgeSet edges_of(Mask mask) const;
  EdgeSet edges_of(const std::vector<int>& idx) const;
};

}  // namespace whitney
