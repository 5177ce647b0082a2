#pragma once

#include <vector>

#include "whitney/indexed.hpp"

namespace whitney {

enum class Visit { Continue, Prune, Stop };

// Enumerates every connected item set of the graph given by `nbr` (at most 64 items, masks of
// neighbours) exactly once, up to `max_size` items. `visit` may prune a branch; pruning is sound
// for properties that every superset inherits. Returns false when stopped.
template <class F>
bool for_each_connected_set(const std::vector<Mask>& nbr, int max_size, F&& visit) {
  const int n = static_cast<int>(nbr.size());
  struct Frame {
    const std::vector<Mask>& nbr;
    int max_size;
    F& visit;
    int root;
    bool extend(Mask sub, Mask closed, Mask ext, int size) {
      Visit r = visit(sub);
      if (r == Visit::Stop) return false;
      if (r == Visit::Prune || size == max_size) return true;
      const Mask above = root == 63 ? 0 : ~((Mask{2} << root) - 1);
      while (ext) {
        int w = __builtin_ctzll(ext);
        ext &= ext - 1;
        Mask fresh = nbr[w] & ~closed & above;
        if (!extend(sub | (Mask{1} << w), closed | nbr[w] | (Mask{1} << w), ext | fresh, size + 1))
          return false;
      }
      return true;
    }
  };
  for (int v = 0; v < n; ++v) {
    Frame fr{nbr, max_size, visit, v};
    const Mask above = v == 63 ? 0 : ~((Mask{2} << v) - 1);
    if (!fr.extend(Mask{1} << v, nbr[v] | (Mask{1} << v), nbr[v] & above, 1)) return false;
  }
  return true;
}

// Edge adjacency: two edges are adjacent when they share an endpoint.
inline std::vector<Mask> line_graph(const IndexedGraph& ig) {
  std::vector<Mask> nbr(ig.m(), 0);
  for (int v = 0; v < ig.n(); ++v) {
    Mask star = 0;
    for (const auto& a : ig.adj[v]) star |= Mask{1} << a.edge;
    for (const auto& a : ig.adj[v]) nbr[a.edge] |= star & ~(Mask{1} << a.edge);
  }
  return nbr;
}

inline std::vector<Mask> vertex_adjacency(const IndexedGraph& ig) {
  std::vector<Mask> nbr(ig.n(), 0);
  for (int k = 0; k < ig.m(); ++k)
    if (ig.eu[k] != ig.ev[k]) {
      nbr[ig.eu[k]] |= Mask{1} << ig.ev[k];
      nbr[ig.ev[k]] |= Mask{1} << ig.eu[k];
    }
  return nbr;
}

}  // namespace whitney
