#pragma once

#include <utility>
#include <vector>

namespace whitney {

// Internally vertex-disjoint s-t paths in an undirected multigraph on vertices 0..n-1.
// Each path is a sequence of edge indices from s to t. At most `limit` paths.
// Unit vertex capacities, augmenting paths found by breadth-first search.
std::vector<std::vector<int>> vertex_disjoint_paths(int n, const std::vector<std::pair<int, int>>& edges,
                                                    int s, int t, int limit);

}  // namespace whitney
