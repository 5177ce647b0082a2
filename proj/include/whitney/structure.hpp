#pragma once

#include <cstdint>
#include <vector>

#include "whitney/graph.hpp"

namespace whitney {

// Sides of a finite connected set: the components of its component minus its vertices.
// A ray attached at one of the set's own vertices is an infinite side on its own.
struct Sides {
  std::vector<VertexSet> finite;
  std::vector<VertexSet> infinite;
  std::size_t boundary_rays = 0;
  std::size_t infinite_count() const { return infinite.size() + boundary_rays; }
};

Sides sides_of_vertices(const RayedGraph& g, const VertexSet& a);
// Throws PreconditionError unless `a` is nonempty and connected.
Sides sides_of_edges(const RayedGraph& g, const EdgeSet& a);

bool is_n_furcation(const RayedGraph& g, const EdgeSet& a, std::size_t n);
// Vertex-set form; `a` must induce a connected subgraph.
bool is_vertex_n_furcation(const RayedGraph& g, const VertexSet& a, std::size_t n);

struct Furcation {
  VertexSet vertices;
  EdgeSet edges;  // induced
};

// Default ordering: sorted vertex ids. Candidates are connected vertex sets of at most
// `size_cap` vertices, taken by size and then by their ordering ranks.
std::vector<Furcation> maximal_disjoint_trifurcations(const RayedGraph& g,
                                                      const std::vector<VertexId>& ordering = {},
                                                      std::size_t size_cap = 3);

struct CellPartition {
  std::map<std::string, VertexSet> cells;
  std::map<VertexId, std::string> cell_of;
  // One vertex per cell, one edge per edge of g joining two cells (same edge id), rays moved
  // to the cell of their vertex.
  RayedGraph quotient;
};

// Seeds must be pairwise disjoint; every vertex must reach a seed. Each cell is asserted to
// be connected and a trifurcation (TheoremViolation otherwise).
CellPartition voronoi_cells(const RayedGraph& g, const std::vector<Furcation>& seeds);

struct Banana {
  std::string id;  // "banana:<smallest edge id>"
  EdgeSet edges;
  std::pair<VertexId, VertexId> boundary;
};

struct BananaDecomposition {
  std::vector<Banana> bananas;  // sorted by id
  std::map<EdgeId, std::string> banana_of;
  // Vertices are banana boundaries, one edge per banana (edge id = banana id), rays of g.
  RayedGraph quotient;
};

// Vertices of V(B) incident to an edge outside B or carrying a ray.
VertexSet banana_boundary(const RayedGraph& g, const EdgeSet& b);
bool is_banana(const RayedGraph& g, const EdgeSet& b);

// Requires: no loops, every component weakly 2-connected with at least 3 rays.
// `shuffle_seed` permutes the merge order (the result does not depend on it).
BananaDecomposition enumerate_maximal_bananas(const RayedGraph& g, std::uint64_t shuffle_seed = 0);

bool check_ban_weakly_3_connected(const BananaDecomposition& d);

// Simple path inside banana `b` joining its boundary vertices and using edge `e`; the path
// is returned as an edge sequence from boundary.first to boundary.second.
std::vector<EdgeId> path_through_edge_in_banana(const RayedGraph& g, const BananaDecomposition& d,
                                                const std::string& b, const EdgeId& e);

}  // namespace whitney
