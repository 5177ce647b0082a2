#pragma once

#include <optional>
#include <vector>

#include "whitney/graph.hpp"

namespace whitney {

using VertexMap = std::map<VertexId, VertexId>;

// Vertex bijection ψ with endpoints_h(phi(e)) = ψ(endpoints_g(e)) for every edge, and equal ray
// counts at v and ψ(v) when `respect_rays`. Exact backtracking with propagation along stars.
std::optional<VertexMap> induced_vertex_map(const RayedGraph& g, const RayedGraph& h,
                                            const std::map<EdgeId, EdgeId>& phi, bool respect_rays = true);

// Vertex isomorphisms of rayed multigraphs (edge multiplicities, loops and ray counts kept).
// `limit` 0 means all.
std::vector<VertexMap> vertex_isomorphisms(const RayedGraph& g, const RayedGraph& h, std::size_t limit = 0);
std::optional<VertexMap> find_isomorphism(const RayedGraph& g, const RayedGraph& h);
bool isomorphic(const RayedGraph& g, const RayedGraph& h);

// Every edge bijection carried by the vertex map; parallel classes are permuted freely.
std::vector<std::map<EdgeId, EdgeId>> edge_maps_of(const RayedGraph& g, const RayedGraph& h, const VertexMap& psi);

}  // namespace whitney
