#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "whitney/graph.hpp"
#include "whitney/ops.hpp"

namespace whitney {

// Curated graphs, generated in code; `fixtures emit` writes them to disk.
std::vector<std::string> fixture_names();
// Throws InputError for an unknown name.
RayedGraph fixture(const std::string& name);
std::string fixture_description(const std::string& name);

struct FixturePair {
  RayedGraph source;
  RayedGraph target;
  std::map<EdgeId, EdgeId> phi;
};

std::vector<std::string> pair_names();
FixturePair fixture_pair(const std::string& name);

// Builders.
RayedGraph cycle_graph(std::size_t n);
RayedGraph complete_graph(std::size_t n);
RayedGraph wheel_graph(std::size_t rim);
RayedGraph prism_graph();
RayedGraph octahedron_graph();
RayedGraph theta_graph();
// Root with three children, every other internal vertex with two; each leaf at `depth`
// carries two rays. `subdivided` puts a midpoint on every edge.
RayedGraph regular_tree(std::size_t depth, bool subdivided = false);

// Open ladder with alternate diagonals and one ray at each end.
RayedGraph ladder_graph();
// Two-ended simultaneous twist flipping every second square of the ladder.
SimultaneousTwist ladder_twist();

// Four triangles around a central one, a ray at one outer vertex of each outer triangle.
RayedGraph triangle_tree();
// The same edges with each outer triangle detached at its shared vertex.
RayedGraph triangle_tree_split();
// The splits that would produce triangle_tree_split, one per shared vertex.
std::vector<WhitneyOp> triangle_tree_split_batch();

// Random rayed multigraph (loops and parallel edges allowed).
RayedGraph random_rayed_graph(std::uint64_t seed, std::size_t max_vertices = 6, std::size_t max_edges = 14,
                              std::size_t max_rays = 4);
// Random ray-free simple graph with edge probability 1/2.
RayedGraph random_simple_graph(std::uint64_t seed, std::size_t vertices);
// Random 2-connected multigraph built from a cycle by ears.
RayedGraph random_two_connected(std::uint64_t seed, std::size_t max_edges = 12);
// Applies up to `count` random valid finite twists.
OpSequence random_twist_sequence(const RayedGraph& g, std::uint64_t seed, std::size_t count);

}  // namespace whitney
