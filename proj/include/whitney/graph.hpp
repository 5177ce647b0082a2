#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace whitney {

using VertexId = std::string;
using EdgeId = std::string;
using RayId = std::string;
using VertexSet = std::set<VertexId>;
using EdgeSet = std::set<EdgeId>;

// Malformed ids, schema violations, dangling references.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented hypothesis of an operation does not hold for its input.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A result contradicts a property the construction guarantees.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct Endpoints {
  VertexId u;
  VertexId v;  // u <= v

  Endpoints() = default;
  Endpoints(VertexId a, VertexId b);
  bool is_loop() const { return u == v; }
  bool touches(const VertexId& x) const { return u == x || v == x; }
  const VertexId& other(const VertexId& x) const { return u == x ? v : u; }
  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

class Multigraph {
 public:
  void add_vertex(const VertexId& v);
  void add_edge(const EdgeId& e, const VertexId& u, const VertexId& v);
  void remove_edge(const EdgeId& e);
  // Only isolated vertices can be removed.
  void remove_vertex(const VertexId& v);
  void set_endpoints(const EdgeId& e, const VertexId& u, const VertexId& v);

  bool has_vertex(const VertexId& v) const { return vertices_.count(v) != 0; }
  bool has_edge(const EdgeId& e) const { return edges_.count(e) != 0; }
  const Endpoints& endpoints(const EdgeId& e) const;

  const VertexSet& vertices() const { return vertices_; }
  const std::map<EdgeId, Endpoints>& edges() const { return edges_; }
  EdgeSet edge_ids() const;
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted; a loop appears once.
  std::vector<EdgeId> incident(const VertexId& v) const;
  // Loops count twice.
  std::size_t degree(const VertexId& v) const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  VertexSet vertices_;
  std::map<EdgeId, Endpoints> edges_;
};

struct RayedGraph {
  Multigraph core;
  std::map<RayId, VertexId> rays;

  void add_ray(const RayId& r, const VertexId& at);
  std::size_t rays_at(const VertexId& v) const;
  VertexSet ray_vertices() const;
  std::size_t ray_count() const { return rays.size(); }

  friend bool operator==(const RayedGraph&, const RayedGraph&) = default;
};

RayedGraph rayless(Multigraph g);

struct Block {
  VertexSet vertices;
  EdgeSet edges;
  std::set<RayId> rays;
};

// Blocks sorted by their smallest vertex id.
struct ComponentPartition {
  std::vector<Block> blocks;

  // Index of the block holding vertex v.
  std::size_t block_of(const VertexId& v) const;
};

struct Wedge {
  EdgeId left;
  VertexId center;
  EdgeId right;
  std::pair<VertexId, VertexId> endpoints;

  friend bool operator==(const Wedge&, const Wedge&) = default;
  friend auto operator<=>(const Wedge&, const Wedge&) = default;
};

ComponentPartition components(const RayedGraph& g, const EdgeSet& restrict);
ComponentPartition components(const RayedGraph& g);
std::size_t end_count(const RayedGraph& g, const Block& block);

struct ConnectivityReport {
  bool holds = true;
  VertexSet removed;              // violating separator
  VertexSet ray_free_component;   // component left without rays
};

ConnectivityReport is_weakly_n_connected(const RayedGraph& g, std::size_t n);
bool is_strongly_n_connected(const Multigraph& g, std::size_t n);
bool is_connected(const Multigraph& g);

std::vector<Wedge> wedges(const Multigraph& g);

// Edges of g spanned by the vertex set.
EdgeSet induced_edges(const Multigraph& g, const VertexSet& vs);
VertexSet span(const Multigraph& g, const EdgeSet& es);
// Restriction to the given vertices and the edges among them, with their rays.
RayedGraph induced_subgraph(const RayedGraph& g, const VertexSet& vs);
// Restriction to the given edges, their endpoints and the rays there.
RayedGraph edge_subgraph(const RayedGraph& g, const EdgeSet& es);

// Deterministic fresh id "<base>~<k>" not present in `taken`.
std::string fresh_id(const std::string& base, const std::set<std::string>& taken);

}  // namespace whitney
