#pragma once

#include <string>

#include <json.hpp>

#include "whitney/graph.hpp"

namespace whitney {

using Json = nlohmann::ordered_json;

Json graph_to_json(const RayedGraph& g);
// Errors carry the JSON path of the offending value.
RayedGraph graph_from_json(const Json& j);

RayedGraph load(const std::string& bytes);
std::string save(const RayedGraph& g);

// Lines "u v id", "RAY at id", "VERTEX id"; '#' starts a comment.
RayedGraph load_edge_list(const std::string& text);
std::string save_edge_list(const RayedGraph& g);

std::string to_dot(const RayedGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);
// Dispatches on extension: ".txt" edge list, anything else JSON.
RayedGraph load_graph_file(const std::string& path);

Json edge_set_to_json(const EdgeSet& es);
Json vertex_set_to_json(const VertexSet& vs);

}  // namespace whitney
