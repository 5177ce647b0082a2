#include "whitney/io.hpp"

#include <fstream>
#include <sstream>

namespace whitney {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path + "/" + key + ": missing");
  return *it;
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected string");
  return j.get<std::string>();
}

const Json& arr(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected array");
  return j;
}

}  // namespace

Json graph_to_json(const RayedGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : g.core.vertices()) j["vertices"].push_back(v);
  j["edges"] = Json::array();
  for (const auto& [id, ep] : g.core.edges()) j["edges"].push_back({{"id", id}, {"u", ep.u}, {"v", ep.v}});
  j["rays"] = Json::array();
  for (const auto& [id, at] : g.rays) j["rays"].push_back({{"id", id}, {"at", at}});
  return j;
}

RayedGraph graph_from_json(const Json& j) {
  RayedGraph g;
  if (!j.is_object()) throw InputError("/: expected object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "vertices" && it.key() != "edges" && it.key() != "rays")
      throw InputError("/" + it.key() + ": unknown field");
  const auto& vs = arr(field(j, "vertices", ""), "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto p = "/vertices/" + std::to_string(i);
    auto v = str(vs[i], p);
    if (g.core.has_vertex(v)) throw InputError(p + ": duplicate vertex '" + v + "'");
    g.core.add_vertex(v);
  }
  const auto& es = arr(field(j, "edges", ""), "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto p = "/edges/" + std::to_string(i);
    auto id = str(field(es[i], "id", p), p + "/id");
    auto u = str(field(es[i], "u", p), p + "/u");
    auto v = str(field(es[i], "v", p), p + "/v");
    try {
      g.core.add_edge(id, u, v);
    } catch (const InputError& e) {
      throw InputError(p + ": " + e.what());
    }
  }
  if (j.contains("rays")) {
    const auto& rs = arr(j.at("rays"), "/rays");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      auto p = "/rays/" + std::to_string(i);
      auto id = str(field(rs[i], "id", p), p + "/id");
      auto at = str(field(rs[i], "at", p), p + "/at");
      try {
        g.add_ray(id, at);
      } catch (const InputError& e) {
        throw InputError(p + ": " + e.what());
      }
    }
  }
  return g;
}

RayedGraph load(const std::string& bytes) {
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("/: malformed JSON: ") + e.what());
  }
  return graph_from_json(j);
}

std::string save(const RayedGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

RayedGraph load_edge_list(const std::string& text) {
  RayedGraph g;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  std::vector<std::pair<std::string, std::string>> rays;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find('#'); c != std::string::npos) line.resize(c);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto where = "line " + std::to_string(lineno);
    if (tok[0] == "RAY") {
      if (tok.size() != 3) throw InputError(where + ": expected 'RAY at id'");
      rays.emplace_back(tok[1], tok[2]);
    } else if (tok[0] == "VERTEX") {
      if (tok.size() != 2) throw InputError(where + ": expected 'VERTEX id'");
      g.core.add_vertex(tok[1]);
    } else {
      if (tok.size() != 3) throw InputError(where + ": expected 'u v id'");
      g.core.add_vertex(tok[0]);
      g.core.add_vertex(tok[1]);
      edges.emplace_back(tok[0], tok[1], tok[2]);
    }
  }
  for (const auto& [u, v, id] : edges) g.core.add_edge(id, u, v);
  for (const auto& [at, id] : rays) g.add_ray(id, at);
  return g;
}

std::string save_edge_list(const RayedGraph& g) {
  std::ostringstream out;
  VertexSet touched;
  for (const auto& [id, ep] : g.core.edges()) {
    out << ep.u << ' ' << ep.v << ' ' << id << '\n';
    touched.insert(ep.u);
    touched.insert(ep.v);
  }
  for (const auto& v : g.core.vertices())
    if (!touched.count(v)) out << "VERTEX " << v << '\n';
  for (const auto& [id, at] : g.rays) out << "RAY " << at << ' ' << id << '\n';
  return out.str();
}

std::string to_dot(const RayedGraph& g) {
  auto q = [](const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o + "\"";
  };
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& v : g.core.vertices()) out << "  " << q(v) << ";\n";
  for (const auto& [id, ep] : g.core.edges())
    out << "  " << q(ep.u) << " -- " << q(ep.v) << " [label=" << q(id) << "];\n";
  for (const auto& [id, at] : g.rays) {
    out << "  " << q("ray:" + id) << " [shape=point];\n";
    out << "  " << q(at) << " -- " << q("ray:" + id) << " [dir=forward, style=dashed, label=" << q(id)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << bytes;
}

RayedGraph load_graph_file(const std::string& path) {
  auto bytes = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".txt") return load_edge_list(bytes);
  return load(bytes);
}

Json edge_set_to_json(const EdgeSet& es) {
  Json j = Json::array();
  for (const auto& e : es) j.push_back(e);
  return j;
}

Json vertex_set_to_json(const VertexSet& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back(v);
  return j;
}

}  // namespace whitney
