#include "whitney/flow.hpp"

#include <climits>
#include <queue>

namespace whitney {

namespace {

struct Arc {
  int to;
  int cap;
  int rev;
  int edge;  // -1 for vertex arcs
};

struct Network {
  std::vector<std::vector<Arc>> g;
  explicit Network(int n) : g(n) {}
  void add(int a, int b, int cap, int edge) {
    g[a].push_back({b, cap, static_cast<int>(g[b].size()), edge});
    g[b].push_back({a, 0, static_cast<int>(g[a].size()) - 1, edge});
  }
  bool augment(int s, int t) {
    std::vector<std::pair<int, int>> prev(g.size(), {-1, -1});
    std::vector<char> seen(g.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty() && !seen[t]) {
      int v = q.front();
      q.pop();
      for (int i = 0; i < static_cast<int>(g[v].size()); ++i) {
        const auto& a = g[v][i];
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          prev[a.to] = {v, i};
          q.push(a.to);
        }
      }
    }
    if (!seen[t]) return false;
    for (int v = t; v != s;) {
      auto [u, i] = prev[v];
      g[u][i].cap -= 1;
      g[v][g[u][i].rev].cap += 1;
      v = u;
    }
    return true;
  }
};

}  // namespace

std::vector<std::vector<int>> vertex_disjoint_paths(int n, const std::vector<std::pair<int, int>>& edges,
                                                    int s, int t, int limit) {
  Network net(2 * n);
  for (int v = 0; v < n; ++v) net.add(2 * v, 2 * v + 1, (v == s || v == t) ? INT_MAX / 2 : 1, -1);
  // Forward arc index per edge and direction, for reading the flow back.
  std::vector<std::pair<int, int>> fwd(edges.size(), {-1, -1}), bwd(edges.size(), {-1, -1});
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    auto [a, b] = edges[k];
    if (a == b) continue;
    fwd[k] = {2 * a + 1, static_cast<int>(net.g[2 * a + 1].size())};
    net.add(2 * a + 1, 2 * b, 1, k);
    bwd[k] = {2 * b + 1, static_cast<int>(net.g[2 * b + 1].size())};
    net.add(2 * b + 1, 2 * a, 1, k);
  }
  int flow = 0;
  while (flow < limit && net.augment(2 * s + 1, 2 * t)) ++flow;

  // Net flow per edge; opposite unit flows on one edge cancel.
  std::vector<std::vector<std::pair<int, int>>> out(n);  // vertex -> (edge, next vertex)
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    if (fwd[k].first < 0) continue;
    int f = 1 - net.g[fwd[k].first][fwd[k].second].cap;
    int r = 1 - net.g[bwd[k].first][bwd[k].second].cap;
    if (f - r > 0) out[edges[k].first].push_back({k, edges[k].second});
    if (r - f > 0) out[edges[k].second].push_back({k, edges[k].first});
  }
  std::vector<std::vector<int>> paths;
  std::vector<std::size_t> next(n, 0);
  for (int p = 0; p < flow; ++p) {
    std::vector<int> path;
    int v = s;
    while (v != t && next[v] < out[v].size()) {
      auto [k, w] = out[v][next[v]++];
      path.push_back(k);
      v = w;
    }
    if (v == t) paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace whitney
