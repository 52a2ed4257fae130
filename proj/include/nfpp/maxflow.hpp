#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <vector>

#include "nfpp/window.hpp"

namespace nfpp {

/// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}

  int add_node() {
    head_.push_back(-1);
    level_.push_back(0);
    it_.push_back(0);
    return static_cast<int>(head_.size()) - 1;
  }

  void add_edge(int u, int v, int cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], 0});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }

  int run(int s, int t, int limit = INT_MAX) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      it_ = head_;
      while (flow < limit) {
        const int f = dfs(s, t, limit - flow);
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

 private:
  struct Edge {
    int to;
    int next;
    int cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next)
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
    }
    return level_[t] >= 0;
  }

  // iterative DFS along the level graph
  int dfs(int s, int t, int pushed) {
    std::vector<int> path_edges;
    int u = s;
    for (;;) {
      if (u == t) {
        int f = pushed;
        for (const int e : path_edges) f = std::min(f, edges_[e].cap);
        for (const int e : path_edges) {
          edges_[e].cap -= f;
          edges_[e ^ 1].cap += f;
        }
        return f;
      }
      int& e = it_[u];
      while (e != -1 && !(edges_[e].cap > 0 && level_[edges_[e].to] == level_[u] + 1)) e = edges_[e].next;
      if (e == -1) {
        if (path_edges.empty()) return 0;
        level_[u] = -1;  // dead end
        const int back = path_edges.back();
        path_edges.pop_back();
        u = edges_[back ^ 1].to;
        it_[u] = edges_[it_[u]].next;
        continue;
      }
      path_edges.push_back(e);
      u = edges_[e].to;
    }
  }

  std::vector<int> head_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<int> it_;
};

/// Maximum number of vertex-disjoint paths through `member` sites from a
/// `source` site to a `sink` site (a single site in both counts as a path).
/// Node splitting gives every site capacity one.
inline int max_vertex_disjoint_paths(const Window& w, const SiteMask& member, const SiteMask& source,
                                     const SiteMask& sink) {
  std::vector<int> id(w.size(), -1);
  int n = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (member[i]) id[i] = n++;
  const int S = 2 * n, T = 2 * n + 1;
  MaxFlow mf(2 * n + 2);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (id[i] < 0) continue;
    const int in = 2 * id[i], out = in + 1;
    mf.add_edge(in, out, 1);
    if (source[i]) mf.add_edge(S, in, 1);
    if (sink[i]) mf.add_edge(out, T, 1);
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (id[j] >= 0) mf.add_edge(out, 2 * id[j], 1);
    });
  }
  return mf.run(S, T);
}

}  // namespace nfpp
