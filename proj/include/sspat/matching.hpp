#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace sspat {

/// Bipartite graph stored as left-vertex adjacency lists.
struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<std::size_t>> adj;

  BipartiteGraph(std::size_t l, std::size_t r) : left(l), right(r), adj(l) {}
  void add_edge(std::size_t u, std::size_t v) { adj[u].push_back(v); }
};

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Result of a maximum matching: mate of each left and right vertex.
struct Matching {
  std::vector<std::size_t> left_mate;
  std::vector<std::size_t> right_mate;
  std::size_t size = 0;
};

/// Maximum-cardinality matching by Hopcroft-Karp (BFS layering followed by
/// vertex-disjoint shortest augmenting paths).
inline Matching hopcroft_karp(const BipartiteGraph& g) {
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  Matching m{std::vector<std::size_t>(g.left, kUnmatched),
             std::vector<std::size_t>(g.right, kUnmatched), 0};
  std::vector<std::size_t> dist(g.left);

  auto bfs = [&]() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < g.left; ++u) {
      if (m.left_mate[u] == kUnmatched) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = inf;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : g.adj[u]) {
        const std::size_t w = m.right_mate[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layers; `next` remembers the adjacency cursor.
  std::vector<std::size_t> next(g.left);
  auto dfs = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<std::size_t> via;  // right vertex used to leave stack[i]
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      bool advanced = false;
      while (next[u] < g.adj[u].size()) {
        const std::size_t v = g.adj[u][next[u]++];
        const std::size_t w = m.right_mate[v];
        if (w == kUnmatched) {
          via.push_back(v);
          for (std::size_t i = 0; i < stack.size(); ++i) {
            m.left_mate[stack[i]] = via[i];
            m.right_mate[via[i]] = stack[i];
          }
          return true;
        }
        if (dist[w] == dist[u] + 1) {
          via.push_back(v);
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = inf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t u = 0; u < g.left; ++u)
      if (m.left_mate[u] == kUnmatched && dfs(u)) ++m.size;
  }
  return m;
}

/// True when a perfect matching `m` of `g` is the only one, i.e. no
/// alternating cycle exists. Left vertex u points to the left vertex that
/// currently owns any right vertex u could take instead of its mate.
inline bool matching_is_unique(const BipartiteGraph& g, const Matching& m) {
  const std::size_t n = g.left;
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : g.adj[u])
      if (v != m.left_mate[u] && m.right_mate[v] != kUnmatched) succ[u].push_back(m.right_mate[v]);

  enum class Mark : unsigned char { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  for (std::size_t s = 0; s < n; ++s) {
    if (mark[s] != Mark::White) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    mark[s] = Mark::Grey;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < succ[u].size()) {
        const std::size_t w = succ[u][i++];
        if (mark[w] == Mark::Grey) return false;
        if (mark[w] == Mark::White) {
          mark[w] = Mark::Grey;
          stack.emplace_back(w, 0);
        }
      } else {
        mark[u] = Mark::Black;
        stack.pop_back();
      }
    }
  }
  return true;
}

}  // namespace sspat
