#pragma once

// Breadth-first distances from plain adjacency lists built out of an edge list.

#include <array>
#include <deque>
#include <vector>

namespace oracle {

inline std::vector<int> bfs_distances(std::size_t n, const std::vector<std::array<int, 2>>& edges, int source) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> dist(n, -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

inline int diameter(std::size_t n, const std::vector<std::array<int, 2>>& edges) {
  int best = 0;
  for (std::size_t s = 0; s < n; ++s)
    for (int d : bfs_distances(n, edges, static_cast<int>(s))) best = d > best ? d : best;
  return best;
}

}  // namespace oracle
