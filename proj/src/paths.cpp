// Shortest-path measures: betweenness (Brandes) and harmonic closeness.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <vector>

#include "kwnet/centrality.hpp"

namespace kwnet {
namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Path lengths that differ by less than this (relative) are treated as equal,
// so floating-point sums of 1/weight do not split tied shortest paths.
constexpr double kTieTolerance = 1e-12;

bool same_length(double a, double b) { return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::abs(b)); }

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<double> sigma;                // number of shortest paths from the source
  std::vector<std::vector<NodeId>> preds;   // shortest-path predecessors
  std::vector<NodeId> order;                // reached nodes by (dist, id)

  explicit ShortestPaths(std::size_t n) : dist(n, kUnreachable), sigma(n, 0.0), preds(n) {}

  void sort_order() {
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      if (dist[a] != dist[b]) return dist[a] < dist[b];
      return a < b;
    });
  }
};

ShortestPaths bfs(const WordGraph& graph, NodeId source) {
  ShortestPaths sp(graph.node_count());
  sp.dist[source] = 0.0;
  sp.sigma[source] = 1.0;
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    sp.order.push_back(v);
    for (auto e : graph.incident(v)) {
      const NodeId w = graph.other(graph.edges()[e], v);
      if (sp.dist[w] == kUnreachable) {
        sp.dist[w] = sp.dist[v] + 1.0;
        queue.push_back(w);
      }
      if (sp.dist[w] == sp.dist[v] + 1.0) {
        sp.sigma[w] += sp.sigma[v];
        sp.preds[w].push_back(v);
      }
    }
  }
  sp.sort_order();
  return sp;
}

ShortestPaths dijkstra(const WordGraph& graph, NodeId source) {
  const std::size_t n = graph.node_count();
  ShortestPaths sp(n);
  std::vector<char> settled(n, 0);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  sp.dist[source] = 0.0;
  sp.sigma[source] = 1.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (settled[v] || d > sp.dist[v]) continue;
    settled[v] = 1;
    sp.order.push_back(v);
    for (auto e : graph.incident(v)) {
      const Edge& edge = graph.edges()[e];
      const NodeId w = graph.other(edge, v);
      if (settled[w]) continue;
      const double candidate = d + 1.0 / edge.weight;
      if (sp.dist[w] == kUnreachable || (candidate < sp.dist[w] && !same_length(candidate, sp.dist[w]))) {
        sp.dist[w] = candidate;
        sp.sigma[w] = sp.sigma[v];
        sp.preds[w].assign(1, v);
        heap.emplace(candidate, w);
      } else if (same_length(candidate, sp.dist[w])) {
        sp.sigma[w] += sp.sigma[v];
        sp.preds[w].push_back(v);
      }
    }
  }
  sp.sort_order();
  return sp;
}

ShortestPaths shortest_paths(const WordGraph& graph, NodeId source, bool weighted) {
  return weighted ? dijkstra(graph, source) : bfs(graph, source);
}

}  // namespace

std::vector<double> betweenness_scores(const WordGraph& graph, bool weighted) {
  const std::size_t n = graph.node_count();
  std::vector<double> score(n, 0.0);
  std::vector<double> delta(n);
  for (NodeId s = 0; s < n; ++s) {
    const ShortestPaths sp = shortest_paths(graph, s, weighted);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
      const NodeId w = *it;
      const double coefficient = (1.0 + delta[w]) / sp.sigma[w];
      for (NodeId v : sp.preds[w]) delta[v] += sp.sigma[v] * coefficient;
      if (w != s) score[w] += delta[w];
    }
  }
  // Every unordered pair was accumulated from both endpoints.
  for (double& b : score) b /= 2.0;
  return score;
}

std::vector<double> closeness_scores(const WordGraph& graph, bool weighted) {
  const std::size_t n = graph.node_count();
  std::vector<double> score(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const ShortestPaths sp = shortest_paths(graph, i, weighted);
    double sum = 0.0;
    for (NodeId j = 0; j < n; ++j) {
      if (j == i || sp.dist[j] == kUnreachable) continue;
      sum += 1.0 / sp.dist[j];
    }
    score[i] = static_cast<double>(n) * sum;
  }
  return score;
}

}  // namespace kwnet
