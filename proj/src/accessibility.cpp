#include <algorithm>
#include <cmath>
#include <vector>

#include "kwnet/centrality.hpp"

namespace kwnet {
namespace {

class WalkEnumerator {
 public:
  WalkEnumerator(const WordGraph& graph, int steps)
      : graph_(graph), steps_(steps), visited_(graph.node_count(), 0), ends_(graph.node_count(), 0.0) {}

  std::vector<double> run(NodeId start) {
    std::fill(ends_.begin(), ends_.end(), 0.0);
    visited_[start] = 1;
    walk(start, 1.0, 0);
    visited_[start] = 0;
    return ends_;
  }

 private:
  void walk(NodeId at, double probability, int depth) {
    if (depth == steps_) {
      ends_[at] += probability;
      return;
    }
    std::vector<NodeId> open;
    for (auto e : graph_.incident(at)) {
      const NodeId next = graph_.other(graph_.edges()[e], at);
      if (!visited_[next]) open.push_back(next);
    }
    if (open.empty()) return;  // stuck: this mass never reaches length `steps_`
    const double share = probability / static_cast<double>(open.size());
    for (NodeId next : open) {
      visited_[next] = 1;
      walk(next, share, depth + 1);
      visited_[next] = 0;
    }
  }

  const WordGraph& graph_;
  int steps_;
  std::vector<char> visited_;
  std::vector<double> ends_;
};

}  // namespace

std::vector<double> walk_end_distribution(const WordGraph& graph, NodeId start, int steps) {
  if (steps < 0) throw ConfigError("walk length must be non-negative");
  return WalkEnumerator(graph, steps).run(start);
}

double true_diversity(std::span<const double> probabilities) {
  std::size_t outcomes = 0;
  double total = 0.0;
  double entropy = 0.0;
  bool uniform = true;
  double first = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0)) continue;
    if (outcomes == 0) first = p;
    uniform = uniform && p == first;
    ++outcomes;
    total += p;
    entropy -= p * std::log(p);
  }
  if (outcomes == 0) return 0.0;
  // exp(log m) is not always m in floating point; the uniform case is common
  // (every h = 1 distribution) and deserves the exact value.
  if (uniform && std::abs(total - 1.0) <= 1e-12) return static_cast<double>(outcomes);
  return std::exp(entropy);
}

std::vector<double> accessibility_scores(const WordGraph& graph, int h) {
  if (h != 1 && h != 2) throw ConfigError("accessibility is available for h = 1 and h = 2");
  WalkEnumerator walks(graph, h);
  std::vector<double> out(graph.node_count());
  for (NodeId i = 0; i < out.size(); ++i) out[i] = true_diversity(walks.run(i));
  return out;
}

}  // namespace kwnet
