#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kwnet/centrality.hpp"

namespace kwnet {
namespace {

double edge_weight(const Edge& e, bool weighted) { return weighted ? e.weight : 1.0; }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

std::string_view to_string(MeasureId id) {
  switch (id) {
    case MeasureId::k: return "k";
    case MeasureId::s: return "s";
    case MeasureId::pi: return "pi";
    case MeasureId::pi_w: return "pi_w";
    case MeasureId::EV: return "EV";
    case MeasureId::EV_w: return "EV_w";
    case MeasureId::B: return "B";
    case MeasureId::B_w: return "B_w";
    case MeasureId::C: return "C";
    case MeasureId::C_w: return "C_w";
    case MeasureId::A1: return "A1";
    case MeasureId::A2: return "A2";
  }
  return "?";
}

MeasureId parse_measure(std::string_view name) {
  for (MeasureId id : kAllMeasures) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown measure '" + std::string(name) + "'");
}

std::vector<MeasureId> parse_measures(std::string_view list) {
  if (list == "all") return {std::begin(kAllMeasures), std::end(kAllMeasures)};
  std::vector<MeasureId> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    auto item = list.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const MeasureId id = parse_measure(item);
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    list.remove_prefix(comma == std::string_view::npos ? list.size() : comma + 1);
  }
  if (out.empty()) throw ConfigError("empty measure list");
  return out;
}

std::vector<double> degree_scores(const WordGraph& graph) {
  std::vector<double> out(graph.node_count());
  for (NodeId n = 0; n < out.size(); ++n) out[n] = static_cast<double>(graph.incident(n).size());
  return out;
}

std::vector<double> strength_scores(const WordGraph& graph) {
  std::vector<double> out(graph.node_count(), 0.0);
  for (NodeId n = 0; n < out.size(); ++n) {
    for (auto e : graph.incident(n)) out[n] += graph.edges()[e].weight;
  }
  return out;
}

std::vector<double> pagerank_scores(const WordGraph& graph, const PageRankParams& params, bool weighted) {
  const std::size_t n = graph.node_count();
  if (n == 0) return {};
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0)) throw ConfigError("pagerank gamma must lie in [0, 1]");
  const double size = static_cast<double>(n);
  const double beta = params.beta.value_or((1.0 - params.gamma) / size);
  if (beta < 0.0) throw ConfigError("pagerank beta must be non-negative");

  std::vector<double> out_strength(n, 0.0);
  for (NodeId j = 0; j < n; ++j) {
    for (auto e : graph.incident(j)) out_strength[j] += edge_weight(graph.edges()[e], weighted);
  }

  std::vector<double> rank(n, 1.0 / size);
  std::vector<double> next(n);
  std::vector<double> share(n);
  double residual = 0.0;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeId j = 0; j < n; ++j) {
      if (out_strength[j] > 0.0) {
        share[j] = rank[j] / out_strength[j];
      } else {
        share[j] = 0.0;
        dangling += rank[j];
      }
    }
    const double base = params.gamma * dangling / size + beta;
    for (NodeId i = 0; i < n; ++i) {
      double sum = 0.0;
      for (auto e : graph.incident(i)) {
        const Edge& edge = graph.edges()[e];
        sum += edge_weight(edge, weighted) * share[graph.other(edge, i)];
      }
      next[i] = params.gamma * sum + base;
    }
    residual = max_abs_diff(next, rank);
    rank.swap(next);
    if (residual < params.tolerance) {
      if (params.beta) {
        const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
        if (total > 0.0) {
          for (double& r : rank) r /= total;
        }
      }
      return rank;
    }
  }
  throw ConvergenceError("pagerank did not converge in " + std::to_string(params.max_iterations) + " iterations",
                         residual);
}

std::vector<double> eigenvector_scores(const WordGraph& graph, const EigenvectorParams& params, bool weighted) {
  const std::size_t n = graph.node_count();
  if (graph.edge_count() == 0) throw DataError("eigenvector centrality needs at least one edge");
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  double residual = 0.0;
  // Iterating on A + I keeps the dominant eigenvector and removes the period-2
  // oscillation of bipartite graphs.
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    double total = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      double sum = x[i];
      for (auto e : graph.incident(i)) {
        const Edge& edge = graph.edges()[e];
        sum += edge_weight(edge, weighted) * x[graph.other(edge, i)];
      }
      y[i] = sum;
      total += sum;
    }
    for (double& v : y) v /= total;
    residual = max_abs_diff(x, y);
    x.swap(y);
    if (residual < params.tolerance) return x;
  }
  throw ConvergenceError(
      "eigenvector centrality did not converge in " + std::to_string(params.max_iterations) + " iterations",
      residual);
}

CentralityVector compute(const WordGraph& graph, MeasureId measure, const CentralityParams& params) {
  CentralityVector out{measure, graph.labels(), {}, params.echo};
  try {
    switch (measure) {
      case MeasureId::k: out.scores = degree_scores(graph); break;
      case MeasureId::s: out.scores = strength_scores(graph); break;
      case MeasureId::pi: out.scores = pagerank_scores(graph, params.pagerank, false); break;
      case MeasureId::pi_w: out.scores = pagerank_scores(graph, params.pagerank, true); break;
      case MeasureId::EV: out.scores = eigenvector_scores(graph, params.eigenvector, false); break;
      case MeasureId::EV_w: out.scores = eigenvector_scores(graph, params.eigenvector, true); break;
      case MeasureId::B: out.scores = betweenness_scores(graph, false); break;
      case MeasureId::B_w: out.scores = betweenness_scores(graph, true); break;
      case MeasureId::C: out.scores = closeness_scores(graph, false); break;
      case MeasureId::C_w: out.scores = closeness_scores(graph, true); break;
      case MeasureId::A1: out.scores = accessibility_scores(graph, 1); break;
      case MeasureId::A2: out.scores = accessibility_scores(graph, 2); break;
    }
  } catch (const MeasureError&) {
    throw;
  } catch (const Error& e) {
    throw MeasureError(measure, e.what());
  }
  for (double v : out.scores) {
    if (!std::isfinite(v)) throw MeasureError(measure, "non-finite score");
  }
  return out;
}

std::vector<CentralityVector> compute_all(const WordGraph& graph, std::span<const MeasureId> measures,
                                          const CentralityParams& params) {
  std::vector<CentralityVector> out;
  out.reserve(measures.size());
  for (MeasureId m : measures) out.push_back(compute(graph, m, params));
  return out;
}

std::vector<std::size_t> ranking(const CentralityVector& scores) {
  std::vector<std::size_t> order(scores.scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
    return scores.nodes[a] < scores.nodes[b];
  });
  return order;
}

}  // namespace kwnet
