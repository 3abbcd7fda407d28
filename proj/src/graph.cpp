#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <ostream>
#include <utility>

#include "kwnet/error.hpp"
#include "kwnet/graph.hpp"

namespace kwnet {

std::string_view to_string(EdgeKind kind) {
  return kind == EdgeKind::cooccurrence ? "cooccurrence" : "virtual";
}

void GraphConfig::validate() const {
  if (window < 1) throw ConfigError("window length must be at least 1");
  if (!(virtual_fraction >= 0.0 && virtual_fraction <= 1.0)) {
    throw ConfigError("virtual edge fraction P must lie in [0, 1]");
  }
}

WordGraph::WordGraph(std::vector<std::string> labels) : labels_(std::move(labels)), incident_(labels_.size()) {}

std::uint64_t WordGraph::key(NodeId a, NodeId b) noexcept {
  if (b < a) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void WordGraph::add_edge(NodeId a, NodeId b, EdgeKind kind, double weight, std::uint32_t count) {
  if (a >= labels_.size() || b >= labels_.size()) throw DataError("edge endpoint out of range");
  if (a == b) throw DataError("self-loop on '" + labels_[a] + "'");
  if (!(weight > 0.0) || !std::isfinite(weight)) throw DataError("edge weight must be positive and finite");
  const auto index = static_cast<std::uint32_t>(edges_.size());
  if (!index_.emplace(key(a, b), index).second) {
    throw DataError("duplicate edge '" + labels_[a] + "' - '" + labels_[b] + "'");
  }
  if (b < a) std::swap(a, b);
  edges_.push_back({a, b, kind, weight, count});
  incident_[a].push_back(index);
  incident_[b].push_back(index);
  if (kind == EdgeKind::cooccurrence) ++cooccurrence_edges_;
}

std::optional<NodeId> WordGraph::find(std::string_view label) const {
  // Labels are usually sorted; fall back to a scan otherwise.
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it != labels_.end() && *it == label) return static_cast<NodeId>(it - labels_.begin());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

std::optional<std::size_t> WordGraph::edge_between(NodeId a, NodeId b) const {
  auto it = index_.find(key(a, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordGraph build_cooccurrence(std::span<const std::vector<std::string>> sentences, int window) {
  if (window < 1) throw ConfigError("window length must be at least 1");
  std::vector<std::string> labels;
  for (const auto& sentence : sentences) labels.insert(labels.end(), sentence.begin(), sentence.end());
  if (labels.empty()) throw DataError("cannot build a network from an empty document");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto id_of = [&](const std::string& s) {
    return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), s) - labels.begin());
  };
  std::map<std::pair<NodeId, NodeId>, std::uint32_t> counts;
  const auto w = static_cast<std::size_t>(window);
  for (const auto& sentence : sentences) {
    std::vector<NodeId> ids;
    ids.reserve(sentence.size());
    for (const auto& s : sentence) ids.push_back(id_of(s));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = 1; j <= w && i + j < ids.size(); ++j) {
        NodeId a = ids[i];
        NodeId b = ids[i + j];
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        ++counts[{a, b}];
      }
    }
  }
  WordGraph graph(std::move(labels));
  for (const auto& [pair, count] : counts) {
    graph.add_edge(pair.first, pair.second, EdgeKind::cooccurrence, static_cast<double>(count), count);
  }
  graph.config.window = window;
  return graph;
}

WordGraph build_cooccurrence(const ProcessedDocument& doc, int window) {
  return build_cooccurrence(std::span<const std::vector<std::string>>(doc.sentences), window);
}

std::size_t virtual_edge_target(double virtual_fraction, std::size_t cooccurrence_edges) {
  // The epsilon absorbs representation error in grid values such as 0.35 * 10.
  const double product = virtual_fraction * static_cast<double>(cooccurrence_edges);
  return static_cast<std::size_t>(std::floor(product + 0.5 + 1e-9));
}

RankedCandidates rank_candidates(const WordGraph& graph, const EmbeddingSource& source,
                                 const SimilarityConfig& config, std::size_t limit) {
  RankedCandidates out;
  const SimilarityIndex index(graph.labels(), source, config);
  const auto n = static_cast<NodeId>(graph.node_count());
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (graph.edge_between(u, v)) continue;
      if (!index.has(u) || !index.has(v)) {
        ++out.skipped;
        continue;
      }
      out.ranked.push_back({u, v, index(u, v)});
    }
  }
  out.eligible = out.ranked.size();
  const auto& labels = graph.labels();
  auto label_pair = [&](NodeId a, NodeId b) {
    const std::string& x = labels[a];
    const std::string& y = labels[b];
    return x < y ? std::pair<const std::string&, const std::string&>(x, y)
                 : std::pair<const std::string&, const std::string&>(y, x);
  };
  const auto keep = std::min(limit, out.ranked.size());
  std::partial_sort(out.ranked.begin(), out.ranked.begin() + static_cast<std::ptrdiff_t>(keep), out.ranked.end(),
                    [&](const auto& x, const auto& y) {
                      if (x.similarity != y.similarity) return x.similarity > y.similarity;
                      return label_pair(x.u, x.v) < label_pair(y.u, y.v);
                    });
  out.ranked.resize(keep);
  return out;
}

EnrichResult enrich(const WordGraph& graph, double virtual_fraction, const RankedCandidates& candidates) {
  GraphConfig{graph.config.window, virtual_fraction}.validate();
  if (graph.virtual_edges() != 0) throw ConfigError("enrich expects a graph without virtual edges");
  EnrichResult result{graph};
  result.graph.config.virtual_fraction = virtual_fraction;
  result.requested = virtual_edge_target(virtual_fraction, graph.cooccurrence_edges());
  result.skipped = candidates.skipped;
  result.added = std::min(result.requested, candidates.eligible);
  if (result.added > candidates.ranked.size()) {
    throw ConfigError("candidate ranking is shorter than the requested number of virtual edges");
  }
  result.shortfall = result.requested - result.added;
  for (std::size_t i = 0; i < result.added; ++i) {
    const auto& c = candidates.ranked[i];
    result.graph.add_edge(c.u, c.v, EdgeKind::virtual_edge, std::max(c.similarity, kMinVirtualWeight));
  }
  return result;
}

EnrichResult enrich(const WordGraph& graph, const GraphConfig& config, const EmbeddingSource& source,
                    const SimilarityConfig& similarity) {
  config.validate();
  const auto requested = virtual_edge_target(config.virtual_fraction, graph.cooccurrence_edges());
  if (requested == 0) return enrich(graph, config.virtual_fraction, RankedCandidates{});
  if (source.empty()) throw ConfigError("P > 0 requires an embedding source");
  return enrich(graph, config.virtual_fraction, rank_candidates(graph, source, similarity, requested));
}

WordGraph strip_virtual(const WordGraph& graph) {
  WordGraph out(graph.labels());
  for (const auto& e : graph.edges()) {
    if (e.kind == EdgeKind::cooccurrence) out.add_edge(e.u, e.v, e.kind, e.weight, e.count);
  }
  out.config = {graph.config.window, 0.0};
  return out;
}

void write_graph(std::ostream& out, const WordGraph& graph) {
  out << fmt::format("E_t={}\tE_v={}\tw={}\tP={}\n", graph.cooccurrence_edges(), graph.virtual_edges(),
                     graph.config.window, graph.config.virtual_fraction);
  struct Row {
    const std::string* a;
    const std::string* b;
    const Edge* edge;
  };
  std::vector<Row> rows;
  rows.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    const auto* a = &graph.label(e.u);
    const auto* b = &graph.label(e.v);
    if (*b < *a) std::swap(a, b);
    rows.push_back({a, b, &e});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (*x.a != *y.a) return *x.a < *y.a;
    return *x.b < *y.b;
  });
  for (const auto& r : rows) {
    out << fmt::format("{}\t{}\t{}\t{}\n", *r.a, *r.b, to_string(r.edge->kind), r.edge->weight);
  }
}

}  // namespace kwnet
