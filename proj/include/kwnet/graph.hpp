#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kwnet/corpus.hpp"
#include "kwnet/embedding.hpp"

namespace kwnet {

using NodeId = std::uint32_t;

enum class EdgeKind : std::uint8_t { cooccurrence, virtual_edge };

std::string_view to_string(EdgeKind kind);

struct Edge {
  NodeId u;  // u < v
  NodeId v;
  EdgeKind kind;
  double weight;           // > 0
  std::uint32_t count = 0;  // in-window co-occurrences; 0 for virtual edges
};

struct GraphConfig {
  int window = 1;                 // w, at least 1
  double virtual_fraction = 0.0;  // P, in [0, 1]

  void validate() const;
};

/// Undirected, simple, positively weighted word graph. Node ids index the
/// label list; graphs produced by build_cooccurrence have labels in
/// lexicographic order.
class WordGraph {
 public:
  WordGraph() = default;
  explicit WordGraph(std::vector<std::string> labels);

  /// Adds an edge between distinct nodes. Throws DataError on a self-loop, a
  /// duplicate pair or a non-positive weight.
  void add_edge(NodeId a, NodeId b, EdgeKind kind, double weight, std::uint32_t count = 0);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t cooccurrence_edges() const noexcept { return cooccurrence_edges_; }  // E_t
  std::size_t virtual_edges() const noexcept { return edges_.size() - cooccurrence_edges_; }  // E_v

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeId n) const { return labels_[n]; }
  std::optional<NodeId> find(std::string_view label) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Edge indices incident to n, in insertion order.
  const std::vector<std::uint32_t>& incident(NodeId n) const { return incident_[n]; }
  NodeId other(const Edge& e, NodeId n) const noexcept { return e.u == n ? e.v : e.u; }
  std::optional<std::size_t> edge_between(NodeId a, NodeId b) const;

  /// Parameters recorded for dumps; not used by any computation.
  GraphConfig config;

 private:
  static std::uint64_t key(NodeId a, NodeId b) noexcept;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::size_t cooccurrence_edges_ = 0;
};

/// Links every pair of distinct stems at most `window` positions apart within a
/// sentence. Edge weight = number of such co-occurrences.
WordGraph build_cooccurrence(std::span<const std::vector<std::string>> sentences, int window);
WordGraph build_cooccurrence(const ProcessedDocument& doc, int window);

/// round-half-up(P * E_t).
std::size_t virtual_edge_target(double virtual_fraction, std::size_t cooccurrence_edges);

/// Non-adjacent node pairs ranked by similarity (descending, ties by label pair).
struct RankedCandidates {
  struct Candidate {
    NodeId u;
    NodeId v;
    double similarity;
  };
  std::vector<Candidate> ranked;
  std::size_t eligible = 0;  // scored pairs before truncation to the limit
  std::size_t skipped = 0;   // pairs with a missing embedding
};

/// Ranks the non-adjacent pairs of a co-occurrence graph, keeping at most `limit`.
RankedCandidates rank_candidates(const WordGraph& graph, const EmbeddingSource& source,
                                 const SimilarityConfig& config, std::size_t limit);

struct EnrichResult {
  WordGraph graph;
  std::size_t requested = 0;  // round(P * E_t)
  std::size_t added = 0;
  std::size_t shortfall = 0;
  std::size_t skipped = 0;
};

inline constexpr double kMinVirtualWeight = 1e-9;

/// Adds round(P * E_t) virtual edges between the most similar non-adjacent
/// pairs. Virtual edge weight = max(similarity, kMinVirtualWeight).
EnrichResult enrich(const WordGraph& graph, const GraphConfig& config, const EmbeddingSource& source,
                    const SimilarityConfig& similarity);

/// Same, reusing a ranking from rank_candidates (which must cover the request).
EnrichResult enrich(const WordGraph& graph, double virtual_fraction, const RankedCandidates& candidates);

/// Drops every virtual edge.
WordGraph strip_virtual(const WordGraph& graph);

/// Header "E_t=<n>\tE_v=<n>\tw=<n>\tP=<p>", then "a\tb\tkind\tweight" per edge
/// in lexicographic (a, b) order.
void write_graph(std::ostream& out, const WordGraph& graph);

}  // namespace kwnet
