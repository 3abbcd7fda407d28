#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kwnet/error.hpp"
#include "kwnet/graph.hpp"

namespace kwnet {

/// Node-ranking measures. `_w` marks the weighted variant of a measure.
enum class MeasureId { k, s, pi, pi_w, EV, EV_w, B, B_w, C, C_w, A1, A2 };

inline constexpr MeasureId kAllMeasures[] = {MeasureId::k,  MeasureId::s,   MeasureId::pi, MeasureId::pi_w,
                                             MeasureId::EV, MeasureId::EV_w, MeasureId::B,  MeasureId::B_w,
                                             MeasureId::C,  MeasureId::C_w,  MeasureId::A1, MeasureId::A2};

std::string_view to_string(MeasureId id);
MeasureId parse_measure(std::string_view name);
/// Comma-separated names, or "all".
std::vector<MeasureId> parse_measures(std::string_view list);

/// Which network a score vector was computed on.
struct ConfigEcho {
  int window = 1;
  double virtual_fraction = 0.0;
  std::string embedding;  // descriptor, empty when no embeddings were used
};

struct CentralityVector {
  MeasureId measure;
  std::vector<std::string> nodes;
  std::vector<double> scores;  // aligned with nodes
  ConfigEcho config;
};

struct PageRankParams {
  double gamma = 0.85;
  std::optional<double> beta;  // defaults to (1 - gamma) / N
  double tolerance = 1e-10;
  int max_iterations = 200;
};

struct EigenvectorParams {
  double tolerance = 1e-10;
  int max_iterations = 100000;
};

struct CentralityParams {
  PageRankParams pagerank;
  EigenvectorParams eigenvector;
  ConfigEcho echo;
};

/// A measure failed on a particular graph.
class MeasureError : public Error {
 public:
  MeasureError(MeasureId measure, const std::string& what)
      : Error(std::string(to_string(measure)) + ": " + what), measure_(measure) {}

  MeasureId measure() const noexcept { return measure_; }

 private:
  MeasureId measure_;
};

// Raw score vectors, indexed by NodeId.

std::vector<double> degree_scores(const WordGraph& graph);
std::vector<double> strength_scores(const WordGraph& graph);

/// Power iteration of pi_i = gamma * sum_j a_ij pi_j / k_j + beta. Dangling
/// nodes spread their mass uniformly; the result sums to 1. Weighted mode uses
/// w_ij / s_j. Throws ConvergenceError.
std::vector<double> pagerank_scores(const WordGraph& graph, const PageRankParams& params, bool weighted);

/// Principal eigenvector of (A + I) by power iteration, non-negative, unit 1-norm.
/// Throws ConvergenceError, or DataError for a graph without edges.
std::vector<double> eigenvector_scores(const WordGraph& graph, const EigenvectorParams& params, bool weighted);

/// Brandes accumulation over undirected shortest paths (edge length 1/weight in
/// weighted mode); each unordered pair is counted once.
std::vector<double> betweenness_scores(const WordGraph& graph, bool weighted);

/// C_i = N * sum_{j != i} 1 / d_ij, unreachable pairs contributing 0.
std::vector<double> closeness_scores(const WordGraph& graph, bool weighted);

/// Probability that a self-avoiding walk of exactly `steps` steps from `start`
/// ends at each node; walks that get stuck early contribute nothing. Each step
/// picks uniformly among unvisited neighbours.
std::vector<double> walk_end_distribution(const WordGraph& graph, NodeId start, int steps);

/// exp(-sum p log p) over the end distribution for h in {1, 2}. A node whose
/// walks all get stuck scores 0.
std::vector<double> accessibility_scores(const WordGraph& graph, int h);

/// exp of the Shannon entropy of positive entries; exactly m for a uniform
/// distribution over m outcomes; 0 for an empty distribution.
double true_diversity(std::span<const double> probabilities);

CentralityVector compute(const WordGraph& graph, MeasureId measure, const CentralityParams& params = {});

/// One vector per requested measure, in request order. Failures are rethrown as MeasureError.
std::vector<CentralityVector> compute_all(const WordGraph& graph, std::span<const MeasureId> measures,
                                          const CentralityParams& params = {});

/// Node order by descending score, then ascending label.
std::vector<std::size_t> ranking(const CentralityVector& scores);

}  // namespace kwnet
