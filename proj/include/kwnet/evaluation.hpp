#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kwnet/centrality.hpp"
#include "kwnet/corpus.hpp"
#include "kwnet/embedding.hpp"

namespace kwnet {

struct KeywordSet {
  std::string document;
  MeasureId measure;
  std::vector<std::string> stems;  // rank order
};

/// The `count` best-ranked nodes (descending score, ties by label); all nodes
/// when the graph is smaller than `count`.
KeywordSet extract_keywords(const CentralityVector& scores, std::size_t count, std::string document = {});

/// |extracted ∩ gold| / |gold|. `gold` is treated as a set and must be non-empty.
double accuracy(const KeywordSet& extracted, std::span<const std::string> gold);

/// Relative gains over the traditional (w = 1, P = 0) and the same-window
/// co-occurrence (P = 0) baselines; nullopt when a baseline is zero.
struct Gains {
  std::optional<double> gamma1;
  std::optional<double> gamma2;
};

Gains gains(double acc, double acc_tr, double acc_w);

/// Two decimals; "--" when undefined or when it rounds to zero.
std::string format_gain(std::optional<double> gain);

/// One embedding column of a sweep.
struct EmbeddingConfig {
  std::string descriptor;  // label used in result records
  SimilarityConfig similarity;
  std::shared_ptr<const StaticEmbeddingTable> table;            // static mode
  std::shared_ptr<const ContextualEmbeddingCorpus> contextual;  // bert modes

  bool has_source() const noexcept { return table != nullptr || contextual != nullptr; }
  /// Source for one document; empty when none is configured. A contextual
  /// corpus without vectors for the document yields a source with no entries.
  EmbeddingSource source_for(std::string_view doc_id) const;
};

struct SweepGrid {
  std::vector<int> windows;
  std::vector<double> fractions;
  std::vector<EmbeddingConfig> embeddings;  // empty: one unenriched column, P must be 0
  std::vector<MeasureId> measures;

  /// Throws ConfigError for empty axes, missing baselines (P = 0, w = 1),
  /// out-of-range values, duplicates, or P > 0 without an embedding source.
  void validate() const;
};

/// first, first + step, ... up to and including `last`; values rounded to 1e-9.
std::vector<double> fraction_range(double first, double last, double step);

struct EvalRecord {
  MeasureId measure;
  int window;
  double virtual_fraction;
  std::string embedding;
  double accuracy;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  std::size_t documents;
};

struct SweepOptions {
  unsigned jobs = 1;
  CentralityParams centrality;
};

/// Mean accuracy of one (embedding, w, P, measure) cell.
struct CellAccuracy {
  std::string embedding;
  int window;
  double virtual_fraction;
  MeasureId measure;
  double accuracy;
  std::size_t documents;
};

struct GroupDiagnostics {
  std::size_t skipped_documents = 0;   // unusable or without any co-occurrence edge
  std::size_t short_documents = 0;     // fewer nodes than gold stems
  std::size_t virtual_shortfall = 0;   // (document, P) cells that got fewer virtual edges than requested
  std::size_t missing_embeddings = 0;  // candidate pairs skipped for lack of vectors
};

struct GroupResult {
  std::vector<CellAccuracy> cells;  // fractions-major, measures-minor
  GroupDiagnostics diagnostics;
};

/// Evaluates every (P, measure) cell for one embedding column and window.
/// Documents are averaged in id order, so the result does not depend on corpus order.
GroupResult evaluate_group(std::span<const ProcessedDocument> corpus, const EmbeddingConfig& embedding, int window,
                           std::span<const double> fractions, std::span<const MeasureId> measures,
                           const SweepOptions& options = {});

/// Orders cells as embeddings > windows > fractions > measures and fills the
/// gains. Throws ConfigError when a cell or its baselines are missing, unless
/// `skip_incomplete` is set, in which case such records are left out.
std::vector<EvalRecord> assemble_records(std::span<const CellAccuracy> cells, const SweepGrid& grid,
                                         bool skip_incomplete = false);

struct SweepResult {
  std::vector<EvalRecord> records;
  GroupDiagnostics diagnostics;  // summed over groups
};

SweepResult run_sweep(std::span<const ProcessedDocument> corpus, const SweepGrid& grid,
                      const SweepOptions& options = {});

/// Per measure, the record with the highest accuracy (ties: smaller P, then
/// smaller w, then embedding descriptor). Measures appear in canonical order.
std::vector<EvalRecord> best_per_measure(std::span<const EvalRecord> records);

void write_records(std::ostream& out, std::span<const EvalRecord> records);
std::vector<EvalRecord> read_records(std::istream& in, const std::string& source_name);

/// Plain-text table: one row per measure, one "P w Γ1 Γ2 Acc." column group per
/// embedding descriptor, each cell holding that column's best configuration.
std::string render_table(std::span<const EvalRecord> records);

}  // namespace kwnet
