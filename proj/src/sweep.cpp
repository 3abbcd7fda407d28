#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "kwnet/error.hpp"
#include "kwnet/evaluation.hpp"
#include "kwnet/graph.hpp"
#include "parallel.hpp"

namespace kwnet {
namespace {

constexpr double kFractionQuantum = 1e-9;
constexpr double kFractionSteps = 1e9;

double quantize(double x) { return std::round(x * kFractionSteps) / kFractionSteps; }

// Descriptor of the single column of a sweep without embeddings.
const std::string kNoEmbedding = "none";

// Per-document outcome of one evaluation group.
struct DocumentOutcome {
  bool evaluated = false;
  bool short_graph = false;
  std::size_t shortfall_cells = 0;
  std::size_t skipped_pairs = 0;
  std::vector<double> accuracy;  // fractions-major, measures-minor
};

}  // namespace

EmbeddingSource EmbeddingConfig::source_for(std::string_view doc_id) const {
  if (table) return EmbeddingSource(*table);
  if (contextual) {
    if (const auto* set = contextual->find(doc_id)) return EmbeddingSource(*set);
    static const ContextualEmbeddingSet kEmpty(1);
    return EmbeddingSource(kEmpty);
  }
  return {};
}

void SweepGrid::validate() const {
  if (windows.empty()) throw ConfigError("sweep grid has no window lengths");
  if (fractions.empty()) throw ConfigError("sweep grid has no P values");
  if (measures.empty()) throw ConfigError("sweep grid has no measures");
  for (int w : windows) {
    if (w < 1 || w > 3) throw ConfigError("window lengths must be 1, 2 or 3");
  }
  if (std::set<int>(windows.begin(), windows.end()).size() != windows.size()) {
    throw ConfigError("duplicate window length in sweep grid");
  }
  if (std::find(windows.begin(), windows.end(), 1) == windows.end()) {
    throw ConfigError("sweep grid needs w = 1 as the traditional baseline");
  }
  for (double p : fractions) GraphConfig{1, p}.validate();
  if (std::set<double>(fractions.begin(), fractions.end()).size() != fractions.size()) {
    throw ConfigError("duplicate P value in sweep grid");
  }
  if (std::find(fractions.begin(), fractions.end(), 0.0) == fractions.end()) {
    throw ConfigError("sweep grid needs P = 0 as the baseline");
  }
  if (std::set<MeasureId>(measures.begin(), measures.end()).size() != measures.size()) {
    throw ConfigError("duplicate measure in sweep grid");
  }
  std::set<std::string> names;
  for (const auto& e : embeddings) {
    if (!names.insert(e.descriptor).second) throw ConfigError("duplicate embedding descriptor '" + e.descriptor + "'");
    if (!e.has_source()) throw ConfigError("embedding '" + e.descriptor + "' has no vectors");
  }
  const bool enriched = std::any_of(fractions.begin(), fractions.end(), [](double p) { return p > 0.0; });
  if (enriched && embeddings.empty()) throw ConfigError("P > 0 requires at least one embedding source");
}

std::vector<double> fraction_range(double first, double last, double step) {
  if (!(step > 0.0)) throw ConfigError("P step must be positive");
  if (!(first <= last)) throw ConfigError("P range is empty");
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double value = quantize(first + static_cast<double>(k) * step);
    if (value > last + kFractionQuantum) break;
    out.push_back(std::min(value, quantize(last)));
  }
  return out;
}

GroupResult evaluate_group(std::span<const ProcessedDocument> corpus, const EmbeddingConfig& embedding, int window,
                           std::span<const double> fractions, std::span<const MeasureId> measures,
                           const SweepOptions& options) {
  const bool enriched = std::any_of(fractions.begin(), fractions.end(), [](double p) { return p > 0.0; });
  if (enriched && !embedding.has_source()) throw ConfigError("P > 0 requires an embedding source");
  const double max_fraction = fractions.empty() ? 0.0 : *std::max_element(fractions.begin(), fractions.end());
  const std::size_t cells = fractions.size() * measures.size();

  std::vector<DocumentOutcome> outcomes(corpus.size());
  detail::parallel_for(corpus.size(), options.jobs, [&](std::size_t d) {
    const ProcessedDocument& doc = corpus[d];
    DocumentOutcome& out = outcomes[d];
    if (!doc.usable) return;
    WordGraph base = build_cooccurrence(doc, window);
    if (base.edge_count() == 0) return;
    out.evaluated = true;
    out.short_graph = base.node_count() < doc.gold_stems.size();
    out.accuracy.assign(cells, 0.0);

    RankedCandidates ranked;
    const auto limit = virtual_edge_target(max_fraction, base.cooccurrence_edges());
    if (limit > 0) {
      ranked = rank_candidates(base, embedding.source_for(doc.id), embedding.similarity, limit);
      out.skipped_pairs = ranked.skipped;
    }

    CentralityParams params = options.centrality;
    params.echo = {window, 0.0, embedding.descriptor};
    // Fractions that round to the same number of virtual edges share a graph.
    std::map<std::size_t, std::vector<double>> by_added;
    for (std::size_t f = 0; f < fractions.size(); ++f) {
      const EnrichResult enriched_graph = enrich(base, fractions[f], ranked);
      if (enriched_graph.shortfall > 0) ++out.shortfall_cells;
      auto [it, fresh] = by_added.try_emplace(enriched_graph.added);
      if (fresh) {
        params.echo.virtual_fraction = fractions[f];
        it->second.reserve(measures.size());
        for (MeasureId m : measures) {
          const KeywordSet top = extract_keywords(compute(enriched_graph.graph, m, params), doc.gold_stems.size(), doc.id);
          it->second.push_back(accuracy(top, doc.gold_stems));
        }
      }
      std::copy(it->second.begin(), it->second.end(), out.accuracy.begin() + static_cast<std::ptrdiff_t>(f * measures.size()));
    }
  });

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return corpus[a].id < corpus[b].id; });

  GroupResult result;
  std::vector<double> sums(cells, 0.0);
  std::size_t evaluated = 0;
  for (std::size_t d : order) {
    const auto& out = outcomes[d];
    if (!out.evaluated) {
      ++result.diagnostics.skipped_documents;
      continue;
    }
    ++evaluated;
    result.diagnostics.short_documents += out.short_graph ? 1 : 0;
    result.diagnostics.virtual_shortfall += out.shortfall_cells;
    result.diagnostics.missing_embeddings += out.skipped_pairs;
    for (std::size_t c = 0; c < cells; ++c) sums[c] += out.accuracy[c];
  }
  if (evaluated == 0) throw DataError("no evaluable documents in the corpus");

  result.cells.reserve(cells);
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    for (std::size_t m = 0; m < measures.size(); ++m) {
      result.cells.push_back({embedding.descriptor, window, fractions[f], measures[m],
                              sums[f * measures.size() + m] / static_cast<double>(evaluated), evaluated});
    }
  }
  return result;
}

std::vector<EvalRecord> assemble_records(std::span<const CellAccuracy> cells, const SweepGrid& grid,
                                         bool skip_incomplete) {
  using Key = std::tuple<std::string, int, double, MeasureId>;
  std::map<Key, const CellAccuracy*> index;
  for (const auto& c : cells) index[{c.embedding, c.window, c.virtual_fraction, c.measure}] = &c;
  auto lookup = [&](const std::string& e, int w, double p, MeasureId m) -> const CellAccuracy* {
    const auto it = index.find({e, w, p, m});
    if (it == index.end()) {
      if (skip_incomplete) return nullptr;
      throw ConfigError("missing sweep cell (" + e + ", w=" + std::to_string(w) + ", P=" + std::to_string(p) + ", " +
                        std::string(to_string(m)) + ")");
    }
    return it->second;
  };

  std::vector<std::string> descriptors;
  for (const auto& e : grid.embeddings) descriptors.push_back(e.descriptor);
  if (descriptors.empty()) descriptors.push_back(kNoEmbedding);

  std::vector<EvalRecord> out;
  for (const auto& e : descriptors) {
    for (int w : grid.windows) {
      for (double p : grid.fractions) {
        for (MeasureId m : grid.measures) {
          const auto* cell = lookup(e, w, p, m);
          const auto* traditional = lookup(e, 1, 0.0, m);
          const auto* same_window = lookup(e, w, 0.0, m);
          if (cell == nullptr || traditional == nullptr || same_window == nullptr) continue;
          const Gains g = gains(cell->accuracy, traditional->accuracy, same_window->accuracy);
          out.push_back({m, w, p, e, cell->accuracy, g.gamma1, g.gamma2, cell->documents});
        }
      }
    }
  }
  return out;
}

SweepResult run_sweep(std::span<const ProcessedDocument> corpus, const SweepGrid& grid, const SweepOptions& options) {
  grid.validate();
  std::vector<EmbeddingConfig> columns = grid.embeddings;
  if (columns.empty()) columns.push_back({kNoEmbedding, {}, nullptr, nullptr});

  SweepResult result;
  std::vector<CellAccuracy> cells;
  for (const auto& embedding : columns) {
    for (int w : grid.windows) {
      GroupResult group = evaluate_group(corpus, embedding, w, grid.fractions, grid.measures, options);
      cells.insert(cells.end(), group.cells.begin(), group.cells.end());
      result.diagnostics.skipped_documents += group.diagnostics.skipped_documents;
      result.diagnostics.short_documents += group.diagnostics.short_documents;
      result.diagnostics.virtual_shortfall += group.diagnostics.virtual_shortfall;
      result.diagnostics.missing_embeddings += group.diagnostics.missing_embeddings;
    }
  }
  result.records = assemble_records(cells, grid);
  return result;
}

}  // namespace kwnet
