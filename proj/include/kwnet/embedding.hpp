#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kwnet {

/// One vector per word (word2vec style).
class StaticEmbeddingTable {
 public:
  explicit StaticEmbeddingTable(std::size_t dimension);

  /// Throws DataError on a length mismatch, a non-finite component or a duplicate word.
  void add(std::string word, std::vector<double> vector);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<double>* find(std::string_view word) const;
  const std::map<std::string, std::vector<double>, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::size_t dimension_;
  std::map<std::string, std::vector<double>, std::less<>> entries_;
};

/// Text format: first line "V d", then V lines "word x_1 ... x_d".
StaticEmbeddingTable load_static_embeddings(const std::filesystem::path& path);
StaticEmbeddingTable parse_static_embeddings(std::istream& in, const std::string& source_name);

/// One vector per occurrence of each word within a single document.
class ContextualEmbeddingSet {
 public:
  explicit ContextualEmbeddingSet(std::size_t dimension);

  void add(std::string stem, std::vector<double> vector);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t frequency(std::string_view stem) const;
  const std::vector<std::vector<double>>* find(std::string_view stem) const;
  const std::map<std::string, std::vector<std::vector<double>>, std::less<>>& entries() const noexcept {
    return occurrences_;
  }

 private:
  std::size_t dimension_;
  std::map<std::string, std::vector<std::vector<double>>, std::less<>> occurrences_;
};

/// Contextual vectors for a whole corpus, keyed by document id.
struct ContextualEmbeddingCorpus {
  std::size_t dimension = 0;
  std::map<std::string, ContextualEmbeddingSet, std::less<>> documents;

  const ContextualEmbeddingSet* find(std::string_view doc_id) const;
};

/// JSON lines: {"doc_id", "sentence_index", "token_index", "stem", "vector"}.
/// Occurrences of a stem are ordered by (sentence_index, token_index).
ContextualEmbeddingCorpus load_contextual_embeddings(const std::filesystem::path& path);
ContextualEmbeddingCorpus parse_contextual_embeddings(std::istream& in, const std::string& source_name);

enum class SimilarityMode {
  static_cosine,  // cosine of word vectors
  bert_sim1,      // cosine of per-word mean occurrence vectors
  bert_sim2,      // mean cosine over all occurrence pairs
};

SimilarityMode parse_similarity_mode(std::string_view name);
std::string_view to_string(SimilarityMode mode);

struct SimilarityConfig {
  SimilarityMode mode = SimilarityMode::static_cosine;
};

/// Non-owning view of whichever embedding source a similarity mode needs.
class EmbeddingSource {
 public:
  EmbeddingSource() = default;
  EmbeddingSource(const StaticEmbeddingTable& table) : static_(&table) {}          // NOLINT
  EmbeddingSource(const ContextualEmbeddingSet& set) : contextual_(&set) {}        // NOLINT

  bool empty() const noexcept { return static_ == nullptr && contextual_ == nullptr; }
  const StaticEmbeddingTable* static_table() const noexcept { return static_; }
  const ContextualEmbeddingSet* contextual() const noexcept { return contextual_; }

 private:
  const StaticEmbeddingTable* static_ = nullptr;
  const ContextualEmbeddingSet* contextual_ = nullptr;
};

/// dot(u, v) / (|u| |v|) clamped to [-1, 1]. Throws UndefinedSimilarity for a
/// zero-norm input and DataError for a length mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

/// Similarity of two stems under `config`. Returns nullopt when either stem has
/// no usable vector (absent, or zero norm). Throws ConfigError when the source
/// does not match the mode.
std::optional<double> similarity(std::string_view a, std::string_view b, const EmbeddingSource& source,
                                 const SimilarityConfig& config);

/// Precomputed unit vectors for a fixed list of stems, for bulk pair scoring.
class SimilarityIndex {
 public:
  SimilarityIndex(std::span<const std::string> stems, const EmbeddingSource& source, const SimilarityConfig& config);

  bool has(std::size_t i) const noexcept { return !units_[i].empty(); }
  /// Requires has(i) && has(j).
  double operator()(std::size_t i, std::size_t j) const;
  std::size_t size() const noexcept { return units_.size(); }

 private:
  SimilarityMode mode_;
  // One unit vector per stem for static/bert_sim1, one per occurrence for bert_sim2.
  std::vector<std::vector<std::vector<double>>> units_;
};

struct StemPair {
  std::string a;  // a < b
  std::string b;

  StemPair(std::string x, std::string y);
  auto operator<=>(const StemPair&) const = default;
};

struct ScoredPair {
  StemPair pair;
  double similarity;
};

struct TopPairs {
  std::vector<ScoredPair> pairs;  // descending similarity, ties by (a, b) ascending
  std::size_t skipped = 0;        // candidates without usable vectors
  std::size_t shortfall = 0;      // requested minus returned
};

TopPairs top_similar_pairs(std::span<const StemPair> candidates, std::size_t count, const EmbeddingSource& source,
                           const SimilarityConfig& config);

}  // namespace kwnet
