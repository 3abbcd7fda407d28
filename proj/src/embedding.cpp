#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "kwnet/embedding.hpp"
#include "kwnet/error.hpp"

namespace kwnet {
namespace {

void check_vector(const std::vector<double>& v, std::size_t dimension, const std::string& word) {
  if (v.size() != dimension) {
    throw DataError("vector for '" + word + "' has " + std::to_string(v.size()) + " components, expected " +
                    std::to_string(dimension));
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw DataError("vector for '" + word + "' has a non-finite component");
  }
}

double norm(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Empty result for a zero vector.
std::vector<double> unit(std::span<const double> v) {
  const double n = norm(v);
  if (n == 0.0) return {};
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

double dot(std::span<const double> u, std::span<const double> v) {
  return std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
}

std::vector<double> mean(const std::vector<std::vector<double>>& vectors) {
  std::vector<double> out(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
  }
  for (double& x : out) x /= static_cast<double>(vectors.size());
  return out;
}

std::string_view next_field(std::string_view& line) {
  const auto start = line.find_first_not_of(" \t");
  if (start == std::string_view::npos) {
    line = {};
    return {};
  }
  line.remove_prefix(start);
  const auto stop = line.find_first_of(" \t");
  auto field = line.substr(0, stop);
  line.remove_prefix(stop == std::string_view::npos ? line.size() : stop);
  return field;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

void require_source(const EmbeddingSource& source, const SimilarityConfig& config) {
  if (config.mode == SimilarityMode::static_cosine) {
    if (source.static_table() == nullptr) throw ConfigError("static similarity requires a static embedding table");
  } else if (source.contextual() == nullptr) {
    throw ConfigError(std::string(to_string(config.mode)) + " similarity requires contextual embeddings");
  }
}

// Per-stem unit vectors (one for static/bert_sim1, one per occurrence for
// bert_sim2); empty when the stem has no usable vector.
std::vector<std::vector<double>> prepare(std::string_view stem, const EmbeddingSource& source,
                                         const SimilarityConfig& config) {
  switch (config.mode) {
    case SimilarityMode::static_cosine: {
      const auto* v = source.static_table()->find(stem);
      if (v == nullptr) return {};
      auto u = unit(*v);
      if (u.empty()) return {};
      return {std::move(u)};
    }
    case SimilarityMode::bert_sim1: {
      const auto* vs = source.contextual()->find(stem);
      if (vs == nullptr || vs->empty()) return {};
      auto u = unit(mean(*vs));
      if (u.empty()) return {};
      return {std::move(u)};
    }
    case SimilarityMode::bert_sim2: {
      const auto* vs = source.contextual()->find(stem);
      if (vs == nullptr || vs->empty()) return {};
      std::vector<std::vector<double>> units;
      units.reserve(vs->size());
      for (const auto& v : *vs) {
        auto u = unit(v);
        if (u.empty()) return {};
        units.push_back(std::move(u));
      }
      return units;
    }
  }
  return {};
}

double score(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
             SimilarityMode mode) {
  if (mode != SimilarityMode::bert_sim2) return clamp_unit(dot(a.front(), b.front()));
  double sum = 0.0;
  for (const auto& u : a) {
    for (const auto& v : b) sum += clamp_unit(dot(u, v));
  }
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace

StaticEmbeddingTable::StaticEmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw DataError("embedding dimension must be positive");
}

void StaticEmbeddingTable::add(std::string word, std::vector<double> vector) {
  check_vector(vector, dimension_, word);
  auto [it, inserted] = entries_.emplace(std::move(word), std::move(vector));
  if (!inserted) throw DataError("duplicate embedding for '" + it->first + "'");
}

const std::vector<double>* StaticEmbeddingTable::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

StaticEmbeddingTable parse_static_embeddings(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "missing header \"V d\"");
  std::string_view header(line);
  std::size_t vocabulary = 0;
  std::size_t dimension = 0;
  if (!parse_number(next_field(header), vocabulary) || !parse_number(next_field(header), dimension) ||
      !next_field(header).empty() || dimension == 0) {
    throw ParseError(source_name, 1, "header must be \"V d\" with positive d");
  }
  StaticEmbeddingTable table(dimension);
  std::size_t line_no = 1;
  bool any_nonzero = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view rest(line);
    const auto word = next_field(rest);
    if (word.empty()) continue;
    std::vector<double> vector;
    vector.reserve(dimension);
    for (auto field = next_field(rest); !field.empty(); field = next_field(rest)) {
      double x = 0.0;
      if (!parse_number(field, x)) throw ParseError(source_name, line_no, "bad number '" + std::string(field) + "'");
      vector.push_back(x);
    }
    if (vector.size() != dimension) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(dimension) + " components, got " + std::to_string(vector.size()));
    }
    try {
      table.add(std::string(word), std::move(vector));
    } catch (const DataError& e) {
      throw ParseError(source_name, line_no, e.what());
    }
    any_nonzero = any_nonzero || norm(*table.find(word)) > 0.0;
  }
  if (table.size() != vocabulary) {
    throw ParseError(source_name, line_no,
                     "header declares " + std::to_string(vocabulary) + " words, file has " + std::to_string(table.size()));
  }
  if (table.size() > 0 && !any_nonzero) throw DataError(source_name + ": every vector has zero norm");
  return table;
}

StaticEmbeddingTable load_static_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  return parse_static_embeddings(in, path.string());
}

ContextualEmbeddingSet::ContextualEmbeddingSet(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw DataError("embedding dimension must be positive");
}

void ContextualEmbeddingSet::add(std::string stem, std::vector<double> vector) {
  check_vector(vector, dimension_, stem);
  occurrences_[std::move(stem)].push_back(std::move(vector));
}

std::size_t ContextualEmbeddingSet::frequency(std::string_view stem) const {
  const auto* vs = find(stem);
  return vs == nullptr ? 0 : vs->size();
}

const std::vector<std::vector<double>>* ContextualEmbeddingSet::find(std::string_view stem) const {
  auto it = occurrences_.find(stem);
  return it == occurrences_.end() ? nullptr : &it->second;
}

const ContextualEmbeddingSet* ContextualEmbeddingCorpus::find(std::string_view doc_id) const {
  auto it = documents.find(doc_id);
  return it == documents.end() ? nullptr : &it->second;
}

ContextualEmbeddingCorpus parse_contextual_embeddings(std::istream& in, const std::string& source_name) {
  using nlohmann::json;
  struct Record {
    std::string doc_id;
    std::size_t sentence;
    std::size_t token;
    std::string stem;
    std::vector<double> vector;
  };
  std::vector<Record> records;
  std::set<std::tuple<std::string, std::size_t, std::size_t>> positions;
  std::size_t dimension = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Record r;
    try {
      const json j = json::parse(line);
      r.doc_id = j.at("doc_id").is_string() ? j.at("doc_id").get<std::string>()
                                             : std::to_string(j.at("doc_id").get<long long>());
      r.sentence = j.at("sentence_index").get<std::size_t>();
      r.token = j.at("token_index").get<std::size_t>();
      r.stem = j.at("stem").get<std::string>();
      r.vector = j.at("vector").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ParseError(source_name, line_no, e.what());
    }
    if (r.vector.empty()) throw ParseError(source_name, line_no, "empty vector");
    if (dimension == 0) dimension = r.vector.size();
    if (r.vector.size() != dimension) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(dimension) + " components, got " + std::to_string(r.vector.size()));
    }
    if (!positions.emplace(r.doc_id, r.sentence, r.token).second) {
      throw ParseError(source_name, line_no, "duplicate occurrence record");
    }
    for (double x : r.vector) {
      if (!std::isfinite(x)) throw ParseError(source_name, line_no, "non-finite component");
    }
    records.push_back(std::move(r));
  }
  std::sort(records.begin(), records.end(), [](const Record& x, const Record& y) {
    return std::tie(x.doc_id, x.sentence, x.token) < std::tie(y.doc_id, y.sentence, y.token);
  });
  ContextualEmbeddingCorpus corpus;
  corpus.dimension = dimension;
  for (auto& r : records) {
    auto it = corpus.documents.find(r.doc_id);
    if (it == corpus.documents.end()) it = corpus.documents.emplace(r.doc_id, ContextualEmbeddingSet(dimension)).first;
    it->second.add(std::move(r.stem), std::move(r.vector));
  }
  return corpus;
}

ContextualEmbeddingCorpus load_contextual_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  return parse_contextual_embeddings(in, path.string());
}

SimilarityMode parse_similarity_mode(std::string_view name) {
  if (name == "static") return SimilarityMode::static_cosine;
  if (name == "bert-sim1" || name == "bert_sim1") return SimilarityMode::bert_sim1;
  if (name == "bert-sim2" || name == "bert_sim2") return SimilarityMode::bert_sim2;
  throw ConfigError("unknown embedding mode '" + std::string(name) + "' (expected static, bert-sim1 or bert-sim2)");
}

std::string_view to_string(SimilarityMode mode) {
  switch (mode) {
    case SimilarityMode::static_cosine:
      return "static";
    case SimilarityMode::bert_sim1:
      return "bert-sim1";
    case SimilarityMode::bert_sim2:
      return "bert-sim2";
  }
  return "?";
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DataError("cosine of vectors with different lengths");
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw UndefinedSimilarity("cosine of a zero-norm vector");
  return clamp_unit(dot(u, v) / (nu * nv));
}

std::optional<double> similarity(std::string_view a, std::string_view b, const EmbeddingSource& source,
                                 const SimilarityConfig& config) {
  require_source(source, config);
  // The double sum depends on summation order; fixing the order makes the
  // result exactly symmetric.
  if (b < a) std::swap(a, b);
  const auto ua = prepare(a, source, config);
  const auto ub = prepare(b, source, config);
  if (ua.empty() || ub.empty()) return std::nullopt;
  return score(ua, ub, config.mode);
}

SimilarityIndex::SimilarityIndex(std::span<const std::string> stems, const EmbeddingSource& source,
                                 const SimilarityConfig& config)
    : mode_(config.mode) {
  require_source(source, config);
  units_.reserve(stems.size());
  for (const auto& s : stems) units_.push_back(prepare(s, source, config));
}

double SimilarityIndex::operator()(std::size_t i, std::size_t j) const {
  if (j < i) std::swap(i, j);
  return score(units_[i], units_[j], mode_);
}

StemPair::StemPair(std::string x, std::string y) : a(std::move(x)), b(std::move(y)) {
  if (b < a) std::swap(a, b);
}

TopPairs top_similar_pairs(std::span<const StemPair> candidates, std::size_t count, const EmbeddingSource& source,
                           const SimilarityConfig& config) {
  TopPairs result;
  if (count == 0) return result;
  require_source(source, config);
  std::map<std::string, std::vector<std::vector<double>>, std::less<>> cache;
  auto lookup = [&](const std::string& stem) -> const std::vector<std::vector<double>>& {
    auto it = cache.find(stem);
    if (it == cache.end()) it = cache.emplace(stem, prepare(stem, source, config)).first;
    return it->second;
  };
  std::vector<ScoredPair> scored;
  scored.reserve(candidates.size());
  for (const auto& c : candidates) {
    const auto& ua = lookup(c.a);
    const auto& ub = lookup(c.b);
    if (ua.empty() || ub.empty()) {
      ++result.skipped;
      continue;
    }
    scored.push_back({c, score(ua, ub, config.mode)});
  }
  const auto keep = std::min(count, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    [](const ScoredPair& x, const ScoredPair& y) {
                      if (x.similarity != y.similarity) return x.similarity > y.similarity;
                      return x.pair < y.pair;
                    });
  scored.erase(scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end());
  result.pairs = std::move(scored);
  result.shortfall = count - keep;
  return result;
}

}  // namespace kwnet
