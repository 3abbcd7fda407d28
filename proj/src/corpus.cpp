#include <algorithm>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>

#include "kwnet/corpus.hpp"
#include "kwnet/error.hpp"
#include "parallel.hpp"

namespace kwnet {
namespace {

using nlohmann::json;

RawDocument parse_record(const std::string& line, const std::string& source, std::size_t line_no) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) throw ParseError(source, line_no, "record is not an object");
  auto field = [&](const char* name) -> const json& {
    auto it = record.find(name);
    if (it == record.end()) throw ParseError(source, line_no, std::string("missing field '") + name + "'");
    return *it;
  };
  RawDocument doc;
  const json& id = field("id");
  if (id.is_string()) {
    doc.id = id.get<std::string>();
  } else if (id.is_number_integer()) {
    doc.id = std::to_string(id.get<long long>());
  } else {
    throw ParseError(source, line_no, "field 'id' must be a string");
  }
  if (doc.id.empty()) throw ParseError(source, line_no, "field 'id' is empty");
  const json& text = field("text");
  if (!text.is_string()) throw ParseError(source, line_no, "field 'text' must be a string");
  doc.text = text.get<std::string>();
  if (doc.text.empty()) throw ParseError(source, line_no, "field 'text' is empty");
  const json& keywords = field("keywords");
  if (!keywords.is_array()) throw ParseError(source, line_no, "field 'keywords' must be an array of strings");
  for (const auto& k : keywords) {
    if (!k.is_string()) throw ParseError(source, line_no, "field 'keywords' must be an array of strings");
    doc.gold_keyphrases.push_back(k.get<std::string>());
  }
  return doc;
}

struct Pipeline {
  const StopwordSet& stopwords;
  StemmerId stemmer;

  // Returns the stem of a normalized token, or an empty string if the token
  // or its stem is a stopword.
  std::string keep(const std::string& token) const {
    if (stopwords.contains(token)) return {};
    std::string s = stem(token, stemmer);
    if (s.empty() || stopwords.contains(s)) return {};
    return s;
  }
};

Pipeline make_pipeline(const PreprocessOptions& options) {
  return {options.stopwords != nullptr ? *options.stopwords : default_stopwords(), options.stemmer};
}

}  // namespace

std::vector<RawDocument> parse_corpus(std::istream& in, const std::string& source_name, CorpusFormat format) {
  if (format != CorpusFormat::jsonl) throw ConfigError("unsupported corpus format");
  std::vector<RawDocument> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    RawDocument doc = parse_record(line, source_name, line_no);
    if (!seen.insert(doc.id).second) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": duplicate document id '" + doc.id + "'");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus " + path.string());
  return parse_corpus(in, path.string(), format);
}

ProcessedDocument preprocess(const RawDocument& doc, const PreprocessOptions& options) {
  const Pipeline pipeline = make_pipeline(options);
  ProcessedDocument out;
  out.id = doc.id;
  std::set<std::string> vocabulary;
  for (const auto& sentence : segment_sentences(doc.text)) {
    std::vector<std::string> stems;
    for (const auto& token : tokenize(sentence)) {
      std::string s = pipeline.keep(token.text);
      if (s.empty()) continue;
      vocabulary.insert(s);
      stems.push_back(std::move(s));
    }
    if (stems.empty()) continue;
    out.stats.tokens += stems.size();
    out.sentences.push_back(std::move(stems));
  }
  out.stats.sentences = out.sentences.size();
  out.stats.vocabulary = vocabulary.size();

  std::set<std::string> gold;
  for (const auto& phrase : doc.gold_keyphrases) {
    for (const auto& token : tokenize(phrase)) {
      std::string s = pipeline.keep(token.text);
      if (!s.empty()) gold.insert(std::move(s));
    }
  }
  out.gold_stems.assign(gold.begin(), gold.end());
  out.stats.references = out.gold_stems.size();

  if (out.stats.tokens == 0) {
    out.usable = false;
    out.issue = "no content tokens after preprocessing";
  } else if (out.gold_stems.empty()) {
    out.usable = false;
    out.issue = "no gold stems after preprocessing";
  }
  return out;
}

std::vector<ProcessedDocument> preprocess_corpus(std::span<const RawDocument> docs,
                                                 const PreprocessOptions& options, unsigned jobs) {
  std::vector<ProcessedDocument> out(docs.size());
  detail::parallel_for(docs.size(), jobs, [&](std::size_t i) { out[i] = preprocess(docs[i], options); });
  return out;
}

AnnotatedDocument annotate(const RawDocument& doc, const PreprocessOptions& options) {
  const Pipeline pipeline = make_pipeline(options);
  AnnotatedDocument out;
  out.id = doc.id;
  for (auto& sentence : segment_sentences(doc.text)) {
    std::vector<Occurrence> found;
    const std::size_t sentence_index = out.sentence_texts.size();
    for (auto& token : tokenize(sentence)) {
      std::string s = pipeline.keep(token.text);
      if (s.empty()) continue;
      found.push_back({sentence_index, found.size(), std::move(s), sentence.substr(token.begin, token.end - token.begin),
                       token.begin, token.end});
    }
    if (found.empty()) continue;
    out.sentence_texts.push_back(std::move(sentence));
    std::move(found.begin(), found.end(), std::back_inserter(out.occurrences));
  }
  return out;
}

CorpusStats corpus_stats(std::span<const ProcessedDocument> docs) {
  CorpusStats stats;
  double tokens = 0, vocabulary = 0, sentences = 0, references = 0;
  for (const auto& doc : docs) {
    if (!doc.usable) {
      ++stats.unusable;
      continue;
    }
    ++stats.documents;
    tokens += static_cast<double>(doc.stats.tokens);
    vocabulary += static_cast<double>(doc.stats.vocabulary);
    sentences += static_cast<double>(doc.stats.sentences);
    references += static_cast<double>(doc.stats.references);
  }
  if (stats.documents > 0) {
    const auto n = static_cast<double>(stats.documents);
    stats.mean_tokens = tokens / n;
    stats.mean_vocabulary = vocabulary / n;
    stats.mean_sentences = sentences / n;
    stats.mean_references = references / n;
  }
  return stats;
}

void write_processed(std::ostream& out, std::span<const ProcessedDocument> docs) {
  for (const auto& doc : docs) {
    json record = {
        {"id", doc.id},
        {"sentences", doc.sentences},
        {"gold_stems", doc.gold_stems},
        {"stats",
         {{"W", doc.stats.tokens}, {"S", doc.stats.sentences}, {"U", doc.stats.vocabulary}, {"K", doc.stats.references}}},
        {"usable", doc.usable},
    };
    if (!doc.usable) record["issue"] = doc.issue;
    out << record.dump() << '\n';
  }
}

}  // namespace kwnet
