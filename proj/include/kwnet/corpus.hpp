#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kwnet/text.hpp"

namespace kwnet {

struct RawDocument {
  std::string id;
  std::string text;
  std::vector<std::string> gold_keyphrases;
};

enum class CorpusFormat {
  jsonl,  // one JSON object per line: {"id": str, "text": str, "keywords": [str, ...]}
};

/// Parses a corpus; record order is preserved. Throws ParseError (with line
/// number) for malformed records and DataError for duplicate ids.
std::vector<RawDocument> load_corpus(const std::filesystem::path& path,
                                     CorpusFormat format = CorpusFormat::jsonl);
std::vector<RawDocument> parse_corpus(std::istream& in, const std::string& source_name,
                                      CorpusFormat format = CorpusFormat::jsonl);

struct DocumentStats {
  std::size_t tokens = 0;      // W
  std::size_t sentences = 0;   // S
  std::size_t vocabulary = 0;  // U
  std::size_t references = 0;  // K
};

struct ProcessedDocument {
  std::string id;
  std::vector<std::vector<std::string>> sentences;  // non-empty stem sequences
  std::vector<std::string> gold_stems;              // sorted, unique
  DocumentStats stats;
  bool usable = true;
  std::string issue;  // why the document is unusable, empty otherwise
};

struct PreprocessOptions {
  const StopwordSet* stopwords = nullptr;  // nullptr selects default_stopwords()
  StemmerId stemmer = StemmerId::porter;
};

/// Segments, tokenizes, drops stopwords and stems. A document with no
/// surviving tokens or no gold stems is returned with usable == false.
ProcessedDocument preprocess(const RawDocument& doc, const PreprocessOptions& options = {});

std::vector<ProcessedDocument> preprocess_corpus(std::span<const RawDocument> docs,
                                                 const PreprocessOptions& options = {},
                                                 unsigned jobs = 1);

/// Where a surviving token came from, for exporters that embed each occurrence
/// in its sentence context. `sentence_index` and `token_index` address
/// ProcessedDocument::sentences; `begin`/`end` are byte offsets into `sentence_text`.
struct Occurrence {
  std::size_t sentence_index;
  std::size_t token_index;
  std::string stem;
  std::string surface;
  std::size_t begin;
  std::size_t end;
};

struct AnnotatedDocument {
  std::string id;
  std::vector<std::string> sentence_texts;  // aligned with ProcessedDocument::sentences
  std::vector<Occurrence> occurrences;
};

AnnotatedDocument annotate(const RawDocument& doc, const PreprocessOptions& options = {});

/// Table-1 style averages over usable documents.
struct CorpusStats {
  std::size_t documents = 0;  // |D|, usable only
  std::size_t unusable = 0;
  double mean_tokens = 0.0;
  double mean_vocabulary = 0.0;
  double mean_sentences = 0.0;
  double mean_references = 0.0;
};

CorpusStats corpus_stats(std::span<const ProcessedDocument> docs);

void write_processed(std::ostream& out, std::span<const ProcessedDocument> docs);

}  // namespace kwnet
