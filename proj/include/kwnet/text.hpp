#pragma once

// Text normalization primitives: sentence segmentation, tokenization,
// stopword filtering and stemming. All functions are pure and operate on
// UTF-8 byte strings.

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kwnet {

/// Splits text after every run of '.', '!' or '?'. Segments are trimmed of
/// surrounding whitespace and empty segments are dropped, so removing all
/// whitespace from the input and from the joined output gives equal strings.
std::vector<std::string> segment_sentences(std::string_view text);

struct Token {
  std::string text;   // lowercased, outer punctuation stripped
  std::size_t begin;  // byte offsets of `text` inside the tokenized string
  std::size_t end;
};

/// Splits on Unicode whitespace, strips leading/trailing punctuation, lowercases
/// ASCII letters and drops tokens that are empty, pure punctuation or numeric.
std::vector<Token> tokenize(std::string_view sentence);

/// Porter (1980) suffix stripper, following the reference C implementation
/// including its two documented departures ("bli" -> "ble", "logi" -> "log").
/// Expects a lowercase word; bytes outside a-z are treated as consonants.
std::string porter_stem(std::string_view word);

enum class StemmerId {
  porter,           // single Porter pass
  porter_fixpoint,  // Porter repeated until the output stops changing (idempotent)
  none,             // identity
};

StemmerId parse_stemmer(std::string_view name);
std::string_view to_string(StemmerId id);
std::string stem(std::string_view word, StemmerId id);

using StopwordSet = std::set<std::string, std::less<>>;

/// The built-in English list; identical to data/stopwords_en.txt.
const StopwordSet& default_stopwords();

/// One word per line; blank lines and lines starting with '#' are ignored.
/// Words are lowercased on load.
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace kwnet
