#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "kwnet/error.hpp"
#include "kwnet/text.hpp"

namespace kwnet {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed
};

// Lenient UTF-8 decoder: invalid lead or continuation bytes decode as a
// single-byte U+FFFD so scanning always makes progress.
CodePoint decode_at(std::string_view s, std::size_t i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  if (lead < 0x80) return {lead, 1};
  std::size_t length = 0;
  char32_t value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (i + length > s.size()) return {0xFFFD, 1};
  for (std::size_t k = 1; k < length; ++k) {
    const auto byte = static_cast<unsigned char>(s[i + k]);
    if ((byte & 0xC0) != 0x80) return {0xFFFD, 1};
    value = (value << 6) | (byte & 0x3F);
  }
  return {value, length};
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
           (c >= 0x7B && c <= 0x7E);
  }
  constexpr std::array<char32_t, 8> latin1 = {0xA1, 0xA7, 0xAB, 0xB6, 0xB7, 0xBB, 0xBF, 0xD7};
  if (std::find(latin1.begin(), latin1.end(), c) != latin1.end()) return true;
  if (c >= 0x2010 && c <= 0x2027) return true;  // dashes, quotes, bullets, ellipsis
  if (c >= 0x2030 && c <= 0x205E) return true;
  if (c >= 0x3001 && c <= 0x3003) return true;
  if (c >= 0x3008 && c <= 0x3011) return true;
  if (c >= 0xFF01 && c <= 0xFF0F) return true;
  return c == 0xFFFD;
}

bool is_sentence_delimiter(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_numeric(std::string_view token) {
  bool digit = false;
  for (char c : token) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != '%') {
      return false;
    }
  }
  return digit;
}

std::string_view trim_space(std::string_view s) {
  std::size_t begin = 0;
  while (begin < s.size()) {
    const auto cp = decode_at(s, begin);
    if (!is_space(cp.value)) break;
    begin += cp.length;
  }
  // Trailing whitespace: walk forward and remember the end of the last non-space.
  std::size_t end = begin;
  for (std::size_t i = begin; i < s.size();) {
    const auto cp = decode_at(s, i);
    i += cp.length;
    if (!is_space(cp.value)) end = i;
  }
  return s.substr(begin, end - begin);
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  auto flush = [&](std::size_t end) {
    const auto piece = trim_space(text.substr(start, end - start));
    if (!piece.empty()) sentences.emplace_back(piece);
    start = end;
  };
  while (i < text.size()) {
    if (is_sentence_delimiter(text[i])) {
      while (i < text.size() && is_sentence_delimiter(text[i])) ++i;
      flush(i);
    } else {
      ++i;
    }
  }
  flush(text.size());
  return sentences;
}

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    // Skip whitespace, then collect the code points of one raw token.
    auto cp = decode_at(sentence, i);
    if (is_space(cp.value)) {
      i += cp.length;
      continue;
    }
    struct Piece {
      std::size_t offset;
      CodePoint cp;
    };
    std::vector<Piece> pieces;
    while (i < sentence.size()) {
      cp = decode_at(sentence, i);
      if (is_space(cp.value)) break;
      pieces.push_back({i, cp});
      i += cp.length;
    }
    std::size_t first = 0;
    std::size_t last = pieces.size();
    while (first < last && is_punct(pieces[first].cp.value)) ++first;
    while (last > first && is_punct(pieces[last - 1].cp.value)) --last;
    if (first == last) continue;

    const std::size_t begin = pieces[first].offset;
    const std::size_t end = pieces[last - 1].offset + pieces[last - 1].cp.length;
    std::string text(sentence.substr(begin, end - begin));
    if (is_numeric(text)) continue;
    std::transform(text.begin(), text.end(), text.begin(), [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    tokens.push_back({std::move(text), begin, end});
  }
  return tokens;
}

StemmerId parse_stemmer(std::string_view name) {
  if (name == "porter") return StemmerId::porter;
  if (name == "porter-fixpoint") return StemmerId::porter_fixpoint;
  if (name == "none") return StemmerId::none;
  throw ConfigError("unknown stemmer '" + std::string(name) + "' (expected porter, porter-fixpoint or none)");
}

std::string_view to_string(StemmerId id) {
  switch (id) {
    case StemmerId::porter:
      return "porter";
    case StemmerId::porter_fixpoint:
      return "porter-fixpoint";
    case StemmerId::none:
      return "none";
  }
  return "?";
}

std::string stem(std::string_view word, StemmerId id) {
  switch (id) {
    case StemmerId::porter:
      return porter_stem(word);
    case StemmerId::porter_fixpoint: {
      std::string current(word);
      // Real words settle within three or four passes.
      for (int pass = 0; pass < 16; ++pass) {
        std::string next = porter_stem(current);
        if (next == current) break;
        current = std::move(next);
      }
      return current;
    }
    case StemmerId::none:
      return std::string(word);
  }
  return std::string(word);
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file " + path.string());
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = std::string(trim_space(line));
    if (word.empty() || word.front() == '#') continue;
    std::transform(word.begin(), word.end(), word.begin(), [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    words.insert(std::move(word));
  }
  return words;
}

}  // namespace kwnet
