#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "reqclone/corpus.hpp"

namespace reqclone {

struct FilterSet;
struct ExclusionSpans;

// Half-open range of code-point offsets into a document text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
  bool intersects(const CharSpan& other) const {
    return begin < other.end && other.begin < end;
  }
};

struct RawWord {
  std::uint32_t document = 0;  // index into Corpus::documents
  std::size_t raw_index = 0;   // position among the document's raw words
  CharSpan span;
  std::u32string surface;      // case-folded

  bool operator==(const RawWord&) const = default;
};

struct NormalizedWord {
  std::u32string norm;
  RawWord origin;

  bool operator==(const NormalizedWord&) const = default;
};

struct NormalizedStream {
  std::vector<NormalizedWord> words;
  // doc_offsets[d] .. doc_offsets[d + 1] is document d's segment of `words`.
  std::vector<std::size_t> doc_offsets{0};
  // Raw words per document, after exclusion and before stop-word removal.
  std::vector<std::size_t> raw_word_counts;

  std::size_t document_count() const { return raw_word_counts.size(); }
  std::size_t total_raw_words() const;
  // Stream indices where a non-empty document segment begins.
  std::vector<std::size_t> doc_boundaries() const;

  bool operator==(const NormalizedStream&) const = default;
};

using StemFunction = std::u32string (*)(std::u32string_view);

struct LanguageConfig {
  Language language = Language::english;
  std::unordered_set<std::u32string> stop_words;
  StemFunction stemmer = nullptr;

  // Stems a lowercase word; an empty stem falls back to the word itself.
  std::u32string stem(std::u32string_view word) const;

  // Built-in stop list and stemmer for `language`.
  static LanguageConfig defaults(Language language);
  // Stemmer for `language`, stop words read from `stop_list`.
  static LanguageConfig with_stop_list(Language language,
                                       const std::filesystem::path& stop_list);
};

// Stop-word list format: one word per line, '#' starts a comment line.
std::unordered_set<std::u32string> parse_stop_list(std::string_view text);
std::string_view builtin_stop_list(Language language);

std::vector<RawWord> tokenize(const RawDocument& document,
                              const ExclusionSpans& excluded,
                              std::uint32_t document_index = 0);
std::vector<RawWord> tokenize(const RawDocument& document,
                              std::uint32_t document_index = 0);

std::vector<RawWord> remove_stop_words(std::vector<RawWord> words,
                                       const LanguageConfig& config);

std::u32string stem(std::u32string_view word, const LanguageConfig& config);

NormalizedStream normalize_stream(const Corpus& corpus,
                                  const LanguageConfig& config,
                                  const FilterSet& filters);

}  // namespace reqclone
