#include "reqclone/normalize.hpp"

#include <sstream>

#include "reqclone/error.hpp"
#include "reqclone/stemmer.hpp"
#include "reqclone/tailor.hpp"
#include "reqclone/unicode.hpp"
#include "stopwords_data.hpp"

namespace reqclone {

std::size_t NormalizedStream::total_raw_words() const {
  std::size_t total = 0;
  for (auto n : raw_word_counts) total += n;
  return total;
}

std::vector<std::size_t> NormalizedStream::doc_boundaries() const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d + 1 < doc_offsets.size(); ++d)
    if (doc_offsets[d] < doc_offsets[d + 1]) out.push_back(doc_offsets[d]);
  return out;
}

std::string_view builtin_stop_list(Language language) {
  return language == Language::german ? data::kGermanStopList
                                      : data::kEnglishStopList;
}

std::unordered_set<std::u32string> parse_stop_list(std::string_view text) {
  std::unordered_set<std::u32string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    std::u32string word;
    try {
      word = decode_utf8(std::string_view(line).substr(b, e - b + 1));
    } catch (const std::invalid_argument& err) {
      throw Error(Stage::normalize, std::string("stop list: ") + err.what());
    }
    for (char32_t c : word)
      if (!is_word_char(c))
        throw Error(Stage::normalize,
                    "stop list entry '" + encode_utf8(word) + "' contains punctuation");
    words.insert(fold_case(word));
  }
  return words;
}

std::u32string LanguageConfig::stem(std::u32string_view word) const {
  if (stemmer == nullptr) return std::u32string(word);
  auto out = stemmer(word);
  if (out.empty()) return std::u32string(word);
  return out;
}

LanguageConfig LanguageConfig::defaults(Language language) {
  LanguageConfig config;
  config.language = language;
  config.stop_words = parse_stop_list(builtin_stop_list(language));
  config.stemmer = language == Language::german ? &german_stem : &porter_stem;
  return config;
}

LanguageConfig LanguageConfig::with_stop_list(Language language,
                                              const std::filesystem::path& stop_list) {
  auto config = defaults(language);
  config.stop_words = parse_stop_list(read_file_bytes(stop_list));
  return config;
}

std::vector<RawWord> tokenize(const RawDocument& document,
                              const ExclusionSpans& excluded,
                              std::uint32_t document_index) {
  std::vector<RawWord> words;
  const std::u32string& text = document.text;
  auto next_span = excluded.spans.begin();
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    const CharSpan span{i, j};
    while (next_span != excluded.spans.end() && next_span->end <= span.begin)
      ++next_span;
    // A word touching an excluded span is dropped whole.
    const bool dropped =
        next_span != excluded.spans.end() && next_span->intersects(span);
    if (!dropped) {
      RawWord w;
      w.document = document_index;
      w.raw_index = words.size();
      w.span = span;
      w.surface = fold_case(std::u32string_view(text).substr(i, j - i));
      words.push_back(std::move(w));
    }
    i = j;
  }
  return words;
}

std::vector<RawWord> tokenize(const RawDocument& document,
                              std::uint32_t document_index) {
  return tokenize(document, ExclusionSpans{document_index, {}}, document_index);
}

std::vector<RawWord> remove_stop_words(std::vector<RawWord> words,
                                       const LanguageConfig& config) {
  std::erase_if(words, [&](const RawWord& w) {
    return config.stop_words.contains(w.surface);
  });
  return words;
}

std::u32string stem(std::u32string_view word, const LanguageConfig& config) {
  return config.stem(word);
}

NormalizedStream normalize_stream(const Corpus& corpus,
                                  const LanguageConfig& config,
                                  const FilterSet& filters) {
  if (config.language != corpus.spec.language)
    throw Error(Stage::normalize, "language configuration does not match corpus language");
  NormalizedStream stream;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto index = static_cast<std::uint32_t>(d);
    const auto& doc = corpus.documents[d];
    const auto excluded = apply_filters(doc, filters, index);
    auto raw = tokenize(doc, excluded, index);
    stream.raw_word_counts.push_back(raw.size());
    for (auto& w : remove_stop_words(std::move(raw), config)) {
      auto norm = config.stem(w.surface);
      stream.words.push_back({std::move(norm), std::move(w)});
    }
    stream.doc_offsets.push_back(stream.words.size());
  }
  return stream;
}

}  // namespace reqclone
