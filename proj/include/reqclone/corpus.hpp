#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reqclone {

enum class Language { english, german };
enum class Encoding { utf8, latin1 };

std::string_view to_string(Language language);
std::string_view to_string(Encoding encoding);
std::optional<Language> parse_language(std::string_view text);
std::optional<Encoding> parse_encoding(std::string_view text);

inline constexpr std::size_t kDefaultMinCloneLength = 20;

struct DocumentRef {
  std::filesystem::path path;
  Encoding encoding = Encoding::utf8;

  bool operator==(const DocumentRef&) const = default;
};

// Parsed manifest. Document order is the concatenation order.
struct CorpusSpec {
  std::string name;
  Language language = Language::english;
  std::size_t min_clone_length = kDefaultMinCloneLength;
  std::vector<DocumentRef> documents;
  std::optional<std::filesystem::path> filter_file;
  std::optional<std::filesystem::path> stop_words_file;

  bool operator==(const CorpusSpec&) const = default;
};

struct RawDocument {
  std::string id;
  std::filesystem::path path;
  // Decoded text; all character offsets in the toolkit index into this.
  std::u32string text;
  Language language = Language::english;
};

struct Corpus {
  CorpusSpec spec;
  std::vector<RawDocument> documents;

  const RawDocument* find(std::string_view id) const;
};

/// Reads a manifest file. Relative document, filter and stop-word paths are
/// resolved against the manifest's directory.
CorpusSpec load_manifest(const std::filesystem::path& path);

/// Parses manifest text. `origin` names the source in error messages.
CorpusSpec parse_manifest(std::string_view text,
                          const std::filesystem::path& base_dir,
                          std::string_view origin = "<manifest>");

/// Reads and decodes every document of `spec`. Document ids are file names;
/// a repeated name gets "#2", "#3", ... appended in manifest order.
Corpus load_corpus(const CorpusSpec& spec);

/// Builds a corpus from in-memory texts (ids are taken verbatim).
Corpus make_corpus(const CorpusSpec& spec,
                   std::vector<std::pair<std::string, std::u32string>> texts);

std::string read_file_bytes(const std::filesystem::path& path);

}  // namespace reqclone
