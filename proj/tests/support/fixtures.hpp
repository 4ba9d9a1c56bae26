#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "reqclone/corpus.hpp"
#include "reqclone/detect.hpp"
#include "reqclone/normalize.hpp"
#include "reqclone/tailor.hpp"

namespace reqclone::testing {

using TokenDocs = std::vector<std::vector<Token>>;

// Normalized stream whose words are "t<token>"; word i of a document sits at
// characters [4i, 4i + 3) and has raw index i.
NormalizedStream make_stream(const TokenDocs& docs);
NormalizedStream make_stream(const std::vector<Token>& single_doc);
TokenStream make_tokens(const TokenDocs& docs);

// Letters only, so a token string survives tokenization as one word.
std::vector<Token> tokens_of(const std::string& letters);

struct NamedDocs {
  std::string name;
  TokenDocs docs;
  std::vector<std::size_t> min_lengths;
};

// Periodic, nested, seam-spanning and degenerate streams.
std::vector<NamedDocs> adversarial_fixtures();

struct RandomStreamSpec {
  std::size_t max_length = 2000;
  std::size_t min_alphabet = 2;
  std::size_t max_alphabet = 50;
  std::size_t min_min_length = 2;
  std::size_t max_min_length = 25;
};

struct RandomCase {
  TokenDocs docs;
  std::size_t alphabet = 0;
  std::size_t min_length = 0;
};

// Random documents with planted copies of random passages, so that long
// repeats exist even for large alphabets.
RandomCase random_case(std::mt19937_64& rng, const RandomStreamSpec& spec = {});

// Paginated corpus: every page ends in one long footer line followed by
// "Page N of M", and `passages` distinct passages each occur exactly twice
// in page bodies.
struct PaginatedCorpus {
  std::vector<std::pair<std::string, std::u32string>> documents;
  // Per document: character spans of every footer block.
  std::vector<std::vector<CharSpan>> footers;
  std::size_t pages_per_document = 0;
  std::size_t passages = 0;
};

struct PaginatedSpec {
  std::size_t documents = 8;
  std::size_t pages = 100;
  std::size_t passages = 40;
  std::size_t min_passage_words = 25;
  std::size_t max_passage_words = 40;
  std::size_t body_words = 40;
  std::uint64_t seed = 7;
};

PaginatedCorpus paginated_corpus(const PaginatedSpec& spec = {});

inline constexpr const char* kFooterRule =
    "*\tpage_decoration\t^Confidential[^\\n]*\\nPage \\d+ of \\d+$";

// Judges a group the way a careful assessor would on this corpus: a false
// positive when any clone touches a footer, relevant otherwise.
AssessmentRecord auto_assess(const PaginatedCorpus& corpus, const CloneGroup& group);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Writes the documents as UTF-8 files plus a manifest, returns the manifest.
std::filesystem::path write_corpus(const std::filesystem::path& dir, const std::string& name,
                                   const std::vector<std::pair<std::string, std::u32string>>& docs,
                                   std::size_t min_length, const std::string& extra = "");

}  // namespace reqclone::testing
