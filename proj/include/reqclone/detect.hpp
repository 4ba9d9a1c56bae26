#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reqclone/normalize.hpp"

namespace reqclone {

// One instance of a repeated passage in the normalized stream.
struct Clone {
  std::size_t start = 0;   // stream index of the first word
  std::size_t length = 0;  // normalized words
  // Projection onto the raw document, from the first and last word origins.
  std::uint32_t document = 0;
  CharSpan chars;
  std::size_t raw_first = 0;
  std::size_t raw_last = 0;  // inclusive

  std::size_t end() const { return start + length; }
  bool operator==(const Clone&) const = default;
};

struct CloneGroup {
  std::size_t id = 0;  // 1-based, in canonical order
  std::size_t length = 0;
  std::vector<Clone> clones;  // sorted by start

  bool operator==(const CloneGroup&) const = default;
};

struct DetectionParameters {
  std::size_t min_length = 0;
  std::string filter_hash;

  bool operator==(const DetectionParameters&) const = default;
};

struct DetectionResult {
  std::vector<CloneGroup> groups;
  DetectionParameters parameters;
  std::optional<std::string> timestamp;

  bool operator==(const DetectionResult&) const = default;
};

// Token-level view of a repeat: a length and its sorted start positions.
struct Repeat {
  std::size_t length = 0;
  std::vector<std::size_t> starts;

  bool operator==(const Repeat&) const = default;
  auto operator<=>(const Repeat&) const = default;
};

using Token = std::uint32_t;

// Documents are described by CSR offsets: document d spans
// tokens[doc_offsets[d], doc_offsets[d + 1]). Repeats never cross a seam.
struct TokenStream {
  std::vector<Token> tokens;
  std::vector<std::size_t> doc_offsets{0};

  static TokenStream single(std::vector<Token> tokens);
};

// Interns normalized words into dense token ids.
TokenStream to_tokens(const NormalizedStream& stream);

// Sorts repeats by (length desc, first start asc).
void canonical_order(std::vector<Repeat>& repeats);

/// Suffix-array route: branching LCP intervals of depth >= min_length
/// (right-maximal repeats with all occurrences), keeping only left-diverse
/// ones, then dropping repeats whose occurrences overlap. Result is in
/// canonical order.
std::vector<Repeat> find_repeats(const TokenStream& stream, std::size_t min_length);

/// All right-maximal repeats of length >= min_length, no further filtering.
std::vector<Repeat> right_maximal_repeats(const TokenStream& stream,
                                          std::size_t min_length);

inline constexpr std::size_t kBruteForceMaxWords = 4096;

/// Exhaustive route over all position pairs, used as the test oracle.
/// Throws when the stream exceeds kBruteForceMaxWords.
std::vector<Repeat> brute_force_repeats(const TokenStream& stream,
                                        std::size_t min_length);

// Group-level filters, literal definitions.
std::vector<CloneGroup> filter_contained(std::vector<CloneGroup> groups);
std::vector<CloneGroup> remove_overlapping(std::vector<CloneGroup> groups);
std::vector<Repeat> filter_contained(std::vector<Repeat> repeats);
std::vector<Repeat> remove_overlapping(std::vector<Repeat> repeats);

DetectionResult detect_clones(const NormalizedStream& stream, std::size_t min_length);
DetectionResult brute_force_detect(const NormalizedStream& stream,
                                   std::size_t min_length);

// Builds canonical, projected groups from token-level repeats.
std::vector<CloneGroup> make_groups(const NormalizedStream& stream,
                                    std::vector<Repeat> repeats);

}  // namespace reqclone
