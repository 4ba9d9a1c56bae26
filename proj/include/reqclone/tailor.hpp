#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqclone/corpus.hpp"
#include "reqclone/normalize.hpp"

namespace reqclone {

struct CloneGroup;
struct DetectionResult;

// Opaque compiled regular expression (ICU dialect, multiline anchors).
class CompiledPattern;

struct FilterRule {
  std::string pattern;               // UTF-8 regex source
  std::optional<std::string> scope;  // document id; nullopt means all documents
  std::string label;
  std::size_t line = 0;              // line in the filter file
  std::shared_ptr<const CompiledPattern> compiled;

  bool applies_to(std::string_view document_id) const {
    return !scope || *scope == document_id;
  }
};

struct FilterSet {
  std::vector<FilterRule> rules;

  bool empty() const { return rules.empty(); }
  std::size_t size() const { return rules.size(); }
};

// Merged exclusion intervals of one document.
struct ExclusionSpans {
  std::uint32_t document = 0;
  std::vector<CharSpan> spans;  // sorted, non-overlapping, non-adjacent

  bool contains_any(const CharSpan& span) const;
};

inline constexpr std::string_view kFilterDialect =
    "ICU regular expressions; '^' and '$' match at line boundaries, '.' does "
    "not match line terminators";

FilterRule compile_rule(std::string pattern, std::optional<std::string> scope,
                        std::string label, std::size_t line = 0);

/// Parses the filter file format: `scope<TAB>label<TAB>pattern` per line,
/// scope `*` or a document id, '#' comment lines. When `known_documents` is
/// given, a scope naming another document is an error.
FilterSet parse_filters(std::string_view text, std::string_view origin = "<filters>",
                        const std::vector<std::string>* known_documents = nullptr);
FilterSet compile_filters(const std::filesystem::path& path,
                          const std::vector<std::string>* known_documents = nullptr);

// Every non-empty match of every applicable rule, unmerged, in rule order.
std::vector<CharSpan> find_matches(const RawDocument& document,
                                   const FilterSet& filters);
std::vector<CharSpan> merge_spans(std::vector<CharSpan> spans);
ExclusionSpans apply_filters(const RawDocument& document, const FilterSet& filters,
                             std::uint32_t document_index = 0);

// Human assessment of a sampled clone group.

enum class Verdict { relevant, false_positive };

enum class FalsePositiveKind {
  document_meta_data,
  index,
  page_decoration,
  open_issue,
  template_information,
  other,
};

inline constexpr std::array<std::string_view, 12> kCategoryVocabulary = {
    "Detailed Use Case Steps", "Reference",     "UI",
    "Domain Knowledge",        "Interface Description",
    "Pre-Condition",           "Side-Condition", "Configuration",
    "Feature",                 "Technical Domain Knowledge",
    "Post-Condition",          "Rationale",
};

struct AssessmentRecord {
  std::size_t clone_group_id = 0;
  Verdict verdict = Verdict::relevant;
  std::optional<FalsePositiveKind> false_positive_kind;
  std::set<std::string> categories;
  std::string note;
  std::string rater;

  bool operator==(const AssessmentRecord&) const = default;
};

std::string_view to_string(Verdict verdict);
std::string_view to_string(FalsePositiveKind kind);
std::optional<Verdict> parse_verdict(std::string_view text);
std::optional<FalsePositiveKind> parse_false_positive_kind(std::string_view text);

// Throws Error(Stage::tailor) when the record breaks its invariants.
void validate(const AssessmentRecord& record);

// Assessment file: JSON Lines, one record object per line.
std::string write_assessments(std::span<const AssessmentRecord> records);
std::vector<AssessmentRecord> parse_assessments(std::string_view text,
                                                std::string_view origin = "<assessments>");
std::vector<AssessmentRecord> load_assessments(const std::filesystem::path& path);

inline constexpr std::size_t kDefaultSampleSize = 20;
inline constexpr std::uint64_t kDefaultSampleSeed = 20100502;

/// All groups when there are at most `n`; otherwise the first `n` groups of
/// a Fisher-Yates shuffle driven by mt19937_64(seed). Portable: the bounded
/// draw is done here, not by a std distribution.
std::vector<CloneGroup> sample_clone_groups(const DetectionResult& result,
                                            std::size_t n,
                                            std::uint64_t seed = kDefaultSampleSeed);

/// Fraction of records judged relevant. Throws on an empty list.
double compute_precision(std::span<const AssessmentRecord> assessments);

}  // namespace reqclone
