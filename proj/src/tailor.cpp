#include "reqclone/tailor.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <unicode/regex.h>
#include <unicode/unistr.h>
#include <unicode/utypes.h>

#include <json.hpp>

#include "reqclone/detect.hpp"
#include "reqclone/error.hpp"
#include "reqclone/unicode.hpp"

namespace reqclone {

class CompiledPattern {
 public:
  explicit CompiledPattern(std::unique_ptr<icu::RegexPattern> pattern)
      : pattern_(std::move(pattern)) {}

  const icu::RegexPattern& get() const { return *pattern_; }

 private:
  std::unique_ptr<icu::RegexPattern> pattern_;
};

namespace {

[[noreturn]] void filter_error(std::string_view origin, std::size_t line,
                               const std::string& what) {
  throw Error(Stage::tailor,
              std::string(origin) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

bool ExclusionSpans::contains_any(const CharSpan& span) const {
  auto it = std::upper_bound(spans.begin(), spans.end(), span.begin,
                             [](std::size_t pos, const CharSpan& s) { return pos < s.end; });
  return it != spans.end() && it->intersects(span);
}

namespace {

std::shared_ptr<const CompiledPattern> compile_pattern(const std::string& pattern,
                                                       std::string& error) {
  UErrorCode status = U_ZERO_ERROR;
  UParseError parse_error{};
  const auto source = icu::UnicodeString::fromUTF8(pattern);
  std::unique_ptr<icu::RegexPattern> compiled(
      icu::RegexPattern::compile(source, UREGEX_MULTILINE, parse_error, status));
  if (U_FAILURE(status)) {
    error = "invalid pattern '" + pattern + "' (" + u_errorName(status) +
            " at offset " + std::to_string(parse_error.offset) + ")";
    return nullptr;
  }
  return std::make_shared<const CompiledPattern>(std::move(compiled));
}

}  // namespace

FilterRule compile_rule(std::string pattern, std::optional<std::string> scope,
                        std::string label, std::size_t line) {
  std::string error;
  auto compiled = compile_pattern(pattern, error);
  if (!compiled) throw Error(Stage::tailor, "line " + std::to_string(line) + ": " + error);
  FilterRule rule;
  rule.pattern = std::move(pattern);
  rule.scope = std::move(scope);
  rule.label = std::move(label);
  rule.line = line;
  rule.compiled = std::move(compiled);
  return rule;
}

FilterSet parse_filters(std::string_view text, std::string_view origin,
                        const std::vector<std::string>* known_documents) {
  FilterSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos)
      filter_error(origin, line_no, "expected 'scope<TAB>label<TAB>pattern'");
    std::string scope = line.substr(0, tab1);
    std::string label = line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::string pattern = line.substr(tab2 + 1);
    if (scope.empty()) filter_error(origin, line_no, "empty scope");
    if (pattern.empty()) filter_error(origin, line_no, "empty pattern");
    std::optional<std::string> doc_scope;
    if (scope != "*") {
      if (known_documents &&
          std::find(known_documents->begin(), known_documents->end(), scope) ==
              known_documents->end())
        filter_error(origin, line_no, "unknown scope '" + scope + "'");
      doc_scope = std::move(scope);
    }
    std::string error;
    auto compiled = compile_pattern(pattern, error);
    if (!compiled) filter_error(origin, line_no, error);
    FilterRule rule;
    rule.pattern = std::move(pattern);
    rule.scope = std::move(doc_scope);
    rule.label = std::move(label);
    rule.line = line_no;
    rule.compiled = std::move(compiled);
    set.rules.push_back(std::move(rule));
  }
  return set;
}

FilterSet compile_filters(const std::filesystem::path& path,
                          const std::vector<std::string>* known_documents) {
  std::string text;
  try {
    text = read_file_bytes(path);
  } catch (const Error&) {
    throw Error(Stage::tailor, "cannot read filter file '" + path.string() + "'");
  }
  return parse_filters(text, path.string(), known_documents);
}

std::vector<CharSpan> find_matches(const RawDocument& document,
                                   const FilterSet& filters) {
  std::vector<CharSpan> matches;
  if (filters.empty() || document.text.empty()) return matches;

  const auto& text = document.text;
  const auto input = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(text.data()), static_cast<int32_t>(text.size()));
  // UTF-16 unit index -> code point index.
  std::vector<std::size_t> to_cp(static_cast<std::size_t>(input.length()) + 1);
  {
    std::size_t unit = 0;
    for (std::size_t cp = 0; cp < text.size(); ++cp) {
      const std::size_t width = text[cp] > 0xFFFF ? 2 : 1;
      for (std::size_t k = 0; k < width; ++k) to_cp[unit + k] = cp;
      unit += width;
    }
    to_cp[unit] = text.size();
  }

  for (const auto& rule : filters.rules) {
    if (!rule.applies_to(document.id)) continue;
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::RegexMatcher> matcher(
        rule.compiled->get().matcher(input, status));
    if (U_FAILURE(status))
      throw Error(Stage::tailor, std::string("regex matcher: ") + u_errorName(status));
    while (matcher->find(status) && U_SUCCESS(status)) {
      const auto b = matcher->start(status);
      const auto e = matcher->end(status);
      if (U_FAILURE(status)) break;
      if (e > b) matches.push_back({to_cp[b], to_cp[e]});
    }
    if (U_FAILURE(status))
      throw Error(Stage::tailor, "rule at line " + std::to_string(rule.line) +
                                     ": " + u_errorName(status));
  }
  return matches;
}

std::vector<CharSpan> merge_spans(std::vector<CharSpan> spans) {
  std::sort(spans.begin(), spans.end(), [](const CharSpan& a, const CharSpan& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
  });
  std::vector<CharSpan> merged;
  for (const auto& s : spans) {
    if (s.end <= s.begin) continue;
    if (!merged.empty() && s.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

ExclusionSpans apply_filters(const RawDocument& document, const FilterSet& filters,
                             std::uint32_t document_index) {
  return {document_index, merge_spans(find_matches(document, filters))};
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::relevant ? "relevant" : "false_positive";
}

std::string_view to_string(FalsePositiveKind kind) {
  switch (kind) {
    case FalsePositiveKind::document_meta_data: return "document_meta_data";
    case FalsePositiveKind::index: return "index";
    case FalsePositiveKind::page_decoration: return "page_decoration";
    case FalsePositiveKind::open_issue: return "open_issue";
    case FalsePositiveKind::template_information: return "template_information";
    case FalsePositiveKind::other: return "other";
  }
  return "other";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "relevant") return Verdict::relevant;
  if (text == "false_positive") return Verdict::false_positive;
  return std::nullopt;
}

std::optional<FalsePositiveKind> parse_false_positive_kind(std::string_view text) {
  for (auto kind : {FalsePositiveKind::document_meta_data, FalsePositiveKind::index,
                    FalsePositiveKind::page_decoration, FalsePositiveKind::open_issue,
                    FalsePositiveKind::template_information, FalsePositiveKind::other})
    if (to_string(kind) == text) return kind;
  return std::nullopt;
}

void validate(const AssessmentRecord& record) {
  const std::string where = "group " + std::to_string(record.clone_group_id) + ": ";
  const bool fp = record.verdict == Verdict::false_positive;
  if (fp != record.false_positive_kind.has_value())
    throw Error(Stage::tailor,
                where + "false_positive_kind must be set exactly for false positives");
  if (fp && !record.categories.empty())
    throw Error(Stage::tailor, where + "false positives carry no categories");
  for (const auto& c : record.categories)
    if (std::find(kCategoryVocabulary.begin(), kCategoryVocabulary.end(), c) ==
        kCategoryVocabulary.end())
      throw Error(Stage::tailor, where + "unknown category '" + c + "'");
}

std::string write_assessments(std::span<const AssessmentRecord> records) {
  std::string out;
  for (const auto& r : records) {
    validate(r);
    nlohmann::ordered_json j;
    j["clone_group_id"] = r.clone_group_id;
    j["verdict"] = to_string(r.verdict);
    if (r.false_positive_kind)
      j["false_positive_kind"] = to_string(*r.false_positive_kind);
    else
      j["false_positive_kind"] = nullptr;
    j["categories"] = r.categories;
    j["note"] = r.note;
    j["rater"] = r.rater;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<AssessmentRecord> parse_assessments(std::string_view text,
                                                std::string_view origin) {
  std::vector<AssessmentRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      AssessmentRecord r;
      r.clone_group_id = j.at("clone_group_id").get<std::size_t>();
      const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
      if (!verdict) throw Error(Stage::tailor, where + "unknown verdict");
      r.verdict = *verdict;
      if (j.contains("false_positive_kind") && !j["false_positive_kind"].is_null()) {
        const auto kind =
            parse_false_positive_kind(j["false_positive_kind"].get<std::string>());
        if (!kind) throw Error(Stage::tailor, where + "unknown false_positive_kind");
        r.false_positive_kind = kind;
      }
      if (j.contains("categories"))
        r.categories = j["categories"].get<std::set<std::string>>();
      if (j.contains("note")) r.note = j["note"].get<std::string>();
      if (j.contains("rater")) r.rater = j["rater"].get<std::string>();
      validate(r);
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Stage::tailor, where + e.what());
    }
  }
  return records;
}

std::vector<AssessmentRecord> load_assessments(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file_bytes(path);
  } catch (const Error&) {
    throw Error(Stage::tailor, "cannot read assessment file '" + path.string() + "'");
  }
  return parse_assessments(text, path.string());
}

namespace {

// Unbiased draw in [0, bound) by rejection.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<CloneGroup> sample_clone_groups(const DetectionResult& result,
                                            std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Stage::tailor, "sample size must be positive");
  std::vector<CloneGroup> groups = result.groups;
  if (groups.size() <= n) return groups;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + draw_below(rng, groups.size() - i);
    std::swap(groups[i], groups[j]);
  }
  groups.resize(n);
  return groups;
}

double compute_precision(std::span<const AssessmentRecord> assessments) {
  if (assessments.empty())
    throw Error(Stage::tailor, "no assessable groups: precision is undefined");
  const auto relevant = std::count_if(
      assessments.begin(), assessments.end(),
      [](const AssessmentRecord& r) { return r.verdict == Verdict::relevant; });
  return static_cast<double>(relevant) / static_cast<double>(assessments.size());
}

}  // namespace reqclone
