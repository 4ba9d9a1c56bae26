#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqclone/corpus.hpp"
#include "reqclone/detect.hpp"
#include "reqclone/metrics.hpp"
#include "reqclone/tailor.hpp"

namespace reqclone {

inline constexpr std::string_view kReportFormat = "reqclone-report";
inline constexpr int kReportFormatVersion = 1;

std::string_view tool_version();

struct DocumentInfo {
  std::string id;
  std::string path;
  Encoding encoding = Encoding::utf8;
  std::size_t characters = 0;  // code points
  std::size_t raw_words = 0;   // after exclusion

  bool operator==(const DocumentInfo&) const = default;
};

struct ReportClone {
  std::string document;  // DocumentInfo::id
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t char_begin = 0;  // code points into the decoded document
  std::size_t char_end = 0;
  std::size_t raw_first = 0;
  std::size_t raw_last = 0;
  std::string text;  // UTF-8 of the raw characters [char_begin, char_end)

  bool operator==(const ReportClone&) const = default;
};

struct ReportGroup {
  std::size_t id = 0;
  std::size_t length = 0;
  std::vector<ReportClone> clones;

  bool operator==(const ReportGroup&) const = default;
};

struct ReportParameters {
  std::size_t min_length = 0;
  std::string filter_hash;
  std::size_t filter_rules = 0;
  std::string stop_words_hash;

  bool operator==(const ReportParameters&) const = default;
};

struct PrecisionSection {
  std::size_t sample_size = kDefaultSampleSize;
  std::uint64_t seed = kDefaultSampleSeed;
  std::vector<std::size_t> sample_ids;  // in draw order
  std::vector<AssessmentRecord> assessments;
  std::optional<double> before;
  std::optional<double> after;

  bool operator==(const PrecisionSection&) const = default;
};

struct RunReport {
  std::string tool_version;
  CorpusSpec corpus;
  std::vector<DocumentInfo> documents;
  ReportParameters parameters;
  std::optional<std::string> timestamp;
  MetricsReport metrics;
  EffortEstimate effort;
  std::vector<ReportGroup> groups;
  PrecisionSection precision;

  const ReportGroup* find_group(std::size_t id) const;
  bool operator==(const RunReport&) const = default;
};

struct RunOptions {
  std::optional<std::size_t> min_length;             // overrides the manifest
  std::optional<std::filesystem::path> filters;      // overrides the manifest
  std::optional<double> fail_over_coverage_pct;      // gating threshold
  std::size_t sample_size = kDefaultSampleSize;
  std::uint64_t seed = kDefaultSampleSeed;
  std::size_t inspectors = kDefaultInspectors;
  double hours_per_day = kDefaultHoursPerDay;
  // Recorded only when set; the default keeps reports byte-stable.
  std::optional<std::string> timestamp;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCoverageGate = 2;

struct RunOutcome {
  RunReport report;
  NormalizedStream stream;
  DetectionResult detection;
  int exit_code = kExitOk;
};

// Pipeline on an already loaded corpus.
RunOutcome run(const Corpus& corpus, const FilterSet& filters,
               const LanguageConfig& language, const RunOptions& options);
// load -> filters -> normalize -> detect -> metrics -> sample.
RunOutcome run(const std::filesystem::path& manifest, const RunOptions& options);

std::string fnv1a_hex(std::string_view bytes);
std::string hash_filters(const FilterSet& filters);
std::string hash_stop_words(const LanguageConfig& language);

// Canonical JSON, two-space indent, fixed key order, trailing newline.
std::string emit_structured(const RunReport& report);
RunReport parse_structured(std::string_view text, std::string_view origin = "<report>");
RunReport load_structured(const std::filesystem::path& path);

inline constexpr std::string_view kSummaryHeader =
    "corpus\twords\tclone_coverage_pct\tclone_groups\tclones\tblow_up_relative_pct\t"
    "blow_up_words";

// Tab-separated, one row per report, then "Avg" (mean of the ratio columns)
// and "Sum" (total of the count columns). Percentages have one decimal.
std::string emit_summary(std::span<const RunReport> reports);
CorpusRecord summary_record(const RunReport& report);
// Corpus rows of a summary table; the Avg and Sum rows are skipped.
CorpusSeries parse_summary(std::string_view text, std::string_view origin = "<summary>");

std::string emit_human_report(const RunReport& report);

// Attaches assessments and the resulting precision to one stage of the
// report. Throws when an assessment names a group the report lacks.
double record_precision(RunReport& report, std::vector<AssessmentRecord> assessments,
                        bool after_tailoring);

// Label used for agreement statistics: "false_positive", or the sorted
// categories joined by '|'.
std::string agreement_label(const AssessmentRecord& record);

void write_text_file(const std::filesystem::path& path, std::string_view content);

std::string format_percent(double ratio);  // "12.3%"
std::string format_fixed1(double value);   // one decimal, half away from zero

}  // namespace reqclone
