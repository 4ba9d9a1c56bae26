#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqclone/detect.hpp"
#include "reqclone/normalize.hpp"

namespace reqclone {

inline constexpr double kReadingWordsPerMinute = 220.0;
inline constexpr double kInspectionWordsPerHour = 600.0;
inline constexpr std::size_t kDefaultInspectors = 3;
inline constexpr double kDefaultHoursPerDay = 8.0;

struct CloneCounts {
  std::size_t clone_groups = 0;
  std::size_t clones = 0;

  bool operator==(const CloneCounts&) const = default;
};

struct BlowUp {
  double relative = 0.0;        // total / redundancy_free - 1
  bool relative_infinite = false;  // whole corpus redundant
  std::size_t words = 0;        // absolute blow-up
  std::size_t redundancy_free_words = 0;
  std::size_t total_words = 0;

  bool operator==(const BlowUp&) const = default;
};

// All word counts are raw words after exclusion, stop words included.
struct MetricsReport {
  double clone_coverage = 0.0;
  std::size_t clone_groups = 0;
  std::size_t clones = 0;
  double blow_up_relative = 0.0;
  bool blow_up_relative_infinite = false;
  std::size_t blow_up_words = 0;
  std::size_t redundancy_free_words = 0;
  std::size_t total_words = 0;

  bool operator==(const MetricsReport&) const = default;
};

struct EffortEstimate {
  std::size_t blow_up_words = 0;
  double reading_minutes = 0.0;
  double inspection_hours = 0.0;
  std::size_t inspectors = kDefaultInspectors;
  double hours_per_day = kDefaultHoursPerDay;
  double inspection_person_days = 0.0;

  bool operator==(const EffortEstimate&) const = default;
};

// total / (total - blow_up_words) - 1; infinity when nothing is redundancy-free.
double relative_blow_up(std::size_t total_words, std::size_t blow_up_words);

double clone_coverage(const NormalizedStream& stream, const DetectionResult& result);
CloneCounts count_metrics(const DetectionResult& result);
// Keeps the earliest clone of each group; raw words of the other clones are
// redundant, each counted once however many groups mark it.
BlowUp blow_up(const NormalizedStream& stream, const DetectionResult& result);
MetricsReport compute_metrics(const NormalizedStream& stream,
                              const DetectionResult& result);

EffortEstimate effort(std::size_t blow_up_words,
                      std::size_t inspectors = kDefaultInspectors,
                      double hours_per_day = kDefaultHoursPerDay);

// One row of the cross-corpus summary table.
struct CorpusRecord {
  std::string name;
  std::size_t total_words = 0;
  double clone_coverage = 0.0;
  std::size_t clone_groups = 0;
  std::size_t clones = 0;
  double blow_up_relative = 0.0;
  std::size_t blow_up_words = 0;

  bool operator==(const CorpusRecord&) const = default;
};

class CorpusSeries {
 public:
  // Throws on a duplicate name.
  void add(CorpusRecord record);
  const std::vector<CorpusRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  // Numeric column by summary header name, e.g. "words" or "clone_coverage_pct".
  std::vector<double> column(std::string_view name) const;

 private:
  std::vector<CorpusRecord> records_;
};

// Sample Pearson correlation. Throws on length mismatch, fewer than two
// points, or a constant input.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct KappaResult {
  double kappa = 0.0;     // NaN when degenerate
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  bool degenerate = false;  // p_e == 1
};

KappaResult cohen_kappa(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace reqclone
