#include "reqclone/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "reqclone/error.hpp"

namespace reqclone {

namespace {

using Marks = std::vector<std::vector<bool>>;

Marks blank_marks(const NormalizedStream& stream) {
  Marks marks(stream.document_count());
  for (std::size_t d = 0; d < marks.size(); ++d) marks[d].assign(stream.raw_word_counts[d], false);
  return marks;
}

std::size_t mark(Marks& marks, const Clone& c) {
  if (c.document >= marks.size() || c.raw_last >= marks[c.document].size() ||
      c.raw_first > c.raw_last)
    throw Error(Stage::metrics, "clone projection outside its document");
  std::size_t fresh = 0;
  auto& row = marks[c.document];
  for (std::size_t i = c.raw_first; i <= c.raw_last; ++i) {
    if (!row[i]) ++fresh;
    row[i] = true;
  }
  return fresh;
}

}  // namespace

double relative_blow_up(std::size_t total_words, std::size_t blow_up_words) {
  if (blow_up_words > total_words)
    throw Error(Stage::metrics, "blow-up exceeds the total word count");
  const std::size_t free_words = total_words - blow_up_words;
  if (free_words == 0)
    return total_words == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(total_words) / static_cast<double>(free_words) - 1.0;
}

double clone_coverage(const NormalizedStream& stream, const DetectionResult& result) {
  const std::size_t total = stream.total_raw_words();
  if (total == 0) return 0.0;
  Marks marks = blank_marks(stream);
  std::size_t covered = 0;
  for (const auto& g : result.groups)
    for (const auto& c : g.clones) covered += mark(marks, c);
  return static_cast<double>(covered) / static_cast<double>(total);
}

CloneCounts count_metrics(const DetectionResult& result) {
  CloneCounts counts;
  counts.clone_groups = result.groups.size();
  for (const auto& g : result.groups) counts.clones += g.clones.size();
  return counts;
}

BlowUp blow_up(const NormalizedStream& stream, const DetectionResult& result) {
  BlowUp b;
  b.total_words = stream.total_raw_words();
  Marks marks = blank_marks(stream);
  for (const auto& g : result.groups) {
    if (g.clones.empty()) continue;
    auto first = std::min_element(g.clones.begin(), g.clones.end(),
                                  [](const Clone& x, const Clone& y) { return x.start < y.start; });
    for (auto it = g.clones.begin(); it != g.clones.end(); ++it)
      if (it != first) b.words += mark(marks, *it);
  }
  b.redundancy_free_words = b.total_words - b.words;
  b.relative = relative_blow_up(b.total_words, b.words);
  b.relative_infinite = std::isinf(b.relative);
  return b;
}

MetricsReport compute_metrics(const NormalizedStream& stream,
                              const DetectionResult& result) {
  const CloneCounts counts = count_metrics(result);
  const BlowUp b = blow_up(stream, result);
  MetricsReport m;
  m.clone_coverage = clone_coverage(stream, result);
  m.clone_groups = counts.clone_groups;
  m.clones = counts.clones;
  m.blow_up_relative = b.relative;
  m.blow_up_relative_infinite = b.relative_infinite;
  m.blow_up_words = b.words;
  m.redundancy_free_words = b.redundancy_free_words;
  m.total_words = b.total_words;
  return m;
}

EffortEstimate effort(std::size_t blow_up_words, std::size_t inspectors,
                      double hours_per_day) {
  if (!(hours_per_day > 0.0)) throw Error(Stage::metrics, "hours_per_day must be positive");
  EffortEstimate e;
  e.blow_up_words = blow_up_words;
  e.inspectors = inspectors;
  e.hours_per_day = hours_per_day;
  const auto w = static_cast<double>(blow_up_words);
  e.reading_minutes = w / kReadingWordsPerMinute;
  e.inspection_hours = w / kInspectionWordsPerHour;
  e.inspection_person_days =
      e.inspection_hours * static_cast<double>(inspectors) / hours_per_day;
  return e;
}

void CorpusSeries::add(CorpusRecord record) {
  for (const auto& r : records_)
    if (r.name == record.name)
      throw Error(Stage::metrics, "duplicate corpus name '" + record.name + "'");
  records_.push_back(std::move(record));
}

std::vector<double> CorpusSeries::column(std::string_view name) const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) {
    if (name == "words") out.push_back(static_cast<double>(r.total_words));
    else if (name == "clone_coverage_pct") out.push_back(100.0 * r.clone_coverage);
    else if (name == "clone_groups") out.push_back(static_cast<double>(r.clone_groups));
    else if (name == "clones") out.push_back(static_cast<double>(r.clones));
    else if (name == "blow_up_relative_pct") out.push_back(100.0 * r.blow_up_relative);
    else if (name == "blow_up_words") out.push_back(static_cast<double>(r.blow_up_words));
    else throw Error(Stage::metrics, "unknown column '" + std::string(name) + "'");
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Stage::metrics, "pearson: length mismatch");
  if (xs.size() < 2) throw Error(Stage::metrics, "pearson: need at least two points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(Stage::metrics, "pearson: correlation undefined for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

KappaResult cohen_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) throw Error(Stage::metrics, "kappa: length mismatch");
  if (a.empty()) throw Error(Stage::metrics, "kappa: no ratings");
  const auto n = static_cast<double>(a.size());
  std::map<std::string_view, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    if (a[i] == b[i]) ++agree;
  }
  KappaResult k;
  k.observed = static_cast<double>(agree) / n;
  for (const auto& [label, counts] : marginals)
    k.expected += (static_cast<double>(counts.first) / n) * (static_cast<double>(counts.second) / n);
  if (std::abs(1.0 - k.expected) < 1e-12) {
    k.degenerate = true;
    k.kappa = std::numeric_limits<double>::quiet_NaN();
  } else {
    k.kappa = (k.observed - k.expected) / (1.0 - k.expected);
  }
  return k;
}

}  // namespace reqclone
