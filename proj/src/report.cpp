#include "reqclone/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "reqclone/error.hpp"
#include "reqclone/unicode.hpp"

#ifndef REQCLONE_VERSION
#define REQCLONE_VERSION "0.0.0"
#endif

namespace reqclone {

using Json = nlohmann::ordered_json;

std::string_view tool_version() { return REQCLONE_VERSION; }

const ReportGroup* RunReport::find_group(std::size_t id) const {
  for (const auto& g : groups)
    if (g.id == id) return &g;
  return nullptr;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_filters(const FilterSet& filters) {
  std::string canon;
  for (const auto& r : filters.rules) {
    canon += r.scope.value_or("*");
    canon += '\t';
    canon += r.label;
    canon += '\t';
    canon += r.pattern;
    canon += '\n';
  }
  return fnv1a_hex(canon);
}

std::string hash_stop_words(const LanguageConfig& language) {
  std::vector<std::string> words;
  words.reserve(language.stop_words.size());
  for (const auto& w : language.stop_words) words.push_back(encode_utf8(w));
  std::sort(words.begin(), words.end());
  std::string canon(to_string(language.language));
  for (const auto& w : words) {
    canon += '\n';
    canon += w;
  }
  return fnv1a_hex(canon);
}

std::string format_fixed1(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  double r = std::round(value * 10.0) / 10.0;
  if (r == 0.0) r = 0.0;  // no "-0.0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", r);
  return buf;
}

std::string format_percent(double ratio) { return format_fixed1(100.0 * ratio) + "%"; }

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Stage::report, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Stage::report, "write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------- pipeline

namespace {

std::vector<ReportGroup> describe_groups(const Corpus& corpus,
                                         const DetectionResult& detection) {
  std::vector<ReportGroup> out;
  out.reserve(detection.groups.size());
  for (const auto& g : detection.groups) {
    ReportGroup rg{g.id, g.length, {}};
    for (const auto& c : g.clones) {
      const auto& doc = corpus.documents.at(c.document);
      const std::u32string_view text = doc.text;
      rg.clones.push_back({doc.id, c.start, c.length, c.chars.begin, c.chars.end,
                           c.raw_first, c.raw_last,
                           encode_utf8(text.substr(c.chars.begin,
                                                   c.chars.end - c.chars.begin))});
    }
    out.push_back(std::move(rg));
  }
  return out;
}

}  // namespace

RunOutcome run(const Corpus& corpus, const FilterSet& filters,
               const LanguageConfig& language, const RunOptions& options) {
  if (options.sample_size == 0) throw Error(Stage::report, "sample size must be positive");
  RunOutcome out;
  const std::size_t min_length = options.min_length.value_or(corpus.spec.min_clone_length);

  out.stream = normalize_stream(corpus, language, filters);
  out.detection = detect_clones(out.stream, min_length);
  out.detection.parameters.filter_hash = hash_filters(filters);
  out.detection.timestamp = options.timestamp;

  RunReport& r = out.report;
  r.tool_version = std::string(tool_version());
  r.corpus = corpus.spec;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    const Encoding enc =
        d < corpus.spec.documents.size() ? corpus.spec.documents[d].encoding : Encoding::utf8;
    r.documents.push_back({doc.id, doc.path.generic_string(), enc, doc.text.size(),
                           out.stream.raw_word_counts.at(d)});
  }
  r.parameters = {min_length, out.detection.parameters.filter_hash, filters.size(),
                  hash_stop_words(language)};
  r.timestamp = options.timestamp;
  r.metrics = compute_metrics(out.stream, out.detection);
  r.effort = effort(r.metrics.blow_up_words, options.inspectors, options.hours_per_day);
  r.groups = describe_groups(corpus, out.detection);

  r.precision.sample_size = options.sample_size;
  r.precision.seed = options.seed;
  if (!out.detection.groups.empty())
    for (const auto& g : sample_clone_groups(out.detection, options.sample_size, options.seed))
      r.precision.sample_ids.push_back(g.id);

  if (options.fail_over_coverage_pct &&
      100.0 * r.metrics.clone_coverage > *options.fail_over_coverage_pct)
    out.exit_code = kExitCoverageGate;
  return out;
}

RunOutcome run(const std::filesystem::path& manifest, const RunOptions& options) {
  CorpusSpec spec = load_manifest(std::filesystem::absolute(manifest).lexically_normal());
  if (options.filters) spec.filter_file = std::filesystem::absolute(*options.filters);
  const Corpus corpus = load_corpus(spec);

  FilterSet filters;
  if (spec.filter_file) {
    std::vector<std::string> ids;
    for (const auto& d : corpus.documents) ids.push_back(d.id);
    filters = compile_filters(*spec.filter_file, &ids);
  }
  const LanguageConfig language =
      spec.stop_words_file ? LanguageConfig::with_stop_list(spec.language, *spec.stop_words_file)
                           : LanguageConfig::defaults(spec.language);
  return run(corpus, filters, language, options);
}

double record_precision(RunReport& report, std::vector<AssessmentRecord> assessments,
                        bool after_tailoring) {
  for (const auto& a : assessments)
    if (!report.find_group(a.clone_group_id))
      throw Error(Stage::report, "assessment names unknown clone group " +
                                     std::to_string(a.clone_group_id));
  const double p = compute_precision(assessments);
  report.precision.assessments = std::move(assessments);
  (after_tailoring ? report.precision.after : report.precision.before) = p;
  return p;
}

std::string agreement_label(const AssessmentRecord& record) {
  if (record.verdict == Verdict::false_positive) return "false_positive";
  std::string label;
  for (const auto& c : record.categories) {  // std::set: already sorted
    if (!label.empty()) label += '|';
    label += c;
  }
  return label;
}

// ------------------------------------------------------------ structured

namespace {

Json opt_path(const std::optional<std::filesystem::path>& p) {
  return p ? Json(p->generic_string()) : Json(nullptr);
}

Json opt_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json assessment_json(const AssessmentRecord& r) {
  return Json::parse(write_assessments(std::span(&r, 1)));
}

}  // namespace

std::string emit_structured(const RunReport& r) {
  Json j;
  j["format"] = kReportFormat;
  j["format_version"] = kReportFormatVersion;
  j["tool_version"] = r.tool_version;

  Json corpus;
  corpus["name"] = r.corpus.name;
  corpus["language"] = to_string(r.corpus.language);
  corpus["min_clone_length"] = r.corpus.min_clone_length;
  corpus["documents"] = Json::array();
  for (const auto& d : r.corpus.documents)
    corpus["documents"].push_back({{"path", d.path.generic_string()},
                                   {"encoding", to_string(d.encoding)}});
  corpus["filter_file"] = opt_path(r.corpus.filter_file);
  corpus["stop_words_file"] = opt_path(r.corpus.stop_words_file);
  j["corpus"] = std::move(corpus);

  j["documents"] = Json::array();
  for (const auto& d : r.documents)
    j["documents"].push_back({{"id", d.id},
                              {"path", d.path},
                              {"encoding", to_string(d.encoding)},
                              {"characters", d.characters},
                              {"raw_words", d.raw_words}});

  j["parameters"] = {{"min_length", r.parameters.min_length},
                     {"filter_hash", r.parameters.filter_hash},
                     {"filter_rules", r.parameters.filter_rules},
                     {"stop_words_hash", r.parameters.stop_words_hash}};
  if (r.timestamp) j["timestamp"] = *r.timestamp;

  const auto& m = r.metrics;
  j["metrics"] = {
      {"clone_coverage", m.clone_coverage},
      {"clone_groups", m.clone_groups},
      {"clones", m.clones},
      {"blow_up_relative", m.blow_up_relative_infinite ? Json(nullptr) : Json(m.blow_up_relative)},
      {"blow_up_relative_infinite", m.blow_up_relative_infinite},
      {"blow_up_words", m.blow_up_words},
      {"redundancy_free_words", m.redundancy_free_words},
      {"total_words", m.total_words}};

  const auto& e = r.effort;
  j["effort"] = {{"blow_up_words", e.blow_up_words},
                 {"reading_minutes", e.reading_minutes},
                 {"inspection_hours", e.inspection_hours},
                 {"inspectors", e.inspectors},
                 {"hours_per_day", e.hours_per_day},
                 {"inspection_person_days", e.inspection_person_days}};

  j["groups"] = Json::array();
  for (const auto& g : r.groups) {
    Json clones = Json::array();
    for (const auto& c : g.clones)
      clones.push_back({{"document", c.document},
                        {"start", c.start},
                        {"length", c.length},
                        {"char_begin", c.char_begin},
                        {"char_end", c.char_end},
                        {"raw_first", c.raw_first},
                        {"raw_last", c.raw_last},
                        {"text", c.text}});
    j["groups"].push_back({{"id", g.id}, {"length", g.length}, {"clones", std::move(clones)}});
  }

  const auto& p = r.precision;
  Json assessments = Json::array();
  for (const auto& a : p.assessments) assessments.push_back(assessment_json(a));
  j["precision"] = {{"sample_size", p.sample_size},
                    {"seed", p.seed},
                    {"sample_ids", p.sample_ids},
                    {"assessments", std::move(assessments)},
                    {"before", opt_double(p.before)},
                    {"after", opt_double(p.after)}};
  return j.dump(2) + "\n";
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  return j.at(key).get<T>();
}

std::optional<std::filesystem::path> field_opt_path(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return std::filesystem::path(j[key].get<std::string>());
}

std::optional<double> field_opt_double(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

Encoding field_encoding(const Json& j) {
  const auto enc = parse_encoding(field<std::string>(j, "encoding"));
  if (!enc) throw Error(Stage::report, "unknown encoding");
  return *enc;
}

}  // namespace

RunReport parse_structured(std::string_view text, std::string_view origin) {
  const std::string where = std::string(origin) + ": ";
  try {
    const Json j = Json::parse(text);
    if (field<std::string>(j, "format") != kReportFormat)
      throw Error(Stage::report, where + "not a clone report");
    if (field<int>(j, "format_version") != kReportFormatVersion)
      throw Error(Stage::report, where + "unsupported format_version");

    RunReport r;
    r.tool_version = field<std::string>(j, "tool_version");

    const Json& c = j.at("corpus");
    r.corpus.name = field<std::string>(c, "name");
    const auto lang = parse_language(field<std::string>(c, "language"));
    if (!lang) throw Error(Stage::report, where + "unknown language");
    r.corpus.language = *lang;
    r.corpus.min_clone_length = field<std::size_t>(c, "min_clone_length");
    for (const auto& d : c.at("documents"))
      r.corpus.documents.push_back({field<std::string>(d, "path"), field_encoding(d)});
    r.corpus.filter_file = field_opt_path(c, "filter_file");
    r.corpus.stop_words_file = field_opt_path(c, "stop_words_file");

    for (const auto& d : j.at("documents"))
      r.documents.push_back({field<std::string>(d, "id"), field<std::string>(d, "path"),
                             field_encoding(d), field<std::size_t>(d, "characters"),
                             field<std::size_t>(d, "raw_words")});

    const Json& p = j.at("parameters");
    r.parameters = {field<std::size_t>(p, "min_length"), field<std::string>(p, "filter_hash"),
                    field<std::size_t>(p, "filter_rules"),
                    field<std::string>(p, "stop_words_hash")};
    if (j.contains("timestamp")) r.timestamp = field<std::string>(j, "timestamp");

    const Json& m = j.at("metrics");
    r.metrics.clone_coverage = field<double>(m, "clone_coverage");
    r.metrics.clone_groups = field<std::size_t>(m, "clone_groups");
    r.metrics.clones = field<std::size_t>(m, "clones");
    r.metrics.blow_up_relative_infinite = field<bool>(m, "blow_up_relative_infinite");
    r.metrics.blow_up_relative = r.metrics.blow_up_relative_infinite
                                     ? std::numeric_limits<double>::infinity()
                                     : field<double>(m, "blow_up_relative");
    r.metrics.blow_up_words = field<std::size_t>(m, "blow_up_words");
    r.metrics.redundancy_free_words = field<std::size_t>(m, "redundancy_free_words");
    r.metrics.total_words = field<std::size_t>(m, "total_words");

    const Json& e = j.at("effort");
    r.effort.blow_up_words = field<std::size_t>(e, "blow_up_words");
    r.effort.reading_minutes = field<double>(e, "reading_minutes");
    r.effort.inspection_hours = field<double>(e, "inspection_hours");
    r.effort.inspectors = field<std::size_t>(e, "inspectors");
    r.effort.hours_per_day = field<double>(e, "hours_per_day");
    r.effort.inspection_person_days = field<double>(e, "inspection_person_days");

    for (const auto& g : j.at("groups")) {
      ReportGroup rg{field<std::size_t>(g, "id"), field<std::size_t>(g, "length"), {}};
      for (const auto& k : g.at("clones"))
        rg.clones.push_back({field<std::string>(k, "document"), field<std::size_t>(k, "start"),
                             field<std::size_t>(k, "length"),
                             field<std::size_t>(k, "char_begin"),
                             field<std::size_t>(k, "char_end"),
                             field<std::size_t>(k, "raw_first"),
                             field<std::size_t>(k, "raw_last"), field<std::string>(k, "text")});
      r.groups.push_back(std::move(rg));
    }

    const Json& pr = j.at("precision");
    r.precision.sample_size = field<std::size_t>(pr, "sample_size");
    r.precision.seed = field<std::uint64_t>(pr, "seed");
    r.precision.sample_ids = field<std::vector<std::size_t>>(pr, "sample_ids");
    std::string lines;
    for (const auto& a : pr.at("assessments")) lines += a.dump() + "\n";
    r.precision.assessments = parse_assessments(lines, origin);
    r.precision.before = field_opt_double(pr, "before");
    r.precision.after = field_opt_double(pr, "after");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Stage::report, where + e.what());
  }
}

RunReport load_structured(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file_bytes(path);
  } catch (const Error&) {
    throw Error(Stage::report, "cannot read report '" + path.string() + "'");
  }
  return parse_structured(text, path.string());
}

// ---------------------------------------------------------------- summary

CorpusRecord summary_record(const RunReport& r) {
  return {r.corpus.name,         r.metrics.total_words,      r.metrics.clone_coverage,
          r.metrics.clone_groups, r.metrics.clones,          r.metrics.blow_up_relative,
          r.metrics.blow_up_words};
}

std::string emit_summary(std::span<const RunReport> reports) {
  if (reports.empty()) throw Error(Stage::report, "summary needs at least one report");
  std::string out(kSummaryHeader);
  out += '\n';
  double coverage_sum = 0, relative_sum = 0;
  std::size_t words = 0, groups = 0, clones = 0, blow_up_words = 0;
  for (const auto& r : reports) {
    const CorpusRecord c = summary_record(r);
    out += c.name + '\t' + std::to_string(c.total_words) + '\t' +
           format_fixed1(100.0 * c.clone_coverage) + '\t' + std::to_string(c.clone_groups) +
           '\t' + std::to_string(c.clones) + '\t' + format_fixed1(100.0 * c.blow_up_relative) +
           '\t' + std::to_string(c.blow_up_words) + '\n';
    coverage_sum += c.clone_coverage;
    relative_sum += c.blow_up_relative;
    words += c.total_words;
    groups += c.clone_groups;
    clones += c.clones;
    blow_up_words += c.blow_up_words;
  }
  const auto n = static_cast<double>(reports.size());
  out += "Avg\t\t" + format_fixed1(100.0 * coverage_sum / n) + "\t\t\t" +
         format_fixed1(100.0 * relative_sum / n) + "\t\n";
  out += "Sum\t" + std::to_string(words) + "\t\t" + std::to_string(groups) + '\t' +
         std::to_string(clones) + "\t\t" + std::to_string(blow_up_words) + '\n';
  return out;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    cells.push_back(line.substr(pos, tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return cells;
}

double parse_number(const std::string& cell, const std::string& where) {
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Stage::report, where + "not a number: '" + cell + "'");
}

}  // namespace

CorpusSeries parse_summary(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  CorpusSeries series;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    if (!header) {
      if (line != kSummaryHeader) throw Error(Stage::report, where + "unexpected header");
      header = true;
      continue;
    }
    const auto cells = split_tabs(line);
    if (cells.size() != 7) throw Error(Stage::report, where + "expected 7 columns");
    if (cells[0] == "Avg" || cells[0] == "Sum") continue;
    CorpusRecord rec;
    rec.name = cells[0];
    rec.total_words = static_cast<std::size_t>(parse_number(cells[1], where));
    rec.clone_coverage = parse_number(cells[2], where) / 100.0;
    rec.clone_groups = static_cast<std::size_t>(parse_number(cells[3], where));
    rec.clones = static_cast<std::size_t>(parse_number(cells[4], where));
    rec.blow_up_relative = parse_number(cells[5], where) / 100.0;
    rec.blow_up_words = static_cast<std::size_t>(parse_number(cells[6], where));
    series.add(std::move(rec));
  }
  if (!header) throw Error(Stage::report, std::string(origin) + ": empty summary");
  return series;
}

// -------------------------------------------------------------------- html

namespace {

std::string escape_html(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::string_view kStyle = R"(body{font-family:sans-serif;margin:2em;color:#222}
table.metrics td{padding:2px 12px 2px 0}
.group{border-top:1px solid #bbb;margin-top:1.5em;padding-top:.5em}
.clones{display:flex;gap:1em;overflow-x:auto}
.clone{flex:1 1 0;min-width:18em;background:#f6f6f6;padding:.5em}
.clone pre{white-space:pre-wrap;margin:.3em 0 0}
.where{font-size:85%;color:#555})";

}  // namespace

std::string emit_human_report(const RunReport& r) {
  std::ostringstream h;
  const std::string title = "Clone report: " + escape_html(r.corpus.name);
  h << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" << title
    << "</title>\n<style>" << kStyle << "</style></head><body>\n";
  h << "<h1>" << title << "</h1>\n";
  h << "<p>" << r.documents.size() << " document(s), minimum clone length "
    << r.parameters.min_length << " words, " << r.parameters.filter_rules
    << " filter rule(s).</p>\n";

  const auto& m = r.metrics;
  const auto& e = r.effort;
  h << "<table class=\"metrics\">\n";
  auto row = [&](std::string_view k, const std::string& v) {
    h << "<tr><td>" << k << "</td><td>" << v << "</td></tr>\n";
  };
  row("Words", std::to_string(m.total_words));
  row("Clone coverage", format_percent(m.clone_coverage));
  row("Clone groups", std::to_string(m.clone_groups));
  row("Clones", std::to_string(m.clones));
  row("Blow-up (relative)",
      m.blow_up_relative_infinite ? "unbounded" : format_percent(m.blow_up_relative));
  row("Blow-up (words)", std::to_string(m.blow_up_words));
  row("Extra reading time", format_fixed1(e.reading_minutes) + " min");
  row("Extra inspection time", format_fixed1(e.inspection_hours) + " h");
  row("Extra inspection effort",
      format_fixed1(e.inspection_person_days) + " person-days (" +
          std::to_string(e.inspectors) + " inspectors, " + format_fixed1(e.hours_per_day) +
          " h/day)");
  h << "</table>\n";

  if (r.groups.empty()) {
    h << "<p>No clones found: zero clone groups.</p>\n";
  } else {
    for (const auto& g : r.groups) {
      h << "<div class=\"group\" id=\"g" << g.id << "\"><h2>Group " << g.id << "</h2>\n"
        << "<p>" << g.clones.size() << " clones, " << g.length << " normalized words</p>\n"
        << "<div class=\"clones\">\n";
      for (const auto& c : g.clones) {
        h << "<div class=\"clone\"><div class=\"where\">" << escape_html(c.document)
          << " chars " << c.char_begin << "&ndash;" << c.char_end << ", words " << c.raw_first
          << "&ndash;" << c.raw_last << "</div><pre>" << escape_html(c.text)
          << "</pre></div>\n";
      }
      h << "</div></div>\n";
    }
  }
  h << "</body></html>\n";
  return h.str();
}

}  // namespace reqclone
