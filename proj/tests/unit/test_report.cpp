#include <doctest.h>

#include <cmath>
#include <fstream>

#include "fixtures.hpp"
#include "reqclone/error.hpp"
#include "reqclone/report.hpp"
#include "reqclone/unicode.hpp"

using namespace reqclone;
using namespace reqclone::testing;

namespace {

// Two documents sharing one 30-word passage, so coverage is well defined.
std::vector<std::pair<std::string, std::u32string>> two_docs() {
  std::u32string shared;
  for (int i = 0; i < 30; ++i) shared += U"word" + std::u32string(1, U'a' + i % 26) + U"x ";
  return {{"one.txt", U"Alpha opening. " + shared + U"\nclosing one"},
          {"two.txt", U"Beta start, here. " + shared + U"\nfinal closing two"}};
}

RunOutcome run_two_docs(const RunOptions& options = {}) {
  CorpusSpec spec;
  spec.name = "pair";
  spec.documents = {{"one.txt", Encoding::utf8}, {"two.txt", Encoding::utf8}};
  return run(make_corpus(spec, two_docs()), FilterSet{}, LanguageConfig::defaults(Language::english),
             options);
}

}  // namespace

TEST_CASE("run fills every report section") {
  const RunOutcome out = run_two_docs();
  const RunReport& r = out.report;
  CHECK(out.exit_code == kExitOk);
  CHECK(r.tool_version == tool_version());
  CHECK(r.documents.size() == 2);
  CHECK(r.parameters.min_length == 20);
  CHECK(r.parameters.filter_hash == fnv1a_hex(""));
  REQUIRE(r.groups.size() == 1);
  CHECK(r.metrics.clone_groups == 1);
  CHECK(r.effort.blow_up_words == r.metrics.blow_up_words);
  CHECK(r.precision.sample_ids == std::vector<std::size_t>{1});
  CHECK_FALSE(r.timestamp);
  for (const auto& c : r.groups[0].clones) {
    CHECK(c.text.rfind("wordax", 0) == 0);
    CHECK(c.raw_last - c.raw_first + 1 == 30);
  }
}

TEST_CASE("snippets reproduce the source characters") {
  const RunOutcome out = run_two_docs();
  const auto docs = two_docs();
  for (const auto& g : out.report.groups)
    for (const auto& c : g.clones) {
      const auto& text = c.document == "one.txt" ? docs[0].second : docs[1].second;
      CHECK(encode_utf8(text.substr(c.char_begin, c.char_end - c.char_begin)) == c.text);
    }
}

TEST_CASE("coverage gate") {
  RunOptions options;
  options.fail_over_coverage_pct = 5.0;
  CHECK(run_two_docs(options).exit_code == kExitCoverageGate);
  options.fail_over_coverage_pct = 99.0;
  CHECK(run_two_docs(options).exit_code == kExitOk);
}

TEST_CASE("structured report round trip and stability") {
  RunOptions options;
  options.timestamp = "1700000000";
  RunOutcome out = run_two_docs(options);
  AssessmentRecord a;
  a.clone_group_id = 1;
  a.categories = {"UI", "Feature"};
  a.rater = "r";
  CHECK(record_precision(out.report, {a}, false) == 1.0);

  const std::string text = emit_structured(out.report);
  CHECK(parse_structured(text) == out.report);
  CHECK(emit_structured(parse_structured(text)) == text);
  CHECK(emit_structured(run_two_docs(options).report) ==
        emit_structured(run_two_docs(options).report));
  CHECK(text.find("\"timestamp\": \"1700000000\"") != std::string::npos);
  CHECK(text.back() == '\n');

  // Key order is fixed.
  const auto pos = [&](const char* key) { return text.find(key); };
  CHECK(pos("\"format\"") < pos("\"corpus\""));
  CHECK(pos("\"metrics\"") < pos("\"effort\""));
  CHECK(pos("\"groups\"") < pos("\"precision\""));

  CHECK_THROWS_AS(parse_structured("{}"), Error);
  CHECK_THROWS_AS(parse_structured("not json"), Error);
}

TEST_CASE("infinite blow-up survives the round trip") {
  RunReport r = run_two_docs().report;
  r.metrics.blow_up_relative = std::numeric_limits<double>::infinity();
  r.metrics.blow_up_relative_infinite = true;
  const std::string text = emit_structured(r);
  CHECK(text.find("\"blow_up_relative\": null") != std::string::npos);
  CHECK(parse_structured(text) == r);
}

TEST_CASE("record_precision rejects unknown groups") {
  RunReport r = run_two_docs().report;
  AssessmentRecord a;
  a.clone_group_id = 99;
  CHECK_THROWS_AS(record_precision(r, {a}, true), Error);
  a.clone_group_id = 1;
  a.verdict = Verdict::false_positive;
  a.false_positive_kind = FalsePositiveKind::index;
  CHECK(record_precision(r, {a}, true) == 0.0);
  CHECK(*r.precision.after == 0.0);
  CHECK_FALSE(r.precision.before);
}

TEST_CASE("agreement labels") {
  AssessmentRecord a;
  a.categories = {"UI", "Feature"};
  CHECK(agreement_label(a) == "Feature|UI");
  AssessmentRecord fp;
  fp.verdict = Verdict::false_positive;
  fp.false_positive_kind = FalsePositiveKind::other;
  CHECK(agreement_label(fp) == "false_positive");
}

TEST_CASE("summary table") {
  RunReport a = run_two_docs().report, b = a;
  a.corpus.name = "A";
  a.metrics.clone_coverage = 0.10;
  a.metrics.blow_up_relative = 0.04;
  a.metrics.clone_groups = 3;
  a.metrics.clones = 7;
  a.metrics.blow_up_words = 40;
  a.metrics.total_words = 1000;
  b.corpus.name = "B";
  b.metrics.clone_coverage = 0.20;
  b.metrics.blow_up_relative = 0.08;
  b.metrics.clone_groups = 2;
  b.metrics.clones = 4;
  b.metrics.blow_up_words = 60;
  b.metrics.total_words = 800;
  const std::vector<RunReport> both = {a, b};
  const std::string table = emit_summary(both);
  CHECK(table == std::string(kSummaryHeader) + "\n" +
                     "A\t1000\t10.0\t3\t7\t4.0\t40\n"
                     "B\t800\t20.0\t2\t4\t8.0\t60\n"
                     "Avg\t\t15.0\t\t\t6.0\t\n"
                     "Sum\t1800\t\t5\t11\t\t100\n");
  const CorpusSeries series = parse_summary(table);
  REQUIRE(series.size() == 2);
  CHECK(series.records()[1].name == "B");
  CHECK(series.records()[1].clone_coverage == doctest::Approx(0.20));

  const std::vector<RunReport> single = {a};
  const std::string one = emit_summary(single);
  CHECK(one.find("Avg\t\t10.0\t\t\t4.0\t\n") != std::string::npos);
  CHECK_THROWS_AS(emit_summary(std::span<const RunReport>{}), Error);
  CHECK_THROWS_AS(parse_summary("wrong\theader\n"), Error);
}

TEST_CASE("human report") {
  const RunReport r = run_two_docs().report;
  const std::string html = emit_human_report(r);
  CHECK(html.find("<!DOCTYPE html>") == 0);
  CHECK(html.find("one.txt") != std::string::npos);
  CHECK(html.find("two.txt") != std::string::npos);
  CHECK(html.find(r.groups[0].clones[0].text.substr(0, 20)) != std::string::npos);

  RunReport empty = r;
  empty.groups.clear();
  empty.corpus.name = "<x & y>";
  const std::string none = emit_human_report(empty);
  CHECK(none.find("zero clone groups") != std::string::npos);
  CHECK(none.find("&lt;x &amp; y&gt;") != std::string::npos);
}

TEST_CASE("run from a manifest on disk") {
  TempDir dir("report");
  const auto docs = two_docs();
  std::ofstream(dir.path() / "f.tsv") << "*\tclosing\tclosing \\w+\n";
  const auto manifest = write_corpus(dir.path(), "disk", docs, 20, "filters = f.tsv\n");
  const RunOutcome out = run(manifest, RunOptions{});
  CHECK(out.report.corpus.name == "disk");
  CHECK(out.report.parameters.filter_rules == 1);
  CHECK(out.report.parameters.filter_hash != fnv1a_hex(""));
  CHECK(out.report.documents[0].path.find(dir.path().filename().string()) != std::string::npos);
  // Both closing lines are gone from the counts.
  CHECK(out.report.metrics.total_words == out.report.documents[0].raw_words +
                                              out.report.documents[1].raw_words);

  RunOptions override_filters;
  override_filters.filters = dir.path() / "missing.tsv";
  CHECK_THROWS_AS(run(manifest, override_filters), Error);
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
