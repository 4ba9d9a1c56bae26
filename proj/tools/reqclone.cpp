// Command-line front end. Exit codes: 0 ok, 1 error, 2 coverage gate hit.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reqclone/error.hpp"
#include "reqclone/metrics.hpp"
#include "reqclone/report.hpp"

namespace fs = std::filesystem;
using namespace reqclone;

namespace {

void print_metrics(const RunReport& r, std::ostream& out) {
  const auto& m = r.metrics;
  out << "corpus: " << r.corpus.name << "\n"
      << "words: " << m.total_words << "\n"
      << "clone coverage: " << format_percent(m.clone_coverage) << "\n"
      << "clone groups: " << m.clone_groups << "\n"
      << "clones: " << m.clones << "\n"
      << "blow-up: "
      << (m.blow_up_relative_infinite ? std::string("unbounded")
                                      : format_percent(m.blow_up_relative))
      << " (" << m.blow_up_words << " words)\n"
      << "reading: " << format_fixed1(r.effort.reading_minutes) << " min, inspection: "
      << format_fixed1(r.effort.inspection_hours) << " h, "
      << format_fixed1(r.effort.inspection_person_days) << " person-days\n";
}

std::string read_text(const fs::path& path) {
  try {
    return read_file_bytes(path);
  } catch (const Error&) {
    throw Error(Stage::report, "cannot read '" + path.string() + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clone detection for natural-language requirements specifications"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "Detect clones in the corpus of a manifest");
  fs::path manifest;
  RunOptions options;
  std::optional<std::size_t> min_length;
  std::optional<fs::path> filters;
  std::optional<double> gate;
  fs::path out_dir = ".";
  bool no_html = false;
  detect->add_option("manifest", manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  detect->add_option("--min-length", min_length, "Minimum clone length in normalized words")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  detect->add_option("--filters", filters, "Filter file, replaces the manifest's")
      ->check(CLI::ExistingFile);
  detect->add_option("--out", out_dir, "Output directory");
  detect->add_option("--fail-over-coverage", gate,
                     "Exit 2 when clone coverage exceeds PCT percent");
  detect->add_option("--sample", options.sample_size, "Groups to sample for assessment")
      ->check(CLI::PositiveNumber);
  detect->add_option("--seed", options.seed, "Sampling seed");
  detect->add_option("--inspectors", options.inspectors, "Inspection meeting size");
  detect->add_option("--hours-per-day", options.hours_per_day, "Hours per person-day")
      ->check(CLI::PositiveNumber);
  detect->add_flag("--no-html", no_html, "Skip the HTML report");

  // precision
  auto* precision = app.add_subcommand("precision", "Precision of an assessed sample");
  fs::path report_path, assessments_path;
  std::string stage = "before";
  bool embed = false;
  precision->add_option("report", report_path)->required()->check(CLI::ExistingFile);
  precision->add_option("assessments", assessments_path)->required()->check(CLI::ExistingFile);
  precision->add_option("--stage", stage, "Tailoring stage of the assessments")
      ->check(CLI::IsMember({"before", "after"}));
  precision->add_flag("--embed", embed, "Store assessments and precision in the report");

  // summary
  auto* summary = app.add_subcommand("summary", "Cross-corpus summary table");
  std::vector<fs::path> reports;
  std::optional<fs::path> summary_out;
  summary->add_option("reports", reports)->required()->check(CLI::ExistingFile);
  summary->add_option("--out", summary_out, "Write the table here instead of stdout");

  // stats
  auto* stats = app.add_subcommand("stats", "Cross-corpus statistics");
  stats->require_subcommand(1);
  auto* pearson_cmd = stats->add_subcommand("pearson", "Correlation of two summary columns");
  fs::path summary_path;
  std::string x_col = "clone_coverage_pct", y_col = "words";
  pearson_cmd->add_option("summary", summary_path)->required()->check(CLI::ExistingFile);
  pearson_cmd->add_option("--x", x_col);
  pearson_cmd->add_option("--y", y_col);
  auto* kappa_cmd = stats->add_subcommand("kappa", "Agreement of two assessment files");
  fs::path rater_a, rater_b;
  kappa_cmd->add_option("a", rater_a)->required()->check(CLI::ExistingFile);
  kappa_cmd->add_option("b", rater_b)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*detect) {
      options.min_length = min_length;
      options.filters = filters;
      options.fail_over_coverage_pct = gate;
      if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) options.timestamp = epoch;
      RunOutcome outcome = run(manifest, options);
      fs::create_directories(out_dir);
      const fs::path base = out_dir / outcome.report.corpus.name;
      const fs::path json = fs::path(base).concat(".report.json");
      write_text_file(json, emit_structured(outcome.report));
      if (!no_html)
        write_text_file(fs::path(base).concat(".report.html"),
                        emit_human_report(outcome.report));
      print_metrics(outcome.report, std::cout);
      std::cout << "report: " << json.string() << "\n";
      if (outcome.exit_code == kExitCoverageGate)
        std::cerr << "coverage " << format_percent(outcome.report.metrics.clone_coverage)
                  << " exceeds " << format_fixed1(*gate) << "%\n";
      return outcome.exit_code;
    }

    if (*precision) {
      RunReport report = load_structured(report_path);
      auto records = load_assessments(assessments_path);
      std::size_t relevant = 0;
      for (const auto& r : records) relevant += r.verdict == Verdict::relevant ? 1 : 0;
      const std::size_t total = records.size();
      const double p = record_precision(report, std::move(records), stage == "after");
      std::cout << "precision (" << stage << "): " << format_percent(p) << " (" << relevant
                << "/" << total << ")\n";
      if (embed) write_text_file(report_path, emit_structured(report));
      return kExitOk;
    }

    if (*summary) {
      std::vector<RunReport> loaded;
      for (const auto& p : reports) loaded.push_back(load_structured(p));
      const std::string table = emit_summary(loaded);
      if (summary_out)
        write_text_file(*summary_out, table);
      else
        std::cout << table;
      return kExitOk;
    }

    if (*pearson_cmd) {
      const CorpusSeries series = parse_summary(read_text(summary_path), summary_path.string());
      const auto xs = series.column(x_col);
      const auto ys = series.column(y_col);
      std::cout << "pearson(" << x_col << ", " << y_col << ") = " << pearson(xs, ys) << " (n = "
                << xs.size() << ")\n";
      return kExitOk;
    }

    if (*kappa_cmd) {
      const auto a = load_assessments(rater_a);
      const auto b = load_assessments(rater_b);
      std::map<std::size_t, std::string> la, lb;
      for (const auto& r : a)
        if (!la.emplace(r.clone_group_id, agreement_label(r)).second)
          throw Error(Stage::metrics, "duplicate group " + std::to_string(r.clone_group_id) +
                                          " in " + rater_a.string());
      for (const auto& r : b)
        if (!lb.emplace(r.clone_group_id, agreement_label(r)).second)
          throw Error(Stage::metrics, "duplicate group " + std::to_string(r.clone_group_id) +
                                          " in " + rater_b.string());
      // Only groups both raters judged are compared.
      std::vector<std::string> xs, ys;
      for (const auto& [id, label] : la) {
        auto it = lb.find(id);
        if (it == lb.end()) continue;
        xs.push_back(label);
        ys.push_back(it->second);
      }
      const KappaResult k = cohen_kappa(xs, ys);
      std::cout << "kappa = ";
      if (k.degenerate)
        std::cout << "undefined (chance agreement is 1)";
      else
        std::cout << k.kappa;
      std::cout << " (n = " << xs.size() << ", observed " << k.observed << ", expected "
                << k.expected << ")\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
