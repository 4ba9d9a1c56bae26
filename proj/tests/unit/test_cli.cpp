#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "reqclone/report.hpp"

using namespace reqclone;
using namespace reqclone::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli.out";
  const std::string cmd = std::string("\"") + REQCLONE_CLI + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream s;
  s << in.rdbuf();
  r.out = s.str();
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// Ten documents; one passage is shared, giving 10-20% coverage.
fs::path gated_corpus(const fs::path& dir) {
  std::vector<std::pair<std::string, std::u32string>> docs;
  std::u32string shared;
  for (int i = 0; i < 25; ++i) shared += U"sig" + std::u32string(1, U'a' + i) + U"q ";
  std::u32string filler;
  for (int i = 0; i < 200; ++i)
    filler += U"f" + std::u32string(1, U'a' + i % 26) + std::u32string(1, U'a' + i / 26) + U"z ";
  docs.push_back({"a.txt", filler + shared});
  docs.push_back({"b.txt", U"intro " + shared + U"\noutro"});
  return write_corpus(dir, "gate", docs, 20);
}

}  // namespace

TEST_CASE("cli detect, gating and outputs") {
  TempDir dir("cli");
  const auto manifest = gated_corpus(dir.path());
  const fs::path out = dir.path() / "out";

  const Result ok = cli("detect " + q(manifest) + " --out " + q(out), dir.path());
  CHECK(ok.code == 0);
  CHECK(ok.out.find("clone groups: 1") != std::string::npos);
  CHECK(fs::exists(out / "gate.report.json"));
  CHECK(fs::exists(out / "gate.report.html"));
  const RunReport report = load_structured(out / "gate.report.json");
  CHECK(report.metrics.clone_coverage > 0.05);

  const Result gated =
      cli("detect " + q(manifest) + " --out " + q(out) + " --fail-over-coverage 5", dir.path());
  CHECK(gated.code == 2);
  CHECK(gated.out.find("exceeds 5.0%") != std::string::npos);

  const Result relaxed =
      cli("detect " + q(manifest) + " --out " + q(out) + " --fail-over-coverage 50", dir.path());
  CHECK(relaxed.code == 0);

  CHECK(cli("detect " + q(dir.path() / "missing.manifest"), dir.path()).code == 1);
  CHECK(cli("detect " + q(manifest) + " --min-length 1", dir.path()).code == 1);
  CHECK(cli("frobnicate", dir.path()).code == 1);
  CHECK(cli("--help", dir.path()).code == 0);

  std::ofstream(dir.path() / "bad.manifest") << "min_clone_length = 1\ndoc = a.txt\n";
  const Result bad = cli("detect " + q(dir.path() / "bad.manifest"), dir.path());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("corpus:") != std::string::npos);
}

TEST_CASE("cli detect is deterministic") {
  TempDir dir("cli-det");
  const auto manifest = gated_corpus(dir.path());
  CHECK(cli("detect " + q(manifest) + " --out " + q(dir.path() / "x"), dir.path()).code == 0);
  CHECK(cli("detect " + q(manifest) + " --out " + q(dir.path() / "y"), dir.path()).code == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  CHECK(slurp(dir.path() / "x" / "gate.report.json") ==
        slurp(dir.path() / "y" / "gate.report.json"));
}

TEST_CASE("cli precision, summary and stats") {
  TempDir dir("cli-stats");
  const auto manifest = gated_corpus(dir.path());
  REQUIRE(cli("detect " + q(manifest) + " --out " + q(dir.path()), dir.path()).code == 0);
  const fs::path report = dir.path() / "gate.report.json";

  AssessmentRecord fp;
  fp.clone_group_id = 1;
  fp.verdict = Verdict::false_positive;
  fp.false_positive_kind = FalsePositiveKind::template_information;
  std::ofstream(dir.path() / "a.jsonl") << write_assessments(std::vector{fp});
  const Result p = cli("precision " + q(report) + " " + q(dir.path() / "a.jsonl") + " --embed",
                       dir.path());
  CHECK(p.code == 0);
  CHECK(p.out.find("precision (before): 0.0% (0/1)") != std::string::npos);
  CHECK(*load_structured(report).precision.before == 0.0);

  AssessmentRecord unknown = fp;
  unknown.clone_group_id = 42;
  std::ofstream(dir.path() / "u.jsonl") << write_assessments(std::vector{unknown});
  CHECK(cli("precision " + q(report) + " " + q(dir.path() / "u.jsonl"), dir.path()).code == 1);

  const fs::path table = dir.path() / "summary.tsv";
  CHECK(cli("summary " + q(report) + " --out " + q(table), dir.path()).code == 0);
  const Result s = cli("summary " + q(report), dir.path());
  CHECK(s.out.rfind(std::string(kSummaryHeader), 0) == 0);

  // Pearson needs two corpora; write a small table by hand.
  std::ofstream(dir.path() / "two.tsv") << kSummaryHeader << "\n"
                                        << "A\t100\t10.0\t1\t2\t5.0\t5\n"
                                        << "B\t200\t30.0\t1\t2\t5.0\t5\n"
                                        << "C\t300\t20.0\t1\t2\t5.0\t5\n";
  const Result r = cli("stats pearson " + q(dir.path() / "two.tsv"), dir.path());
  CHECK(r.code == 0);
  CHECK(r.out.find("= 0.5 (n = 3)") != std::string::npos);
  CHECK(cli("stats pearson " + q(table), dir.path()).code == 1);  // one row only

  AssessmentRecord x, y;
  x.clone_group_id = 1;
  x.categories = {"UI"};
  y.clone_group_id = 2;
  y.categories = {"Feature"};
  std::ofstream(dir.path() / "r1.jsonl") << write_assessments(std::vector{x, y});
  std::ofstream(dir.path() / "r2.jsonl") << write_assessments(std::vector{x, y});
  const Result k = cli("stats kappa " + q(dir.path() / "r1.jsonl") + " " +
                           q(dir.path() / "r2.jsonl"),
                       dir.path());
  CHECK(k.code == 0);
  CHECK(k.out.find("kappa = 1 ") != std::string::npos);
}
