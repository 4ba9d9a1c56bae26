#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "reqclone/unicode.hpp"

namespace reqclone::testing {

NormalizedStream make_stream(const TokenDocs& docs) {
  NormalizedStream s;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t i = 0; i < docs[d].size(); ++i) {
      NormalizedWord w;
      const std::string text = "t" + std::to_string(docs[d][i]);
      w.norm = std::u32string(text.begin(), text.end());
      w.origin.document = static_cast<std::uint32_t>(d);
      w.origin.raw_index = i;
      w.origin.span = {4 * i, 4 * i + 3};
      w.origin.surface = w.norm;
      s.words.push_back(std::move(w));
    }
    s.doc_offsets.push_back(s.words.size());
    s.raw_word_counts.push_back(docs[d].size());
  }
  return s;
}

NormalizedStream make_stream(const std::vector<Token>& single_doc) {
  return make_stream(TokenDocs{single_doc});
}

TokenStream make_tokens(const TokenDocs& docs) {
  TokenStream t;
  for (const auto& d : docs) {
    t.tokens.insert(t.tokens.end(), d.begin(), d.end());
    t.doc_offsets.push_back(t.tokens.size());
  }
  return t;
}

std::vector<Token> tokens_of(const std::string& letters) {
  std::vector<Token> out;
  for (char c : letters) out.push_back(static_cast<Token>(c - 'a'));
  return out;
}

namespace {

std::vector<Token> repeat_tokens(const std::vector<Token>& unit, std::size_t times) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), unit.begin(), unit.end());
  return out;
}

std::vector<Token> fibonacci_word(std::size_t n) {
  std::vector<Token> a{0}, b{0, 1};
  while (b.size() < n) {
    std::vector<Token> c = b;
    c.insert(c.end(), a.begin(), a.end());
    a = std::move(b);
    b = std::move(c);
  }
  b.resize(n);
  return b;
}

std::vector<Token> thue_morse(std::size_t n) {
  std::vector<Token> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Token>(__builtin_popcountll(i) & 1);
  return out;
}

std::vector<Token> range_tokens(Token from, Token to) {
  std::vector<Token> out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

std::vector<Token> cat(std::initializer_list<std::vector<Token>> parts) {
  std::vector<Token> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<std::size_t> lengths(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t l = lo; l <= hi; ++l) out.push_back(l);
  return out;
}

}  // namespace

std::vector<NamedDocs> adversarial_fixtures() {
  const auto all = lengths(2, 25);
  const auto X = range_tokens(100, 130);  // 30 distinct tokens
  const auto Y = cat({range_tokens(200, 205), X, range_tokens(300, 305)});
  std::vector<NamedDocs> f;
  f.push_back({"abc x3", {tokens_of("abcabcabc")}, {2, 3, 4}});
  f.push_back({"abcd x a b c d", {tokens_of("abcdxabcd")}, {2, 3, 4, 5}});
  f.push_back({"run of one token", {std::vector<Token>(60, 7)}, all});
  f.push_back({"ab period", {repeat_tokens({0, 1}, 40)}, all});
  f.push_back({"period 3 with noise", {cat({repeat_tokens({0, 1, 2}, 15), {9}, repeat_tokens({0, 1, 2}, 15)})}, all});
  f.push_back({"fibonacci word", {fibonacci_word(600)}, all});
  f.push_back({"thue-morse", {thue_morse(512)}, all});
  f.push_back({"nested repeats", {cat({Y, {1}, X, {2}, Y, {3}, X, {4}, range_tokens(200, 205)})}, all});
  f.push_back({"nested, extra inner copy", {cat({Y, {1}, Y, {2}, X})}, all});
  f.push_back({"seam-spanning twin",
               {cat({{5}, range_tokens(40, 50)}), cat({range_tokens(50, 60), {6}}),
                cat({range_tokens(40, 60)})},
               all});
  f.push_back({"identical documents", {X, X}, all});
  f.push_back({"three identical documents", {X, X, X}, all});
  f.push_back({"identical documents with empties", {{}, X, {}, {}, X, {}}, all});
  f.push_back({"run split over documents",
               {std::vector<Token>(30, 1), std::vector<Token>(30, 1), std::vector<Token>(7, 1)},
               all});
  f.push_back({"one-token documents", {{1}, {1}, {1}, {2}, {1}}, {2, 3}});
  f.push_back({"all distinct", {range_tokens(0, 300)}, {2, 5}});
  f.push_back({"empty stream", {}, {2, 20}});
  f.push_back({"single token", {{3}}, {2}});
  f.push_back({"repeat at stream start", {cat({X, {1}, X})}, all});
  f.push_back({"self-overlap only", {tokens_of("ababa")}, {2, 3}});
  f.push_back({"squares", {tokens_of("abaabaabaabbabbabba")}, all});
  f.push_back({"lengths L-1 and L", {cat({range_tokens(0, 19), {90}, range_tokens(0, 19), {91},
                                          range_tokens(0, 20), {92}, range_tokens(0, 20)})},
               {19, 20, 21}});
  f.push_back({"doc boundary then repeat", {cat({{1}, X}), cat({X, {2}}), cat({{3}, X, {4}})}, all});
  f.push_back({"abc x3 across documents", {tokens_of("abc"), tokens_of("abc"), tokens_of("abc")},
               {2, 3}});
  f.push_back({"overlapping cascade", {repeat_tokens({0, 0, 1}, 30)}, all});
  return f;
}

RandomCase random_case(std::mt19937_64& rng, const RandomStreamSpec& spec) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  RandomCase c;
  c.alphabet = uniform(spec.min_alphabet, spec.max_alphabet);
  c.min_length = uniform(spec.min_min_length, spec.max_min_length);
  const std::size_t length = uniform(1, spec.max_length);

  std::vector<Token> flat(length);
  for (auto& t : flat) t = static_cast<Token>(uniform(0, c.alphabet - 1));

  // Planted copies, sometimes with one token changed.
  const std::size_t plants = uniform(0, 6);
  for (std::size_t p = 0; p < plants && length > 4; ++p) {
    const std::size_t len = uniform(2, std::min<std::size_t>(length / 2, 3 * spec.max_min_length));
    const std::size_t copies = uniform(1, 3);
    const std::size_t src = uniform(0, length - len);
    for (std::size_t k = 0; k < copies; ++k) {
      const std::size_t dst = uniform(0, length - len);
      std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(src), len,
                  flat.begin() + static_cast<std::ptrdiff_t>(dst));
      if (uniform(0, 3) == 0)
        flat[dst + uniform(0, len - 1)] = static_cast<Token>(uniform(0, c.alphabet - 1));
    }
  }

  // Cut into 1..5 documents, some possibly empty.
  const std::size_t docs = uniform(1, 5);
  std::vector<std::size_t> cuts{0, length};
  for (std::size_t d = 1; d < docs; ++d) cuts.push_back(uniform(0, length));
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t d = 0; d + 1 < cuts.size(); ++d)
    c.docs.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(cuts[d]),
                        flat.begin() + static_cast<std::ptrdiff_t>(cuts[d + 1]));
  return c;
}

namespace {

constexpr const char* kFooter =
    "Confidential document of the Acme Rail Signalling Corporation. Reproduction, "
    "distribution or disclosure to third parties requires prior written approval. Printed "
    "copies are uncontrolled; consult the document management system for the current "
    "approved revision, change history, review records and distribution list of this "
    "specification.";

std::vector<std::string> pseudo_vocabulary(std::mt19937_64& rng, std::size_t n) {
  static const std::string consonants = "bdfgklmnprstvz";
  static const std::string vowels = "aeiou";
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w;
    const std::size_t syllables = 3 + rng() % 2;
    for (std::size_t s = 0; s < syllables; ++s) {
      w += consonants[rng() % consonants.size()];
      w += vowels[rng() % vowels.size()];
    }
    w += consonants[rng() % consonants.size()];
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

}  // namespace

PaginatedCorpus paginated_corpus(const PaginatedSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const auto vocab = pseudo_vocabulary(rng, 8000);
  auto word = [&] { return vocab[rng() % vocab.size()]; };

  std::vector<std::vector<std::string>> passages(spec.passages);
  for (auto& p : passages) {
    const std::size_t n =
        spec.min_passage_words + rng() % (spec.max_passage_words - spec.min_passage_words + 1);
    for (std::size_t i = 0; i < n; ++i) p.push_back(word());
  }

  // Two distinct (document, page) slots per passage.
  const std::size_t slots = spec.documents * spec.pages;
  std::vector<std::vector<std::size_t>> by_slot(slots);
  for (std::size_t p = 0; p < spec.passages; ++p) {
    const std::size_t a = rng() % slots;
    std::size_t b = rng() % slots;
    while (b == a) b = rng() % slots;
    by_slot[a].push_back(p);
    by_slot[b].push_back(p);
  }

  PaginatedCorpus out;
  out.pages_per_document = spec.pages;
  out.passages = spec.passages;
  for (std::size_t d = 0; d < spec.documents; ++d) {
    std::u32string text;
    std::vector<CharSpan> footers;
    auto append = [&](const std::string& s) { text += decode_utf8(s); };
    for (std::size_t page = 0; page < spec.pages; ++page) {
      append("Section " + std::to_string(d + 1) + "." + std::to_string(page + 1) + "\n");
      auto filler = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) append(word() + (i % 12 == 11 ? ".\n" : " "));
      };
      filler(spec.body_words / 2);
      for (auto p : by_slot[d * spec.pages + page]) {
        append("\n");
        for (const auto& w : passages[p]) append(w + " ");
        append("\n");
        filler(5);
      }
      filler(spec.body_words - spec.body_words / 2);
      append("\n\n");
      const std::size_t begin = text.size();
      append(std::string(kFooter) + "\nPage " + std::to_string(page + 1) + " of " +
             std::to_string(spec.pages));
      footers.push_back({begin, text.size()});
      append("\n\n");
    }
    out.documents.emplace_back("part" + std::to_string(d + 1) + ".txt", std::move(text));
    out.footers.push_back(std::move(footers));
  }
  return out;
}

AssessmentRecord auto_assess(const PaginatedCorpus& corpus, const CloneGroup& group) {
  AssessmentRecord r;
  r.clone_group_id = group.id;
  r.rater = "auto";
  for (const auto& c : group.clones) {
    for (const auto& f : corpus.footers.at(c.document)) {
      if (c.chars.intersects(f)) {
        r.verdict = Verdict::false_positive;
        r.false_positive_kind = FalsePositiveKind::page_decoration;
        return r;
      }
    }
  }
  r.verdict = Verdict::relevant;
  r.categories = {"Feature"};
  return r;
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = std::filesystem::temp_directory_path() /
                     ("reqclone-" + tag + "-" + std::to_string(rd()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path write_corpus(const std::filesystem::path& dir, const std::string& name,
                                   const std::vector<std::pair<std::string, std::u32string>>& docs,
                                   std::size_t min_length, const std::string& extra) {
  std::string manifest = "corpus = " + name + "\nlanguage = english\nmin_clone_length = " +
                         std::to_string(min_length) + "\n" + extra;
  for (const auto& [id, text] : docs) {
    std::ofstream(dir / id, std::ios::binary) << encode_utf8(text);
    manifest += "doc = " + id + "\n";
  }
  const auto path = dir / (name + ".manifest");
  std::ofstream(path, std::ios::binary) << manifest;
  return path;
}

}  // namespace reqclone::testing
