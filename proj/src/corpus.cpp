#include "reqclone/corpus.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "reqclone/error.hpp"
#include "reqclone/unicode.hpp"

namespace reqclone {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void manifest_error(std::string_view origin, std::size_t line,
                                 const std::string& what) {
  throw Error(Stage::corpus, std::string(origin) + ":" +
                                 std::to_string(line) + ": " + what);
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(value)};
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

std::string_view to_string(Language language) {
  return language == Language::german ? "german" : "english";
}

std::string_view to_string(Encoding encoding) {
  return encoding == Encoding::latin1 ? "latin-1" : "utf-8";
}

std::optional<Language> parse_language(std::string_view text) {
  if (text == "english") return Language::english;
  if (text == "german") return Language::german;
  return std::nullopt;
}

std::optional<Encoding> parse_encoding(std::string_view text) {
  if (text == "utf-8" || text == "utf8") return Encoding::utf8;
  if (text == "latin-1" || text == "latin1" || text == "iso-8859-1")
    return Encoding::latin1;
  return std::nullopt;
}

const RawDocument* Corpus::find(std::string_view id) const {
  for (const auto& doc : documents)
    if (doc.id == id) return &doc;
  return nullptr;
}

CorpusSpec parse_manifest(std::string_view text, const fs::path& base_dir,
                          std::string_view origin) {
  CorpusSpec spec;
  Encoding encoding = Encoding::utf8;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      manifest_error(origin, line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty())
      manifest_error(origin, line_no, "empty value for '" + std::string(key) + "'");
    if (key != "doc" && key != "encoding" && !seen.emplace(key).second)
      manifest_error(origin, line_no, "duplicate key '" + std::string(key) + "'");

    if (key == "corpus") {
      spec.name = value;
    } else if (key == "language") {
      const auto lang = parse_language(value);
      if (!lang)
        manifest_error(origin, line_no, "unknown language '" + std::string(value) + "'");
      spec.language = *lang;
    } else if (key == "min_clone_length") {
      long long n = 0;
      const auto* end = value.data() + value.size();
      const auto [ptr, ec] = std::from_chars(value.data(), end, n);
      if (ec != std::errc() || ptr != end)
        manifest_error(origin, line_no, "min_clone_length is not an integer");
      if (n < 2)
        manifest_error(origin, line_no, "min_clone_length must be at least 2");
      spec.min_clone_length = static_cast<std::size_t>(n);
    } else if (key == "filters") {
      spec.filter_file = resolve(base_dir, value);
    } else if (key == "stopwords") {
      spec.stop_words_file = resolve(base_dir, value);
    } else if (key == "encoding") {
      const auto enc = parse_encoding(value);
      if (!enc)
        manifest_error(origin, line_no, "unknown encoding '" + std::string(value) + "'");
      encoding = *enc;
    } else if (key == "doc") {
      spec.documents.push_back({resolve(base_dir, value), encoding});
    } else {
      manifest_error(origin, line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (spec.documents.empty())
    throw Error(Stage::corpus, std::string(origin) + ": manifest lists no documents");
  return spec;
}

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Stage::corpus, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

CorpusSpec load_manifest(const fs::path& path) {
  if (!fs::is_regular_file(path))
    throw Error(Stage::corpus, "manifest not found: '" + path.string() + "'");
  auto spec = parse_manifest(read_file_bytes(path), path.parent_path(),
                             path.string());
  if (spec.name.empty()) spec.name = path.stem().string();
  return spec;
}

Corpus make_corpus(const CorpusSpec& spec,
                   std::vector<std::pair<std::string, std::u32string>> texts) {
  Corpus corpus{spec, {}};
  std::set<std::string> ids;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    auto& [id, text] = texts[i];
    if (!ids.insert(id).second)
      throw Error(Stage::corpus, "duplicate document id '" + id + "'");
    RawDocument doc;
    doc.id = std::move(id);
    if (i < spec.documents.size()) doc.path = spec.documents[i].path;
    doc.text = std::move(text);
    doc.language = spec.language;
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const CorpusSpec& spec) {
  std::vector<std::pair<std::string, std::u32string>> texts;
  std::set<std::string> taken;
  for (const auto& ref : spec.documents) {
    const std::string bytes = read_file_bytes(ref.path);
    std::u32string text;
    try {
      text = ref.encoding == Encoding::latin1 ? decode_latin1(bytes)
                                              : decode_utf8(bytes);
    } catch (const std::invalid_argument& e) {
      throw Error(Stage::corpus, "'" + ref.path.string() + "': " + e.what());
    }
    const std::string name = ref.path.filename().string();
    std::string id = name;
    for (std::size_t ordinal = 2; !taken.insert(id).second; ++ordinal) {
      if (ordinal > spec.documents.size() + 1)
        throw Error(Stage::corpus, "cannot derive a unique id for '" +
                                       ref.path.string() + "'");
      id = name + "#" + std::to_string(ordinal);
    }
    texts.emplace_back(std::move(id), std::move(text));
  }
  return make_corpus(spec, std::move(texts));
}

}  // namespace reqclone
