#include "reqclone/detect.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "reqclone/error.hpp"
#include "suffix_array.hpp"

namespace reqclone {

TokenStream TokenStream::single(std::vector<Token> tokens) {
  TokenStream s;
  s.doc_offsets = {0, tokens.size()};
  s.tokens = std::move(tokens);
  return s;
}

TokenStream to_tokens(const NormalizedStream& stream) {
  TokenStream out;
  out.tokens.reserve(stream.words.size());
  std::unordered_map<std::u32string, Token> ids;
  for (const auto& w : stream.words) {
    auto [it, fresh] = ids.try_emplace(w.norm, static_cast<Token>(ids.size()));
    out.tokens.push_back(it->second);
  }
  out.doc_offsets = stream.doc_offsets;
  return out;
}

void canonical_order(std::vector<Repeat>& repeats) {
  std::sort(repeats.begin(), repeats.end(), [](const Repeat& a, const Repeat& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.starts < b.starts;
  });
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_min_length(std::size_t min_length) {
  if (min_length < 2) throw Error(Stage::detect, "min_length must be at least 2");
}

void check_offsets(const TokenStream& stream) {
  const auto& off = stream.doc_offsets;
  if (off.empty() || off.front() != 0 || off.back() != stream.tokens.size() ||
      !std::is_sorted(off.begin(), off.end()))
    throw Error(Stage::detect, "inconsistent document offsets");
}

// Concatenated text with one unique sentinel after every document, plus
// the stream position of each text position (kNone for sentinels).
struct SeamedText {
  std::vector<std::uint32_t> symbols;
  std::vector<std::size_t> to_stream;
  std::size_t alphabet = 0;
};

SeamedText seam(const TokenStream& stream) {
  check_offsets(stream);
  Token max_token = 0;
  for (auto t : stream.tokens) max_token = std::max(max_token, t);
  const std::size_t docs = stream.doc_offsets.size() - 1;
  const std::size_t first_sentinel =
      stream.tokens.empty() ? 0 : static_cast<std::size_t>(max_token) + 1;
  if (first_sentinel + docs > std::numeric_limits<std::uint32_t>::max())
    throw Error(Stage::detect, "token alphabet too large");

  SeamedText t;
  t.symbols.reserve(stream.tokens.size() + docs);
  t.to_stream.reserve(stream.tokens.size() + docs);
  for (std::size_t d = 0; d < docs; ++d) {
    for (std::size_t i = stream.doc_offsets[d]; i < stream.doc_offsets[d + 1]; ++i) {
      t.symbols.push_back(stream.tokens[i]);
      t.to_stream.push_back(i);
    }
    t.symbols.push_back(static_cast<std::uint32_t>(first_sentinel + d));
    t.to_stream.push_back(kNone);
  }
  t.alphabet = first_sentinel + docs;
  return t;
}

bool self_overlapping(const Repeat& r) {
  for (std::size_t i = 1; i < r.starts.size(); ++i)
    if (r.starts[i] - r.starts[i - 1] < r.length) return true;
  return false;
}

// True when every occurrence of `inner` lies inside some occurrence of `outer`.
bool covered_by(const Repeat& inner, const Repeat& outer) {
  for (auto s : inner.starts) {
    auto it = std::upper_bound(outer.starts.begin(), outer.starts.end(), s);
    if (it == outer.starts.begin()) return false;
    if (s + inner.length > *std::prev(it) + outer.length) return false;
  }
  return true;
}

Repeat as_repeat(const CloneGroup& g) {
  Repeat r;
  r.length = g.length;
  for (const auto& c : g.clones) r.starts.push_back(c.start);
  std::sort(r.starts.begin(), r.starts.end());
  return r;
}

template <typename T>
std::vector<T> keep_flagged(std::vector<T> items, const std::vector<bool>& keep) {
  std::vector<T> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    if (keep[i]) out.push_back(std::move(items[i]));
  return out;
}

std::vector<bool> containment_mask(const std::vector<Repeat>& rs) {
  // Only groups of equal cardinality can suppress one another.
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_card;
  for (std::size_t i = 0; i < rs.size(); ++i) by_card[rs[i].starts.size()].push_back(i);
  std::vector<bool> keep(rs.size(), true);
  for (const auto& [card, members] : by_card) {
    for (auto g : members) {
      for (auto h : members) {
        if (rs[h].length > rs[g].length && covered_by(rs[g], rs[h])) {
          keep[g] = false;
          break;
        }
      }
    }
  }
  return keep;
}

}  // namespace

namespace {

// Branching LCP intervals of depth >= min_length. With left_maximal_only,
// also drops those whose occurrences all share one left neighbour and those
// too numerous to be pairwise disjoint.
std::vector<Repeat> scan(const TokenStream& stream, std::size_t min_length,
                         bool left_maximal_only) {
  check_min_length(min_length);
  const SeamedText text = seam(stream);
  const auto sa = detail::build_suffix_array(text.symbols, text.alphabet);
  const auto lcp = detail::build_lcp(text.symbols, sa);
  const std::size_t n = sa.size();

  // changes[k]: adjacent suffix pairs before k with different left
  // neighbours. Position 0 has none and differs from every real symbol.
  std::vector<std::size_t> changes(n + 1, 0);
  auto left_of = [&](std::size_t k) -> std::size_t {
    return sa[k] == 0 ? kNone : text.symbols[sa[k] - 1];
  };
  for (std::size_t k = 0; k < n; ++k)
    changes[k + 1] = changes[k] + (k > 0 && left_of(k) != left_of(k - 1) ? 1 : 0);

  std::vector<Repeat> out;
  detail::for_each_lcp_interval(lcp, [&](const detail::LcpInterval& iv) {
    if (iv.depth < min_length) return;
    if (left_maximal_only) {
      if (changes[iv.rb + 1] == changes[iv.lb + 1]) return;
      // More occurrences than fit side by side must overlap.
      if ((iv.rb - iv.lb + 1) * iv.depth > stream.tokens.size()) return;
    }
    Repeat r;
    r.length = iv.depth;
    r.starts.reserve(iv.rb - iv.lb + 1);
    // Sentinels are unique, so no interval of depth >= 2 holds one.
    for (std::size_t k = iv.lb; k <= iv.rb; ++k) r.starts.push_back(text.to_stream[sa[k]]);
    std::sort(r.starts.begin(), r.starts.end());
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace

std::vector<Repeat> right_maximal_repeats(const TokenStream& stream,
                                          std::size_t min_length) {
  auto out = scan(stream, min_length, false);
  canonical_order(out);
  return out;
}

// For right-maximal repeats, "contained in a longer group of equal
// cardinality" is the same as "not left-maximal", which the scan checks in
// O(1) per interval.
std::vector<Repeat> find_repeats(const TokenStream& stream, std::size_t min_length) {
  auto out = scan(stream, min_length, true);
  std::erase_if(out, self_overlapping);
  canonical_order(out);
  return out;
}

std::vector<Repeat> filter_contained(std::vector<Repeat> repeats) {
  const auto keep = containment_mask(repeats);
  return keep_flagged(std::move(repeats), keep);
}

std::vector<CloneGroup> filter_contained(std::vector<CloneGroup> groups) {
  std::vector<Repeat> rs;
  rs.reserve(groups.size());
  for (const auto& g : groups) rs.push_back(as_repeat(g));
  return keep_flagged(std::move(groups), containment_mask(rs));
}

std::vector<Repeat> remove_overlapping(std::vector<Repeat> repeats) {
  std::erase_if(repeats, [](Repeat& r) {
    std::sort(r.starts.begin(), r.starts.end());
    return self_overlapping(r);
  });
  return repeats;
}

std::vector<CloneGroup> remove_overlapping(std::vector<CloneGroup> groups) {
  std::erase_if(groups, [](const CloneGroup& g) { return self_overlapping(as_repeat(g)); });
  return groups;
}

std::vector<CloneGroup> make_groups(const NormalizedStream& stream,
                                    std::vector<Repeat> repeats) {
  canonical_order(repeats);
  std::vector<CloneGroup> groups;
  groups.reserve(repeats.size());
  for (const auto& r : repeats) {
    CloneGroup g;
    g.id = groups.size() + 1;
    g.length = r.length;
    for (auto s : r.starts) {
      if (r.length == 0 || s + r.length > stream.words.size())
        throw Error(Stage::detect, "repeat outside the stream");
      const RawWord& first = stream.words[s].origin;
      const RawWord& last = stream.words[s + r.length - 1].origin;
      if (first.document != last.document)
        throw Error(Stage::detect, "repeat crosses a document boundary");
      Clone c;
      c.start = s;
      c.length = r.length;
      c.document = first.document;
      c.chars = {first.span.begin, last.span.end};
      c.raw_first = first.raw_index;
      c.raw_last = last.raw_index;
      g.clones.push_back(c);
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

DetectionResult detect_clones(const NormalizedStream& stream, std::size_t min_length) {
  check_min_length(min_length);
  DetectionResult result;
  result.groups = make_groups(stream, find_repeats(to_tokens(stream), min_length));
  result.parameters.min_length = min_length;
  return result;
}

}  // namespace reqclone
