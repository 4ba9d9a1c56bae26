// Exhaustive reference detector. Shares nothing with the suffix-array route
// except the public filter contracts, which it re-implements literally.
#include <algorithm>
#include <set>
#include <string>

#include "reqclone/detect.hpp"
#include "reqclone/error.hpp"

namespace reqclone {

namespace {

struct Candidate {
  std::size_t length;
  std::vector<std::size_t> starts;
};

bool inside(std::size_t s, std::size_t len, std::size_t t, std::size_t outer_len) {
  return t <= s && s + len <= t + outer_len;
}

bool overlaps(std::size_t a, std::size_t b, std::size_t len) {
  return a < b + len && b < a + len;
}

}  // namespace

std::vector<Repeat> brute_force_repeats(const TokenStream& stream,
                                        std::size_t min_length) {
  if (min_length < 2) throw Error(Stage::detect, "min_length must be at least 2");
  const std::size_t n = stream.tokens.size();
  if (n > kBruteForceMaxWords)
    throw Error(Stage::detect, "brute force limited to " +
                                   std::to_string(kBruteForceMaxWords) + " words");
  const auto& off = stream.doc_offsets;
  if (off.empty() || off.front() != 0 || off.back() != n)
    throw Error(Stage::detect, "inconsistent document offsets");

  // doc_end[i]: one past the last token of i's document.
  std::vector<std::size_t> doc_end(n);
  for (std::size_t d = 0; d + 1 < off.size(); ++d)
    for (std::size_t i = off[d]; i < off[d + 1]; ++i) doc_end[i] = off[d + 1];

  // lce[i][j]: longest common extension of positions i and j, within documents.
  std::vector<std::uint16_t> lce((n + 1) * (n + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint16_t& {
    return lce[i * (n + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      if (i == j || stream.tokens[i] != stream.tokens[j]) continue;
      const bool last = i + 1 == doc_end[i] || j + 1 == doc_end[j];
      at(i, j) = static_cast<std::uint16_t>(last ? 1 : at(i + 1, j + 1) + 1);
    }
  }

  // A string is a right-maximal repeat iff two of its occurrences continue
  // differently, i.e. it is text[i, i + lce(i, j)) for some i < j. Keying by
  // first occurrence makes each string appear once.
  std::set<std::pair<std::size_t, std::size_t>> seen;  // (first start, length)
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t earlier = 0;
    for (std::size_t p = 0; p < i; ++p) earlier = std::max<std::size_t>(earlier, at(p, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t len = at(i, j);
      if (len < min_length || len <= earlier) continue;
      if (!seen.insert({i, len}).second) continue;
      Candidate c{len, {i}};
      for (std::size_t p = i + 1; p < n; ++p)
        if (at(i, p) >= len) c.starts.push_back(p);
      candidates.push_back(std::move(c));
    }
  }

  // G is dropped if a longer H with as many clones covers every clone of G.
  std::vector<bool> keep(candidates.size(), true);
  for (std::size_t g = 0; g < candidates.size(); ++g) {
    const Candidate& G = candidates[g];
    for (const Candidate& H : candidates) {
      if (H.length <= G.length || H.starts.size() != G.starts.size()) continue;
      const bool all_inside = std::all_of(G.starts.begin(), G.starts.end(), [&](auto s) {
        return std::any_of(H.starts.begin(), H.starts.end(),
                           [&](auto t) { return inside(s, G.length, t, H.length); });
      });
      if (all_inside) {
        keep[g] = false;
        break;
      }
    }
  }

  std::vector<Repeat> out;
  for (std::size_t g = 0; g < candidates.size(); ++g) {
    if (!keep[g]) continue;
    const Candidate& c = candidates[g];
    bool clash = false;
    for (std::size_t a = 0; a < c.starts.size() && !clash; ++a)
      for (std::size_t b = a + 1; b < c.starts.size() && !clash; ++b)
        clash = overlaps(c.starts[a], c.starts[b], c.length);
    if (!clash) out.push_back(Repeat{c.length, c.starts});
  }
  canonical_order(out);
  return out;
}

DetectionResult brute_force_detect(const NormalizedStream& stream,
                                   std::size_t min_length) {
  DetectionResult result;
  result.groups = make_groups(stream, brute_force_repeats(to_tokens(stream), min_length));
  result.parameters.min_length = min_length;
  return result;
}

}  // namespace reqclone
