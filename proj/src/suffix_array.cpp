#include "suffix_array.hpp"

#include <algorithm>

namespace reqclone::detail {

std::vector<std::size_t> build_suffix_array(std::span<const std::uint32_t> text,
                                            std::size_t alphabet_size) {
  const std::size_t n = text.size();
  std::vector<std::size_t> sa(n);
  if (n == 0) return sa;

  std::vector<std::size_t> cnt(std::max(alphabet_size, n) + 1, 0);
  for (auto c : text) ++cnt[c];
  for (std::size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
  for (std::size_t i = n; i-- > 0;) sa[--cnt[text[i]]] = i;

  std::vector<std::size_t> rank(n), next_rank(n), by_second(n);
  rank[sa[0]] = 0;
  for (std::size_t i = 1; i < n; ++i)
    rank[sa[i]] = rank[sa[i - 1]] + (text[sa[i]] != text[sa[i - 1]] ? 1 : 0);
  std::size_t classes = rank[sa[n - 1]] + 1;

  for (std::size_t k = 1; classes < n; k <<= 1) {
    // Order by second key: suffixes without a second half come first.
    std::size_t p = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) by_second[p++] = i;
    for (std::size_t j = 0; j < n; ++j)
      if (sa[j] >= k) by_second[p++] = sa[j] - k;

    // Stable counting sort by first key.
    std::fill(cnt.begin(), cnt.begin() + static_cast<std::ptrdiff_t>(classes) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i]];
    for (std::size_t i = 1; i <= classes; ++i) cnt[i] += cnt[i - 1];
    for (std::size_t i = n; i-- > 0;) sa[--cnt[rank[by_second[i]]]] = by_second[i];

    auto second = [&](std::size_t i) -> std::ptrdiff_t {
      return i + k < n ? static_cast<std::ptrdiff_t>(rank[i + k]) : -1;
    };
    next_rank[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const bool same = rank[sa[i]] == rank[sa[i - 1]] &&
                        second(sa[i]) == second(sa[i - 1]);
      next_rank[sa[i]] = next_rank[sa[i - 1]] + (same ? 0 : 1);
    }
    rank.swap(next_rank);
    classes = rank[sa[n - 1]] + 1;
  }
  return sa;
}

std::vector<std::size_t> build_lcp(std::span<const std::uint32_t> text,
                                   std::span<const std::size_t> sa) {
  const std::size_t n = text.size();
  std::vector<std::size_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = i;
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace reqclone::detail
