#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace reqclone::detail {

// Suffix array of an integer string by prefix doubling with radix sorting,
// O(n log n). Every symbol must be < alphabet_size.
std::vector<std::size_t> build_suffix_array(std::span<const std::uint32_t> text,
                                            std::size_t alphabet_size);

// Kasai et al.: lcp[i] = LCP(text[sa[i-1]..], text[sa[i]..]), lcp[0] = 0.
std::vector<std::size_t> build_lcp(std::span<const std::uint32_t> text,
                                   std::span<const std::size_t> sa);

struct LcpInterval {
  std::size_t depth;  // common prefix length
  std::size_t lb;     // first suffix-array index
  std::size_t rb;     // last suffix-array index, inclusive
};

// Calls visit(interval) for every branching lcp-interval with depth > 0,
// children before parents.
template <typename Visit>
void for_each_lcp_interval(std::span<const std::size_t> lcp, Visit&& visit) {
  struct Open {
    std::size_t depth;
    std::size_t lb;
  };
  std::vector<Open> stack{{0, 0}};
  const std::size_t n = lcp.size();
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t cur = i < n ? lcp[i] : 0;
    std::size_t lb = i - 1;
    while (cur < stack.back().depth) {
      const Open top = stack.back();
      stack.pop_back();
      visit(LcpInterval{top.depth, top.lb, i - 1});
      lb = top.lb;
    }
    if (cur > stack.back().depth) stack.push_back({cur, lb});
  }
}

}  // namespace reqclone::detail
