#include <algorithm>
#include <initializer_list>

#include "reqclone/stemmer.hpp"

namespace reqclone {

namespace {

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
    case U'ä': case U'ö': case U'ü':
      return true;
    default:
      return false;
  }
}

bool is_s_ending(char32_t c) {
  return std::u32string_view(U"bdfghklmnrt").find(c) != std::u32string_view::npos;
}

bool is_st_ending(char32_t c) {
  return std::u32string_view(U"bdfghklmnt").find(c) != std::u32string_view::npos;
}

bool is_et_ending(char32_t c) {
  return std::u32string_view(U"Udfgklmnrstzä").find(c) != std::u32string_view::npos;
}

bool ends_with(std::u32string_view w, std::u32string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

// Longest suffix of `w` among `candidates`, or empty view.
std::u32string_view longest_suffix(std::u32string_view w,
                                   std::initializer_list<std::u32string_view> candidates) {
  std::u32string_view best;
  for (auto c : candidates)
    if (c.size() > best.size() && ends_with(w, c)) best = c;
  return best;
}

void prelude(std::u32string& w) {
  // u or y between vowels is treated as a consonant.
  for (std::size_t i = 0; i + 2 < w.size(); ++i) {
    if (!is_vowel(w[i]) || !is_vowel(w[i + 2])) continue;
    if (w[i + 1] == U'u') w[i + 1] = U'U';
    else if (w[i + 1] == U'y') w[i + 1] = U'Y';
  }
  std::u32string out;
  out.reserve(w.size() + 4);
  for (std::size_t i = 0; i < w.size();) {
    const char32_t c = w[i];
    const char32_t next = i + 1 < w.size() ? w[i + 1] : 0;
    if (c == U'ß') {
      out += U"ss";
      ++i;
    } else if (c == U'q' && next == U'u') {
      out += U"qu";
      i += 2;
    } else if (next == U'e' && (c == U'a' || c == U'o' || c == U'u')) {
      out.push_back(c == U'a' ? U'ä' : c == U'o' ? U'ö' : U'ü');
      i += 2;
    } else {
      out.push_back(c);
      ++i;
    }
  }
  w = std::move(out);
}

struct Regions {
  std::size_t r1;
  std::size_t r2;
};

// Position after the first non-vowel that follows a vowel, scanning from
// `from`; npos when there is none.
std::size_t next_region(std::u32string_view w, std::size_t from) {
  std::size_t i = from;
  while (i < w.size() && !is_vowel(w[i])) ++i;
  if (i >= w.size()) return std::u32string_view::npos;
  ++i;
  while (i < w.size() && is_vowel(w[i])) ++i;
  if (i >= w.size()) return std::u32string_view::npos;
  return i + 1;
}

Regions mark_regions(std::u32string_view w) {
  Regions r{w.size(), w.size()};
  if (w.size() < 3) return r;
  const auto p1 = next_region(w, 0);
  if (p1 == std::u32string_view::npos) return r;
  r.r1 = std::max<std::size_t>(p1, 3);
  const auto p2 = next_region(w, p1);
  if (p2 != std::u32string_view::npos) r.r2 = p2;
  return r;
}

void erase_suffix(std::u32string& w, std::size_t n) { w.resize(w.size() - n); }

void step1(std::u32string& w, const Regions& r) {
  const auto suffix = longest_suffix(
      w, {U"e", U"em", U"en", U"erinnen", U"erin", U"ln", U"ern", U"er", U"s",
          U"es", U"lns"});
  if (suffix.empty()) return;
  const std::size_t start = w.size() - suffix.size();
  if (start < r.r1) return;
  const std::u32string_view before(w.data(), start);

  if (suffix == U"em") {
    if (!ends_with(before, U"syst")) erase_suffix(w, suffix.size());
  } else if (suffix == U"erinnen" || suffix == U"erin" || suffix == U"ern" ||
             suffix == U"er") {
    erase_suffix(w, suffix.size());
  } else if (suffix == U"e" || suffix == U"en" || suffix == U"es") {
    erase_suffix(w, suffix.size());
    if (ends_with(w, U"niss")) w.pop_back();
  } else if (suffix == U"s") {
    if (!before.empty() && is_s_ending(before.back())) erase_suffix(w, 1);
  } else {  // ln, lns
    erase_suffix(w, suffix.size());
    w.push_back(U'l');
  }
}

void step2(std::u32string& w, const Regions& r) {
  const auto suffix = longest_suffix(w, {U"en", U"er", U"et", U"st", U"est"});
  if (suffix.empty()) return;
  const std::size_t start = w.size() - suffix.size();
  if (start < r.r1) return;
  const std::u32string_view before(w.data(), start);

  if (suffix == U"st") {
    // Needs a valid st-ending preceded by at least three letters.
    if (before.empty() || !is_st_ending(before.back()) || before.size() - 1 < 3)
      return;
  } else if (suffix == U"et") {
    if (before.empty() || !is_et_ending(before.back())) return;
    if (!longest_suffix(before, {U"tick", U"plan", U"geordn", U"intern", U"tr"})
             .empty())
      return;
  }
  erase_suffix(w, suffix.size());
}

void step3(std::u32string& w, const Regions& r) {
  const auto suffix = longest_suffix(
      w, {U"end", U"ig", U"ung", U"lich", U"isch", U"ik", U"heit", U"keit"});
  if (suffix.empty()) return;
  const std::size_t start = w.size() - suffix.size();
  if (start < r.r2) return;
  const std::u32string_view before(w.data(), start);
  const bool after_e = !before.empty() && before.back() == U'e';

  if (suffix == U"end" || suffix == U"ung") {
    erase_suffix(w, suffix.size());
    if (ends_with(w, U"ig") && w.size() >= 2 && w.size() - 2 >= r.r2 &&
        !(w.size() >= 3 && w[w.size() - 3] == U'e'))
      erase_suffix(w, 2);
  } else if (suffix == U"ig" || suffix == U"ik" || suffix == U"isch") {
    if (!after_e) erase_suffix(w, suffix.size());
  } else if (suffix == U"lich" || suffix == U"heit") {
    erase_suffix(w, suffix.size());
    if ((ends_with(w, U"er") || ends_with(w, U"en")) && w.size() - 2 >= r.r1)
      erase_suffix(w, 2);
  } else {  // keit
    erase_suffix(w, suffix.size());
    const auto inner = longest_suffix(w, {U"ig", U"lich"});
    if (!inner.empty() && w.size() - inner.size() >= r.r2)
      erase_suffix(w, inner.size());
  }
}

void step4(std::u32string& w) {
  const auto suffix = longest_suffix(w, {U"'", U"'sch", U"'s"});
  if (suffix.empty()) return;
  if (w.size() - suffix.size() >= 2) erase_suffix(w, suffix.size());
}

void postlude(std::u32string& w) {
  for (char32_t& c : w) {
    switch (c) {
      case U'Y': c = U'y'; break;
      case U'U': case U'ü': c = U'u'; break;
      case U'ä': c = U'a'; break;
      case U'ö': c = U'o'; break;
      default: break;
    }
  }
}

}  // namespace

std::u32string german_stem(std::u32string_view word) {
  std::u32string w(word);
  prelude(w);
  const Regions regions = mark_regions(w);
  step1(w, regions);
  step2(w, regions);
  step3(w, regions);
  step4(w);
  postlude(w);
  return w;
}

}  // namespace reqclone
