#include <vector>

#include "reqclone/stemmer.hpp"

namespace reqclone {

namespace {

bool is_vowel_letter(char32_t c) {
  return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u';
}

// Consonant flags for every position. 'y' is a consonant at the start of the
// word or after a vowel, and a vowel after a consonant.
std::vector<bool> consonant_flags(std::u32string_view w) {
  std::vector<bool> flags(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_letter(w[i])) {
      flags[i] = false;
    } else if (w[i] == U'y') {
      flags[i] = i == 0 ? true : !flags[i - 1];
    } else {
      flags[i] = true;
    }
  }
  return flags;
}

// m in [C](VC)^m[V]
int measure(std::u32string_view stem) {
  const auto flags = consonant_flags(stem);
  int m = 0;
  for (std::size_t i = 1; i < flags.size(); ++i)
    if (!flags[i - 1] && flags[i]) ++m;
  return m;
}

bool contains_vowel(std::u32string_view stem) {
  for (bool c : consonant_flags(stem))
    if (!c) return true;
  return false;
}

bool ends_double_consonant(std::u32string_view w) {
  const auto n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && consonant_flags(w)[n - 1];
}

// *o: stem ends cvc, where the second c is not w, x or y.
bool ends_cvc(std::u32string_view w) {
  const auto n = w.size();
  if (n < 3) return false;
  const auto flags = consonant_flags(w);
  return flags[n - 3] && !flags[n - 2] && flags[n - 1] && w[n - 1] != U'w' &&
         w[n - 1] != U'x' && w[n - 1] != U'y';
}

bool ends_with(std::u32string_view w, std::u32string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

enum class Cond { none, m_gt0, m_gt1, m_gt1_s_or_t };

struct Rule {
  std::u32string_view suffix;
  std::u32string_view replacement;
  Cond cond;
};

bool holds(Cond cond, std::u32string_view stem) {
  switch (cond) {
    case Cond::none: return true;
    case Cond::m_gt0: return measure(stem) > 0;
    case Cond::m_gt1: return measure(stem) > 1;
    case Cond::m_gt1_s_or_t:
      return measure(stem) > 1 && !stem.empty() &&
             (stem.back() == U's' || stem.back() == U't');
  }
  return false;
}

// The first rule whose suffix matches decides; if its condition fails the
// step leaves the word unchanged.
template <std::size_t N>
void apply_rules(std::u32string& w, const Rule (&rules)[N]) {
  for (const auto& rule : rules) {
    if (!ends_with(w, rule.suffix)) continue;
    const std::u32string_view stem(w.data(), w.size() - rule.suffix.size());
    if (holds(rule.cond, stem)) {
      w.resize(stem.size());
      w.append(rule.replacement);
    }
    return;
  }
}

void step1a(std::u32string& w) {
  static constexpr Rule rules[] = {
      {U"sses", U"ss", Cond::none},
      {U"ies", U"i", Cond::none},
      {U"ss", U"ss", Cond::none},
      {U"s", U"", Cond::none},
  };
  apply_rules(w, rules);
}

void step1b(std::u32string& w) {
  if (ends_with(w, U"eed")) {
    if (measure(std::u32string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  std::size_t cut = 0;
  if (ends_with(w, U"ed") &&
      contains_vowel(std::u32string_view(w).substr(0, w.size() - 2))) {
    cut = 2;
  } else if (ends_with(w, U"ing") &&
             contains_vowel(std::u32string_view(w).substr(0, w.size() - 3))) {
    cut = 3;
  }
  if (cut == 0) return;
  w.resize(w.size() - cut);

  if (ends_with(w, U"at") || ends_with(w, U"bl") || ends_with(w, U"iz")) {
    w.push_back(U'e');
  } else if (ends_double_consonant(w)) {
    const char32_t last = w.back();
    if (last != U'l' && last != U's' && last != U'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back(U'e');
  }
}

void step1c(std::u32string& w) {
  if (ends_with(w, U"y") &&
      contains_vowel(std::u32string_view(w).substr(0, w.size() - 1)))
    w.back() = U'i';
}

void step2(std::u32string& w) {
  static constexpr Rule rules[] = {
      {U"ational", U"ate", Cond::m_gt0}, {U"tional", U"tion", Cond::m_gt0},
      {U"enci", U"ence", Cond::m_gt0},   {U"anci", U"ance", Cond::m_gt0},
      {U"izer", U"ize", Cond::m_gt0},    {U"abli", U"able", Cond::m_gt0},
      {U"alli", U"al", Cond::m_gt0},     {U"entli", U"ent", Cond::m_gt0},
      {U"eli", U"e", Cond::m_gt0},       {U"ousli", U"ous", Cond::m_gt0},
      {U"ization", U"ize", Cond::m_gt0}, {U"ation", U"ate", Cond::m_gt0},
      {U"ator", U"ate", Cond::m_gt0},    {U"alism", U"al", Cond::m_gt0},
      {U"iveness", U"ive", Cond::m_gt0}, {U"fulness", U"ful", Cond::m_gt0},
      {U"ousness", U"ous", Cond::m_gt0}, {U"aliti", U"al", Cond::m_gt0},
      {U"iviti", U"ive", Cond::m_gt0},   {U"biliti", U"ble", Cond::m_gt0},
  };
  apply_rules(w, rules);
}

void step3(std::u32string& w) {
  static constexpr Rule rules[] = {
      {U"icate", U"ic", Cond::m_gt0}, {U"ative", U"", Cond::m_gt0},
      {U"alize", U"al", Cond::m_gt0}, {U"iciti", U"ic", Cond::m_gt0},
      {U"ical", U"ic", Cond::m_gt0},  {U"ful", U"", Cond::m_gt0},
      {U"ness", U"", Cond::m_gt0},
  };
  apply_rules(w, rules);
}

void step4(std::u32string& w) {
  static constexpr Rule rules[] = {
      {U"al", U"", Cond::m_gt1},    {U"ance", U"", Cond::m_gt1},
      {U"ence", U"", Cond::m_gt1},  {U"er", U"", Cond::m_gt1},
      {U"ic", U"", Cond::m_gt1},    {U"able", U"", Cond::m_gt1},
      {U"ible", U"", Cond::m_gt1},  {U"ant", U"", Cond::m_gt1},
      {U"ement", U"", Cond::m_gt1}, {U"ment", U"", Cond::m_gt1},
      {U"ent", U"", Cond::m_gt1},   {U"ion", U"", Cond::m_gt1_s_or_t},
      {U"ou", U"", Cond::m_gt1},    {U"ism", U"", Cond::m_gt1},
      {U"ate", U"", Cond::m_gt1},   {U"iti", U"", Cond::m_gt1},
      {U"ous", U"", Cond::m_gt1},   {U"ive", U"", Cond::m_gt1},
      {U"ize", U"", Cond::m_gt1},
  };
  apply_rules(w, rules);
}

void step5a(std::u32string& w) {
  if (!ends_with(w, U"e")) return;
  const std::u32string_view stem(w.data(), w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step5b(std::u32string& w) {
  if (ends_with(w, U"ll") &&
      measure(std::u32string_view(w).substr(0, w.size() - 1)) > 1)
    w.pop_back();
}

}  // namespace

std::u32string porter_stem(std::u32string_view word) {
  std::u32string w(word);
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace reqclone
