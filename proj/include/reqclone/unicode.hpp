#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace reqclone {

// Strict UTF-8 decoding. Overlong forms, surrogates and truncated sequences
// raise std::invalid_argument carrying the offending byte offset.
std::u32string decode_utf8(std::string_view bytes);
std::u32string decode_latin1(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

// Letters (L*) and decimal digits (Nd).
bool is_word_char(char32_t c);
// Simple one-to-one lowercase mapping, so folded text keeps its length.
char32_t fold_case(char32_t c);
std::u32string fold_case(std::u32string_view text);

}  // namespace reqclone
