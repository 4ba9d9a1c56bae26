#pragma once

#include <string>
#include <string_view>

namespace reqclone {

// Porter (1980) suffix stripping, exactly as published: no length guard for
// short words and no later "departures" (logi -> log, bli -> ble).
// Input is expected lowercase; characters other than a-z count as consonants.
std::u32string porter_stem(std::u32string_view word);

// Snowball German stemmer (3.x rules): ß -> ss, ae/oe/ue -> umlauts,
// R1/R2 suffix removal, umlauts folded to their base vowels at the end.
std::u32string german_stem(std::u32string_view word);

}  // namespace reqclone
