#pragma once

#include <string>
#include <string_view>

namespace mka {

// Decode UTF-8 into Unicode scalar values. Invalid byte sequences decode to
// U+FFFD, one replacement per offending byte.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);

// Trim ASCII whitespace from both ends.
std::string trim(std::string_view text);

}  // namespace mka
