#pragma once

#include <string>
#include <string_view>

namespace osn::unicode {

bool is_valid_utf8(std::string_view text);

// NFC form of a UTF-8 string. Throws osn::Error on invalid UTF-8.
std::string nfc(std::string_view text);

// True if any code point is Unicode white space.
bool contains_whitespace(std::string_view text);

}  // namespace osn::unicode
