#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace algosr::text {

/// Decodes UTF-8 and maps every code point to ASCII. Latin letters with
/// diacritics lose them (e -> e, ss for sharp s, oe/ae ligatures), combining
/// marks vanish, typographic quotes and dashes map to their ASCII forms, and
/// anything else outside ASCII becomes a space. Case is preserved. Invalid
/// byte sequences are treated as unmappable.
std::string fold_ascii(std::string_view utf8);

/// Trims and collapses runs of ASCII whitespace (including CR/LF/TAB) to a
/// single space.
std::string collapse_whitespace(std::string_view s);

std::string to_lower_ascii(std::string_view s);

/// Lowercase, ASCII-folded, non-alphanumerics replaced by spaces, whitespace
/// collapsed. Keeps digits and single characters.
std::string normalize_key_text(std::string_view s);

/// 64-bit FNV-1a. Stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view s) noexcept;

std::string hex16(std::uint64_t v);

inline bool is_ascii_alnum(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace algosr::text
