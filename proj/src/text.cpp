#include "algosr/text.hpp"

#include <array>
#include <cstdio>

namespace algosr::text {
namespace {

// U+00C0..U+00FF. Empty entries are unmappable (multiplication/division signs).
constexpr std::array<const char*, 64> kLatin1 = {
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O", "",  "O", "U", "U", "U", "U", "Y", "TH", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y"};

struct ExtARange {
  char32_t first;
  char32_t last;
  const char* upper;
  const char* lower;
};

// Latin Extended-A is laid out as alternating upper/lower pairs inside each
// range; the pair parity starts at `first`.
constexpr std::array<ExtARange, 27> kLatinExtA = {{
    {0x100, 0x105, "A", "a"},   {0x106, 0x10D, "C", "c"},   {0x10E, 0x111, "D", "d"},
    {0x112, 0x11B, "E", "e"},   {0x11C, 0x123, "G", "g"},   {0x124, 0x127, "H", "h"},
    {0x128, 0x131, "I", "i"},   {0x132, 0x133, "IJ", "ij"}, {0x134, 0x135, "J", "j"},
    {0x136, 0x137, "K", "k"},   {0x138, 0x138, "k", "k"},   {0x139, 0x142, "L", "l"},
    {0x143, 0x148, "N", "n"},   {0x149, 0x149, "n", "n"},   {0x14A, 0x14B, "N", "n"},
    {0x14C, 0x151, "O", "o"},   {0x152, 0x153, "OE", "oe"}, {0x154, 0x159, "R", "r"},
    {0x15A, 0x161, "S", "s"},   {0x162, 0x167, "T", "t"},   {0x168, 0x173, "U", "u"},
    {0x174, 0x175, "W", "w"},   {0x176, 0x177, "Y", "y"},   {0x178, 0x178, "Y", "Y"},
    {0x179, 0x17E, "Z", "z"},   {0x17F, 0x17F, "s", "s"},   {0x180, 0x180, "b", "b"},
}};

// Returns the ASCII replacement for a non-ASCII code point. nullptr means
// "drop" (combining marks); "" means unmappable and becomes a space.
const char* fold_code_point(char32_t cp) {
  if (cp >= 0x300 && cp <= 0x36F) return nullptr;
  if (cp >= 0xC0 && cp <= 0xFF) return kLatin1[cp - 0xC0];
  for (const auto& r : kLatinExtA) {
    if (cp >= r.first && cp <= r.last) return ((cp - r.first) % 2 == 0) ? r.upper : r.lower;
  }
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201A: case 0x2032: return "'";
    case 0x201C: case 0x201D: case 0x201E: case 0x2033: return "\"";
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2212: return "-";
    case 0x2026: return "...";
    case 0xFB00: return "ff";
    case 0xFB01: return "fi";
    case 0xFB02: return "fl";
    default: return "";
  }
}

// Decodes one code point starting at s[i]; advances i. Returns U+FFFD on
// malformed input (consuming one byte).
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  int len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    ++i;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string fold_ascii(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const char32_t cp = decode_utf8(utf8, i);
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    if (cp == 0xA0) {
      out.push_back(' ');
      continue;
    }
    const char* rep = fold_code_point(cp);
    if (rep == nullptr) continue;
    if (*rep == '\0') {
      out.push_back(' ');
    } else {
      out += rep;
    }
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string normalize_key_text(std::string_view s) {
  std::string folded = to_lower_ascii(fold_ascii(s));
  for (char& c : folded) {
    if (!is_ascii_alnum(c)) c = ' ';
  }
  return collapse_whitespace(folded);
}

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace algosr::text
