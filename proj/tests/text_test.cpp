#include "algosr/text.hpp"

#include <gtest/gtest.h>

namespace algosr::text {
namespace {

TEST(FoldAscii, StripsDiacritics) {
  EXPECT_EQ(fold_ascii("R\xC3\xA9seaux"), "Reseaux");
  EXPECT_EQ(fold_ascii("G\xC3\xA9ographie-cit\xC3\xA9s"), "Geographie-cites");
  EXPECT_EQ(fold_ascii("Stra\xC3\x9F" "e"), "Strasse");
  EXPECT_EQ(fold_ascii("\xC5\x92uvre \xC5\x81\xC3\xB3\x64\xC5\xBA"), "OEuvre Lodz");
}

TEST(FoldAscii, CombiningMarksVanish) {
  EXPECT_EQ(fold_ascii("e\xCC\x81t\xC3\xA9"), "ete");
}

TEST(FoldAscii, UnmappableBecomesSpace) {
  EXPECT_EQ(fold_ascii("a\xE4\xB8\xAD" "b"), "a b");
  EXPECT_EQ(fold_ascii("x\xFFy"), "x y");
  EXPECT_EQ(fold_ascii("\xE2\x80\x9Cquoted\xE2\x80\x9D"), "\"quoted\"");
}

TEST(NormalizeKeyText, CollapsesPunctuationAndCase) {
  EXPECT_EQ(normalize_key_text("Urban Growth!"), "urban growth");
  EXPECT_EQ(normalize_key_text("  urban\t\tgrowth "), "urban growth");
  EXPECT_EQ(normalize_key_text("Land-Use"), "land use");
  EXPECT_EQ(normalize_key_text("!!!"), "");
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex16(0xabcULL), "0000000000000abc");
}

}  // namespace
}  // namespace algosr::text
