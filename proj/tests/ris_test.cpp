#include "algosr/ris.hpp"

#include <gtest/gtest.h>

#include "algosr/errors.hpp"
#include "support/generators.hpp"

namespace algosr {
namespace {

Reference ref(std::string title, std::string abstract = "", std::vector<std::string> kws = {}) {
  Reference r;
  r.title = std::move(title);
  r.abstract = std::move(abstract);
  r.keywords = std::move(kws);
  return r;
}

TEST(ParseRis, MinimalRecord) {
  const auto res = ris::parse("TY  - JOUR\nTI  - A\nAB  - x\nKW  - net\nER  - \n");
  ASSERT_EQ(res.references.size(), 1u);
  const auto& r = res.references[0];
  EXPECT_EQ(r.title, "A");
  EXPECT_EQ(r.abstract, "x");
  EXPECT_EQ(r.keywords, std::vector<std::string>{"net"});
  EXPECT_EQ(r.ref_type, "JOUR");
  EXPECT_EQ(res.skipped, 0u);
}

TEST(ParseRis, EmptyInput) {
  EXPECT_TRUE(ris::parse("").references.empty());
  EXPECT_TRUE(ris::parse("\n\n").references.empty());
}

TEST(ParseRis, MissingTerminatorReportsLastLine) {
  try {
    ris::parse("TY  - JOUR\nTI  - A\n");
    FAIL() << "expected MalformedRecord";
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseRis, BadTagLine) {
  try {
    ris::parse("TY  - JOUR\nTI - A\nER  - \n");
    FAIL() << "expected MalformedRecord";
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ris::parse("TI  - outside\n"), MalformedRecord);
  EXPECT_THROW(ris::parse("garbage\n"), MalformedRecord);
  EXPECT_THROW(ris::parse("TY  - JOUR\nTY  - JOUR\nER  - \n"), MalformedRecord);
}

TEST(ParseRis, ContinuationLinesFoldWithOneSpace) {
  const auto res = ris::parse(
      "TY  - JOUR\r\nTI  - Models of urban\r\n   growth and   networks\r\nAB  - "
      "first\nsecond line\nER  -\n");
  ASSERT_EQ(res.references.size(), 1u);
  EXPECT_EQ(res.references[0].title, "Models of urban growth and networks");
  EXPECT_EQ(res.references[0].abstract, "first second line");
}

TEST(ParseRis, UnknownTagsDroppedYearParsed) {
  const auto res = ris::parse(
      "TY  - CONF\nAU  - Someone\nTI  - T\nDO  - 10.1/x\nPY  - 2015///\nER  - \n");
  ASSERT_EQ(res.references.size(), 1u);
  EXPECT_EQ(res.references[0].year, 2015);
  EXPECT_EQ(res.references[0].ref_type, "CONF");
}

TEST(ParseRis, RecordsWithoutTextAreSkipped) {
  const auto res = ris::parse("TY  - JOUR\nKW  - a\nER  - \nTY  - JOUR\nTI  - kept\nER  - \n");
  ASSERT_EQ(res.references.size(), 1u);
  EXPECT_EQ(res.skipped, 1u);
}

TEST(ParseRis, KeywordsNormalizedAndDeduplicated) {
  const auto res = ris::parse("TY  - JOUR\nTI  - T\nKW  - Net\nKW  - net\nKW  -  \nKW  - r\xC3\xA9seau\nER  - \n");
  ASSERT_EQ(res.references.size(), 1u);
  EXPECT_EQ(res.references[0].keywords, (std::vector<std::string>{"Net", "reseau"}));
}

TEST(WriteRis, EmptyCorpus) { EXPECT_EQ(ris::write(Corpus{}), ""); }

TEST(WriteRis, CanonicalLayout) {
  Corpus c;
  Reference r = ref("Zeta model", "Abs", {"k1", "k2"});
  r.year = 2014;
  r.ref_type = "JOUR";
  c.insert(r, 1);
  c.insert(ref("alpha study"), 2);
  EXPECT_EQ(ris::write(c),
            "TY  - GEN\nTI  - alpha study\nER  - \n"
            "TY  - JOUR\nTI  - Zeta model\nAB  - Abs\nKW  - k1\nKW  - k2\nPY  - 2014\nER  - \n");
}

TEST(WriteRis, OneRecordOneTerminator) {
  Corpus c;
  c.insert(ref("only"), 1);
  const std::string out = ris::write(c);
  std::size_t count = 0;
  for (std::size_t p = out.find("ER  - \n"); p != std::string::npos; p = out.find("ER  - \n", p + 1)) ++count;
  EXPECT_EQ(count, 1u);
}

TEST(WriteRis, OutputIsAscii) {
  Corpus c;
  c.insert(ref("R\xC3\xA9seaux urbains \xE4\xB8\xAD"), 1);
  const std::string out = ris::write(c);
  for (char ch : out) EXPECT_LT(static_cast<unsigned char>(ch), 0x80);
  EXPECT_NE(out.find("TI  - Reseaux urbains\n"), std::string::npos);
}

TEST(DedupKey, NormalizesTitle) {
  EXPECT_EQ(dedup_key(ref("Urban Growth!")), dedup_key(ref("urban   growth")));
  EXPECT_EQ(dedup_key(ref("Urban Growth!")).str(), "urban growth");
  EXPECT_NE(dedup_key(ref("model a")), dedup_key(ref("model b")));
}

TEST(DedupKey, AbstractFallback) {
  const auto k = dedup_key(ref("", "x"));
  EXPECT_TRUE(k.str().starts_with("ab:"));
  EXPECT_EQ(k.str().size(), 3u + 16u);
  EXPECT_EQ(k, dedup_key(ref("", "X!")));
  EXPECT_NE(k, dedup_key(ref("", "y")));
}

TEST(Merge, UnionSemantics) {
  auto r1 = ref("study one");
  auto dup = ref("Study One.");
  dup.abstract = "other";
  auto m = merge(Corpus{}, {r1, dup}, 1);
  EXPECT_EQ(m.corpus.size(), 1u);
  EXPECT_EQ(m.added, 1u);
  EXPECT_EQ(m.corpus.find(dedup_key(r1))->abstract, "");  // first writer wins

  auto again = merge(m.corpus, {dup, r1}, 2);
  EXPECT_EQ(again.added, 0u);
  EXPECT_EQ(again.corpus, m.corpus);
  EXPECT_EQ(again.corpus.provenance(dedup_key(r1)), 1);
}

TEST(Merge, InclusionExclusion) {
  Corpus c;
  for (int i = 0; i < 10; ++i) c.insert(ref("ref " + std::to_string(i)), 1);
  std::vector<Reference> batch{ref("ref 3"), ref("new a"), ref("new b"), ref("new c")};
  auto m = merge(c, batch, 2);
  EXPECT_EQ(m.corpus.size(), 13u);
  EXPECT_EQ(m.added, 3u);
}

TEST(Merge, RejectsIterationZero) { EXPECT_THROW(merge(Corpus{}, {}, 0), PreconditionViolation); }

TEST(Merge, SkipsInvalidReferences) {
  auto m = merge(Corpus{}, {ref("  ", "")}, 1);
  EXPECT_EQ(m.corpus.size(), 0u);
}

// Property: parse(write(C)) merged into an empty corpus equals C, and the
// canonical text is a fixpoint; monotone and idempotent merge.
TEST(RisProperty, RoundTripAndFixpoint) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::RefGen g(seed);
    const Corpus c = g.corpus(0, 25);
    const std::string text = ris::write(c);
    const auto parsed = ris::parse(text);
    ASSERT_EQ(parsed.skipped, 0u);
    Corpus back;
    for (const auto& r : parsed.references) back.insert(r, c.provenance(dedup_key(r)));
    ASSERT_EQ(back.size(), c.size()) << "seed " << seed;
    for (const auto& [k, e] : c.entries()) {
      ASSERT_TRUE(e.reference.same_content(*back.find(k))) << "seed " << seed << " key " << k.str();
    }
    ASSERT_EQ(ris::write(back), text);

    const auto batch = g.references(0, 10);
    const auto once = merge(c, batch, 99);
    const auto twice = merge(once.corpus, batch, 100);
    ASSERT_GE(once.corpus.size(), c.size());
    ASSERT_EQ(twice.added, 0u);
    ASSERT_EQ(twice.corpus, once.corpus);
  }
}

TEST(RisProperty, NonAsciiInputReachesCanonicalFixpoint) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::RefGen g(seed, /*ascii_only=*/false);
    Corpus c;
    for (auto& r : g.references(0, 20)) c.insert(r, 1);
    const std::string once = ris::write(c);
    Corpus back;
    for (auto& r : ris::parse(once).references) back.insert(r, 1);
    ASSERT_EQ(ris::write(back), once) << "seed " << seed;
    ASSERT_EQ(back.size(), c.size());
  }
}

}  // namespace
}  // namespace algosr
