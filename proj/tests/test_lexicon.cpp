#include <gtest/gtest.h>

#include <sstream>

#include "plotarc/lexicon.hpp"

using namespace plotarc;

namespace {

// Canonical column order: anger anticipation disgust fear joy negative positive sadness surprise trust
const char* kTable1 =
    "verabscheuen\t1\t0\t1\t1\t0\t1\t0\t0\t0\t0\n"
    "bewundernswert\t0\t0\t0\t0\t1\t0\t1\t0\t0\t1\n"
    "Zufall\t0\t0\t0\t0\t0\t0\t0\t0\t1\t0\n";

SentimentVector expect(std::initializer_list<std::pair<Dimension, double>> set) {
  SentimentVector v;
  for (auto [d, x] : set) v[d] = x;
  return v;
}

}  // namespace

TEST(DerivePolarity, SubtractsNegativeFromPositive) {
  EXPECT_EQ(derive_polarity(1, 0), 1);
  EXPECT_EQ(derive_polarity(0, 1), -1);
  EXPECT_EQ(derive_polarity(0, 0), 0);
}

TEST(ParseLexicon, ExampleRowsMatchExactly) {
  const auto lex = parse_lexicon(std::string_view(kTable1));
  ASSERT_EQ(lex.size(), 3u);
  using D = Dimension;
  EXPECT_EQ(*lex.lookup("verabscheuen"),
            expect({{D::negative, 1}, {D::polarity, -1}, {D::anger, 1}, {D::disgust, 1}, {D::fear, 1}}));
  EXPECT_EQ(*lex.lookup("bewundernswert"),
            expect({{D::positive, 1}, {D::polarity, 1}, {D::joy, 1}, {D::trust, 1}}));
  EXPECT_EQ(*lex.lookup("Zufall"), expect({{D::surprise, 1}}));
}

TEST(ParseLexicon, EmptyStreamGivesEmptyLexicon) {
  const auto lex = parse_lexicon(std::string_view(""));
  EXPECT_EQ(lex.size(), 0u);
  EXPECT_TRUE(lex.empty());
}

TEST(ParseLexicon, NonBinaryValueNamesLine) {
  const std::string bad = std::string(kTable1) + "Tod\t1\t0\t2\t1\t0\t1\t0\t1\t0\t0\n";
  try {
    parse_lexicon(std::string_view(bad));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(ParseLexicon, NonBinaryOnFirstRowIsAnUnknownHeader) {
  EXPECT_THROW(parse_lexicon(std::string_view("Tod\t1\t0\t2\t1\t0\t1\t0\t1\t0\t0\n")), ParseError);
}

TEST(ParseLexicon, DuplicateLemmaIsAnError) {
  const std::string dup = std::string(kTable1) + "Zufall\t0\t0\t0\t0\t0\t0\t0\t0\t1\t0\n";
  try {
    parse_lexicon(std::string_view(dup));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseLexicon, WrongColumnCountIsAnError) {
  EXPECT_THROW(parse_lexicon(std::string_view("Zufall\t0\t0\t1\n")), ParseError);
}

TEST(ParseLexicon, HeaderRemapsColumnOrder) {
  const char* src =
      "word\tPositive\tNegative\tAnger\tAnticipation\tDisgust\tFear\tJoy\tSadness\tSurprise\tTrust\n"
      "bewundernswert\t1\t0\t0\t0\t0\t0\t1\t0\t0\t1\n";
  const auto lex = parse_lexicon(std::string_view(src));
  ASSERT_EQ(lex.size(), 1u);
  const auto v = *lex.lookup("bewundernswert");
  EXPECT_EQ(v[Dimension::positive], 1.0);
  EXPECT_EQ(v[Dimension::negative], 0.0);
  EXPECT_EQ(v[Dimension::polarity], 1.0);
  EXPECT_EQ(v[Dimension::joy], 1.0);
  EXPECT_EQ(v[Dimension::trust], 1.0);
  EXPECT_EQ(v[Dimension::anger], 0.0);
}

TEST(ParseLexicon, GermanHeaderNames) {
  const char* src =
      "lemma\tWut\tErwartung\tEkel\tAngst\tFreude\tnegativ\tpositiv\tTraurigkeit\t\xC3\xBC" "berraschung\tVertrauen\n"
      "Zufall\t0\t0\t0\t0\t0\t0\t0\t0\t1\t0\n";
  EXPECT_EQ((*parse_lexicon(std::string_view(src)).lookup("Zufall"))[Dimension::surprise], 1.0);
}

TEST(ParseLexicon, HeaderWithUnknownOrRepeatedNameFails) {
  EXPECT_THROW(parse_lexicon(std::string_view(
                   "lemma\tanger\tanticipation\tdisgust\tfear\tjoy\tnegative\tpositive\tsadness\tsurprise\tpolarity\n")),
               ParseError);
  EXPECT_THROW(parse_lexicon(std::string_view(
                   "lemma\tanger\tanger\tdisgust\tfear\tjoy\tnegative\tpositive\tsadness\tsurprise\ttrust\n")),
               ParseError);
}

TEST(ParseLexicon, CrlfAndBomAndBlankLinesTolerated) {
  const std::string src = "\xEF\xBB\xBFZufall\t0\t0\t0\t0\t0\t0\t0\t0\t1\t0\r\n\r\nTod\t1\t0\t1\t1\t0\t1\t0\t1\t0\t0\r\n";
  const auto lex = parse_lexicon(std::string_view(src));
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_TRUE(lex.lookup("Zufall"));
}

TEST(ParseLexicon, InvalidUtf8Rejected) {
  EXPECT_THROW(parse_lexicon(std::string_view("Zuf\xFF" "all\t0\t0\t0\t0\t0\t0\t0\t0\t1\t0\n")), ParseError);
}

TEST(ParseLexicon, LemmasAreNfcNormalized) {
  // "Glu" + combining diaeresis + "ck" is stored and found as precomposed "Glück".
  const auto lex = parse_lexicon(std::string_view("Glu\xCC\x88" "ck\t0\t1\t0\t0\t1\t0\t1\t0\t0\t0\n"));
  EXPECT_TRUE(lex.lookup("Gl\xC3\xBC" "ck"));
  // A precomposed and a decomposed spelling of the same lemma collide.
  EXPECT_THROW(parse_lexicon(std::string_view("Glu\xCC\x88" "ck\t0\t1\t0\t0\t1\t0\t1\t0\t0\t0\n"
                                              "Gl\xC3\xBC" "ck\t0\t1\t0\t0\t1\t0\t1\t0\t0\t0\n")),
               ParseError);
}

TEST(Lookup, ExactCaseSensitiveMatch) {
  const auto lex = parse_lexicon(std::string_view(kTable1));
  EXPECT_FALSE(lex.lookup("xyzzy"));
  EXPECT_FALSE(lex.lookup("zufall"));
  EXPECT_EQ(lex.find("xyzzy"), nullptr);
}

TEST(Lexicon, PolarityInvariantAndRoundTrip) {
  const auto lex = builtin_toy_lexicon();
  for (const auto& [lemma, v] : lex) {
    EXPECT_EQ(v[Dimension::polarity], v[Dimension::positive] - v[Dimension::negative]) << lemma;
  }
  const auto again = parse_lexicon(std::string_view(serialize_lexicon(lex)));
  ASSERT_EQ(again.size(), lex.size());
  for (const auto& [lemma, v] : lex) EXPECT_EQ(*again.lookup(lemma), v) << lemma;
  EXPECT_EQ(lexicon_checksum(again), lexicon_checksum(lex));
}

TEST(Lexicon, AddRejectsInconsistentVectors) {
  SentimentLexicon lex;
  SentimentVector v = make_entry(1, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  v[Dimension::polarity] = 0;
  EXPECT_THROW(lex.add("x", v), ParseError);
  SentimentVector half = make_entry(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  half[Dimension::joy] = 0.5;
  EXPECT_THROW(lex.add("y", half), ParseError);
}

TEST(Lexicon, LoadMissingFileNamesPath) {
  try {
    load_lexicon("/nonexistent/lexicon.tsv");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/lexicon.tsv"), std::string::npos);
  }
}
