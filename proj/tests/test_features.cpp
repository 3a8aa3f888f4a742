#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "oracle.hpp"
#include "plotarc/features.hpp"
#include "plotarc/lexicon.hpp"
#include "plotarc/profile_cache.hpp"
#include "plotarc/rng.hpp"

using namespace plotarc;

namespace {

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

SentimentLexicon table1() {
  SentimentLexicon lex;
  //                                        pos neg ang ant dis fea joy sad sur tru
  lex.add("verabscheuen", make_entry(0, 1, 1, 0, 1, 1, 0, 0, 0, 0));
  lex.add("bewundernswert", make_entry(1, 0, 0, 0, 0, 0, 1, 0, 0, 1));
  lex.add("Zufall", make_entry(0, 0, 0, 0, 0, 0, 0, 0, 1, 0));
  return lex;
}

SegmentProfile random_profile(Rng& rng, std::size_t n, const std::string& id = "p") {
  SegmentProfile p;
  p.novel_id = id;
  for (std::size_t s = 0; s < n; ++s) {
    SentimentVector v;
    for (std::size_t d = 0; d < kDimensions; ++d) v[d] = rng.unit();
    v[Dimension::polarity] = v[Dimension::positive] - v[Dimension::negative];
    p.segments.push_back(v);
    p.matched_counts.push_back(rng.below(20));
  }
  return p;
}

SegmentProfile constant_profile(std::size_t n) {
  SegmentProfile p;
  p.novel_id = "const";
  SentimentVector v;
  for (std::size_t d = 0; d < kDimensions; ++d) v[d] = 0.125 * double(d + 1);
  v[Dimension::polarity] = v[Dimension::positive] - v[Dimension::negative];
  p.segments.assign(n, v);
  p.matched_counts.assign(n, 3);
  return p;
}

}  // namespace

TEST(Segment, ExactDivision) {
  const auto lemmas = numbered(750);
  const auto blocks = segment(lemmas, 75);
  ASSERT_EQ(blocks.size(), 75u);
  for (const auto& b : blocks) EXPECT_EQ(b.size(), 10u);
}

TEST(Segment, RemainderGoesToEarliestBlocks) {
  const auto lemmas = numbered(77);
  const auto blocks = segment(lemmas, 75);
  ASSERT_EQ(blocks.size(), 75u);
  EXPECT_EQ(blocks[0].size(), 2u);
  EXPECT_EQ(blocks[1].size(), 2u);
  for (std::size_t i = 2; i < 75; ++i) EXPECT_EQ(blocks[i].size(), 1u);
  std::vector<std::string> joined;
  for (const auto& b : blocks) joined.insert(joined.end(), b.begin(), b.end());
  EXPECT_EQ(joined, lemmas);
}

TEST(Segment, TooFewLemmasNamesNovel) {
  const auto lemmas = numbered(74);
  try {
    segment(lemmas, 75, "verne");
    FAIL();
  } catch (const SegmentationError& e) {
    EXPECT_NE(std::string(e.what()).find("verne"), std::string::npos);
  }
}

TEST(Segment, RandomLengthsAgreeWithOracle) {
  Rng rng(99);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + int(rng.below(100));
    const int len = n + int(rng.below(500));
    const auto bounds = segment_bounds(std::size_t(len), std::size_t(n));
    const auto seg = oracle::segment_of_token(len, n);
    for (int s = 0; s < n; ++s)
      for (std::size_t i = bounds[s].begin; i < bounds[s].end; ++i) ASSERT_EQ(seg[i], s);
  }
}

TEST(SegmentSentiment, SingleMatch) {
  const auto lex = table1();
  const std::vector<std::string> block = {"Zufall"};
  const auto s = segment_sentiment(block, lex);
  SentimentVector expected;
  expected[Dimension::surprise] = 1.0;
  EXPECT_EQ(s.mean, expected);
  EXPECT_EQ(s.matched, 1u);
}

TEST(SegmentSentiment, TwoRowsAveraged) {
  const auto lex = table1();
  const std::vector<std::string> block = {"verabscheuen", "bewundernswert"};
  const auto s = segment_sentiment(block, lex);
  SentimentVector e;
  e[Dimension::positive] = 0.5;
  e[Dimension::negative] = 0.5;
  e[Dimension::polarity] = 0.0;
  e[Dimension::anger] = 0.5;
  e[Dimension::disgust] = 0.5;
  e[Dimension::fear] = 0.5;
  e[Dimension::joy] = 0.5;
  e[Dimension::trust] = 0.5;
  EXPECT_EQ(s.mean, e);
  EXPECT_EQ(s.matched, 2u);
}

TEST(SegmentSentiment, OovOnlyGivesZeroVector) {
  const auto lex = table1();
  const std::vector<std::string> block = {"und", "dann", "xyzzy"};
  const auto s = segment_sentiment(block, lex);
  EXPECT_EQ(s.mean, SentimentVector{});
  EXPECT_EQ(s.matched, 0u);
}

TEST(SegmentSentiment, AllTokensPolicyDividesByBlockSize) {
  const auto lex = table1();
  const std::vector<std::string> block = {"Zufall", "und", "dann", "so"};
  const auto s = segment_sentiment(block, lex, OovPolicy::all_tokens);
  EXPECT_EQ(s.mean[Dimension::surprise], 0.25);
  EXPECT_EQ(s.matched, 1u);
}

TEST(SectionMeans, FourSegmentFinalSection) {
  Rng rng(3);
  const auto p = random_profile(rng, 75);
  const SectionPartition part{75, 4, 0};
  const auto m = section_means(p, part);
  SentimentVector main, fin;
  for (int s = 0; s < 71; ++s) main += p.segments[s];
  for (int s = 71; s < 75; ++s) fin += p.segments[s];
  main /= 71.0;
  fin /= 4.0;
  for (std::size_t d = 0; d < kDimensions; ++d) {
    if (d == static_cast<std::size_t>(Dimension::polarity)) continue;
    EXPECT_DOUBLE_EQ(m.main[d], main[d]);
    EXPECT_DOUBLE_EQ(m.final[d], fin[d]);
  }
  EXPECT_FALSE(m.late);
}

TEST(SectionMeans, SingleSegmentFinalIsExact) {
  Rng rng(4);
  const auto p = random_profile(rng, 75);
  EXPECT_EQ(section_means(p, {75, 1, 0}).final, p.segments.back());
}

TEST(SectionMeans, ConstantProfileAllEqual) {
  const auto p = constant_profile(75);
  const auto m = section_means(p, {75, 5, 7});
  EXPECT_EQ(m.main, m.final);
  ASSERT_TRUE(m.late);
  EXPECT_EQ(*m.late, m.final);
}

TEST(SectionMeans, PolarityStaysPositiveMinusNegative) {
  Rng rng(5);
  for (int round = 0; round < 50; ++round) {
    const auto p = random_profile(rng, 75);
    const std::size_t fl = 1 + rng.below(30), ll = 1 + rng.below(30);
    const auto m = section_means(p, {75, fl, ll});
    for (const auto* v : {&m.main, &m.final, &*m.late})
      EXPECT_EQ((*v)[Dimension::polarity], (*v)[Dimension::positive] - (*v)[Dimension::negative]);
  }
}

TEST(SectionMeans, InconsistentPartitionRejected) {
  Rng rng(6);
  const auto p = random_profile(rng, 75);
  EXPECT_THROW(section_means(p, {60, 4, 4}), ConfigError);
  EXPECT_THROW(section_means(p, {75, 0, 0}), ConfigError);
  EXPECT_THROW(section_means(p, {75, 75, 0}), ConfigError);
  EXPECT_THROW(section_means(p, {75, 40, 40}), ConfigError);
}

TEST(BuildFeatures, DimensionsPerSet) {
  Rng rng(8);
  const auto p = random_profile(rng, 75);
  const std::size_t dims[] = {0, 11, 22, 11, 22, 33, 44};
  for (int id = 1; id <= 6; ++id) {
    const auto fv = build_features(p, {75, 4, 4}, id, Label::happy);
    EXPECT_EQ(fv.values.size(), dims[id]) << id;
    EXPECT_EQ(fv.feature_set_id, id);
    EXPECT_EQ(fv.label, Label::happy);
  }
}

TEST(BuildFeatures, SetOneIsLastSegment) {
  Rng rng(9);
  const auto p = random_profile(rng, 75);
  const auto fv = build_features(p, {75, 4, 4}, 1, Label::happy);
  EXPECT_TRUE(std::equal(fv.values.begin(), fv.values.end(), p.segments.back().values.begin()));
}

TEST(BuildFeatures, SetSixBlockLayout) {
  Rng rng(10);
  const auto p = random_profile(rng, 75);
  const SectionPartition part{75, 4, 4};
  const auto m = section_means(p, part);
  const auto v = feature_values(p, part, 6);
  ASSERT_EQ(v.size(), 44u);
  for (std::size_t d = 0; d < kDimensions; ++d) {
    EXPECT_EQ(v[d], m.final[d]);
    EXPECT_EQ(v[11 + d], m.final[d] - m.main[d]);
    EXPECT_EQ(v[22 + d], m.final[d] - (*m.late)[d]);
    EXPECT_EQ(v[33 + d], p.segments.back()[d]);
  }
}

TEST(BuildFeatures, SetThreeEqualsSetOneWhenFinalLenIsOne) {
  Rng rng(11);
  const auto p = random_profile(rng, 75);
  EXPECT_EQ(feature_values(p, {75, 1, 0}, 3), feature_values(p, {75, 1, 0}, 1));
}

TEST(BuildFeatures, ConstantProfileDifferenceBlocksVanish) {
  const auto p = constant_profile(75);
  for (std::size_t fl : {1u, 4u, 10u, 30u}) {
    const SectionPartition part{75, fl, fl};
    for (int id : {2, 4, 5, 6}) {
      const auto v = feature_values(p, part, id);
      const std::size_t diff_end = id == 6 ? 33 : v.size();
      for (std::size_t i = 11; i < diff_end; ++i) EXPECT_EQ(v[i], 0.0) << "set " << id << " index " << i;
    }
  }
}

TEST(BuildFeatures, Errors) {
  Rng rng(12);
  const auto p = random_profile(rng, 75);
  EXPECT_THROW(build_features(p, {75, 4, 4}, 0, Label::happy), ConfigError);
  EXPECT_THROW(build_features(p, {75, 4, 4}, 7, Label::happy), ConfigError);
  EXPECT_THROW(build_features(p, {75, 4, 0}, 5, Label::happy), ConfigError);
  EXPECT_THROW(build_features(p, {75, 4, 0}, 6, Label::happy), ConfigError);
  EXPECT_NO_THROW(build_features(p, {75, 4, 0}, 4, Label::happy));
}

TEST(BuildFeatures, PureFunction) {
  Rng rng(13);
  const auto p = random_profile(rng, 75);
  for (int id = 1; id <= 6; ++id) EXPECT_EQ(build_features(p, {75, 6, 3}, id, Label::unhappy), build_features(p, {75, 6, 3}, id, Label::unhappy));
}

TEST(Featurize, MatchesBruteForceOnRandomNovels) {
  const std::vector<oracle::RawEntry> raw = {
      {"Liebe", 1, 0, 0, 0, 0, 0, 1, 0, 0, 1}, {"Tod", 0, 1, 1, 1, 1, 1, 0, 1, 1, 0},
      {"Zufall", 0, 0, 0, 0, 0, 0, 0, 0, 1, 0}, {"Krieg", 0, 1, 1, 0, 1, 1, 0, 1, 0, 0},
  };
  SentimentLexicon lex;
  for (const auto& e : raw)
    lex.add(e.lemma, make_entry(e.pos, e.neg, e.anger, e.antic, e.disgust, e.fear, e.joy, e.sadness, e.surprise, e.trust));
  const auto table = oracle::table(raw);
  const std::vector<std::string> vocab = {"Liebe", "Tod", "Zufall", "Krieg", "und", "der", "Haus"};
  Rng rng(21);
  for (int round = 0; round < 10; ++round) {
    Novel novel;
    novel.metadata.id = "n" + std::to_string(round);
    const std::size_t len = 20 + rng.below(300);
    for (std::size_t i = 0; i < len; ++i) novel.lemmas.push_back(vocab[rng.below(vocab.size())]);
    const std::size_t n = 10 + rng.below(10);
    const auto profile = build_profile(novel, lex, n);
    const auto expected = oracle::segment_means(novel.lemmas, int(n), table);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t d = 0; d < kDimensions; ++d) EXPECT_NEAR(profile.segments[s][d], expected[s][d], 1e-12);
    for (int id = 1; id <= 6; ++id) {
      const auto got = feature_values(profile, {n, 3, 2}, id);
      const auto want = oracle::features(expected, 3, 2, id);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
    }
  }
}

TEST(ProfileCache, RoundTripsExactly) {
  Rng rng(14);
  std::vector<SegmentProfile> profiles = {random_profile(rng, 75, "a"), random_profile(rng, 75, "b")};
  const std::string csv = serialize_profiles(profiles);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 151);
  std::istringstream in(csv);
  EXPECT_EQ(parse_profiles(in), profiles);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "novel_id,segment_index,positive,negative,polarity,anger,anticipation,disgust,fear,joy,sadness,surprise,"
            "trust,matched_count");
}

TEST(ProfileCache, RejectsMalformedRows) {
  std::istringstream wrong_header("id,x\n");
  EXPECT_THROW(parse_profiles(wrong_header), ParseError);
  std::istringstream out_of_order(profile_cache_header() + "\na,1,0,0,0,0,0,0,0,0,0,0,0,0\n");
  EXPECT_THROW(parse_profiles(out_of_order), ParseError);
  std::istringstream bad_number(profile_cache_header() + "\na,0,x,0,0,0,0,0,0,0,0,0,0,0\n");
  EXPECT_THROW(parse_profiles(bad_number), ParseError);
}
