#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plotarc/corpus.hpp"
#include "plotarc/error.hpp"
#include "plotarc/lexicon.hpp"
#include "plotarc/parallel.hpp"
#include "plotarc/sentiment.hpp"

namespace plotarc {

inline constexpr std::size_t kDefaultSegments = 75;

// Half-open token range [begin, end).
struct Block {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const Block&, const Block&) = default;
};

// Splits `count` tokens into n contiguous blocks. With count = q*n + r the
// first r blocks hold q+1 tokens and the rest q.
inline std::vector<Block> segment_bounds(std::size_t count, std::size_t n_segments, std::string_view novel_id = {}) {
  if (n_segments == 0) throw ConfigError("number of segments must be positive");
  if (count < n_segments) {
    std::string who = novel_id.empty() ? std::string("novel") : "novel '" + std::string(novel_id) + "'";
    throw SegmentationError(who + " has " + std::to_string(count) + " tokens, fewer than " +
                            std::to_string(n_segments) + " segments");
  }
  const std::size_t q = count / n_segments;
  const std::size_t r = count % n_segments;
  std::vector<Block> blocks;
  blocks.reserve(n_segments);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n_segments; ++i) {
    const std::size_t len = q + (i < r ? 1 : 0);
    blocks.push_back({pos, pos + len});
    pos += len;
  }
  return blocks;
}

inline std::vector<std::span<const std::string>> segment(std::span<const std::string> lemmas,
                                                         std::size_t n_segments = kDefaultSegments,
                                                         std::string_view novel_id = {}) {
  std::vector<std::span<const std::string>> out;
  for (const Block& b : segment_bounds(lemmas.size(), n_segments, novel_id))
    out.push_back(lemmas.subspan(b.begin, b.size()));
  return out;
}

// Denominator of a segment average: lexicon-matched tokens only, or every
// token in the segment.
enum class OovPolicy { matched_only, all_tokens };

inline std::string_view oov_policy_name(OovPolicy p) {
  return p == OovPolicy::matched_only ? "matched-only" : "all-tokens";
}

struct SegmentScore {
  SentimentVector mean;
  std::size_t matched = 0;
};

inline SegmentScore segment_sentiment(std::span<const std::string> block, const SentimentLexicon& lexicon,
                                      OovPolicy policy = OovPolicy::matched_only) {
  SegmentScore score;
  for (const auto& lemma : block) {
    if (const auto* v = lexicon.find(lemma)) {
      score.mean += *v;
      ++score.matched;
    }
  }
  const std::size_t denom = policy == OovPolicy::matched_only ? score.matched : block.size();
  if (denom == 0) return score;
  score.mean /= static_cast<double>(denom);
  score.mean[Dimension::polarity] = score.mean[Dimension::positive] - score.mean[Dimension::negative];
  return score;
}

struct SegmentProfile {
  std::string novel_id;
  std::vector<SentimentVector> segments;
  std::vector<std::size_t> matched_counts;

  std::size_t n_segments() const { return segments.size(); }
  friend bool operator==(const SegmentProfile&, const SegmentProfile&) = default;
};

inline SegmentProfile build_profile(const Novel& novel, const SentimentLexicon& lexicon,
                                    std::size_t n_segments = kDefaultSegments,
                                    OovPolicy policy = OovPolicy::matched_only) {
  SegmentProfile profile;
  profile.novel_id = novel.metadata.id;
  profile.segments.reserve(n_segments);
  profile.matched_counts.reserve(n_segments);
  for (const auto& block : segment(novel.lemmas, n_segments, novel.metadata.id)) {
    const SegmentScore s = segment_sentiment(block, lexicon, policy);
    profile.segments.push_back(s.mean);
    profile.matched_counts.push_back(s.matched);
  }
  return profile;
}

inline std::vector<SegmentProfile> build_profiles(const Corpus& corpus, const SentimentLexicon& lexicon,
                                                  std::size_t n_segments = kDefaultSegments,
                                                  OovPolicy policy = OovPolicy::matched_only,
                                                  std::size_t jobs = 1) {
  std::vector<SegmentProfile> profiles(corpus.total());
  parallel_for(jobs, corpus.total(), [&](std::size_t i) {
    profiles[i] = build_profile(corpus.novels()[i], lexicon, n_segments, policy);
  });
  return profiles;
}

// main = [0, n - final_len), final = last final_len segments, late-main = the
// late_len segments directly before the final section.
struct SectionPartition {
  std::size_t n_segments = kDefaultSegments;
  std::size_t final_len = 1;
  std::size_t late_len = 0;

  std::size_t main_len() const { return n_segments - final_len; }

  // The main section must keep at least one segment so that difference
  // blocks are defined.
  void validate() const {
    if (final_len < 1) throw ConfigError("final section needs at least one segment");
    if (final_len >= n_segments)
      throw ConfigError("final_len " + std::to_string(final_len) + " leaves no main section in " +
                        std::to_string(n_segments) + " segments");
    if (final_len + late_len > n_segments)
      throw ConfigError("final_len + late_len exceeds " + std::to_string(n_segments) + " segments");
  }

  friend bool operator==(const SectionPartition&, const SectionPartition&) = default;
};

struct SectionMeans {
  SentimentVector main;
  std::optional<SentimentVector> late;  // absent when late_len == 0
  SentimentVector final;
};

namespace detail {

// Unweighted mean of segments [begin, end); polarity re-derived so the
// positive - negative identity holds exactly.
inline SentimentVector mean_of(std::span<const SentimentVector> segs, std::size_t begin, std::size_t end) {
  SentimentVector m;
  for (std::size_t i = begin; i < end; ++i) m += segs[i];
  m /= static_cast<double>(end - begin);
  m[Dimension::polarity] = m[Dimension::positive] - m[Dimension::negative];
  return m;
}

}  // namespace detail

inline SectionMeans section_means(const SegmentProfile& profile, const SectionPartition& partition) {
  partition.validate();
  if (profile.n_segments() != partition.n_segments)
    throw ConfigError("partition is for " + std::to_string(partition.n_segments) + " segments but profile of '" +
                      profile.novel_id + "' has " + std::to_string(profile.n_segments()));
  const std::size_t n = partition.n_segments;
  const std::size_t final_begin = n - partition.final_len;
  SectionMeans out;
  out.main = detail::mean_of(profile.segments, 0, final_begin);
  out.final = detail::mean_of(profile.segments, final_begin, n);
  if (partition.late_len > 0) out.late = detail::mean_of(profile.segments, final_begin - partition.late_len, final_begin);
  return out;
}

inline constexpr int kMinFeatureSet = 1;
inline constexpr int kMaxFeatureSet = 6;

inline std::size_t feature_set_dimension(int feature_set_id) {
  static constexpr std::size_t blocks[] = {0, 1, 2, 1, 2, 3, 4};
  if (feature_set_id < kMinFeatureSet || feature_set_id > kMaxFeatureSet)
    throw ConfigError("feature set must be in 1..6, got " + std::to_string(feature_set_id));
  return blocks[feature_set_id] * kDimensions;
}

struct FeatureVector {
  std::string novel_id;
  int feature_set_id = 1;
  std::vector<double> values;
  Label label = Label::unhappy;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Block layout per feature set, each block 11 values in canonical order:
//   1: last segment
//   2: last segment, last segment - mean(all other segments)
//   3: final section
//   4: final section, final - main
//   5: final section, final - main, final - late-main
//   6: set 5 followed by the last segment
// Sets 1 and 2 always treat the last segment alone as the ending, so they do
// not depend on the partition. Difference blocks are (final - other).
inline std::vector<double> feature_values(const SegmentProfile& profile, const SectionPartition& partition,
                                          int feature_set_id) {
  const std::size_t dim = feature_set_dimension(feature_set_id);
  if (feature_set_id >= 5 && partition.late_len == 0)
    throw ConfigError("feature set " + std::to_string(feature_set_id) + " requires late_len >= 1");
  std::vector<double> out;
  out.reserve(dim);
  auto append = [&](const SentimentVector& v) { out.insert(out.end(), v.values.begin(), v.values.end()); };

  if (feature_set_id <= 2) {
    const SectionPartition last_only{partition.n_segments, 1, 0};
    const SectionMeans m = section_means(profile, last_only);
    append(m.final);
    if (feature_set_id == 2) append(m.final - m.main);
    return out;
  }
  const SectionMeans m = section_means(profile, partition);
  append(m.final);
  if (feature_set_id >= 4) append(m.final - m.main);
  if (feature_set_id >= 5) append(m.final - *m.late);
  if (feature_set_id == 6) append(profile.segments.back());
  return out;
}

inline FeatureVector build_features(const SegmentProfile& profile, const SectionPartition& partition,
                                    int feature_set_id, Label label) {
  return {profile.novel_id, feature_set_id, feature_values(profile, partition, feature_set_id), label};
}

}  // namespace plotarc
