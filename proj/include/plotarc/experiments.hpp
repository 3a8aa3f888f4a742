#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plotarc/classifier.hpp"
#include "plotarc/corpus.hpp"
#include "plotarc/error.hpp"
#include "plotarc/features.hpp"
#include "plotarc/lexicon.hpp"
#include "plotarc/parallel.hpp"
#include "plotarc/text_table.hpp"

namespace plotarc {

struct ExperimentConfig {
  std::size_t n_segments = kDefaultSegments;
  std::size_t final_len = 4;
  std::size_t late_len = 4;
  OovPolicy oov_policy = OovPolicy::matched_only;
  CvConfig cv;

  SectionPartition partition() const { return {n_segments, final_len, late_len}; }
};

// Segment profiles of a corpus together with the metadata the experiments
// need and the checksums of the inputs they were built from.
struct ProfiledCorpus {
  std::vector<SegmentProfile> profiles;
  std::vector<NovelMetadata> metadata;
  std::string corpus_checksum;
  std::string lexicon_checksum;

  std::size_t size() const { return profiles.size(); }
};

inline ProfiledCorpus profile_corpus(const Corpus& corpus, const SentimentLexicon& lexicon,
                                     std::size_t n_segments = kDefaultSegments,
                                     OovPolicy policy = OovPolicy::matched_only, std::size_t jobs = 1) {
  ProfiledCorpus pc;
  pc.profiles = build_profiles(corpus, lexicon, n_segments, policy, jobs);
  for (const auto& n : corpus.novels()) pc.metadata.push_back(n.metadata);
  pc.corpus_checksum = corpus_checksum(corpus);
  pc.lexicon_checksum = lexicon_checksum(lexicon);
  return pc;
}

// Restricts a profiled corpus to the given row indices, keeping checksums.
inline ProfiledCorpus subset(const ProfiledCorpus& pc, std::span<const std::size_t> rows) {
  ProfiledCorpus out;
  out.corpus_checksum = pc.corpus_checksum;
  out.lexicon_checksum = pc.lexicon_checksum;
  for (std::size_t i : rows) {
    out.profiles.push_back(pc.profiles.at(i));
    out.metadata.push_back(pc.metadata.at(i));
  }
  return out;
}

inline std::vector<Label> labels_of(const ProfiledCorpus& pc) {
  std::vector<Label> y;
  for (const auto& m : pc.metadata) y.push_back(m.label);
  return y;
}

inline std::vector<FeatureVector> feature_rows(const ProfiledCorpus& pc, const SectionPartition& partition,
                                               int feature_set_id) {
  std::vector<FeatureVector> rows;
  rows.reserve(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i)
    rows.push_back(build_features(pc.profiles[i], partition, feature_set_id, pc.metadata[i].label));
  return rows;
}

// ---------------------------------------------------------------- baselines

struct Baselines {
  double random_accuracy = 0.5;  // uniform coin, independent of class balance
  double majority_accuracy = 0.0;
  double random_f1 = 0.0;  // coin flip, F1 of the happy class
};

// Random F1 is p / (p + 1/2) for happy share p: precision p, recall 1/2.
inline double random_f1_baseline(std::size_t happy, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(happy) / static_cast<double>(total);
  return p == 0.0 ? 0.0 : p / (p + 0.5);
}

inline Baselines baselines_from_counts(std::size_t happy, std::size_t total) {
  if (total == 0) throw ConfigError("baselines of an empty corpus");
  Baselines b;
  b.majority_accuracy = static_cast<double>(std::max(happy, total - happy)) / static_cast<double>(total);
  b.random_f1 = random_f1_baseline(happy, total);
  return b;
}

inline Baselines run_baselines(const Corpus& corpus) { return baselines_from_counts(corpus.happy(), corpus.total()); }

// ------------------------------------------------------------------- ladder

struct LadderRow {
  int feature_set_id = 0;
  double f1 = 0.0;
  double accuracy = 0.0;
  EvalMetrics metrics;
};

struct LadderReport {
  std::vector<LadderRow> rows;
  ExperimentConfig config;
  std::vector<std::size_t> fold_of;
  std::string corpus_checksum;
  std::string lexicon_checksum;
};

// All rows share one fold assignment.
inline LadderReport run_feature_ladder(const ProfiledCorpus& pc, const ExperimentConfig& cfg,
                                       const std::vector<int>& feature_sets = {1, 2, 3, 4, 5, 6}) {
  const SectionPartition partition = cfg.partition();
  partition.validate();
  for (int id : feature_sets) feature_set_dimension(id);
  LadderReport report;
  report.config = cfg;
  report.corpus_checksum = pc.corpus_checksum;
  report.lexicon_checksum = pc.lexicon_checksum;
  report.fold_of = stratified_folds(labels_of(pc), cfg.cv.folds, cfg.cv.seed);
  for (int id : feature_sets) {
    const auto rows = feature_rows(pc, partition, id);
    EvalMetrics m = cross_validate(rows, report.fold_of, cfg.cv);
    report.rows.push_back({id, m.f1, m.accuracy, std::move(m)});
  }
  return report;
}

inline LadderReport run_feature_ladder(const Corpus& corpus, const SentimentLexicon& lexicon,
                                       const ExperimentConfig& cfg,
                                       const std::vector<int>& feature_sets = {1, 2, 3, 4, 5, 6}) {
  return run_feature_ladder(profile_corpus(corpus, lexicon, cfg.n_segments, cfg.oov_policy, cfg.cv.jobs), cfg,
                            feature_sets);
}

// -------------------------------------------------------------------- sweep

// final_len = n - round(fraction * n). The main section must stay non-empty.
inline std::size_t final_len_for_fraction(double main_fraction, std::size_t n_segments) {
  if (!(main_fraction > 0.0 && main_fraction < 1.0))
    throw ConfigError("main fraction must lie in (0, 1), got " + text::format_exact(main_fraction));
  const auto main = static_cast<long long>(std::llround(main_fraction * static_cast<double>(n_segments)));
  const long long final_len = static_cast<long long>(n_segments) - main;
  if (final_len < 1)
    throw ConfigError("main fraction " + text::format_exact(main_fraction) + " leaves no final section");
  if (main < 1) throw ConfigError("main fraction " + text::format_exact(main_fraction) + " leaves no main section");
  return static_cast<std::size_t>(final_len);
}

// One point per whole segment: final_len from max_final_len down to 1.
inline std::vector<double> default_sweep_fractions(std::size_t n_segments = kDefaultSegments,
                                                   std::size_t max_final_len = 37) {
  std::vector<double> out;
  for (std::size_t k = std::min(max_final_len, n_segments - 1); k >= 1; --k)
    out.push_back(static_cast<double>(n_segments - k) / static_cast<double>(n_segments));
  return out;
}

struct SweepPoint {
  double main_fraction = 0.0;
  std::size_t final_len = 0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::vector<bool> correct;  // per novel, out-of-fold
};

struct SweepCurve {
  int feature_set_id = 3;
  std::vector<SweepPoint> points;  // ascending main_fraction
  std::optional<std::size_t> argmax;
  double baseline = 0.0;
  std::vector<std::size_t> fold_of;
  std::vector<std::string> novel_ids;

  const SweepPoint* best() const { return argmax ? &points[*argmax] : nullptr; }
};

// Late-main length tracks the final length, clipped to the main section.
inline SectionPartition sweep_partition(std::size_t n_segments, std::size_t final_len) {
  return {n_segments, final_len, std::min(final_len, n_segments - final_len)};
}

// Highest F1; ties go to the larger main fraction (points are ascending).
inline std::optional<std::size_t> sweep_argmax(const std::vector<SweepPoint>& points) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!best || points[i].f1 >= points[*best].f1) best = i;
  return best;
}

inline SweepCurve run_partition_sweep(const ProfiledCorpus& pc, std::vector<double> fractions, int feature_set_id,
                                      const ExperimentConfig& cfg) {
  feature_set_dimension(feature_set_id);
  std::stable_sort(fractions.begin(), fractions.end());
  SweepCurve curve;
  curve.feature_set_id = feature_set_id;
  std::size_t happy = 0;
  for (const auto& m : pc.metadata) {
    curve.novel_ids.push_back(m.id);
    if (m.label == Label::happy) ++happy;
  }
  curve.baseline = random_f1_baseline(happy, pc.size());
  for (double f : fractions) curve.points.push_back({f, final_len_for_fraction(f, cfg.n_segments), 0.0, 0.0, {}});
  if (curve.points.empty()) return curve;

  const auto gold = labels_of(pc);
  curve.fold_of = stratified_folds(gold, cfg.cv.folds, cfg.cv.seed);
  CvConfig cv = cfg.cv;
  cv.jobs = 1;
  parallel_for(cfg.cv.jobs, curve.points.size(), [&](std::size_t p) {
    auto& point = curve.points[p];
    const auto rows = feature_rows(pc, sweep_partition(cfg.n_segments, point.final_len), feature_set_id);
    const EvalMetrics m = cross_validate(rows, curve.fold_of, cv);
    point.f1 = m.f1;
    point.accuracy = m.accuracy;
    point.correct.resize(gold.size());
    for (std::size_t i = 0; i < gold.size(); ++i) point.correct[i] = m.predictions[i] == gold[i];
  });
  curve.argmax = sweep_argmax(curve.points);
  return curve;
}

// ------------------------------------------------------------------ periods

inline const std::vector<int> kDefaultPeriodBoundaries = {1830, 1848, 1870};

// Group i holds years in (boundaries[i-1], boundaries[i]]; the last group is
// everything after the final boundary.
inline std::size_t period_index(int year, std::span<const int> boundaries) {
  std::size_t g = 0;
  while (g < boundaries.size() && year > boundaries[g]) ++g;
  return g;
}

inline std::vector<std::size_t> assign_periods(std::span<const int> years, std::span<const int> boundaries) {
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    if (boundaries[i] <= boundaries[i - 1]) throw ConfigError("period boundaries must be strictly increasing");
  std::vector<std::size_t> out;
  out.reserve(years.size());
  for (int y : years) out.push_back(period_index(y, boundaries));
  return out;
}

inline std::string period_label(std::size_t group, std::span<const int> boundaries) {
  if (boundaries.empty()) return "all";
  if (group == 0) return "<=" + std::to_string(boundaries.front());
  if (group == boundaries.size()) return ">=" + std::to_string(boundaries.back() + 1);
  return std::to_string(boundaries[group - 1] + 1) + "-" + std::to_string(boundaries[group]);
}

struct PeriodGroup {
  std::string label;
  std::optional<int> year_from;  // inclusive; absent for the open first group
  std::optional<int> year_to;    // inclusive; absent for the open last group
  std::size_t n_novels = 0;
  std::size_t n_happy = 0;
  bool skipped = false;
  std::string skip_reason;
  SweepCurve curve;
};

struct PeriodReport {
  std::vector<int> boundaries;
  std::vector<PeriodGroup> groups;
  int feature_set_id = 3;
};

// Per-group sweep. Groups with fewer than 2*folds novels or fewer than
// `folds` members in either class are marked skipped.
inline PeriodReport run_period_analysis(const ProfiledCorpus& pc, const std::vector<int>& boundaries,
                                        const std::vector<double>& fractions, int feature_set_id,
                                        const ExperimentConfig& cfg) {
  std::vector<int> years;
  for (const auto& m : pc.metadata) years.push_back(m.year);
  const auto group_of = assign_periods(years, boundaries);
  PeriodReport report;
  report.boundaries = boundaries;
  report.feature_set_id = feature_set_id;
  for (std::size_t g = 0; g <= boundaries.size(); ++g) {
    PeriodGroup group;
    group.label = period_label(g, boundaries);
    if (g > 0) group.year_from = boundaries[g - 1] + 1;
    if (g < boundaries.size()) group.year_to = boundaries[g];
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < group_of.size(); ++i)
      if (group_of[i] == g) members.push_back(i);
    group.n_novels = members.size();
    for (std::size_t i : members)
      if (pc.metadata[i].label == Label::happy) ++group.n_happy;
    const std::size_t folds = cfg.cv.folds;
    const std::size_t n_unhappy = group.n_novels - group.n_happy;
    if (group.n_novels < 2 * folds || group.n_happy < folds || n_unhappy < folds) {
      group.skipped = true;
      group.skip_reason = std::to_string(group.n_novels) + " novels (" + std::to_string(group.n_happy) + " happy, " +
                          std::to_string(n_unhappy) + " unhappy) is too few for " + std::to_string(folds) + " folds";
    } else {
      group.curve = run_partition_sweep(subset(pc, members), fractions, feature_set_id, cfg);
    }
    report.groups.push_back(std::move(group));
  }
  return report;
}

}  // namespace plotarc
