#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plotarc/experiments.hpp"
#include "plotarc/svg.hpp"
#include "plotarc/text_table.hpp"

namespace plotarc {

using MetaEntries = std::vector<std::pair<std::string, std::string>>;

inline constexpr std::string_view kReportFormatVersion = "1";

// Everything needed to re-run an experiment bit-identically. Thread count is
// omitted: results do not depend on it.
inline MetaEntries config_entries(const ExperimentConfig& cfg, std::string_view experiment,
                                  const ProfiledCorpus& pc) {
  std::size_t happy = 0;
  for (const auto& m : pc.metadata)
    if (m.label == Label::happy) ++happy;
  return {
      {"format", std::string(kReportFormatVersion)},
      {"experiment", std::string(experiment)},
      {"n_segments", std::to_string(cfg.n_segments)},
      {"final_len", std::to_string(cfg.final_len)},
      {"late_len", std::to_string(cfg.late_len)},
      {"oov_policy", std::string(oov_policy_name(cfg.oov_policy))},
      {"folds", std::to_string(cfg.cv.folds)},
      {"seed", std::to_string(cfg.cv.seed)},
      {"C", text::format_exact(cfg.cv.C)},
      {"epochs", std::to_string(cfg.cv.epochs)},
      {"n_novels", std::to_string(pc.size())},
      {"n_happy", std::to_string(happy)},
      {"corpus_checksum", pc.corpus_checksum},
      {"lexicon_checksum", pc.lexicon_checksum},
  };
}

inline std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += text::format_exact(values[i]);
  }
  return out;
}

inline std::string render_meta(const MetaEntries& entries) {
  std::string out;
  for (const auto& [k, v] : entries) out += k + '=' + v + '\n';
  return out;
}

inline std::string metric(double v) { return text::format_fixed(v, 6); }

// ladder.csv: feature_set,f1,accuracy
inline std::string render_ladder_csv(const LadderReport& report) {
  std::string out = "feature_set,f1,accuracy\n";
  for (const auto& r : report.rows)
    out += std::to_string(r.feature_set_id) + ',' + metric(r.f1) + ',' + metric(r.accuracy) + '\n';
  return out;
}

// sweep.csv: main_fraction,final_len,f1
inline std::string render_sweep_csv(const SweepCurve& curve) {
  std::string out = "main_fraction,final_len,f1\n";
  for (const auto& p : curve.points)
    out += metric(p.main_fraction) + ',' + std::to_string(p.final_len) + ',' + metric(p.f1) + '\n';
  return out;
}

// Per-novel diagnostics: how many sweep points classify each novel correctly.
inline std::string render_sweep_novels_csv(const SweepCurve& curve) {
  std::string out = "novel_id,correct_points,total_points\n";
  for (std::size_t i = 0; i < curve.novel_ids.size(); ++i) {
    std::size_t correct = 0;
    for (const auto& p : curve.points) correct += p.correct[i] ? 1 : 0;
    out += curve.novel_ids[i] + ',' + std::to_string(correct) + ',' + std::to_string(curve.points.size()) + '\n';
  }
  return out;
}

// periods.csv: period,main_fraction,final_len,f1,n_novels. Skipped groups
// get one row with empty fraction/length and f1 = "skipped".
inline std::string render_periods_csv(const PeriodReport& report) {
  std::string out = "period,main_fraction,final_len,f1,n_novels\n";
  for (const auto& g : report.groups) {
    if (g.skipped) {
      out += g.label + ",,,skipped," + std::to_string(g.n_novels) + '\n';
      continue;
    }
    for (const auto& p : g.curve.points)
      out += g.label + ',' + metric(p.main_fraction) + ',' + std::to_string(p.final_len) + ',' + metric(p.f1) + ',' +
             std::to_string(g.n_novels) + '\n';
  }
  return out;
}

inline MetaEntries ladder_meta(const LadderReport& report, const ProfiledCorpus& pc) {
  MetaEntries e = config_entries(report.config, "ladder", pc);
  std::string sets;
  for (const auto& r : report.rows) sets += (sets.empty() ? "" : ",") + std::to_string(r.feature_set_id);
  e.emplace_back("feature_sets", sets);
  return e;
}

inline MetaEntries sweep_meta(const SweepCurve& curve, const ExperimentConfig& cfg, const ProfiledCorpus& pc) {
  MetaEntries e = config_entries(cfg, "sweep", pc);
  std::vector<double> fractions;
  for (const auto& p : curve.points) fractions.push_back(p.main_fraction);
  e.emplace_back("feature_set", std::to_string(curve.feature_set_id));
  e.emplace_back("late_len_rule", "min(final_len, n_segments - final_len)");
  e.emplace_back("fractions", join_numbers(fractions));
  e.emplace_back("baseline_f1", metric(curve.baseline));
  if (const auto* b = curve.best()) {
    e.emplace_back("argmax_main_fraction", metric(b->main_fraction));
    e.emplace_back("argmax_final_len", std::to_string(b->final_len));
    e.emplace_back("argmax_f1", metric(b->f1));
  } else {
    e.emplace_back("argmax_main_fraction", "none");
  }
  return e;
}

inline MetaEntries periods_meta(const PeriodReport& report, const std::vector<double>& fractions,
                                const ExperimentConfig& cfg, const ProfiledCorpus& pc) {
  MetaEntries e = config_entries(cfg, "periods", pc);
  std::string bounds;
  for (int b : report.boundaries) bounds += (bounds.empty() ? "" : ",") + std::to_string(b);
  e.emplace_back("feature_set", std::to_string(report.feature_set_id));
  e.emplace_back("boundaries", bounds);
  e.emplace_back("fractions", join_numbers(fractions));
  for (const auto& g : report.groups) {
    std::string v = "n=" + std::to_string(g.n_novels) + " happy=" + std::to_string(g.n_happy);
    if (g.skipped) {
      v += " skipped: " + g.skip_reason;
    } else if (const auto* b = g.curve.best()) {
      v += " argmax_final_len=" + std::to_string(b->final_len) + " argmax_f1=" + metric(b->f1) +
           " baseline_f1=" + metric(g.curve.baseline);
    }
    e.emplace_back("group " + g.label, v);
  }
  return e;
}

inline svg::LineChart sweep_axes(std::string title) {
  svg::LineChart chart;
  chart.title = std::move(title);
  chart.x_label = "share of segments in main section";
  chart.y_label = "F1 (happy ending)";
  chart.x_min = 0.5;
  chart.x_max = 1.0;
  chart.x_tick = 0.1;
  chart.y_min = 0.0;
  chart.y_max = 1.0;
  chart.y_tick = 0.2;
  return chart;
}

// One polyline, dashed random baseline, dotted marker at the best split.
inline std::string render_sweep_svg(const SweepCurve& curve) {
  auto chart = sweep_axes("F1 by main/final partition (feature set " + std::to_string(curve.feature_set_id) + ")");
  svg::Series s{"F1", {}, svg::palette()[0]};
  for (const auto& p : curve.points) s.points.emplace_back(p.main_fraction, p.f1);
  chart.series.push_back(std::move(s));
  chart.horizontal.push_back({curve.baseline, "#555555", "random baseline"});
  if (const auto* b = curve.best())
    chart.vertical.push_back({b->main_fraction, "#555555", "best: final_len " + std::to_string(b->final_len)});
  return svg::render(chart);
}

// One polyline per populated period, dotted argmax marker per period, and
// the dashed random baseline of the latest populated period.
inline std::string render_periods_svg(const PeriodReport& report) {
  auto chart = sweep_axes("F1 by main/final partition per publication period");
  std::optional<double> baseline;
  std::size_t color = 0;
  for (const auto& g : report.groups) {
    if (g.skipped) continue;
    const auto& c = svg::palette()[color++ % svg::palette().size()];
    svg::Series s{g.label + " (n=" + std::to_string(g.n_novels) + ")", {}, c};
    for (const auto& p : g.curve.points) s.points.emplace_back(p.main_fraction, p.f1);
    chart.series.push_back(std::move(s));
    if (const auto* b = g.curve.best()) chart.vertical.push_back({b->main_fraction, c, ""});
    baseline = g.curve.baseline;
  }
  if (baseline) chart.horizontal.push_back({*baseline, "#555555", "random baseline"});
  return svg::render(chart);
}

}  // namespace plotarc
