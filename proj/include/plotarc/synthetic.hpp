#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plotarc/corpus.hpp"
#include "plotarc/error.hpp"
#include "plotarc/features.hpp"
#include "plotarc/lexicon.hpp"
#include "plotarc/rng.hpp"

namespace plotarc {

struct SyntheticOptions {
  std::uint64_t seed = 1;
  std::size_t n_novels = 40;
  std::size_t tokens_per_novel = 1500;
  std::size_t ending_len_segments = 4;
  std::size_t n_segments = kDefaultSegments;
  // Share of tokens drawn from the lexicon; the rest is out-of-lexicon filler.
  double lexicon_density = 0.30;
  // Within the ending region, probability that a lexicon draw comes from the
  // class-signed pool instead of the shared mixed pool.
  double ending_signal = 0.35;
  std::size_t filler_vocabulary = 400;
  int year_min = 1790;
  int year_max = 1910;
  std::string id_prefix = "synth";
};

// Novels alternate happy/unhappy. Every token outside the ending region is
// drawn from the same mixture for both classes. The ending region is the
// token range of the last `ending_len_segments` segments under the standard
// segmentation, where sentiment draws lean toward positive-polarity entries
// (happy) or negative-polarity entries (unhappy).
inline Corpus generate_synthetic_corpus(const SyntheticOptions& opt, const SentimentLexicon& lexicon) {
  if (opt.n_novels == 0 || opt.n_novels % 2 != 0)
    throw ConfigError("number of synthetic novels must be even and positive, got " + std::to_string(opt.n_novels));
  if (opt.n_segments == 0 || opt.tokens_per_novel < opt.n_segments)
    throw ConfigError("tokens per novel must be at least " + std::to_string(opt.n_segments));
  if (opt.ending_len_segments < 1 || opt.ending_len_segments > 10 || opt.ending_len_segments >= opt.n_segments)
    throw ConfigError("ending length must be in [1, 10] segments, got " + std::to_string(opt.ending_len_segments));
  if (!(opt.lexicon_density > 0.0 && opt.lexicon_density <= 1.0) || !(opt.ending_signal >= 0.0 && opt.ending_signal <= 1.0))
    throw ConfigError("lexicon density and ending signal must be probabilities");
  if (opt.year_min <= 0 || opt.year_max < opt.year_min) throw ConfigError("invalid synthetic year range");
  if (opt.filler_vocabulary == 0) throw ConfigError("filler vocabulary must be non-empty");

  std::vector<std::string> mixed, positive, negative;
  for (const auto& [lemma, v] : lexicon) {
    mixed.push_back(lemma);
    if (v[Dimension::polarity] > 0) positive.push_back(lemma);
    if (v[Dimension::polarity] < 0) negative.push_back(lemma);
  }
  if (positive.empty() || negative.empty())
    throw GenerationError("lexicon needs at least one positive and one negative entry");

  std::vector<std::string> filler;
  for (std::size_t i = 0; filler.size() < opt.filler_vocabulary; ++i) {
    std::string w = "wort" + std::to_string(i);
    if (!lexicon.find(w)) filler.push_back(std::move(w));
  }

  const auto blocks = segment_bounds(opt.tokens_per_novel, opt.n_segments);
  const std::size_t ending_begin = blocks[opt.n_segments - opt.ending_len_segments].begin;

  Rng rng(opt.seed);
  auto pick = [&](const std::vector<std::string>& pool) -> const std::string& { return pool[rng.below(pool.size())]; };
  const auto width = static_cast<int>(std::to_string(opt.n_novels).size());

  std::vector<Novel> novels(opt.n_novels);
  for (std::size_t i = 0; i < opt.n_novels; ++i) {
    auto& novel = novels[i];
    const bool happy = i % 2 == 0;
    std::string num = std::to_string(i + 1);
    num.insert(0, static_cast<std::size_t>(width) - num.size(), '0');
    novel.metadata.id = opt.id_prefix + "_" + num;
    novel.metadata.title = "Synthetic novel " + num;
    novel.metadata.author = "generator";
    novel.metadata.year = opt.year_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.year_max - opt.year_min + 1)));
    novel.metadata.label = happy ? Label::happy : Label::unhappy;
    const auto& signed_pool = happy ? positive : negative;
    novel.lemmas.reserve(opt.tokens_per_novel);
    for (std::size_t t = 0; t < opt.tokens_per_novel; ++t) {
      if (!rng.bernoulli(opt.lexicon_density)) {
        novel.lemmas.push_back(pick(filler));
      } else if (t >= ending_begin && rng.bernoulli(opt.ending_signal)) {
        novel.lemmas.push_back(pick(signed_pool));
      } else {
        novel.lemmas.push_back(pick(mixed));
      }
    }
  }
  return Corpus(std::move(novels));
}

// Text layout written by `plotarc synth`: twelve tokens per line.
inline std::string render_novel_text(const Novel& novel) {
  std::string out;
  for (std::size_t i = 0; i < novel.lemmas.size(); ++i) {
    out += novel.lemmas[i];
    out += (i + 1) % 12 == 0 || i + 1 == novel.lemmas.size() ? '\n' : ' ';
  }
  return out;
}

}  // namespace plotarc
