#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace plotarc {

// Canonical dimension order; every flattened feature block follows it.
enum class Dimension : std::size_t {
  positive,
  negative,
  polarity,
  anger,
  anticipation,
  disgust,
  fear,
  joy,
  sadness,
  surprise,
  trust,
};

inline constexpr std::size_t kDimensions = 11;

inline constexpr std::array<std::string_view, kDimensions> kDimensionNames = {
    "positive", "negative", "polarity", "anger",    "anticipation", "disgust",
    "fear",     "joy",      "sadness",  "surprise", "trust",
};

constexpr std::string_view dimension_name(Dimension d) {
  return kDimensionNames[static_cast<std::size_t>(d)];
}

// Eleven sentiment scores. Binary at the lexicon level, real-valued once
// averaged. polarity == positive - negative holds under both.
struct SentimentVector {
  std::array<double, kDimensions> values{};

  constexpr double& operator[](Dimension d) { return values[static_cast<std::size_t>(d)]; }
  constexpr double operator[](Dimension d) const { return values[static_cast<std::size_t>(d)]; }
  constexpr double& operator[](std::size_t i) { return values[i]; }
  constexpr double operator[](std::size_t i) const { return values[i]; }

  constexpr SentimentVector& operator+=(const SentimentVector& o) {
    for (std::size_t i = 0; i < kDimensions; ++i) values[i] += o.values[i];
    return *this;
  }
  constexpr SentimentVector& operator-=(const SentimentVector& o) {
    for (std::size_t i = 0; i < kDimensions; ++i) values[i] -= o.values[i];
    return *this;
  }
  constexpr SentimentVector& operator/=(double d) {
    for (double& v : values) v /= d;
    return *this;
  }

  friend constexpr SentimentVector operator+(SentimentVector a, const SentimentVector& b) { return a += b; }
  friend constexpr SentimentVector operator-(SentimentVector a, const SentimentVector& b) { return a -= b; }
  friend constexpr SentimentVector operator/(SentimentVector a, double d) { return a /= d; }
  friend constexpr bool operator==(const SentimentVector&, const SentimentVector&) = default;
};

// Positive minus negative, the derived polarity score.
constexpr int derive_polarity(int positive, int negative) { return positive - negative; }

}  // namespace plotarc
