#pragma once

#include <array>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plotarc/checksum.hpp"
#include "plotarc/error.hpp"
#include "plotarc/sentiment.hpp"
#include "plotarc/text_table.hpp"
#include "plotarc/unicode.hpp"

namespace plotarc {

// Column order of a headerless lexicon file (NRC alphabetical order).
inline constexpr std::array<Dimension, 10> kLexiconFileColumns = {
    Dimension::anger,   Dimension::anticipation, Dimension::disgust,  Dimension::fear,
    Dimension::joy,     Dimension::negative,     Dimension::positive, Dimension::sadness,
    Dimension::surprise, Dimension::trust,
};

namespace detail {

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Header names accepted for each binary dimension. English NRC names plus the
// German labels used by translated exports.
inline std::optional<Dimension> dimension_from_header(std::string_view name) {
  static const std::map<std::string, Dimension, std::less<>> aliases = {
      {"positive", Dimension::positive},   {"positiv", Dimension::positive},
      {"negative", Dimension::negative},   {"negativ", Dimension::negative},
      {"anger", Dimension::anger},         {"wut", Dimension::anger},
      {"anticipation", Dimension::anticipation}, {"erwartung", Dimension::anticipation},
      {"disgust", Dimension::disgust},     {"ekel", Dimension::disgust},
      {"fear", Dimension::fear},           {"angst", Dimension::fear},
      {"joy", Dimension::joy},             {"freude", Dimension::joy},
      {"sadness", Dimension::sadness},     {"traurigkeit", Dimension::sadness},
      {"surprise", Dimension::surprise},   {"\xC3\xBC" "berraschung", Dimension::surprise},
      {"trust", Dimension::trust},         {"vertrauen", Dimension::trust},
  };
  const auto it = aliases.find(ascii_lower(name));
  if (it == aliases.end()) return std::nullopt;
  return it->second;
}

inline bool is_binary_cell(std::string_view cell) { return cell == "0" || cell == "1"; }

}  // namespace detail

// Lemma -> entry-level SentimentVector. Keys are NFC and matched exactly
// (case-sensitive). Treat as immutable once populated.
class SentimentLexicon {
 public:
  using Map = std::map<std::string, SentimentVector, std::less<>>;

  // Throws ParseError (line 0) on duplicates or a vector that is not binary
  // with derived polarity.
  void add(std::string lemma, const SentimentVector& v) {
    for (std::size_t i = 0; i < kDimensions; ++i) {
      if (i == static_cast<std::size_t>(Dimension::polarity)) continue;
      if (v[i] != 0.0 && v[i] != 1.0) throw ParseError("non-binary value for lemma '" + lemma + "'", 0);
    }
    if (v[Dimension::polarity] != v[Dimension::positive] - v[Dimension::negative])
      throw ParseError("polarity must equal positive - negative for lemma '" + lemma + "'", 0);
    if (lemma.empty()) throw ParseError("empty lemma", 0);
    auto [it, inserted] = entries_.emplace(std::move(lemma), v);
    if (!inserted) throw ParseError("duplicate lemma '" + it->first + "'", 0);
  }

  // Hot-path lookup; nullptr when absent.
  const SentimentVector* find(std::string_view lemma) const {
    const auto it = entries_.find(lemma);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::optional<SentimentVector> lookup(std::string_view lemma) const {
    if (const auto* v = find(lemma)) return *v;
    return std::nullopt;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

 private:
  Map entries_;
};

// Builds an entry-level vector from 0/1 flags, deriving polarity.
inline SentimentVector make_entry(int positive, int negative, int anger, int anticipation, int disgust,
                                  int fear, int joy, int sadness, int surprise, int trust) {
  SentimentVector v;
  v[Dimension::positive] = positive;
  v[Dimension::negative] = negative;
  v[Dimension::polarity] = derive_polarity(positive, negative);
  v[Dimension::anger] = anger;
  v[Dimension::anticipation] = anticipation;
  v[Dimension::disgust] = disgust;
  v[Dimension::fear] = fear;
  v[Dimension::joy] = joy;
  v[Dimension::sadness] = sadness;
  v[Dimension::surprise] = surprise;
  v[Dimension::trust] = trust;
  return v;
}

// Parses a tab-separated lexicon: lemma followed by ten 0/1 columns. A first
// row containing any non-binary dimension cell is a header whose names remap
// the columns; without one the columns follow kLexiconFileColumns. Blank
// lines are ignored.
inline SentimentLexicon parse_lexicon(std::istream& in) {
  SentimentLexicon lexicon;
  std::array<Dimension, 10> columns = kLexiconFileColumns;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (text::read_line(in, line, line_no)) {
    if (line.empty()) continue;
    if (!unicode::is_valid_utf8(line)) throw ParseError("invalid UTF-8", line_no);
    const auto cells = text::split(line, '\t');
    if (cells.size() != 11)
      throw ParseError("expected 11 columns (lemma + 10 dimensions), found " + std::to_string(cells.size()),
                       line_no);
    if (first) {
      first = false;
      bool header = false;
      for (std::size_t i = 1; i < cells.size(); ++i)
        if (!detail::is_binary_cell(cells[i])) header = true;
      if (header) {
        std::array<bool, kDimensions> seen{};
        for (std::size_t i = 1; i < cells.size(); ++i) {
          const auto dim = detail::dimension_from_header(cells[i]);
          if (!dim) throw ParseError("unknown dimension header '" + cells[i] + "'", line_no);
          auto& flag = seen[static_cast<std::size_t>(*dim)];
          if (flag) throw ParseError("duplicate dimension header '" + cells[i] + "'", line_no);
          flag = true;
          columns[i - 1] = *dim;
        }
        continue;
      }
    }
    SentimentVector v;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (!detail::is_binary_cell(cells[i]))
        throw ParseError("non-binary value '" + cells[i] + "' in column " + std::to_string(i + 1), line_no);
      v[columns[i - 1]] = cells[i] == "1" ? 1.0 : 0.0;
    }
    v[Dimension::polarity] = derive_polarity(static_cast<int>(v[Dimension::positive]),
                                             static_cast<int>(v[Dimension::negative]));
    std::string lemma = unicode::to_nfc(cells[0]);
    if (lemma.empty()) throw ParseError("empty lemma", line_no);
    if (lexicon.find(lemma)) throw ParseError("duplicate lemma '" + lemma + "'", line_no);
    lexicon.add(std::move(lemma), v);
  }
  return lexicon;
}

inline SentimentLexicon parse_lexicon(std::string_view content) {
  std::istringstream in{std::string(content)};
  return parse_lexicon(in);
}

inline SentimentLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open lexicon file: " + path);
  return parse_lexicon(in);
}

// Canonical writer: header row, then entries in byte order of the lemma.
inline std::string serialize_lexicon(const SentimentLexicon& lexicon) {
  std::string out = "lemma";
  for (Dimension d : kLexiconFileColumns) {
    out += '\t';
    out += dimension_name(d);
  }
  out += '\n';
  for (const auto& [lemma, v] : lexicon) {
    out += lemma;
    for (Dimension d : kLexiconFileColumns) out += v[d] != 0.0 ? "\t1" : "\t0";
    out += '\n';
  }
  return out;
}

inline std::string lexicon_checksum(const SentimentLexicon& lexicon) {
  return Fnv1a{}.update(serialize_lexicon(lexicon)).hex();
}

// Small German lexicon used by the synthetic corpus generator when no
// lexicon file is supplied: eleven positive, ten negative and ten neutral
// entries.
inline SentimentLexicon builtin_toy_lexicon() {
  //                                   pos neg ang ant dis fea joy sad sur tru
  SentimentLexicon lex;
  lex.add("verabscheuen", make_entry(0, 1, 1, 0, 1, 1, 0, 0, 0, 0));
  lex.add("bewundernswert", make_entry(1, 0, 0, 0, 0, 0, 1, 0, 0, 1));
  lex.add("Zufall", make_entry(0, 0, 0, 0, 0, 0, 0, 0, 1, 0));
  lex.add("Freude", make_entry(1, 0, 0, 1, 0, 0, 1, 0, 0, 1));
  lex.add("Hochzeit", make_entry(1, 0, 0, 1, 0, 0, 1, 0, 0, 1));
  lex.add("Liebe", make_entry(1, 0, 0, 0, 0, 0, 1, 0, 0, 1));
  lex.add("Glück", make_entry(1, 0, 0, 1, 0, 0, 1, 0, 0, 0));
  lex.add("Versöhnung", make_entry(1, 0, 0, 0, 0, 0, 1, 0, 0, 1));
  lex.add("Hoffnung", make_entry(1, 0, 0, 1, 0, 0, 1, 0, 1, 1));
  lex.add("lachen", make_entry(1, 0, 0, 0, 0, 0, 1, 0, 1, 0));
  lex.add("Frieden", make_entry(1, 0, 0, 1, 0, 0, 1, 0, 0, 1));
  lex.add("Heimkehr", make_entry(1, 0, 0, 1, 0, 0, 1, 0, 0, 0));
  lex.add("Tod", make_entry(0, 1, 1, 1, 1, 1, 0, 1, 1, 0));
  lex.add("Verzweiflung", make_entry(0, 1, 1, 0, 0, 1, 0, 1, 0, 0));
  lex.add("Krieg", make_entry(0, 1, 1, 0, 1, 1, 0, 1, 0, 0));
  lex.add("weinen", make_entry(0, 1, 0, 0, 0, 1, 0, 1, 0, 0));
  lex.add("Verrat", make_entry(0, 1, 1, 0, 1, 0, 0, 1, 1, 0));
  lex.add("Grab", make_entry(0, 1, 0, 0, 0, 1, 0, 1, 0, 0));
  lex.add("Elend", make_entry(0, 1, 1, 0, 1, 1, 0, 1, 0, 0));
  lex.add("Schande", make_entry(0, 1, 1, 0, 1, 1, 0, 1, 0, 0));
  lex.add("Mord", make_entry(0, 1, 1, 0, 1, 1, 0, 1, 1, 0));
  lex.add("Brief", make_entry(0, 0, 0, 1, 0, 0, 0, 0, 0, 0));
  lex.add("Reise", make_entry(0, 0, 0, 1, 0, 0, 0, 0, 0, 0));
  lex.add("Kirche", make_entry(0, 0, 0, 0, 0, 0, 0, 0, 0, 1));
  lex.add("Geheimnis", make_entry(0, 0, 0, 1, 0, 0, 0, 0, 1, 0));
  lex.add("Gericht", make_entry(0, 0, 0, 1, 0, 1, 0, 0, 0, 0));
  lex.add("Nachricht", make_entry(0, 0, 0, 0, 0, 0, 0, 0, 1, 0));
  lex.add("Fremder", make_entry(0, 0, 0, 0, 0, 1, 0, 0, 0, 0));
  lex.add("Erbschaft", make_entry(0, 0, 0, 1, 0, 0, 0, 0, 1, 0));
  lex.add("Arzt", make_entry(0, 0, 0, 0, 0, 0, 0, 0, 0, 1));
  return lex;
}

}  // namespace plotarc
