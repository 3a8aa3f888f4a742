#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "plotarc/checksum.hpp"
#include "plotarc/error.hpp"
#include "plotarc/parallel.hpp"
#include "plotarc/text_table.hpp"
#include "plotarc/unicode.hpp"

namespace plotarc {

enum class Label : int { unhappy = -1, happy = 1 };

inline std::string_view label_name(Label l) { return l == Label::happy ? "happy" : "unhappy"; }

struct NovelMetadata {
  std::string id;
  std::string title;
  std::string author;
  int year = 0;
  Label label = Label::unhappy;

  friend bool operator==(const NovelMetadata&, const NovelMetadata&) = default;
};

struct Novel {
  NovelMetadata metadata;
  std::vector<std::string> lemmas;

  friend bool operator==(const Novel&, const Novel&) = default;
};

class Corpus {
 public:
  Corpus() = default;

  // Throws LoadError on duplicate ids, empty lemma sequences or year <= 0.
  explicit Corpus(std::vector<Novel> novels) : novels_(std::move(novels)) {
    std::set<std::string_view> ids;
    for (const auto& n : novels_) {
      if (!ids.insert(n.metadata.id).second) throw LoadError("duplicate novel id: " + n.metadata.id);
      if (n.metadata.year <= 0) throw LoadError("non-positive year for novel " + n.metadata.id);
      if (n.lemmas.empty()) throw LoadError("novel has no tokens: " + n.metadata.id);
      if (n.metadata.label == Label::happy) ++happy_;
    }
  }

  const std::vector<Novel>& novels() const { return novels_; }
  std::size_t total() const { return novels_.size(); }
  std::size_t happy() const { return happy_; }
  std::size_t unhappy() const { return novels_.size() - happy_; }

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.novels_ == b.novels_; }

 private:
  std::vector<Novel> novels_;
  std::size_t happy_ = 0;
};

// Whitespace split (Unicode White_Space), then leading and trailing
// punctuation (categories P*) stripped from each token. Empty tokens are
// dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  bool in_token = false;
  auto emit = [&](std::size_t end) {
    const std::string_view raw = text.substr(start, end - start);
    // First and one-past-last byte offsets of non-punctuation code points.
    std::size_t keep_begin = raw.size(), keep_end = 0;
    unicode::for_each_codepoint(raw, [&](int32_t c, std::size_t b, std::size_t e) {
      if (c >= 0 && unicode::is_punctuation(c)) return;
      keep_begin = std::min(keep_begin, b);
      keep_end = e;
    });
    if (keep_begin < keep_end) tokens.emplace_back(raw.substr(keep_begin, keep_end - keep_begin));
  };
  unicode::for_each_codepoint(text, [&](int32_t c, std::size_t b, std::size_t) {
    const bool ws = c >= 0 && unicode::is_whitespace(c);
    if (ws && in_token) {
      emit(b);
      in_token = false;
    } else if (!ws && !in_token) {
      start = b;
      in_token = true;
    }
  });
  if (in_token) emit(text.size());
  return tokens;
}

using LemmaMap = std::map<std::string, std::string, std::less<>>;

inline std::string lemmatize(std::string_view token, const LemmaMap& lemma_map) {
  const auto it = lemma_map.find(token);
  return it == lemma_map.end() ? std::string(token) : it->second;
}

// `surface<TAB>lemma` rows, NFC-normalized. Duplicate surface forms are errors.
inline LemmaMap parse_lemma_map(std::istream& in) {
  LemmaMap map;
  std::string line;
  std::size_t line_no = 0;
  while (text::read_line(in, line, line_no)) {
    if (line.empty()) continue;
    if (!unicode::is_valid_utf8(line)) throw ParseError("invalid UTF-8 in lemma map", line_no);
    const auto cells = text::split(line, '\t');
    if (cells.size() != 2) throw ParseError("lemma map rows need 2 columns", line_no);
    if (cells[0].empty() || cells[1].empty()) throw ParseError("empty surface form or lemma", line_no);
    auto surface = unicode::to_nfc(cells[0]);
    if (!map.emplace(surface, unicode::to_nfc(cells[1])).second)
      throw ParseError("duplicate surface form '" + surface + "'", line_no);
  }
  return map;
}

inline LemmaMap load_lemma_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open lemma map: " + path);
  return parse_lemma_map(in);
}

inline std::vector<std::string> lemmatize_text(std::string_view text, const LemmaMap& lemma_map) {
  auto tokens = tokenize(unicode::to_nfc(text));
  for (auto& t : tokens) t = lemmatize(t, lemma_map);
  return tokens;
}

// TSV with header `id title author year label`; labels are `happy`/`unhappy`.
inline std::vector<NovelMetadata> parse_metadata(std::istream& in) {
  std::vector<NovelMetadata> rows;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  if (!text::read_line(in, line, line_no) || line != "id\ttitle\tauthor\tyear\tlabel")
    throw ParseError("metadata header must be: id, title, author, year, label (tab-separated)", 1);
  while (text::read_line(in, line, line_no)) {
    if (line.empty()) continue;
    if (!unicode::is_valid_utf8(line)) throw ParseError("invalid UTF-8 in metadata", line_no);
    const auto cells = text::split(line, '\t');
    if (cells.size() != 5) throw ParseError("metadata rows need 5 columns", line_no);
    NovelMetadata m;
    m.id = cells[0];
    m.title = cells[1];
    m.author = cells[2];
    const auto& y = cells[3];
    const auto [ptr, ec] = std::from_chars(y.data(), y.data() + y.size(), m.year);
    if (ec != std::errc{} || ptr != y.data() + y.size() || m.year <= 0)
      throw ParseError("unparseable year '" + y + "'", line_no);
    if (cells[4] == "happy")
      m.label = Label::happy;
    else if (cells[4] == "unhappy")
      m.label = Label::unhappy;
    else
      throw ParseError("label must be 'happy' or 'unhappy', got '" + cells[4] + "'", line_no);
    if (m.id.empty()) throw ParseError("empty novel id", line_no);
    if (!ids.insert(m.id).second) throw ParseError("duplicate novel id '" + m.id + "'", line_no);
    rows.push_back(std::move(m));
  }
  return rows;
}

// Novels come back in metadata order. Tokenization runs on up to `jobs`
// threads; assembly is by row index.
inline Corpus load_corpus(const std::filesystem::path& text_dir, const std::filesystem::path& metadata_file,
                          const LemmaMap& lemma_map = {}, std::size_t jobs = 1) {
  std::ifstream meta(metadata_file, std::ios::binary);
  if (!meta) throw LoadError("cannot open metadata file: " + metadata_file.string());
  std::vector<NovelMetadata> rows;
  try {
    rows = parse_metadata(meta);
  } catch (const ParseError& e) {
    throw LoadError(metadata_file.string() + ": " + e.what());
  }
  for (const auto& m : rows) {
    if (!std::filesystem::is_regular_file(text_dir / (m.id + ".txt")))
      throw LoadError("missing text file for novel '" + m.id + "': " + (text_dir / (m.id + ".txt")).string());
  }
  std::vector<Novel> novels(rows.size());
  parallel_for(jobs, rows.size(), [&](std::size_t i) {
    const std::string content = text::read_file((text_dir / (rows[i].id + ".txt")).string());
    if (!unicode::is_valid_utf8(content)) throw LoadError("invalid UTF-8 in text of novel '" + rows[i].id + "'");
    novels[i].metadata = rows[i];
    novels[i].lemmas = lemmatize_text(content, lemma_map);
  });
  return Corpus(std::move(novels));
}

inline std::string serialize_metadata(const Corpus& corpus) {
  std::string out = "id\ttitle\tauthor\tyear\tlabel\n";
  for (const auto& n : corpus.novels()) {
    const auto& m = n.metadata;
    out += m.id + '\t' + m.title + '\t' + m.author + '\t' + std::to_string(m.year) + '\t';
    out += label_name(m.label);
    out += '\n';
  }
  return out;
}

// Covers metadata and every lemma, in corpus order.
inline std::string corpus_checksum(const Corpus& corpus) {
  Fnv1a h;
  h.update(serialize_metadata(corpus));
  for (const auto& n : corpus.novels()) {
    h.update(n.metadata.id).update("\n");
    for (const auto& l : n.lemmas) h.update(l).update(" ");
    h.update("\n");
  }
  return h.hex();
}

}  // namespace plotarc
