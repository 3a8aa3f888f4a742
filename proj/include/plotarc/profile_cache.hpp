#pragma once

#include <charconv>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "plotarc/error.hpp"
#include "plotarc/features.hpp"
#include "plotarc/text_table.hpp"

namespace plotarc {

inline std::string profile_cache_header() {
  std::string h = "novel_id,segment_index";
  for (auto name : kDimensionNames) {
    h += ',';
    h += name;
  }
  return h + ",matched_count";
}

// One row per (novel, segment), segment_index 0-based. Novel ids must not
// contain commas or newlines.
inline std::string serialize_profiles(const std::vector<SegmentProfile>& profiles) {
  std::string out = profile_cache_header() + '\n';
  for (const auto& p : profiles) {
    if (p.novel_id.find_first_of(",\n\r") != std::string::npos)
      throw ConfigError("novel id cannot be written to CSV: " + p.novel_id);
    for (std::size_t s = 0; s < p.n_segments(); ++s) {
      out += p.novel_id;
      out += ',';
      out += std::to_string(s);
      for (double v : p.segments[s].values) {
        out += ',';
        out += text::format_exact(v);
      }
      out += ',';
      out += std::to_string(p.matched_counts[s]);
      out += '\n';
    }
  }
  return out;
}

inline std::vector<SegmentProfile> parse_profiles(std::istream& in) {
  std::vector<SegmentProfile> profiles;
  std::string line;
  std::size_t line_no = 0;
  if (!text::read_line(in, line, line_no) || line != profile_cache_header())
    throw ParseError("profile cache header mismatch", 1);
  while (text::read_line(in, line, line_no)) {
    if (line.empty()) continue;
    const auto cells = text::split(line, ',');
    if (cells.size() != kDimensions + 3) throw ParseError("profile cache rows need 14 columns", line_no);
    std::size_t index = 0, matched = 0;
    auto parse_size = [&](const std::string& s, std::size_t& out) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError("bad integer '" + s + "'", line_no);
    };
    parse_size(cells[1], index);
    parse_size(cells.back(), matched);
    if (profiles.empty() || profiles.back().novel_id != cells[0]) {
      profiles.push_back({cells[0], {}, {}});
    }
    auto& p = profiles.back();
    if (index != p.segments.size()) throw ParseError("segment rows out of order for '" + cells[0] + "'", line_no);
    SentimentVector v;
    for (std::size_t d = 0; d < kDimensions; ++d) {
      const std::string& cell = cells[d + 2];
      char* end = nullptr;
      v[d] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) throw ParseError("bad number '" + cell + "'", line_no);
    }
    p.segments.push_back(v);
    p.matched_counts.push_back(matched);
  }
  return profiles;
}

}  // namespace plotarc
