#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plotarc/error.hpp"

namespace plotarc::text {

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Reads one line, dropping a trailing '\r'. Strips a UTF-8 BOM on the first line.
inline bool read_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  if (line_no == 0 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw LoadError("write failed: " + path);
}

// Shortest-safe decimal: 17 significant digits round-trips every double.
inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    bool all_zero = true;
    for (char ch : s.substr(1))
      if (ch != '0' && ch != '.') all_zero = false;
    if (all_zero) s.erase(0, 1);
  }
  return s;
}

}  // namespace plotarc::text
