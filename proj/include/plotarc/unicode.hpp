#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "plotarc/error.hpp"

namespace plotarc::unicode {

inline bool is_valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) return false;
  }
  return true;
}

inline std::string to_nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  if (nfc->isNormalized(in, status) && U_SUCCESS(status)) return std::string(s);
  status = U_ZERO_ERROR;
  const icu::UnicodeString out = nfc->normalize(in, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

inline bool is_whitespace(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

// General category P* (connector, dash, open, close, initial, final, other).
inline bool is_punctuation(UChar32 c) { return u_ispunct(c) != 0; }

// Calls fn(codepoint, begin_offset, end_offset) per code point. Bytes that do
// not decode are reported as a negative code point and never classify as
// whitespace or punctuation.
template <typename Fn>
void for_each_codepoint(std::string_view s, Fn&& fn) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < len) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    fn(c, static_cast<std::size_t>(begin), static_cast<std::size_t>(i));
  }
}

}  // namespace plotarc::unicode
