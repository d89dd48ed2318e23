// Copyright 2026 The lcpseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/text.hpp"

#include <cstdint>

#include "core/error.hpp"

namespace lcpseg {

namespace {

// Decodes one scalar starting at text[pos]; returns its byte length or 0 when
// the sequence is malformed.
size_t decode_scalar(std::string_view text, size_t pos) {
  const auto byte = [&](size_t i) { return static_cast<uint8_t>(text[i]); };
  const uint8_t b0 = byte(pos);
  if (b0 < 0x80) return 1;

  size_t len;
  uint32_t cp;
  uint32_t min_cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min_cp = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min_cp = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min_cp = 0x10000;
  } else {
    return 0;  // stray continuation or invalid lead byte
  }
  if (pos + len > text.size()) return 0;
  for (size_t i = 1; i < len; ++i) {
    const uint8_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min_cp) return 0;                    // overlong encoding
  if (cp >= 0xD800 && cp <= 0xDFFF) return 0;   // surrogate
  if (cp > 0x10FFFF) return 0;
  return len;
}

[[noreturn]] void malformed_at(size_t pos) {
  throw ParseError("malformed UTF-8 sequence at byte offset " + std::to_string(pos));
}

}  // namespace

std::vector<std::string> split_scalars(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t len = decode_scalar(text, pos);
    if (len == 0) malformed_at(pos);
    out.emplace_back(text.substr(pos, len));
    pos += len;
  }
  return out;
}

size_t scalar_count(std::string_view text) {
  size_t count = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t len = decode_scalar(text, pos);
    if (len == 0) malformed_at(pos);
    pos += len;
    ++count;
  }
  return count;
}

bool is_valid_utf8(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t len = decode_scalar(text, pos);
    if (len == 0) return false;
    pos += len;
  }
  return true;
}

std::string escape_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (const char c : token) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_token(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (size_t i = 0; i < escaped.size(); ++i) {
    const char c = escaped[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 1 >= escaped.size()) throw ParseError("dangling escape in token");
    switch (escaped[++i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default:
        throw ParseError(std::string("unknown escape \"\\") + escaped[i] + "\" in token");
    }
  }
  return out;
}

}  // namespace lcpseg
