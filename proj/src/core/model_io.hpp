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

// Model persistence and rendered-corpus output.
//
// BPE model files:  "#lcpseg-bpe v1" then one "<left>\t<right>" rule per
// line in priority order.  LCP model files:  "#lcpseg-lcp v1", one
// "v=<int> l=<int> k=<real> seed=<int>" line, then vocabulary entries one
// per line in rank order.  Token texts are escaped (backslash, tab, LF, CR)
// and files round-trip byte-exactly.

#ifndef LCPSEG_CORE_MODEL_IO_HPP_
#define LCPSEG_CORE_MODEL_IO_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/bpe.hpp"
#include "core/lcp.hpp"

namespace lcpseg {

inline constexpr std::string_view kBpeModelHeader = "#lcpseg-bpe v1";
inline constexpr std::string_view kLcpModelHeader = "#lcpseg-lcp v1";
inline constexpr std::string_view kDefaultSeparator = " ";
inline constexpr std::string_view kDefaultBlankMarker = "\xE2\x96\x81";  // U+2581

enum class ModelKind { kBpe, kLcp };

std::string bpe_model_to_string(const MergeTable& table);
MergeTable bpe_model_from_string(std::string_view content, const std::string& origin);

std::string lcp_model_to_string(const LcpModel& model);
LcpModel lcp_model_from_string(std::string_view content, const std::string& origin);

void save_bpe_model(const MergeTable& table, const std::string& path);
MergeTable load_bpe_model(const std::string& path);
void save_lcp_model(const LcpModel& model, const std::string& path);
LcpModel load_lcp_model(const std::string& path);

// Reads the header line to tell the two formats apart.
ModelKind sniff_model(const std::string& path);

// Joins tokens with `separator`, rendering blanks inside tokens (and blank
// singletons) as `blank_marker` so the separator stays unambiguous.
std::string render_tokens(std::span<const std::string> tokens, std::string_view separator,
                          std::string_view blank_marker);

// Inverse of render_tokens for the default single-character-safe cases:
// splits on `separator` and maps `blank_marker` back to blanks.
std::vector<std::string> parse_rendered(std::string_view line, std::string_view separator,
                                        std::string_view blank_marker);

// Writes one rendered line per sequence, LF-terminated, resolving token ids
// through `symbols`.
void write_rendered_file(const std::string& path,
                         std::span<const SymbolSequence> sequences,
                         const SymbolTable& symbols, std::string_view separator,
                         std::string_view blank_marker);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace lcpseg

#endif  // LCPSEG_CORE_MODEL_IO_HPP_
