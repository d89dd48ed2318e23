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

// Shared data model: token interning, sentences as symbol sequences,
// vocabularies with insertion-order ranks, and bigram frequency tables.
// Merging engines rewrite sequences but never change what they concatenate
// back to; validate_segmentation checks exactly that.

#ifndef LCPSEG_CORE_CORPUS_HPP_
#define LCPSEG_CORE_CORPUS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lcpseg {

using TokenId = int32_t;
inline constexpr TokenId kNoToken = -1;

// The blank symbol separating words in a sentence.
inline constexpr char kBlankSymbol = ' ';

enum class BoundaryMode {
  kRespectWordBoundaries,  // blanks are unmergeable boundaries
  kMergeAcrossBlanks,      // blanks are ordinary symbols
};

// Interns token texts into dense, stable ids (append-only).
class SymbolTable {
 public:
  TokenId intern(std::string_view text);
  std::optional<TokenId> find(std::string_view text) const;
  const std::string& text(TokenId id) const;
  size_t size() const { return texts_.size(); }

 private:
  std::vector<std::string> texts_;
  std::unordered_map<std::string, TokenId> index_;
};

// One sentence as an ordered sequence of token ids. origin is the zero-based
// index of the source line.
struct SymbolSequence {
  std::vector<TokenId> ids;
  size_t origin = 0;
};

// Splits a raw sentence into base symbols, one token text per Unicode scalar
// value. Blanks come out as ordinary single-symbol tokens; whether they act
// as merge boundaries is decided by the corpus BoundaryMode.
std::vector<std::string> tokenize_sentence(std::string_view raw);

// True iff the concatenated token texts reproduce raw exactly.
bool validate_segmentation(std::span<const std::string> tokens, std::string_view raw);

// A tokenized corpus: raw lines plus their depth-0 sequences over one symbol
// table. Immutable after construction; engines copy the table and sequences
// into their own working state.
class Corpus {
 public:
  static Corpus from_lines(std::vector<std::string> lines, BoundaryMode mode);
  // Reads UTF-8 text, one sentence per LF-terminated line. Line count is
  // preserved, including empty lines. Encoding errors name the line.
  static Corpus from_file(const std::string& path, BoundaryMode mode);

  const std::vector<std::string>& raw_lines() const { return raw_lines_; }
  const std::vector<SymbolSequence>& sequences() const { return sequences_; }
  const SymbolTable& symbols() const { return symbols_; }
  BoundaryMode mode() const { return mode_; }
  size_t line_count() const { return raw_lines_.size(); }

  // Id of the blank when it occurs in the corpus and the mode makes it a
  // boundary; kNoToken otherwise.
  TokenId boundary_id() const { return boundary_id_; }

  // Distinct depth-0 symbol ids sorted by text (UTF-8 byte order, which is
  // code point order). This is the base alphabet every vocabulary starts from.
  const std::vector<TokenId>& base_symbols() const { return base_symbols_; }

 private:
  std::vector<std::string> raw_lines_;
  std::vector<SymbolSequence> sequences_;
  SymbolTable symbols_;
  std::vector<TokenId> base_symbols_;
  BoundaryMode mode_ = BoundaryMode::kRespectWordBoundaries;
  TokenId boundary_id_ = kNoToken;
};

// Subword set with insertion-order ranks; ranks are unique and contiguous.
class Vocabulary {
 public:
  // Returns true when id was newly inserted.
  bool insert(TokenId id);
  bool contains(TokenId id) const;
  int32_t rank(TokenId id) const;  // -1 when absent
  std::span<const TokenId> entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::vector<TokenId> entries_;
  std::vector<int32_t> ranks_;  // indexed by id, grown on demand
};

// Counts of ordered adjacent token pairs over a corpus snapshot.
class FreqTable {
 public:
  static uint64_t pack(TokenId left, TokenId right) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(left)) << 32) |
           static_cast<uint32_t>(right);
  }
  static std::pair<TokenId, TokenId> unpack(uint64_t key) {
    return {static_cast<TokenId>(key >> 32), static_cast<TokenId>(key & 0xFFFFFFFFu)};
  }

  void add(TokenId left, TokenId right, uint32_t n = 1);
  uint32_t count(TokenId left, TokenId right) const;
  uint64_t total() const { return total_; }
  size_t distinct() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  void reserve(size_t n) { counts_.reserve(n); }

  void for_each(const std::function<void(TokenId, TokenId, uint32_t)>& fn) const;

 private:
  std::unordered_map<uint64_t, uint32_t> counts_;
  uint64_t total_ = 0;
};

}  // namespace lcpseg

#endif  // LCPSEG_CORE_CORPUS_HPP_
