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

// Frequency-greedy BPE: training learns an ordered merge rule list; applying
// replays the rules, optionally dropping individual merge occurrences with a
// fixed probability (BPE-dropout).

#ifndef LCPSEG_CORE_BPE_HPP_
#define LCPSEG_CORE_BPE_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/corpus.hpp"
#include "core/rng.hpp"

namespace lcpseg {

struct MergeRule {
  std::string left;
  std::string right;
  int32_t priority = 0;  // training order; 0 was learned first

  std::string product() const { return left + right; }
  bool operator==(const MergeRule&) const = default;
};

struct MergeTable {
  std::vector<MergeRule> rules;
  // Text-sorted base symbols seen at training time. Informational; the rule
  // list alone drives segmentation, and the serialized format carries only
  // the rules.
  std::vector<std::string> base_vocab;
};

struct BpeTrainOptions {
  size_t vocab_size = 0;
  // Merging a pair that occurs once adds an entry used once; off by default.
  bool merge_singletons = false;
};

// Counts every ordered adjacent token pair over all sequences. Pairs touching
// `boundary` are excluded (they span an unmergeable word boundary).
FreqTable count_bigrams(std::span<const SymbolSequence> seqs, TokenId boundary = kNoToken);

// Maximal-count pair; ties broken lexicographically on (left, right) texts.
// nullopt when the table is empty.
std::optional<std::pair<TokenId, TokenId>> most_frequent_bigram(const FreqTable& table,
                                                                const SymbolTable& symbols);

// Replaces adjacent occurrences of pair left to right, non-overlapping; in
// "a a a" with pair (a,a) positions 1-2 merge and position 3 stays.
std::vector<TokenId> merge_all(std::span<const TokenId> ids,
                               std::pair<TokenId, TokenId> pair, TokenId merged);
void merge_all(std::vector<SymbolSequence>& seqs, std::pair<TokenId, TokenId> pair,
               TokenId merged);

MergeTable train_bpe(const Corpus& corpus, const BpeTrainOptions& options);

// A merge table bound to a symbol table for fast id-level application.
class BpeApplier {
 public:
  BpeApplier(const MergeTable& table, SymbolTable& symbols, TokenId boundary);

  // Rules in priority order; each matching occurrence is independently
  // dropped with probability `dropout`. dropout = 0 reproduces the training
  // segmentation; dropout = 1 returns the input unchanged.
  std::vector<TokenId> apply(std::span<const TokenId> ids, double dropout, Rng& rng) const;

 private:
  struct CompiledRule {
    TokenId left, right, merged;
  };
  std::vector<CompiledRule> rules_;
  TokenId boundary_;
};

// Convenience string-level form used by tests and single-line callers.
std::vector<std::string> apply_bpe(std::span<const std::string> symbols,
                                   const MergeTable& table, double dropout, Rng& rng,
                                   BoundaryMode mode);

}  // namespace lcpseg

#endif  // LCPSEG_CORE_BPE_HPP_
