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

// LCP-dropout: multiple subword segmentation via locally-consistent parsing.
//
// One step draws a random 0/1 label per vocabulary entry (equal tokens share
// a bit), selects the most frequent adjacent pairs labeled 1,0, and merges
// every occurrence of the selected pairs at once. Because a position right
// after a 1,0 landmark carries a 0, landmarks never overlap and all merges in
// a step are disjoint. A pass repeats steps until the per-pass vocabulary
// budget is met; passes restart from the raw corpus and their vocabularies
// accumulate until the total budget is met, yielding several consistent
// segmentations of the same corpus.

#ifndef LCPSEG_CORE_LCP_HPP_
#define LCPSEG_CORE_LCP_HPP_

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/corpus.hpp"
#include "core/rng.hpp"

namespace lcpseg {

// A total 0/1 labeling of a vocabulary. Tokens are labeled by id, so equal
// token texts always receive equal bits.
class Labeling {
 public:
  static constexpr uint8_t kUnlabeled = 0xFF;

  explicit Labeling(size_t id_capacity) : bits_(id_capacity, kUnlabeled) {}

  void set(TokenId id, uint8_t bit);
  // 0, 1, or -1 when the id carries no label.
  int bit(TokenId id) const {
    if (id < 0 || static_cast<size_t>(id) >= bits_.size()) return -1;
    const uint8_t b = bits_[static_cast<size_t>(id)];
    return b == kUnlabeled ? -1 : b;
  }
  size_t labeled_count() const;

  // Identifier of the random-stream position the bits were drawn at.
  uint64_t seed_record = 0;

 private:
  std::vector<uint8_t> bits_;
};

struct LcpParams {
  size_t vocab_size = 0;     // v: total vocabulary budget
  size_t partial_vocab = 0;  // l: per-pass budget; 0 = vocab_size / 2
  double topk = 0.01;        // k: fraction of distinct candidate pairs kept
  size_t max_passes = 100;
  size_t max_inner = 100000;
  size_t max_relabel = 32;
  size_t stall_limit = 10;

  size_t effective_partial() const;
  void validate() const;  // throws ParamError
};

// Per-pass execution record.
struct PassTrace {
  size_t depth = 0;                     // labelings executed
  std::vector<size_t> added_per_depth;  // new entries per productive labeling
  size_t relabel_retries = 0;           // labelings that merged nothing
};

struct SegmentationPass {
  std::vector<SymbolSequence> sequences;  // Y_m
  std::vector<TokenId> vocab;             // V_m in rank order
  PassTrace trace;
};

// The algorithm output: m parallel segmentations of one corpus, the union
// vocabulary, and the traces. All passes share `symbols`.
struct MultiSegmentation {
  std::vector<SegmentationPass> passes;
  SymbolTable symbols;
  Vocabulary global_vocab;  // V; base symbols first, then merges in addition order
  bool limit_tripped = false;
  std::string stop_reason;  // "vocab-budget", "max-passes", "stall-limit", ...
};

// Supplies one labeling per inner-loop step.
class LabelSource {
 public:
  virtual ~LabelSource() = default;
  virtual Labeling next(const Vocabulary& vocab, const SymbolTable& symbols) = 0;
};

// Draws one fair bit per vocabulary entry in rank order, so the labeling is a
// pure function of (vocab, seed, stream position).
Labeling assign_labels(const Vocabulary& vocab, const SymbolTable& symbols, Rng& rng);

class RandomLabelSource : public LabelSource {
 public:
  explicit RandomLabelSource(uint64_t seed) : rng_(seed) {}
  Labeling next(const Vocabulary& vocab, const SymbolTable& symbols) override {
    return assign_labels(vocab, symbols, rng_);
  }

 private:
  Rng rng_;
};

// Replays a fixed list of labelings, one map of token text -> bit per step.
// Each step must cover the current vocabulary exactly.
class ScriptedLabelSource : public LabelSource {
 public:
  using Step = std::unordered_map<std::string, uint8_t>;
  explicit ScriptedLabelSource(std::vector<Step> steps) : steps_(std::move(steps)) {}
  static ScriptedLabelSource from_file(const std::string& path);

  Labeling next(const Vocabulary& vocab, const SymbolTable& symbols) override;
  size_t steps_used() const { return used_; }

 private:
  std::vector<Step> steps_;
  size_t used_ = 0;
};

// Distinct adjacent pairs labeled 1,0 ranked by corpus frequency (ties
// lexicographic on texts); returns the top ceil(topk * candidate_count).
// The two-argument form counts the corpus itself; the FreqTable form reuses
// counts from an unchanged corpus.
std::vector<std::pair<TokenId, TokenId>> select_candidates(
    const FreqTable& counts, const Labeling& labeling, double topk,
    const SymbolTable& symbols);
std::vector<std::pair<TokenId, TokenId>> select_candidates(
    std::span<const SymbolSequence> seqs, const Labeling& labeling, double topk,
    const SymbolTable& symbols, TokenId boundary = kNoToken);

struct LcpStepResult {
  std::vector<TokenId> added;     // new vocabulary entries, in selection order
  size_t merged_occurrences = 0;  // occurrences rewritten by this step
};

// One labeling round: select candidates, merge all their occurrences
// simultaneously, append new entries to vocab.
LcpStepResult lcp_step(std::vector<SymbolSequence>& seqs, Vocabulary& vocab,
                       SymbolTable& symbols, const Labeling& labeling, double topk,
                       TokenId boundary, const FreqTable& counts);
LcpStepResult lcp_step(std::vector<SymbolSequence>& seqs, Vocabulary& vocab,
                       SymbolTable& symbols, const Labeling& labeling, double topk,
                       TokenId boundary = kNoToken);

MultiSegmentation lcp_dropout(const Corpus& corpus, const LcpParams& params,
                              LabelSource& labels);

// Trained-model view used at segmentation time; self-contained (no corpus
// binding) so it can be built from a model file alone.
struct LcpModel {
  std::vector<std::string> entries;  // V in rank order
  size_t vocab_size = 0;             // v
  size_t partial_vocab = 0;          // l
  double topk = 0.01;                // k
  uint64_t seed = 0;

  bool operator==(const LcpModel&) const = default;
};

LcpModel make_lcp_model(const MultiSegmentation& result, const LcpParams& params,
                        uint64_t seed);

enum class TestTimeMode { kGreedyLongestMatch, kLcpSample };

// Left-to-right longest prefix match against the model vocabulary. Unknown
// symbols pass through as singletons; in respect mode matches never span a
// blank.
std::vector<std::string> segment_greedy(std::span<const std::string> symbols,
                                        const LcpModel& model, BoundaryMode mode);

// Labeling rounds over the model vocabulary, merging only pairs whose
// concatenation is already an entry; stops after max_relabel consecutive
// rounds without a merge.
std::vector<std::string> segment_lcp_sample(std::span<const std::string> symbols,
                                            const LcpModel& model, BoundaryMode mode,
                                            size_t max_relabel, Rng& rng);

}  // namespace lcpseg

#endif  // LCPSEG_CORE_LCP_HPP_
