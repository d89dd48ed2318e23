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

#include "core/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "core/bpe.hpp"
#include "core/error.hpp"
#include "core/text.hpp"

namespace lcpseg {

void Labeling::set(TokenId id, uint8_t bit) {
  if (bit > 1) throw ParamError("label bit must be 0 or 1");
  if (id < 0 || static_cast<size_t>(id) >= bits_.size()) {
    throw ParamError("label id out of range");
  }
  bits_[static_cast<size_t>(id)] = bit;
}

size_t Labeling::labeled_count() const {
  size_t n = 0;
  for (const uint8_t b : bits_) n += (b != kUnlabeled);
  return n;
}

size_t LcpParams::effective_partial() const {
  if (partial_vocab > 0) return partial_vocab;
  return std::max<size_t>(1, vocab_size / 2);
}

void LcpParams::validate() const {
  if (vocab_size == 0) throw ParamError("vocab_size must be positive");
  if (effective_partial() > vocab_size) {
    throw ParamError("partial_vocab must not exceed vocab_size");
  }
  if (!(topk > 0.0) || topk > 1.0) throw ParamError("topk must be in (0,1]");
  if (max_passes == 0) throw ParamError("max_passes must be positive");
  if (max_inner == 0) throw ParamError("max_inner must be positive");
  if (max_relabel == 0) throw ParamError("max_relabel must be positive");
  if (stall_limit == 0) throw ParamError("stall_limit must be positive");
}

Labeling assign_labels(const Vocabulary& vocab, const SymbolTable& symbols, Rng& rng) {
  if (vocab.size() == 0) throw ParamError("cannot label an empty vocabulary");
  Labeling labeling(symbols.size());
  labeling.seed_record = rng.draws();
  for (const TokenId id : vocab.entries()) {
    labeling.set(id, static_cast<uint8_t>(rng.next_bit()));
  }
  return labeling;
}

ScriptedLabelSource ScriptedLabelSource::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open label script: " + path);
  std::vector<Step> steps;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Step step;
    size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      const size_t end = line.find(' ', pos);
      const std::string item = line.substr(pos, end == std::string::npos ? end : end - pos);
      pos = end == std::string::npos ? line.size() : end + 1;
      const size_t colon = item.rfind(':');
      if (colon == std::string::npos || colon + 2 != item.size() ||
          (item[colon + 1] != '0' && item[colon + 1] != '1')) {
        throw ParseError(path, line_no, "expected <token>:<bit> items");
      }
      const std::string token = unescape_token(item.substr(0, colon));
      if (token.empty()) throw ParseError(path, line_no, "empty token in label script");
      const uint8_t bit = static_cast<uint8_t>(item[colon + 1] - '0');
      if (!step.emplace(token, bit).second) {
        throw ParseError(path, line_no, "duplicate token \"" + token + "\"");
      }
    }
    if (step.empty()) throw ParseError(path, line_no, "no labels on line");
    steps.push_back(std::move(step));
  }
  if (in.bad()) throw IoError("error while reading label script: " + path);
  return ScriptedLabelSource(std::move(steps));
}

Labeling ScriptedLabelSource::next(const Vocabulary& vocab, const SymbolTable& symbols) {
  if (used_ >= steps_.size()) {
    throw ParamError("label script exhausted after " + std::to_string(used_) + " steps");
  }
  const Step& step = steps_[used_];
  Labeling labeling(symbols.size());
  labeling.seed_record = used_;
  size_t matched = 0;
  for (const TokenId id : vocab.entries()) {
    const auto it = step.find(symbols.text(id));
    if (it == step.end()) {
      throw ParamError("label script step " + std::to_string(used_ + 1) +
                       " misses vocabulary entry \"" + symbols.text(id) + "\"");
    }
    labeling.set(id, it->second);
    ++matched;
  }
  if (matched != step.size()) {
    throw ParamError("label script step " + std::to_string(used_ + 1) +
                     " labels tokens outside the current vocabulary");
  }
  ++used_;
  return labeling;
}

namespace {

struct RankedCandidate {
  TokenId left, right;
  uint32_t count;
};

std::vector<RankedCandidate> ranked_candidates(const FreqTable& counts,
                                               const Labeling& labeling,
                                               const SymbolTable& symbols) {
  std::vector<RankedCandidate> candidates;
  counts.for_each([&](TokenId left, TokenId right, uint32_t count) {
    const int lb = labeling.bit(left);
    const int rb = labeling.bit(right);
    if (lb < 0 || rb < 0) {
      throw ContractError("token \"" + symbols.text(lb < 0 ? left : right) +
                          "\" has no label");
    }
    if (lb == 1 && rb == 0) candidates.push_back({left, right, count});
  });
  std::sort(candidates.begin(), candidates.end(),
            [&](const RankedCandidate& a, const RankedCandidate& b) {
              if (a.count != b.count) return a.count > b.count;
              const auto& al = symbols.text(a.left);
              const auto& bl = symbols.text(b.left);
              if (al != bl) return al < bl;
              return symbols.text(a.right) < symbols.text(b.right);
            });
  return candidates;
}

// ceil(topk * count) guarded against double rounding at exact integers.
size_t topk_keep(double topk, size_t count) {
  if (count == 0) return 0;
  const double raw = topk * static_cast<double>(count);
  size_t keep = static_cast<size_t>(std::ceil(raw - 1e-9));
  keep = std::max<size_t>(keep, 1);
  return std::min(keep, count);
}

}  // namespace

std::vector<std::pair<TokenId, TokenId>> select_candidates(
    std::span<const SymbolSequence> seqs, const Labeling& labeling, double topk,
    const SymbolTable& symbols, TokenId boundary, const FreqTable& counts) {
  if (!(topk > 0.0) || topk > 1.0) throw ParamError("topk must be in (0,1]");
  (void)seqs;
  (void)boundary;
  const auto candidates = ranked_candidates(counts, labeling, symbols);
  const size_t keep = topk_keep(topk, candidates.size());
  std::vector<std::pair<TokenId, TokenId>> out;
  out.reserve(keep);
  for (size_t i = 0; i < keep; ++i) out.emplace_back(candidates[i].left, candidates[i].right);
  return out;
}

std::vector<std::pair<TokenId, TokenId>> select_candidates(
    std::span<const SymbolSequence> seqs, const Labeling& labeling, double topk,
    const SymbolTable& symbols, TokenId boundary) {
  const FreqTable counts = count_bigrams(seqs, boundary);
  return select_candidates(seqs, labeling, topk, symbols, boundary, counts);
}

LcpStepResult lcp_step(std::vector<SymbolSequence>& seqs, Vocabulary& vocab,
                       SymbolTable& symbols, const Labeling& labeling, double topk,
                       TokenId boundary, const FreqTable& counts) {
  const auto selected = select_candidates(seqs, labeling, topk, symbols, boundary, counts);
  LcpStepResult result;
  if (selected.empty()) return result;

  // Merged ids are interned in selection order so vocabulary ranks are
  // deterministic.
  std::unordered_map<uint64_t, TokenId> merge_of;
  merge_of.reserve(selected.size());
  for (const auto& [left, right] : selected) {
    if (left == right) {
      throw ContractError("identical pair selected; labels 1,0 cannot coincide");
    }
    const TokenId merged = symbols.intern(symbols.text(left) + symbols.text(right));
    merge_of.emplace(FreqTable::pack(left, right), merged);
    if (vocab.insert(merged)) result.added.push_back(merged);
  }

  // Landmarks labeled 1,0 never overlap, so a left-to-right scan applies all
  // selected merges simultaneously.
  std::vector<TokenId> next;
  for (auto& seq : seqs) {
    const auto& ids = seq.ids;
    if (ids.size() < 2) continue;
    bool hit = false;
    for (size_t i = 0; i + 1 < ids.size(); ++i) {
      if (merge_of.count(FreqTable::pack(ids[i], ids[i + 1]))) {
        hit = true;
        break;
      }
    }
    if (!hit) continue;
    next.clear();
    next.reserve(ids.size());
    size_t i = 0;
    while (i < ids.size()) {
      if (i + 1 < ids.size()) {
        const auto it = merge_of.find(FreqTable::pack(ids[i], ids[i + 1]));
        if (it != merge_of.end()) {
          next.push_back(it->second);
          i += 2;
          ++result.merged_occurrences;
          continue;
        }
      }
      next.push_back(ids[i]);
      ++i;
    }
    seq.ids = next;
  }
  return result;
}

LcpStepResult lcp_step(std::vector<SymbolSequence>& seqs, Vocabulary& vocab,
                       SymbolTable& symbols, const Labeling& labeling, double topk,
                       TokenId boundary) {
  const FreqTable counts = count_bigrams(seqs, boundary);
  return lcp_step(seqs, vocab, symbols, labeling, topk, boundary, counts);
}

MultiSegmentation lcp_dropout(const Corpus& corpus, const LcpParams& params,
                              LabelSource& labels) {
  params.validate();
  const auto& base = corpus.base_symbols();
  if (params.vocab_size < base.size()) {
    throw ParamError("vocab_size " + std::to_string(params.vocab_size) +
                     " is below the base alphabet size " + std::to_string(base.size()));
  }

  MultiSegmentation result;
  result.symbols = corpus.symbols();
  for (const TokenId id : base) result.global_vocab.insert(id);
  const TokenId boundary = corpus.boundary_id();
  const size_t partial = params.effective_partial();

  size_t stall = 0;
  for (size_t pass_index = 0;; ++pass_index) {
    if (pass_index >= params.max_passes) {
      result.limit_tripped = true;
      result.stop_reason = "max-passes";
      break;
    }

    SegmentationPass pass;
    pass.sequences = corpus.sequences();
    Vocabulary pass_vocab;
    for (const TokenId id : base) pass_vocab.insert(id);

    // The frequency table only depends on the sequences, so it survives
    // unproductive labelings and is rebuilt after an actual merge.
    std::optional<FreqTable> counts;
    size_t no_merge_streak = 0;
    while (pass_vocab.size() < partial) {
      if (pass_vocab.size() == 0) break;  // no symbols at all, nothing to label
      if (pass.trace.depth >= params.max_inner) {
        result.limit_tripped = true;
        result.stop_reason = "max-inner";
        break;
      }
      const Labeling labeling = labels.next(pass_vocab, result.symbols);
      ++pass.trace.depth;
      if (!counts) counts = count_bigrams(pass.sequences, boundary);
      const LcpStepResult step = lcp_step(pass.sequences, pass_vocab, result.symbols,
                                          labeling, params.topk, boundary, *counts);
      if (step.merged_occurrences == 0) {
        ++pass.trace.relabel_retries;
        if (++no_merge_streak > params.max_relabel) break;
      } else {
        no_merge_streak = 0;
        counts.reset();
        pass.trace.added_per_depth.push_back(step.added.size());
      }
    }

    const size_t before = result.global_vocab.size();
    pass.vocab.assign(pass_vocab.entries().begin(), pass_vocab.entries().end());
    for (const TokenId id : pass_vocab.entries()) result.global_vocab.insert(id);
    result.passes.push_back(std::move(pass));

    if (!result.stop_reason.empty()) break;  // inner safety limit tripped
    if (result.global_vocab.size() >= params.vocab_size) {
      result.stop_reason = "vocab-budget";
      break;
    }
    if (result.global_vocab.size() == before) {
      if (++stall >= params.stall_limit) {
        result.limit_tripped = true;
        result.stop_reason = "stall-limit";
        break;
      }
    } else {
      stall = 0;
    }
  }
  return result;
}

LcpModel make_lcp_model(const MultiSegmentation& result, const LcpParams& params,
                        uint64_t seed) {
  LcpModel model;
  model.entries.reserve(result.global_vocab.size());
  for (const TokenId id : result.global_vocab.entries()) {
    model.entries.push_back(result.symbols.text(id));
  }
  model.vocab_size = params.vocab_size;
  model.partial_vocab = params.effective_partial();
  model.topk = params.topk;
  model.seed = seed;
  return model;
}

namespace {

bool is_blank_token(const std::string& token) {
  return token.size() == 1 && token[0] == kBlankSymbol;
}

}  // namespace

std::vector<std::string> segment_greedy(std::span<const std::string> symbols,
                                        const LcpModel& model, BoundaryMode mode) {
  std::unordered_set<std::string> entries(model.entries.begin(), model.entries.end());
  size_t max_len = 1;
  for (const auto& entry : model.entries) {
    max_len = std::max(max_len, scalar_count(entry));
  }
  const bool respect = mode == BoundaryMode::kRespectWordBoundaries;

  std::vector<std::string> out;
  size_t i = 0;
  while (i < symbols.size()) {
    if (respect && is_blank_token(symbols[i])) {
      out.push_back(symbols[i]);
      ++i;
      continue;
    }
    std::string prefix;
    size_t best_len = 0;
    std::string best;
    for (size_t j = i; j < symbols.size() && j - i < max_len; ++j) {
      if (respect && is_blank_token(symbols[j])) break;
      prefix += symbols[j];
      if (entries.count(prefix)) {
        best_len = j - i + 1;
        best = prefix;
      }
    }
    if (best_len == 0) {
      out.push_back(symbols[i]);  // unknown symbol passes through
      ++i;
    } else {
      out.push_back(std::move(best));
      i += best_len;
    }
  }
  return out;
}

std::vector<std::string> segment_lcp_sample(std::span<const std::string> symbols,
                                            const LcpModel& model, BoundaryMode mode,
                                            size_t max_relabel, Rng& rng) {
  if (max_relabel == 0) max_relabel = 32;
  std::unordered_set<std::string> entries(model.entries.begin(), model.entries.end());
  const bool respect = mode == BoundaryMode::kRespectWordBoundaries;

  std::vector<std::string> tokens(symbols.begin(), symbols.end());
  std::unordered_map<std::string, uint8_t> bits;
  size_t no_merge_streak = 0;
  while (tokens.size() >= 2 && no_merge_streak < max_relabel) {
    // One bit per model entry, drawn in rank order; unknown tokens stay
    // unlabeled and never participate in a merge.
    bits.clear();
    for (const auto& entry : model.entries) {
      bits.emplace(entry, static_cast<uint8_t>(rng.next_bit()));
    }

    // Rank sentence-local candidate pairs exactly like a training step.
    std::map<std::pair<std::string, std::string>, uint32_t> pair_counts;
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      const auto& a = tokens[i];
      const auto& b = tokens[i + 1];
      if (respect && (is_blank_token(a) || is_blank_token(b))) continue;
      const auto la = bits.find(a);
      const auto lb = bits.find(b);
      if (la == bits.end() || lb == bits.end()) continue;
      if (la->second != 1 || lb->second != 0) continue;
      if (!entries.count(a + b)) continue;
      ++pair_counts[{a, b}];
    }
    if (pair_counts.empty()) {
      ++no_merge_streak;
      continue;
    }
    std::vector<std::pair<std::pair<std::string, std::string>, uint32_t>> ranked(
        pair_counts.begin(), pair_counts.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    const size_t keep = std::min(
        ranked.size(),
        std::max<size_t>(1, static_cast<size_t>(std::ceil(
                                model.topk * static_cast<double>(ranked.size()) - 1e-9))));
    std::set<std::pair<std::string, std::string>> selected;
    for (size_t i = 0; i < keep; ++i) selected.insert(ranked[i].first);

    std::vector<std::string> next;
    next.reserve(tokens.size());
    size_t i = 0;
    bool merged = false;
    while (i < tokens.size()) {
      if (i + 1 < tokens.size() && selected.count({tokens[i], tokens[i + 1]})) {
        next.push_back(tokens[i] + tokens[i + 1]);
        i += 2;
        merged = true;
      } else {
        next.push_back(tokens[i]);
        ++i;
      }
    }
    tokens.swap(next);
    if (merged) {
      no_merge_streak = 0;
    } else {
      ++no_merge_streak;
    }
  }
  return tokens;
}

}  // namespace lcpseg
