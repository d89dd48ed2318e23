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

#include "core/bpe.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace lcpseg {

FreqTable count_bigrams(std::span<const SymbolSequence> seqs, TokenId boundary) {
  FreqTable table;
  for (const auto& seq : seqs) {
    const auto& ids = seq.ids;
    for (size_t i = 0; i + 1 < ids.size(); ++i) {
      if (ids[i] == boundary || ids[i + 1] == boundary) continue;
      table.add(ids[i], ids[i + 1]);
    }
  }
  return table;
}

std::optional<std::pair<TokenId, TokenId>> most_frequent_bigram(const FreqTable& table,
                                                                const SymbolTable& symbols) {
  std::optional<std::pair<TokenId, TokenId>> best;
  uint32_t best_count = 0;
  table.for_each([&](TokenId left, TokenId right, uint32_t count) {
    if (!best || count > best_count) {
      best = {left, right};
      best_count = count;
      return;
    }
    if (count < best_count) return;
    // Equal counts: keep the lexicographically smaller (left, right).
    const auto& bl = symbols.text(best->first);
    const auto& br = symbols.text(best->second);
    const auto& cl = symbols.text(left);
    const auto& cr = symbols.text(right);
    if (cl < bl || (cl == bl && cr < br)) best = {left, right};
  });
  return best;
}

std::vector<TokenId> merge_all(std::span<const TokenId> ids,
                               std::pair<TokenId, TokenId> pair, TokenId merged) {
  std::vector<TokenId> out;
  out.reserve(ids.size());
  size_t i = 0;
  while (i < ids.size()) {
    if (i + 1 < ids.size() && ids[i] == pair.first && ids[i + 1] == pair.second) {
      out.push_back(merged);
      i += 2;
    } else {
      out.push_back(ids[i]);
      ++i;
    }
  }
  return out;
}

void merge_all(std::vector<SymbolSequence>& seqs, std::pair<TokenId, TokenId> pair,
               TokenId merged) {
  for (auto& seq : seqs) {
    bool has_pair = false;
    for (size_t i = 0; i + 1 < seq.ids.size(); ++i) {
      if (seq.ids[i] == pair.first && seq.ids[i + 1] == pair.second) {
        has_pair = true;
        break;
      }
    }
    if (has_pair) seq.ids = merge_all(seq.ids, pair, merged);
  }
}

MergeTable train_bpe(const Corpus& corpus, const BpeTrainOptions& options) {
  SymbolTable symbols = corpus.symbols();
  std::vector<SymbolSequence> seqs = corpus.sequences();
  const TokenId boundary = corpus.boundary_id();

  MergeTable table;
  Vocabulary vocab;
  for (const TokenId id : corpus.base_symbols()) {
    vocab.insert(id);
    table.base_vocab.push_back(symbols.text(id));
  }
  if (options.vocab_size < vocab.size()) {
    throw ParamError("vocab_size " + std::to_string(options.vocab_size) +
                     " is below the base alphabet size " + std::to_string(vocab.size()));
  }

  while (vocab.size() < options.vocab_size) {
    const FreqTable counts = count_bigrams(seqs, boundary);
    const auto best = most_frequent_bigram(counts, symbols);
    if (!best) break;
    if (counts.count(best->first, best->second) < 2 && !options.merge_singletons) break;

    const std::string left = symbols.text(best->first);
    const std::string right = symbols.text(best->second);
    const TokenId merged = symbols.intern(left + right);
    merge_all(seqs, *best, merged);
    table.rules.push_back({left, right, static_cast<int32_t>(table.rules.size())});
    vocab.insert(merged);
  }
  return table;
}

BpeApplier::BpeApplier(const MergeTable& table, SymbolTable& symbols, TokenId boundary)
    : boundary_(boundary) {
  rules_.reserve(table.rules.size());
  for (const auto& rule : table.rules) {
    if (rule.left.empty() || rule.right.empty()) {
      throw ParamError("merge rule with empty side");
    }
    rules_.push_back({symbols.intern(rule.left), symbols.intern(rule.right),
                      symbols.intern(rule.product())});
  }
}

std::vector<TokenId> BpeApplier::apply(std::span<const TokenId> ids, double dropout,
                                       Rng& rng) const {
  std::vector<TokenId> current(ids.begin(), ids.end());
  std::vector<TokenId> next;
  for (const auto& rule : rules_) {
    if (current.size() < 2) break;
    next.clear();
    next.reserve(current.size());
    bool changed = false;
    size_t i = 0;
    while (i < current.size()) {
      if (i + 1 < current.size() && current[i] == rule.left &&
          current[i + 1] == rule.right && current[i] != boundary_ &&
          current[i + 1] != boundary_ && !(dropout > 0.0 && rng.bernoulli(dropout))) {
        next.push_back(rule.merged);
        i += 2;
        changed = true;
      } else {
        next.push_back(current[i]);
        ++i;
      }
    }
    if (changed) current.swap(next);
  }
  return current;
}

std::vector<std::string> apply_bpe(std::span<const std::string> symbols,
                                   const MergeTable& table, double dropout, Rng& rng,
                                   BoundaryMode mode) {
  if (dropout < 0.0 || dropout > 1.0) {
    throw ParamError("dropout probability must be in [0,1]");
  }
  SymbolTable working;
  std::vector<TokenId> ids;
  ids.reserve(symbols.size());
  for (const auto& s : symbols) {
    if (s.empty()) throw ParamError("empty token in input sequence");
    ids.push_back(working.intern(s));
  }
  TokenId boundary = kNoToken;
  if (mode == BoundaryMode::kRespectWordBoundaries) {
    boundary = working.find(std::string(1, kBlankSymbol)).value_or(kNoToken);
  }
  const BpeApplier applier(table, working, boundary);
  const auto out = applier.apply(ids, dropout, rng);
  std::vector<std::string> texts;
  texts.reserve(out.size());
  for (const TokenId id : out) texts.push_back(working.text(id));
  return texts;
}

}  // namespace lcpseg
