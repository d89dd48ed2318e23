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

#include "core/metrics.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "core/error.hpp"
#include "core/text.hpp"

namespace lcpseg {

SegmentationStats compute_stats(const MultiSegmentation& result, const Corpus& corpus) {
  const size_t m = result.passes.size();
  const size_t lines = corpus.line_count();
  for (size_t p = 0; p < m; ++p) {
    const auto& pass = result.passes[p];
    if (pass.sequences.size() != lines) {
      throw ContractError("pass " + std::to_string(p + 1) + " has " +
                          std::to_string(pass.sequences.size()) + " sequences for " +
                          std::to_string(lines) + " corpus lines");
    }
    for (size_t j = 0; j < lines; ++j) {
      std::string joined;
      for (const TokenId id : pass.sequences[j].ids) joined += result.symbols.text(id);
      if (joined != corpus.raw_lines()[j]) {
        throw ContractError("pass " + std::to_string(p + 1) + " line " +
                            std::to_string(j + 1) + " does not concatenate to the input");
      }
    }
  }

  SegmentationStats stats;
  stats.multiplicity_passes = static_cast<double>(m);
  if (m == 0) return stats;

  size_t distinct_total = 0;
  for (size_t j = 0; j < lines; ++j) {
    std::set<std::vector<TokenId>> variants;
    for (const auto& pass : result.passes) variants.insert(pass.sequences[j].ids);
    distinct_total += variants.size();
  }
  stats.multiplicity_distinct =
      lines == 0 ? 0.0 : static_cast<double>(distinct_total) / static_cast<double>(lines);

  size_t depth_total = 0;
  for (const auto& pass : result.passes) depth_total += pass.trace.depth;
  stats.mean_depth = static_cast<double>(depth_total) / static_cast<double>(m);

  size_t symbols_per_pass = 0;
  for (const auto& raw : corpus.raw_lines()) symbols_per_pass += scalar_count(raw);
  size_t tokens_total = 0;
  for (const auto& pass : result.passes) {
    for (const auto& seq : pass.sequences) tokens_total += seq.ids.size();
  }
  const size_t symbols_total = symbols_per_pass * m;
  if (tokens_total == 0) {
    stats.avg_subword_len = 1.0;
    stats.compression_ratio = 1.0;
  } else {
    stats.avg_subword_len =
        static_cast<double>(symbols_total) / static_cast<double>(tokens_total);
    stats.compression_ratio =
        static_cast<double>(tokens_total) / static_cast<double>(symbols_total);
  }
  return stats;
}

namespace {

// n-grams keyed by their words joined with an unlikely separator byte.
std::unordered_map<std::string, uint32_t> ngram_counts(const std::vector<std::string>& words,
                                                       size_t n) {
  std::unordered_map<std::string, uint32_t> counts;
  if (words.size() < n) return counts;
  for (size_t i = 0; i + n <= words.size(); ++i) {
    std::string key;
    for (size_t j = 0; j < n; ++j) {
      if (j) key += '\x1f';
      key += words[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double corpus_bleu(const std::vector<std::vector<std::string>>& candidates,
                   const std::vector<std::vector<std::string>>& references,
                   const BleuOptions& options) {
  if (candidates.empty()) throw ParamError("BLEU needs at least one sentence pair");
  if (candidates.size() != references.size()) {
    throw ParamError("BLEU candidate/reference counts differ: " +
                     std::to_string(candidates.size()) + " vs " +
                     std::to_string(references.size()));
  }
  const int n_max = options.max_order;
  if (n_max < 1) throw ParamError("BLEU max_order must be positive");
  std::vector<double> weights = options.weights;
  if (weights.empty()) {
    weights.assign(static_cast<size_t>(n_max), 1.0 / static_cast<double>(n_max));
  }
  if (weights.size() != static_cast<size_t>(n_max)) {
    throw ParamError("BLEU needs one weight per order");
  }
  double weight_sum = 0.0;
  for (const double w : weights) {
    if (w < 0.0) throw ParamError("BLEU weights must be non-negative");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) throw ParamError("BLEU weights must sum to 1");

  std::vector<uint64_t> matches(static_cast<size_t>(n_max), 0);
  std::vector<uint64_t> totals(static_cast<size_t>(n_max), 0);
  uint64_t cand_len = 0;
  uint64_t ref_len = 0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    cand_len += candidates[i].size();
    ref_len += references[i].size();
    for (int n = 1; n <= n_max; ++n) {
      const auto cand = ngram_counts(candidates[i], static_cast<size_t>(n));
      const auto ref = ngram_counts(references[i], static_cast<size_t>(n));
      for (const auto& [gram, count] : cand) {
        totals[static_cast<size_t>(n - 1)] += count;
        const auto it = ref.find(gram);
        if (it == ref.end()) continue;
        matches[static_cast<size_t>(n - 1)] +=
            options.raw_matches ? count : std::min(count, it->second);
      }
    }
  }

  if (cand_len == 0) return ref_len == 0 ? 1.0 : 0.0;
  double bp = 1.0;
  if (cand_len < ref_len) {
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
  }
  double log_precision = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const uint64_t total = totals[static_cast<size_t>(n - 1)];
    if (total == 0) continue;  // no candidate n-grams of this order anywhere
    const uint64_t match = matches[static_cast<size_t>(n - 1)];
    if (match == 0) return 0.0;
    log_precision += weights[static_cast<size_t>(n - 1)] *
                     std::log(static_cast<double>(match) / static_cast<double>(total));
  }
  return bp * std::exp(log_precision);
}

}  // namespace lcpseg
