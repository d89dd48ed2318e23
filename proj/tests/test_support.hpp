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

// Shared test helpers: brute-force oracles (kept deliberately naive and
// independent of the library code paths they check) and random input
// generators.

#ifndef LCPSEG_TESTS_TEST_SUPPORT_HPP_
#define LCPSEG_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "core/lcp.hpp"

namespace lcpseg::testing {

inline std::vector<std::string> texts_of(const SymbolSequence& seq,
                                         const SymbolTable& symbols) {
  std::vector<std::string> out;
  out.reserve(seq.ids.size());
  for (const TokenId id : seq.ids) out.push_back(symbols.text(id));
  return out;
}

inline std::string join(const std::vector<std::string>& tokens,
                        const std::string& sep = "|") {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

// ----- brute-force oracles --------------------------------------------------

// Adjacent-pair counts by direct enumeration over token strings. `respect`
// skips pairs touching a single-blank token.
inline std::map<std::pair<std::string, std::string>, uint64_t> oracle_bigrams(
    const std::vector<std::vector<std::string>>& sentences, bool respect) {
  std::map<std::pair<std::string, std::string>, uint64_t> counts;
  for (const auto& tokens : sentences) {
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      if (respect && (tokens[i] == " " || tokens[i + 1] == " ")) continue;
      ++counts[{tokens[i], tokens[i + 1]}];
    }
  }
  return counts;
}

// Corpus BLEU computed straight from the formula with ordered-map n-gram
// tallies; written before the library implementation and kept separate.
inline double oracle_bleu(const std::vector<std::vector<std::string>>& candidates,
                          const std::vector<std::vector<std::string>>& references,
                          int max_order, bool raw_matches) {
  std::vector<long double> matches(static_cast<size_t>(max_order), 0.0L);
  std::vector<long double> totals(static_cast<size_t>(max_order), 0.0L);
  long double cand_len = 0, ref_len = 0;
  for (size_t s = 0; s < candidates.size(); ++s) {
    cand_len += candidates[s].size();
    ref_len += references[s].size();
    for (int n = 1; n <= max_order; ++n) {
      std::map<std::vector<std::string>, long long> cand_grams, ref_grams;
      const auto collect = [n](const std::vector<std::string>& words,
                               std::map<std::vector<std::string>, long long>& out) {
        for (size_t i = 0; i + static_cast<size_t>(n) <= words.size(); ++i) {
          out[std::vector<std::string>(words.begin() + i, words.begin() + i + n)]++;
        }
      };
      collect(candidates[s], cand_grams);
      collect(references[s], ref_grams);
      for (const auto& [gram, count] : cand_grams) {
        totals[static_cast<size_t>(n - 1)] += count;
        const auto it = ref_grams.find(gram);
        if (it == ref_grams.end()) continue;
        matches[static_cast<size_t>(n - 1)] +=
            raw_matches ? count : std::min<long long>(count, it->second);
      }
    }
  }
  if (cand_len == 0) return ref_len == 0 ? 1.0 : 0.0;
  long double bp = 1.0L;
  if (cand_len < ref_len) bp = std::exp(1.0L - ref_len / cand_len);
  long double log_sum = 0.0L;
  for (int n = 1; n <= max_order; ++n) {
    if (totals[static_cast<size_t>(n - 1)] == 0) continue;
    if (matches[static_cast<size_t>(n - 1)] == 0) return 0.0;
    log_sum += (1.0L / max_order) *
               std::log(matches[static_cast<size_t>(n - 1)] /
                        totals[static_cast<size_t>(n - 1)]);
  }
  return static_cast<double>(bp * std::exp(log_sum));
}

// Longest-prefix segmentation by trying every vocabulary entry at every
// position (no tries, no length cache).
inline std::vector<std::string> oracle_greedy(const std::vector<std::string>& symbols,
                                              const std::vector<std::string>& entries,
                                              bool respect) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < symbols.size()) {
    if (respect && symbols[i] == " ") {
      out.push_back(" ");
      ++i;
      continue;
    }
    std::string best;
    size_t best_len = 0;
    for (size_t j = i; j < symbols.size(); ++j) {
      if (respect && symbols[j] == " ") break;
      // candidate = symbols[i..j]
      std::string candidate;
      for (size_t t = i; t <= j; ++t) candidate += symbols[t];
      if (std::find(entries.begin(), entries.end(), candidate) != entries.end() &&
          j - i + 1 > best_len) {
        best = candidate;
        best_len = j - i + 1;
      }
    }
    if (best_len == 0) {
      out.push_back(symbols[i]);
      ++i;
    } else {
      out.push_back(best);
      i += best_len;
    }
  }
  return out;
}

// ----- random input generators ----------------------------------------------

struct CorpusSpec {
  size_t max_lines = 6;
  size_t max_len = 16;       // symbols per line
  size_t alphabet = 4;       // drawn from 'a'..
  bool with_blanks = false;  // sprinkle blanks between symbols
  bool allow_empty_lines = true;
};

inline std::vector<std::string> random_lines(std::mt19937_64& gen, const CorpusSpec& spec) {
  std::uniform_int_distribution<size_t> line_count(1, spec.max_lines);
  std::vector<std::string> lines;
  const size_t n = line_count(gen);
  for (size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<size_t> length(spec.allow_empty_lines ? 0 : 1,
                                                 spec.max_len);
    const size_t len = length(gen);
    std::string line;
    for (size_t j = 0; j < len; ++j) {
      if (spec.with_blanks && j > 0 && j + 1 < len && gen() % 5 == 0) {
        line += ' ';
      } else {
        line += static_cast<char>('a' + gen() % spec.alphabet);
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::vector<std::string> random_words(std::mt19937_64& gen, size_t max_words,
                                             size_t alphabet = 3, size_t max_word_len = 3) {
  std::uniform_int_distribution<size_t> count(0, max_words);
  std::vector<std::string> words;
  const size_t n = count(gen);
  for (size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<size_t> length(1, max_word_len);
    std::string word;
    const size_t len = length(gen);
    for (size_t j = 0; j < len; ++j) word += static_cast<char>('a' + gen() % alphabet);
    words.push_back(std::move(word));
  }
  return words;
}

// The worked single-sentence example: four scripted labelings producing two
// passes of depth two.
inline ScriptedLabelSource worked_example_labels() {
  using Step = ScriptedLabelSource::Step;
  std::vector<Step> steps;
  steps.push_back(Step{{"a", 1}, {"b", 0}, {"c", 0}});
  steps.push_back(Step{{"ab", 1}, {"c", 0}, {"a", 1}, {"b", 1}});
  steps.push_back(Step{{"a", 0}, {"b", 1}, {"c", 1}});
  steps.push_back(Step{{"a", 1}, {"b", 0}, {"ca", 0}, {"c", 0}});
  return ScriptedLabelSource(std::move(steps));
}

inline const char* worked_example_sentence() { return "ababcaacabcb"; }

inline LcpParams worked_example_params() {
  LcpParams params;
  params.vocab_size = 6;
  params.partial_vocab = 5;
  params.topk = 0.5;
  return params;
}

}  // namespace lcpseg::testing

#endif  // LCPSEG_TESTS_TEST_SUPPORT_HPP_
