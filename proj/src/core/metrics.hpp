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

#ifndef LCPSEG_CORE_METRICS_HPP_
#define LCPSEG_CORE_METRICS_HPP_

#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "core/lcp.hpp"

namespace lcpseg {

// Segmentation statistics over a multi-pass result.
//
// Multiplicity is reported two ways because the averaging unit differs by
// use: passes counts the generated sequences per input, distinct counts how
// many of them actually differ.
struct SegmentationStats {
  double multiplicity_passes = 0;    // m
  double multiplicity_distinct = 0;  // mean distinct segmentations per sentence
  double mean_depth = 0;             // mean labelings per pass
  double avg_subword_len = 0;        // symbols per token over all passes
  double compression_ratio = 0;      // tokens after / symbols before, in (0,1]
};

// Pure function of (result, corpus). Checks every pass against the raw
// corpus and throws ContractError on any mismatch.
SegmentationStats compute_stats(const MultiSegmentation& result, const Corpus& corpus);

struct BleuOptions {
  int max_order = 4;
  std::vector<double> weights;  // empty = uniform 1/max_order
  // Count raw candidate n-gram matches instead of clipping at the reference
  // count (the degenerate textbook formula).
  bool raw_matches = false;
};

// Corpus-level BLEU over word sequences: BP * exp(sum w_n log p_n) with
// p_n aggregated over the whole corpus. Any present order with zero matches
// gives 0; orders with no candidate n-grams at all (sentences shorter than
// n) are skipped so bleu(x, x) stays exactly 1.
double corpus_bleu(const std::vector<std::vector<std::string>>& candidates,
                   const std::vector<std::vector<std::string>>& references,
                   const BleuOptions& options = {});

}  // namespace lcpseg

#endif  // LCPSEG_CORE_METRICS_HPP_
