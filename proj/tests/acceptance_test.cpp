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

// Acceptance suite. One test per release criterion; each prints its own
// pass/fail line through the harness.

#include <gtest/gtest.h>

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/bpe.hpp"
#include "core/corpus.hpp"
#include "core/lcp.hpp"
#include "core/metrics.hpp"
#include "core/model_io.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"
#include "test_support.hpp"

namespace lcpseg {
namespace {

using Clock = std::chrono::steady_clock;
using testing::oracle_bigrams;
using testing::oracle_bleu;
using testing::random_lines;
using testing::random_words;
using testing::texts_of;
using testing::worked_example_labels;
using testing::worked_example_params;
using testing::worked_example_sentence;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("lcpseg_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  ASSERT_TRUE(out.is_open()) << path;
  out << content;
}

// Synthetic corpus used by the stats and performance criteria: fixed seed,
// alphabet of eight symbols, line lengths 20..60.
std::vector<std::string> synthetic_corpus(size_t lines, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<size_t> length(20, 60);
  std::uniform_int_distribution<int> symbol(0, 7);
  std::vector<std::string> out;
  out.reserve(lines);
  for (size_t i = 0; i < lines; ++i) {
    std::string line;
    const size_t len = length(gen);
    for (size_t j = 0; j < len; ++j) line += static_cast<char>('a' + symbol(gen));
    out.push_back(std::move(line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion: worked-example replay, exact, under one second.
// ---------------------------------------------------------------------------

TEST(Acceptance, Table1ReplayExact) {
  const auto start = Clock::now();

  const Corpus corpus = Corpus::from_lines({worked_example_sentence()},
                                           BoundaryMode::kRespectWordBoundaries);
  ScriptedLabelSource labels = worked_example_labels();
  const MultiSegmentation result =
      lcp_dropout(corpus, worked_example_params(), labels);

  ASSERT_EQ(result.passes.size(), 2u);
  EXPECT_EQ(texts_of(result.passes[0].sequences[0], result.symbols),
            (std::vector<std::string>{"ab", "abc", "a", "a", "c", "abc", "b"}));
  EXPECT_EQ(texts_of(result.passes[1].sequences[0], result.symbols),
            (std::vector<std::string>{"ab", "ab", "ca", "a", "ca", "b", "c", "b"}));

  std::set<std::string> vocab;
  for (const TokenId id : result.global_vocab.entries()) {
    vocab.insert(result.symbols.text(id));
  }
  EXPECT_EQ(vocab, (std::set<std::string>{"a", "b", "c", "ab", "abc", "ca"}));
  EXPECT_EQ(result.global_vocab.size(), 6u);
  EXPECT_EQ(result.passes[0].trace.depth, 2u);
  EXPECT_EQ(result.passes[1].trace.depth, 2u);

  EXPECT_LT(seconds_since(start), 1.0);
}

// ---------------------------------------------------------------------------
// Criterion: BPE walkthrough, exact.
// ---------------------------------------------------------------------------

TEST(Acceptance, BpeWalkthroughExact) {
  const Corpus corpus =
      Corpus::from_lines({"abracadabra"}, BoundaryMode::kRespectWordBoundaries);
  const MergeTable table = train_bpe(corpus, {.vocab_size = 7});
  ASSERT_EQ(table.rules.size(), 2u);
  EXPECT_EQ(table.rules[0], (MergeRule{"a", "b", 0}));
  EXPECT_EQ(table.rules[1], (MergeRule{"ab", "r", 1}));

  Rng rng(0);
  const auto segmented = apply_bpe(tokenize_sentence("abracadabra"), table, 0.0, rng,
                                   BoundaryMode::kRespectWordBoundaries);
  EXPECT_EQ(segmented,
            (std::vector<std::string>{"abr", "a", "c", "a", "d", "abr", "a"}));
}

// ---------------------------------------------------------------------------
// Criterion: randomized property suite, >= 1000 cases per property.
// ---------------------------------------------------------------------------

struct SmallRun {
  Corpus corpus;
  LcpParams params;
  uint64_t seed;
};

SmallRun make_small_run(std::mt19937_64& gen, bool with_blanks) {
  const auto lines = random_lines(gen, {.max_lines = 4, .max_len = 18,
                                        .alphabet = 4, .with_blanks = with_blanks});
  const BoundaryMode mode = gen() % 2 ? BoundaryMode::kRespectWordBoundaries
                                      : BoundaryMode::kMergeAcrossBlanks;
  Corpus corpus = Corpus::from_lines(lines, mode);
  LcpParams params;
  params.vocab_size = corpus.base_symbols().size() + 1 + gen() % 6;
  params.partial_vocab = std::max<size_t>(1, params.vocab_size / 2);
  params.topk = 0.5;
  params.max_passes = 8;
  params.stall_limit = 3;
  return {std::move(corpus), params, gen()};
}

TEST(Acceptance, PropertyConcatenationInvariance) {
  std::mt19937_64 gen(0xC0FFEE);
  for (int round = 0; round < 1000; ++round) {
    SmallRun run = make_small_run(gen, round % 2 == 0);
    const auto& lines = run.corpus.raw_lines();

    // BPE at several dropout levels.
    const MergeTable table =
        train_bpe(run.corpus, {.vocab_size = run.params.vocab_size});
    for (const double p : {0.0, 0.1, 0.5, 1.0}) {
      Rng rng(run.seed);
      const auto& line = lines[gen() % lines.size()];
      const auto out = apply_bpe(tokenize_sentence(line), table, p, rng,
                                 run.corpus.mode());
      ASSERT_TRUE(validate_segmentation(out, line));
    }

    // LCP over every pass it produces.
    RandomLabelSource labels(run.seed);
    const MultiSegmentation result = lcp_dropout(run.corpus, run.params, labels);
    for (const auto& pass : result.passes) {
      for (size_t j = 0; j < lines.size(); ++j) {
        ASSERT_TRUE(validate_segmentation(texts_of(pass.sequences[j], result.symbols),
                                          lines[j]));
      }
    }
  }
}

TEST(Acceptance, PropertyLandmarksNeverOverlap) {
  std::mt19937_64 gen(0xBEEF);
  int checked = 0;
  while (checked < 1000) {
    const auto lines = random_lines(gen, {.max_lines = 2, .max_len = 50, .alphabet = 5});
    const Corpus corpus = Corpus::from_lines(lines, BoundaryMode::kRespectWordBoundaries);
    if (corpus.base_symbols().empty()) continue;
    Vocabulary vocab;
    for (const TokenId id : corpus.base_symbols()) vocab.insert(id);
    Rng rng(gen());
    const Labeling labeling = assign_labels(vocab, corpus.symbols(), rng);
    for (const auto& seq : corpus.sequences()) {
      int last_landmark = -2;
      for (size_t i = 0; i + 1 < seq.ids.size(); ++i) {
        if (labeling.bit(seq.ids[i]) == 1 && labeling.bit(seq.ids[i + 1]) == 0) {
          ASSERT_NE(static_cast<int>(i), last_landmark + 1);
          last_landmark = static_cast<int>(i);
        }
      }
    }
    ++checked;
  }
}

TEST(Acceptance, PropertyNoIdenticalPairMerge) {
  std::mt19937_64 gen(0xF00D);
  int checked = 0;
  while (checked < 1000) {
    const auto lines =
        random_lines(gen, {.max_lines = 3, .max_len = 30, .alphabet = 3});
    const Corpus corpus = Corpus::from_lines(lines, BoundaryMode::kRespectWordBoundaries);
    if (corpus.base_symbols().empty()) continue;
    Vocabulary vocab;
    for (const TokenId id : corpus.base_symbols()) vocab.insert(id);
    SymbolTable symbols = corpus.symbols();
    std::vector<SymbolSequence> seqs = corpus.sequences();
    Rng rng(gen());
    const Labeling labeling = assign_labels(vocab, symbols, rng);
    const auto selected =
        select_candidates(seqs, labeling, 1.0, symbols, corpus.boundary_id());
    for (const auto& [left, right] : selected) ASSERT_NE(left, right);
    ++checked;
  }
}

TEST(Acceptance, PropertyZeroDropoutEqualsTrainingReplay) {
  std::mt19937_64 gen(0xABCD);
  for (int round = 0; round < 1000; ++round) {
    const auto lines = random_lines(gen, {.max_lines = 3, .max_len = 16, .alphabet = 3});
    const Corpus corpus = Corpus::from_lines(lines, BoundaryMode::kRespectWordBoundaries);
    const MergeTable table =
        train_bpe(corpus, {.vocab_size = corpus.base_symbols().size() + 4});
    const auto& line = lines[gen() % lines.size()];
    const auto symbols = tokenize_sentence(line);

    // Replay oracle: fold merge_all over the rules.
    SymbolTable working = corpus.symbols();
    std::vector<SymbolSequence> seqs(1);
    for (const auto& s : symbols) seqs[0].ids.push_back(working.intern(s));
    for (const auto& rule : table.rules) {
      merge_all(seqs, {working.intern(rule.left), working.intern(rule.right)},
                working.intern(rule.product()));
    }

    Rng rng(gen());
    ASSERT_EQ(apply_bpe(symbols, table, 0.0, rng, corpus.mode()),
              texts_of(seqs[0], working));
  }
}

TEST(Acceptance, PropertyFullDropoutIsIdentity) {
  std::mt19937_64 gen(0x1DEA);
  for (int round = 0; round < 1000; ++round) {
    const auto lines = random_lines(gen, {.with_blanks = round % 2 == 0});
    const Corpus corpus = Corpus::from_lines(lines, BoundaryMode::kRespectWordBoundaries);
    const MergeTable table =
        train_bpe(corpus, {.vocab_size = corpus.base_symbols().size() + 4});
    const auto symbols = tokenize_sentence(lines[gen() % lines.size()]);
    Rng rng(gen());
    ASSERT_EQ(apply_bpe(symbols, table, 1.0, rng, corpus.mode()), symbols);
  }
}

TEST(Acceptance, PropertySeedDeterminism) {
  std::mt19937_64 gen(0x5EED);
  for (int round = 0; round < 1000; ++round) {
    SmallRun run = make_small_run(gen, round % 3 == 0);
    RandomLabelSource labels1(run.seed), labels2(run.seed);
    const MultiSegmentation r1 = lcp_dropout(run.corpus, run.params, labels1);
    const MultiSegmentation r2 = lcp_dropout(run.corpus, run.params, labels2);

    ASSERT_EQ(r1.passes.size(), r2.passes.size());
    ASSERT_EQ(r1.limit_tripped, r2.limit_tripped);
    ASSERT_EQ(r1.stop_reason, r2.stop_reason);
    for (size_t p = 0; p < r1.passes.size(); ++p) {
      ASSERT_EQ(r1.passes[p].vocab, r2.passes[p].vocab);
      ASSERT_EQ(r1.passes[p].trace.depth, r2.passes[p].trace.depth);
      ASSERT_EQ(r1.passes[p].trace.relabel_retries, r2.passes[p].trace.relabel_retries);
      ASSERT_EQ(r1.passes[p].trace.added_per_depth, r2.passes[p].trace.added_per_depth);
      for (size_t j = 0; j < r1.passes[p].sequences.size(); ++j) {
        ASSERT_EQ(r1.passes[p].sequences[j].ids, r2.passes[p].sequences[j].ids);
      }
    }
    ASSERT_EQ(r1.global_vocab.size(), r2.global_vocab.size());
    for (size_t i = 0; i < r1.global_vocab.size(); ++i) {
      ASSERT_EQ(r1.symbols.text(r1.global_vocab.entries()[i]),
                r2.symbols.text(r2.global_vocab.entries()[i]));
    }
  }
}

TEST(Acceptance, PropertyModelRoundTripIdentity) {
  std::mt19937_64 gen(0x10DE);
  for (int round = 0; round < 1000; ++round) {
    SmallRun run = make_small_run(gen, round % 2 == 0);
    if (round % 2 == 0) {
      const MergeTable table =
          train_bpe(run.corpus, {.vocab_size = run.params.vocab_size});
      const std::string text = bpe_model_to_string(table);
      const MergeTable reloaded = bpe_model_from_string(text, "acceptance");
      ASSERT_EQ(reloaded.rules, table.rules);
      ASSERT_EQ(bpe_model_to_string(reloaded), text);
    } else {
      RandomLabelSource labels(run.seed);
      const LcpModel model = make_lcp_model(lcp_dropout(run.corpus, run.params, labels),
                                            run.params, run.seed);
      const std::string text = lcp_model_to_string(model);
      const LcpModel reloaded = lcp_model_from_string(text, "acceptance");
      ASSERT_EQ(reloaded, model);
      ASSERT_EQ(lcp_model_to_string(reloaded), text);
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion: oracle equivalence for count_bigrams and corpus_bleu.
// ---------------------------------------------------------------------------

TEST(Acceptance, OracleEquivalenceCountBigrams) {
  std::mt19937_64 gen(0x0B16);
  for (int round = 0; round < 200; ++round) {
    const bool respect = gen() % 2 == 0;
    const auto lines = random_lines(gen, {.max_lines = 6, .max_len = 20,
                                          .alphabet = 4, .with_blanks = true});
    const Corpus corpus = Corpus::from_lines(
        lines, respect ? BoundaryMode::kRespectWordBoundaries
                       : BoundaryMode::kMergeAcrossBlanks);
    std::vector<std::vector<std::string>> sentences;
    for (const auto& seq : corpus.sequences()) {
      sentences.push_back(texts_of(seq, corpus.symbols()));
    }
    const auto expected = oracle_bigrams(sentences, respect);
    const FreqTable table = count_bigrams(corpus.sequences(), corpus.boundary_id());

    ASSERT_EQ(table.distinct(), expected.size());
    for (const auto& [pair, count] : expected) {
      const auto left = corpus.symbols().find(pair.first);
      const auto right = corpus.symbols().find(pair.second);
      ASSERT_TRUE(left && right);
      ASSERT_EQ(table.count(*left, *right), count);  // tolerance 0
    }
  }
}

TEST(Acceptance, OracleEquivalenceCorpusBleu) {
  std::mt19937_64 gen(0xB1E0);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::vector<std::string>> cand, ref;
    const size_t n = 1 + gen() % 6;
    for (size_t i = 0; i < n; ++i) {
      cand.push_back(random_words(gen, 10));
      ref.push_back(gen() % 2 ? cand.back() : random_words(gen, 10));
    }
    const double expected = oracle_bleu(cand, ref, 4, false);
    ASSERT_NEAR(corpus_bleu(cand, ref), expected, 1e-9);

    // Self-BLEU is exactly 1 whenever the candidate list is non-degenerate.
    ASSERT_DOUBLE_EQ(corpus_bleu(cand, cand), 1.0);
  }
}

// ---------------------------------------------------------------------------
// Criterion: stats consistency on a 1,000-sentence synthetic corpus.
// ---------------------------------------------------------------------------

TEST(Acceptance, StatsConsistencyOnSyntheticCorpus) {
  const auto lines = synthetic_corpus(1000, 0x57A7);
  const Corpus corpus = Corpus::from_lines(lines, BoundaryMode::kRespectWordBoundaries);

  LcpParams params;
  params.vocab_size = 128;  // v = 2l, the paper's multiplicity mechanism
  params.partial_vocab = 64;
  params.topk = 0.01;
  RandomLabelSource labels(0x13579);
  const MultiSegmentation result = lcp_dropout(corpus, params, labels);
  const SegmentationStats stats = compute_stats(result, corpus);

  EXPECT_GE(stats.multiplicity_passes, 2.0);

  // Serialize every pass, then recompute the file-derivable statistics from
  // the files alone.
  std::vector<std::string> pass_paths;
  for (size_t p = 0; p < result.passes.size(); ++p) {
    const std::string path =
        (scratch_dir() / ("stats.pass" + std::to_string(p + 1) + ".txt")).string();
    write_rendered_file(path, result.passes[p].sequences, result.symbols,
                        kDefaultSeparator, kDefaultBlankMarker);
    pass_paths.push_back(path);
  }

  std::vector<std::vector<std::vector<std::string>>> reread;  // pass -> line -> tokens
  for (const auto& path : pass_paths) {
    const std::string content = read_file(path);
    std::vector<std::vector<std::string>> pass_tokens;
    size_t start = 0;
    while (start < content.size()) {
      const size_t nl = content.find('\n', start);
      const std::string line = content.substr(start, nl - start);
      pass_tokens.push_back(parse_rendered(line, kDefaultSeparator, kDefaultBlankMarker));
      start = nl + 1;
    }
    ASSERT_EQ(pass_tokens.size(), lines.size());
    reread.push_back(std::move(pass_tokens));
  }

  const double file_passes = static_cast<double>(reread.size());
  size_t distinct_total = 0;
  size_t token_total = 0;
  size_t symbol_total = 0;
  for (size_t j = 0; j < lines.size(); ++j) {
    std::set<std::vector<std::string>> variants;
    for (const auto& pass_tokens : reread) {
      variants.insert(pass_tokens[j]);
      token_total += pass_tokens[j].size();
      for (const auto& token : pass_tokens[j]) symbol_total += scalar_count(token);
      // The serialized pass must still concatenate back to the input line.
      ASSERT_TRUE(validate_segmentation(pass_tokens[j], lines[j]));
    }
    distinct_total += variants.size();
  }
  const double file_distinct =
      static_cast<double>(distinct_total) / static_cast<double>(lines.size());
  const double file_avg_len =
      static_cast<double>(symbol_total) / static_cast<double>(token_total);
  const double file_compression =
      static_cast<double>(token_total) / static_cast<double>(symbol_total);

  EXPECT_EQ(stats.multiplicity_passes, file_passes);
  EXPECT_EQ(stats.multiplicity_distinct, file_distinct);
  EXPECT_EQ(stats.avg_subword_len, file_avg_len);
  EXPECT_EQ(stats.compression_ratio, file_compression);

  // mean_depth is trace-borne; recompute it from the per-pass records.
  size_t depth_total = 0;
  for (const auto& pass : result.passes) depth_total += pass.trace.depth;
  EXPECT_EQ(stats.mean_depth,
            static_cast<double>(depth_total) / static_cast<double>(result.passes.size()));

  // Soft, logged check (not a gate): LCP tends to shorter subwords than BPE
  // under an equal vocabulary budget.
  const MergeTable bpe = train_bpe(corpus, {.vocab_size = params.vocab_size});
  size_t bpe_tokens = 0;
  size_t bpe_symbols = 0;
  for (const auto& line : lines) {
    Rng rng(0);
    const auto out = apply_bpe(tokenize_sentence(line), bpe, 0.0, rng,
                               BoundaryMode::kRespectWordBoundaries);
    bpe_tokens += out.size();
    bpe_symbols += scalar_count(line);
  }
  const double bpe_avg = static_cast<double>(bpe_symbols) / static_cast<double>(bpe_tokens);
  std::printf("[ soft-check ] avg subword length: lcp=%.4f bpe=%.4f (expected lcp <= bpe)%s\n",
              stats.avg_subword_len, bpe_avg,
              stats.avg_subword_len <= bpe_avg ? "" : " -- NOT SATISFIED");
}

// ---------------------------------------------------------------------------
// Criterion: desk-scale performance of the CLI trainer.
// ---------------------------------------------------------------------------

struct ChildRun {
  int exit_code = -1;
  double seconds = 0;
  long max_rss_kb = 0;
};

ChildRun run_cli(const std::vector<std::string>& args) {
  const char* cli = std::getenv("LCPSEG_CLI");
  EXPECT_NE(cli, nullptr) << "LCPSEG_CLI must point at the lcpseg binary";
  ChildRun run;
  if (!cli) return run;

  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(cli));
  for (const auto& arg : args) argv.push_back(const_cast<char*>(arg.c_str()));
  argv.push_back(nullptr);

  const auto start = Clock::now();
  const pid_t pid = fork();
  if (pid == 0) {
    // Quiet child; progress lines are not part of the measurement.
    if (!::freopen("/dev/null", "w", stderr)) _exit(126);
    ::execv(cli, argv.data());
    _exit(127);
  }
  int status = 0;
  struct rusage usage{};
  ::wait4(pid, &status, 0, &usage);
  run.seconds = seconds_since(start);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.max_rss_kb = usage.ru_maxrss;
  return run;
}

TEST(Acceptance, DeskScalePerformance) {
  const auto lines = synthetic_corpus(10000, 0xD5CA1E);
  size_t symbols = 0;
  for (const auto& line : lines) symbols += line.size();
  ASSERT_GT(symbols, 350000u);  // ~400k symbols by construction

  const std::string corpus_path = (scratch_dir() / "perf_corpus.txt").string();
  std::string blob;
  blob.reserve(symbols + lines.size());
  for (const auto& line : lines) {
    blob += line;
    blob += '\n';
  }
  write_text(corpus_path, blob);
  const std::string model_path = (scratch_dir() / "perf_model.lcp").string();

  const ChildRun run = run_cli({"train-lcp", "--vocab-size", "2000", "--partial-vocab",
                                "1000", "--topk", "0.01", "--seed", "424242",
                                "--input", corpus_path, "--output", model_path});
  EXPECT_EQ(run.exit_code, 0);
  std::printf("[ perf ] train-lcp v=2000 l=1000 k=0.01 on 10k sentences: %.2fs, %.1f MB\n",
              run.seconds, static_cast<double>(run.max_rss_kb) / 1024.0);
  EXPECT_LT(run.seconds, 60.0);
  EXPECT_LT(run.max_rss_kb, 1024L * 1024L);  // < 1 GB

  // The trained model is real: the budget was reached.
  const LcpModel model = load_lcp_model(model_path);
  EXPECT_GE(model.entries.size(), 2000u);
}

}  // namespace
}  // namespace lcpseg
