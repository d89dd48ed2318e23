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

// lcpseg command line tool. Everything goes through the public C API; this
// file owns only argument handling, run configs, and output naming.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcpseg/lcpseg.h"

namespace {

using nlohmann::json;

constexpr const char* kRespectMode = "respect-word-boundaries";
constexpr const char* kMergeAcrossMode = "merge-across-blanks";

// Usage-level problem discovered after parsing (missing required path, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusDeleter {
  void operator()(lcpseg_corpus_t* p) const { lcpseg_corpus_free(p); }
};
struct ModelDeleter {
  void operator()(lcpseg_model_t* p) const { lcpseg_model_free(p); }
};
struct ResultDeleter {
  void operator()(lcpseg_result_t* p) const { lcpseg_result_free(p); }
};
using CorpusPtr = std::unique_ptr<lcpseg_corpus_t, CorpusDeleter>;
using ModelPtr = std::unique_ptr<lcpseg_model_t, ModelDeleter>;
using ResultPtr = std::unique_ptr<lcpseg_result_t, ResultDeleter>;

void check(lcpseg_status_t status) {
  if (status != LCPSEG_OK) {
    throw std::runtime_error(std::string(lcpseg_status_name(status)) + ": " +
                             lcpseg_last_error());
  }
}

std::string take_string(char* owned) {
  std::string out(owned ? owned : "");
  lcpseg_string_free(owned);
  return out;
}

lcpseg_boundary_mode_t parse_boundary(const std::string& name) {
  if (name == kRespectMode) return LCPSEG_BOUNDARY_RESPECT;
  if (name == kMergeAcrossMode) return LCPSEG_BOUNDARY_MERGE_ACROSS;
  throw std::runtime_error("unknown boundary mode \"" + name + "\"");
}

uint64_t auto_seed() {
  std::random_device device;
  return (static_cast<uint64_t>(device()) << 32) ^ device();
}

struct GlobalArgs {
  std::string input;
  std::string output;
  std::string boundary = kRespectMode;
  std::string separator = " ";
  std::string blank_marker = "\xE2\x96\x81";
  uint64_t seed = 0;
  bool seed_set = false;
  std::string stats_json_path;
  std::string dump_config_path;

  const std::string& require_input() const {
    if (input.empty()) throw UsageError("--input is required");
    return input;
  }
  const std::string& require_output() const {
    if (output.empty()) throw UsageError("--output is required");
    return output;
  }
};

std::string path_stem(const std::string& path) {
  const size_t slash = path.find_last_of('/');
  const size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

std::string pass_path(const std::string& stem, size_t index) {
  return stem + ".pass" + std::to_string(index + 1) + ".txt";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("error while writing: " + path);
}

void print_stats_table(const json& stats) {
  const auto row = [](const char* key, const std::string& value) {
    std::fprintf(stderr, "  %-24s %s\n", key, value.c_str());
  };
  std::fprintf(stderr, "segmentation statistics\n");
  row("algorithm", stats.value("algorithm", std::string("?")));
  row("seed", std::to_string(stats.value("seed", uint64_t{0})));
  row("multiplicity (passes)", json(stats.value("multiplicity_passes", 0.0)).dump());
  row("multiplicity (distinct)", json(stats.value("multiplicity_distinct", 0.0)).dump());
  row("mean depth", json(stats.value("mean_depth", 0.0)).dump());
  row("avg subword length", json(stats.value("avg_subword_len", 0.0)).dump());
  row("compression ratio", json(stats.value("compression_ratio", 0.0)).dump());
  row("vocab size", std::to_string(stats.value("vocab_size_actual", uint64_t{0})));
  row("limit tripped", stats.value("limit_tripped", false) ? "yes" : "no");
  row("stop reason", stats.value("stop_reason", std::string()));
}

void emit_stats(const GlobalArgs& global, const ResultPtr& result, bool to_stdout) {
  if (!to_stdout && global.stats_json_path.empty()) return;
  char* raw = nullptr;
  check(lcpseg_result_stats_json(result.get(), &raw));
  const std::string text = take_string(raw);
  if (to_stdout) std::printf("%s\n", text.c_str());
  if (!global.stats_json_path.empty()) write_text_file(global.stats_json_path, text + "\n");
  print_stats_table(json::parse(text));
}

void dump_config(const GlobalArgs& global, json config) {
  if (global.dump_config_path.empty()) return;
  config["boundary_mode"] = global.boundary;
  write_text_file(global.dump_config_path, config.dump(2) + "\n");
}

// ----- run configs ---------------------------------------------------------

struct LcpFlags {
  size_t vocab_size = 0;
  size_t partial_vocab = 0;  // 0 = vocab_size / 2
  double topk = 0.01;
  size_t max_passes = 0;
  size_t max_inner = 0;
  size_t max_relabel = 0;
  size_t stall_limit = 0;
  std::string label_script;
  std::string passes_stem;
};

struct BpeFlags {
  size_t vocab_size = 0;
  bool merge_singletons = false;
  double dropout = 0.0;
  size_t samples = 1;
};

struct RunConfig {
  std::string algorithm;  // "bpe", "bpe-dropout", "lcp-dropout"
  std::optional<uint64_t> seed;
  std::optional<std::string> boundary_mode;
  std::string input;
  std::string output;
  std::string model_output;
  LcpFlags lcp;
  BpeFlags bpe;
};

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open run config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed run config " + path + ": " + e.what());
  }

  RunConfig cfg;
  try {
    cfg.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("boundary_mode")) cfg.boundary_mode = j["boundary_mode"].get<std::string>();
    if (j.contains("input")) cfg.input = j["input"].get<std::string>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("model_output")) cfg.model_output = j["model_output"].get<std::string>();
    if (j.contains("label_script")) cfg.lcp.label_script = j["label_script"].get<std::string>();
    const json params = j.value("params", json::object());
    if (cfg.algorithm == "lcp-dropout") {
      cfg.lcp.vocab_size = params.at("vocab_size").get<size_t>();
      cfg.lcp.partial_vocab = params.value("partial_vocab", size_t{0});
      cfg.lcp.topk = params.value("topk", 0.01);
      cfg.lcp.max_passes = params.value("max_passes", size_t{0});
      cfg.lcp.max_inner = params.value("max_inner", size_t{0});
      cfg.lcp.max_relabel = params.value("max_relabel", size_t{0});
      cfg.lcp.stall_limit = params.value("stall_limit", size_t{0});
    } else if (cfg.algorithm == "bpe" || cfg.algorithm == "bpe-dropout") {
      cfg.bpe.vocab_size = params.at("vocab_size").get<size_t>();
      cfg.bpe.merge_singletons = params.value("merge_singletons", false);
      cfg.bpe.dropout =
          params.value("dropout", cfg.algorithm == "bpe-dropout" ? 0.1 : 0.0);
      cfg.bpe.samples = params.value("samples", size_t{1});
      if (cfg.algorithm == "bpe") cfg.bpe.dropout = 0.0;
    } else {
      throw std::runtime_error("unknown algorithm \"" + cfg.algorithm + "\"");
    }
  } catch (const json::exception& e) {
    throw std::runtime_error("bad run config " + path + ": " + e.what());
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg, uint64_t seed) {
  json j;
  j["algorithm"] = cfg.algorithm;
  j["seed"] = seed;
  j["input"] = cfg.input;
  if (!cfg.output.empty()) j["output"] = cfg.output;
  if (!cfg.model_output.empty()) j["model_output"] = cfg.model_output;
  json params;
  if (cfg.algorithm == "lcp-dropout") {
    params["vocab_size"] = cfg.lcp.vocab_size;
    params["partial_vocab"] =
        cfg.lcp.partial_vocab ? cfg.lcp.partial_vocab
                              : std::max<size_t>(1, cfg.lcp.vocab_size / 2);
    params["topk"] = cfg.lcp.topk;
    params["max_passes"] = cfg.lcp.max_passes ? cfg.lcp.max_passes : 100;
    params["max_inner"] = cfg.lcp.max_inner ? cfg.lcp.max_inner : 100000;
    params["max_relabel"] = cfg.lcp.max_relabel ? cfg.lcp.max_relabel : 32;
    params["stall_limit"] = cfg.lcp.stall_limit ? cfg.lcp.stall_limit : 10;
    if (!cfg.lcp.label_script.empty()) j["label_script"] = cfg.lcp.label_script;
  } else {
    params["vocab_size"] = cfg.bpe.vocab_size;
    params["merge_singletons"] = cfg.bpe.merge_singletons;
    params["dropout"] = cfg.bpe.dropout;
    params["samples"] = cfg.bpe.samples;
  }
  j["params"] = params;
  return j;
}

// Trains per config and returns the multi-pass result (and the model when
// the caller wants to persist it).
struct RunHandles {
  ModelPtr model;
  ResultPtr result;
};

RunHandles execute_run(const RunConfig& cfg, const GlobalArgs& global, uint64_t seed) {
  if (cfg.input.empty()) throw UsageError("run config or --input must name an input corpus");
  const lcpseg_boundary_mode_t mode =
      parse_boundary(cfg.boundary_mode ? *cfg.boundary_mode : global.boundary);

  lcpseg_corpus_t* corpus_raw = nullptr;
  check(lcpseg_corpus_open(cfg.input.c_str(), mode, &corpus_raw));
  CorpusPtr corpus(corpus_raw);

  RunHandles handles;
  if (cfg.algorithm == "lcp-dropout") {
    lcpseg_lcp_params_t params{};
    params.vocab_size = cfg.lcp.vocab_size;
    params.partial_vocab = cfg.lcp.partial_vocab;
    params.topk = cfg.lcp.topk;
    params.max_passes = cfg.lcp.max_passes;
    params.max_inner = cfg.lcp.max_inner;
    params.max_relabel = cfg.lcp.max_relabel;
    params.stall_limit = cfg.lcp.stall_limit;
    lcpseg_model_t* model_raw = nullptr;
    lcpseg_result_t* result_raw = nullptr;
    check(lcpseg_train_lcp(corpus.get(), &params, seed,
                           cfg.lcp.label_script.empty() ? nullptr
                                                        : cfg.lcp.label_script.c_str(),
                           &model_raw, &result_raw));
    handles.model.reset(model_raw);
    handles.result.reset(result_raw);
  } else {
    lcpseg_model_t* model_raw = nullptr;
    check(lcpseg_train_bpe(corpus.get(), cfg.bpe.vocab_size,
                           cfg.bpe.merge_singletons ? 1 : 0, &model_raw));
    handles.model.reset(model_raw);
    lcpseg_result_t* result_raw = nullptr;
    check(lcpseg_sample_bpe(handles.model.get(), corpus.get(), cfg.bpe.samples,
                            cfg.bpe.dropout, seed, &result_raw));
    handles.result.reset(result_raw);
  }
  return handles;
}

void write_passes(const GlobalArgs& global, const ResultPtr& result,
                  const std::string& stem) {
  const size_t count = lcpseg_result_pass_count(result.get());
  for (size_t i = 0; i < count; ++i) {
    check(lcpseg_result_write_pass(result.get(), i, pass_path(stem, i).c_str(),
                                   global.separator.c_str(),
                                   global.blank_marker.c_str()));
  }
  std::fprintf(stderr, "wrote %zu pass file(s): %s\n", count,
               pass_path(stem, 0).c_str());
}

// ----- subcommands ---------------------------------------------------------

int run_train_bpe(const GlobalArgs& global, const BpeFlags& flags) {
  RunConfig cfg;
  cfg.algorithm = "bpe";
  cfg.input = global.require_input();
  cfg.output = global.require_output();
  cfg.bpe = flags;
  const uint64_t seed = global.seed_set ? global.seed : auto_seed();

  RunHandles handles = execute_run(cfg, global, seed);
  check(lcpseg_model_save(handles.model.get(), cfg.output.c_str()));
  std::fprintf(stderr, "trained bpe model with %zu entries -> %s\n",
               lcpseg_model_vocab_size(handles.model.get()), cfg.output.c_str());
  emit_stats(global, handles.result, /*to_stdout=*/false);
  dump_config(global, config_to_json(cfg, seed));
  return 0;
}

int run_train_lcp(const GlobalArgs& global, const LcpFlags& flags) {
  RunConfig cfg;
  cfg.algorithm = "lcp-dropout";
  cfg.input = global.require_input();
  cfg.output = global.require_output();
  cfg.lcp = flags;
  const uint64_t seed = global.seed_set ? global.seed : auto_seed();

  RunHandles handles = execute_run(cfg, global, seed);
  check(lcpseg_model_save(handles.model.get(), cfg.output.c_str()));
  const std::string stem =
      flags.passes_stem.empty() ? path_stem(cfg.output) : flags.passes_stem;
  write_passes(global, handles.result, stem);
  std::fprintf(stderr,
               "trained lcp model: %zu vocabulary entries, %zu pass(es), seed %" PRIu64
               " -> %s\n",
               lcpseg_model_vocab_size(handles.model.get()),
               lcpseg_result_pass_count(handles.result.get()), seed, cfg.output.c_str());
  if (lcpseg_result_limit_tripped(handles.result.get())) {
    std::fprintf(stderr, "note: a safety limit ended the run before the vocabulary budget\n");
  }
  emit_stats(global, handles.result, /*to_stdout=*/false);
  dump_config(global, config_to_json(cfg, seed));
  return 0;
}

struct SegmentFlags {
  std::string model_path;
  double dropout = 0.0;
  std::string test_mode = "greedy-longest-match";
  size_t max_relabel = 0;
  bool dropout_set = false;
  bool test_mode_set = false;
};

int run_segment(const GlobalArgs& global, const SegmentFlags& flags) {
  const std::string& input = global.require_input();
  const std::string& output = global.require_output();

  lcpseg_model_t* model_raw = nullptr;
  check(lcpseg_model_open(flags.model_path.c_str(), &model_raw));
  ModelPtr model(model_raw);

  const bool is_bpe = lcpseg_model_kind(model.get()) == LCPSEG_MODEL_BPE;
  if (is_bpe && flags.test_mode_set) {
    throw UsageError("--test-mode applies to LCP models only");
  }
  if (!is_bpe && flags.dropout_set) {
    throw UsageError("--dropout applies to BPE models only");
  }

  const uint64_t seed = global.seed_set ? global.seed : auto_seed();
  lcpseg_segment_options_t options{};
  options.dropout = flags.dropout;
  options.test_mode = flags.test_mode == "lcp-sample" ? LCPSEG_TEST_MODE_LCP_SAMPLE
                                                      : LCPSEG_TEST_MODE_GREEDY;
  options.seed = seed;
  options.max_relabel = flags.max_relabel;
  options.separator = global.separator.c_str();
  options.blank_marker = global.blank_marker.c_str();
  check(lcpseg_segment_file(model.get(), input.c_str(), output.c_str(),
                            parse_boundary(global.boundary), &options));
  std::fprintf(stderr, "segmented %s -> %s\n", input.c_str(), output.c_str());

  json dumped;
  dumped["command"] = "segment";
  dumped["model"] = flags.model_path;
  dumped["input"] = input;
  dumped["output"] = output;
  dumped["seed"] = seed;
  dumped["dropout"] = flags.dropout;
  dumped["test_mode"] = flags.test_mode;
  dump_config(global, dumped);
  return 0;
}

int run_augment(const GlobalArgs& global, const std::string& config_path) {
  RunConfig cfg = load_run_config(config_path);
  if (!global.input.empty()) cfg.input = global.input;
  if (!global.output.empty()) cfg.output = global.output;
  if (cfg.output.empty()) throw UsageError("augment needs an output stem (config or --output)");
  const uint64_t seed =
      global.seed_set ? global.seed : (cfg.seed ? *cfg.seed : auto_seed());

  RunHandles handles = execute_run(cfg, global, seed);
  write_passes(global, handles.result, cfg.output);
  if (!cfg.model_output.empty()) {
    check(lcpseg_model_save(handles.model.get(), cfg.model_output.c_str()));
  }
  emit_stats(global, handles.result, /*to_stdout=*/false);
  dump_config(global, config_to_json(cfg, seed));
  return 0;
}

int run_stats(const GlobalArgs& global, const std::string& config_path) {
  RunConfig cfg = load_run_config(config_path);
  if (!global.input.empty()) cfg.input = global.input;
  const uint64_t seed =
      global.seed_set ? global.seed : (cfg.seed ? *cfg.seed : auto_seed());

  RunHandles handles = execute_run(cfg, global, seed);
  emit_stats(global, handles.result, /*to_stdout=*/true);
  dump_config(global, config_to_json(cfg, seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lcpseg: subword segmentation with BPE, BPE-dropout and LCP-dropout"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--input", global.input, "input corpus, one sentence per line");
  app.add_option("--output", global.output, "output path (model, segmented corpus, or pass stem)");
  auto* seed_opt = app.add_option("--seed", global.seed, "random seed (default: generated and reported)");
  app.add_option("--boundary-mode", global.boundary, "blank handling")
      ->check(CLI::IsMember({kRespectMode, kMergeAcrossMode}));
  app.add_option("--separator", global.separator, "token separator in rendered output")
      ->check([](const std::string& s) {
        return s.empty() ? std::string("separator must be non-empty") : std::string();
      });
  app.add_option("--blank-marker", global.blank_marker, "rendering of blanks inside tokens");
  app.add_option("--stats-json", global.stats_json_path, "write segmentation statistics JSON here");
  app.add_option("--dump-config", global.dump_config_path, "write the resolved run config here");

  const auto positive = CLI::Range(size_t{1}, std::numeric_limits<size_t>::max());
  const auto unit_interval = [](const std::string& s) -> std::string {
    try {
      const double v = std::stod(s);
      if (v > 0.0 && v <= 1.0) return {};
    } catch (...) {
    }
    return "value must be in (0,1]";
  };
  const auto probability = [](const std::string& s) -> std::string {
    try {
      const double v = std::stod(s);
      if (v >= 0.0 && v <= 1.0) return {};
    } catch (...) {
    }
    return "value must be in [0,1]";
  };

  BpeFlags bpe_flags;
  auto* train_bpe = app.add_subcommand("train-bpe", "learn BPE merge rules");
  train_bpe->fallthrough();
  train_bpe->add_option("--vocab-size", bpe_flags.vocab_size, "total vocabulary budget")
      ->required()
      ->check(positive);
  train_bpe->add_flag("--merge-singletons", bpe_flags.merge_singletons,
                      "keep merging pairs that occur only once");

  LcpFlags lcp_flags;
  auto* train_lcp = app.add_subcommand("train-lcp", "train LCP-dropout and emit pass files");
  train_lcp->fallthrough();
  train_lcp->add_option("--vocab-size", lcp_flags.vocab_size, "total vocabulary budget v")
      ->required()
      ->check(positive);
  train_lcp->add_option("--partial-vocab", lcp_flags.partial_vocab,
                        "per-pass budget l (default: vocab-size/2)")
      ->check(positive);
  train_lcp->add_option("--topk", lcp_flags.topk, "candidate fraction k in (0,1] (default 0.01)")
      ->check(unit_interval);
  train_lcp->add_option("--max-passes", lcp_flags.max_passes, "pass limit (default 100)")
      ->check(positive);
  train_lcp->add_option("--max-inner", lcp_flags.max_inner,
                        "labelings per pass limit (default 100000)")
      ->check(positive);
  train_lcp->add_option("--max-relabel", lcp_flags.max_relabel,
                        "consecutive unproductive labelings per pass (default 32)")
      ->check(positive);
  train_lcp->add_option("--stall-limit", lcp_flags.stall_limit,
                        "consecutive passes without new vocabulary (default 10)")
      ->check(positive);
  train_lcp->add_option("--passes-stem", lcp_flags.passes_stem,
                        "stem for <stem>.pass<i>.txt files (default: output stem)");
  train_lcp->add_option("--label-script", lcp_flags.label_script,
                        "replay scripted labelings from file (testing hook)");

  SegmentFlags seg_flags;
  auto* segment = app.add_subcommand("segment", "segment a corpus with a trained model");
  segment->fallthrough();
  segment->add_option("--model", seg_flags.model_path, "trained model file")->required();
  auto* dropout_opt =
      segment->add_option("--dropout", seg_flags.dropout, "BPE merge drop probability")
          ->check(probability);
  auto* mode_opt = segment->add_option("--test-mode", seg_flags.test_mode,
                                       "LCP segmentation mode")
                       ->check(CLI::IsMember({"greedy-longest-match", "lcp-sample"}));
  dropout_opt->excludes(mode_opt);
  segment->add_option("--max-relabel", seg_flags.max_relabel,
                      "lcp-sample stop threshold (default 32)")
      ->check(positive);

  std::string augment_config;
  auto* augment = app.add_subcommand("augment", "run a config and emit per-pass files");
  augment->fallthrough();
  augment->add_option("--model-config", augment_config, "run config JSON")->required();

  std::string stats_config;
  auto* stats = app.add_subcommand("stats", "run a config and print statistics JSON");
  stats->fallthrough();
  stats->add_option("--model-config", stats_config, "run config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "%s", app.help().c_str());
    return 2;
  }
  global.seed_set = seed_opt->count() > 0;
  seg_flags.dropout_set = dropout_opt->count() > 0;
  seg_flags.test_mode_set = mode_opt->count() > 0;

  try {
    if (train_bpe->parsed()) return run_train_bpe(global, bpe_flags);
    if (train_lcp->parsed()) return run_train_lcp(global, lcp_flags);
    if (segment->parsed()) return run_segment(global, seg_flags);
    if (augment->parsed()) return run_augment(global, augment_config);
    if (stats->parsed()) return run_stats(global, stats_config);
    std::fprintf(stderr, "no subcommand given\n");
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
