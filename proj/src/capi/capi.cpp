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

// extern-C shim over the C++ core: opaque handles, thread-local error text,
// exceptions mapped to status codes at the boundary.

#include "lcpseg/lcpseg.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/bpe.hpp"
#include "core/corpus.hpp"
#include "core/error.hpp"
#include "core/lcp.hpp"
#include "core/metrics.hpp"
#include "core/model_io.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"

namespace {

thread_local std::string t_last_error;

lcpseg_status_t to_status(lcpseg::Status status) {
  switch (status) {
    case lcpseg::Status::kOk: return LCPSEG_OK;
    case lcpseg::Status::kParam: return LCPSEG_ERR_PARAM;
    case lcpseg::Status::kIo: return LCPSEG_ERR_IO;
    case lcpseg::Status::kParse: return LCPSEG_ERR_PARSE;
    case lcpseg::Status::kContract: return LCPSEG_ERR_CONTRACT;
    case lcpseg::Status::kInternal: return LCPSEG_ERR_INTERNAL;
  }
  return LCPSEG_ERR_INTERNAL;
}

template <typename Fn>
lcpseg_status_t guarded(Fn&& fn) noexcept {
  t_last_error.clear();
  try {
    fn();
    return LCPSEG_OK;
  } catch (const lcpseg::Error& e) {
    t_last_error = e.what();
    return to_status(e.status());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return LCPSEG_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return LCPSEG_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw lcpseg::ParamError(what);
}

lcpseg::BoundaryMode to_mode(lcpseg_boundary_mode_t mode) {
  switch (mode) {
    case LCPSEG_BOUNDARY_RESPECT: return lcpseg::BoundaryMode::kRespectWordBoundaries;
    case LCPSEG_BOUNDARY_MERGE_ACROSS: return lcpseg::BoundaryMode::kMergeAcrossBlanks;
  }
  throw lcpseg::ParamError("unknown boundary mode");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct lcpseg_corpus {
  std::shared_ptr<const lcpseg::Corpus> impl;
};

struct lcpseg_model {
  lcpseg::ModelKind kind = lcpseg::ModelKind::kBpe;
  lcpseg::MergeTable bpe;
  lcpseg::LcpModel lcp;
};

struct lcpseg_result {
  std::shared_ptr<const lcpseg::Corpus> corpus;
  lcpseg::MultiSegmentation seg;
  std::string algorithm;
  nlohmann::json hyper;
  uint64_t seed = 0;
};

namespace {

lcpseg::LcpParams resolve_lcp_params(const lcpseg_lcp_params_t& p) {
  lcpseg::LcpParams params;
  params.vocab_size = p.vocab_size;
  params.partial_vocab = p.partial_vocab;
  params.topk = p.topk;
  if (p.max_passes) params.max_passes = p.max_passes;
  if (p.max_inner) params.max_inner = p.max_inner;
  if (p.max_relabel) params.max_relabel = p.max_relabel;
  if (p.stall_limit) params.stall_limit = p.stall_limit;
  params.validate();
  return params;
}

struct ResolvedSegmentOptions {
  double dropout = 0.0;
  lcpseg::TestTimeMode test_mode = lcpseg::TestTimeMode::kGreedyLongestMatch;
  uint64_t seed = 0;
  size_t max_relabel = 32;
  std::string separator = std::string(lcpseg::kDefaultSeparator);
  std::string blank_marker = std::string(lcpseg::kDefaultBlankMarker);
};

ResolvedSegmentOptions resolve_segment_options(const lcpseg_segment_options_t* options) {
  ResolvedSegmentOptions out;
  if (!options) return out;
  out.dropout = options->dropout;
  require(out.dropout >= 0.0 && out.dropout <= 1.0, "dropout must be in [0,1]");
  switch (options->test_mode) {
    case LCPSEG_TEST_MODE_GREEDY:
      out.test_mode = lcpseg::TestTimeMode::kGreedyLongestMatch;
      break;
    case LCPSEG_TEST_MODE_LCP_SAMPLE:
      out.test_mode = lcpseg::TestTimeMode::kLcpSample;
      break;
    default:
      throw lcpseg::ParamError("unknown test mode");
  }
  out.seed = options->seed;
  if (options->max_relabel) out.max_relabel = options->max_relabel;
  if (options->separator) {
    require(options->separator[0] != '\0', "separator must be non-empty");
    out.separator = options->separator;
  }
  if (options->blank_marker) out.blank_marker = options->blank_marker;
  return out;
}

std::vector<std::string> segment_one(const lcpseg_model* model,
                                     const std::vector<std::string>& symbols,
                                     lcpseg::BoundaryMode mode,
                                     const ResolvedSegmentOptions& opts, uint64_t line) {
  lcpseg::Rng rng(lcpseg::mix_seed(opts.seed, line));
  if (model->kind == lcpseg::ModelKind::kBpe) {
    return lcpseg::apply_bpe(symbols, model->bpe, opts.dropout, rng, mode);
  }
  if (opts.test_mode == lcpseg::TestTimeMode::kGreedyLongestMatch) {
    return lcpseg::segment_greedy(symbols, model->lcp, mode);
  }
  return lcpseg::segment_lcp_sample(symbols, model->lcp, mode, opts.max_relabel, rng);
}

nlohmann::json stats_to_json(const lcpseg_result* result,
                             const lcpseg::SegmentationStats& stats) {
  nlohmann::json j;
  j["algorithm"] = result->algorithm;
  j["seed"] = result->seed;
  j["hyperparameters"] = result->hyper;
  j["multiplicity_passes"] = stats.multiplicity_passes;
  j["multiplicity_distinct"] = stats.multiplicity_distinct;
  j["mean_depth"] = stats.mean_depth;
  j["avg_subword_len"] = stats.avg_subword_len;
  j["compression_ratio"] = stats.compression_ratio;
  j["vocab_size_actual"] = result->seg.global_vocab.size();
  j["limit_tripped"] = result->seg.limit_tripped;
  j["stop_reason"] = result->seg.stop_reason;
  return j;
}

}  // namespace

extern "C" {

const char* lcpseg_status_name(lcpseg_status_t status) {
  switch (status) {
    case LCPSEG_OK: return "ok";
    case LCPSEG_ERR_PARAM: return "invalid-parameter";
    case LCPSEG_ERR_IO: return "io-error";
    case LCPSEG_ERR_PARSE: return "parse-error";
    case LCPSEG_ERR_CONTRACT: return "contract-violation";
    case LCPSEG_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* lcpseg_last_error(void) { return t_last_error.c_str(); }

void lcpseg_string_free(char* s) { std::free(s); }

lcpseg_status_t lcpseg_corpus_open(const char* path, lcpseg_boundary_mode_t mode,
                                   lcpseg_corpus_t** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-null");
    auto corpus = std::make_shared<lcpseg::Corpus>(
        lcpseg::Corpus::from_file(path, to_mode(mode)));
    *out = new lcpseg_corpus{std::move(corpus)};
  });
}

lcpseg_status_t lcpseg_corpus_from_lines(const char* const* lines, size_t count,
                                         lcpseg_boundary_mode_t mode,
                                         lcpseg_corpus_t** out) {
  return guarded([&] {
    require(out && (count == 0 || lines), "lines and out must be non-null");
    std::vector<std::string> copied;
    copied.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(lines[i] != nullptr, "line entries must be non-null");
      copied.emplace_back(lines[i]);
    }
    auto corpus = std::make_shared<lcpseg::Corpus>(
        lcpseg::Corpus::from_lines(std::move(copied), to_mode(mode)));
    *out = new lcpseg_corpus{std::move(corpus)};
  });
}

size_t lcpseg_corpus_line_count(const lcpseg_corpus_t* corpus) {
  return corpus ? corpus->impl->line_count() : 0;
}

void lcpseg_corpus_free(lcpseg_corpus_t* corpus) { delete corpus; }

lcpseg_status_t lcpseg_train_bpe(const lcpseg_corpus_t* corpus, size_t vocab_size,
                                 int merge_singletons, lcpseg_model_t** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out must be non-null");
    lcpseg::BpeTrainOptions options;
    options.vocab_size = vocab_size;
    options.merge_singletons = merge_singletons != 0;
    auto model = std::make_unique<lcpseg_model>();
    model->kind = lcpseg::ModelKind::kBpe;
    model->bpe = lcpseg::train_bpe(*corpus->impl, options);
    *out = model.release();
  });
}

lcpseg_status_t lcpseg_train_lcp(const lcpseg_corpus_t* corpus,
                                 const lcpseg_lcp_params_t* params, uint64_t seed,
                                 const char* label_script_path,
                                 lcpseg_model_t** out_model,
                                 lcpseg_result_t** out_result) {
  return guarded([&] {
    require(corpus && params && out_model, "corpus, params and out_model must be non-null");
    const lcpseg::LcpParams resolved = resolve_lcp_params(*params);

    std::unique_ptr<lcpseg::LabelSource> labels;
    if (label_script_path) {
      labels = std::make_unique<lcpseg::ScriptedLabelSource>(
          lcpseg::ScriptedLabelSource::from_file(label_script_path));
    } else {
      labels = std::make_unique<lcpseg::RandomLabelSource>(seed);
    }

    auto result = std::make_unique<lcpseg_result>();
    result->seg = lcpseg::lcp_dropout(*corpus->impl, resolved, *labels);
    result->corpus = corpus->impl;
    result->algorithm = "lcp-dropout";
    result->seed = seed;
    result->hyper = {{"vocab_size", resolved.vocab_size},
                     {"partial_vocab", resolved.effective_partial()},
                     {"topk", resolved.topk},
                     {"max_passes", resolved.max_passes},
                     {"max_inner", resolved.max_inner},
                     {"max_relabel", resolved.max_relabel},
                     {"stall_limit", resolved.stall_limit}};

    auto model = std::make_unique<lcpseg_model>();
    model->kind = lcpseg::ModelKind::kLcp;
    model->lcp = lcpseg::make_lcp_model(result->seg, resolved, seed);

    *out_model = model.release();
    if (out_result) {
      *out_result = result.release();
    }
  });
}

lcpseg_status_t lcpseg_sample_bpe(const lcpseg_model_t* model,
                                  const lcpseg_corpus_t* corpus, size_t samples,
                                  double dropout, uint64_t seed,
                                  lcpseg_result_t** out) {
  return guarded([&] {
    require(model && corpus && out, "model, corpus and out must be non-null");
    require(model->kind == lcpseg::ModelKind::kBpe, "model is not a BPE model");
    require(samples > 0, "samples must be positive");
    require(dropout >= 0.0 && dropout <= 1.0, "dropout must be in [0,1]");

    auto result = std::make_unique<lcpseg_result>();
    result->corpus = corpus->impl;
    result->seg.symbols = corpus->impl->symbols();
    for (const lcpseg::TokenId id : corpus->impl->base_symbols()) {
      result->seg.global_vocab.insert(id);
    }
    const lcpseg::BpeApplier applier(model->bpe, result->seg.symbols,
                                     corpus->impl->boundary_id());
    for (size_t s = 0; s < samples; ++s) {
      lcpseg::SegmentationPass pass;
      pass.sequences.reserve(corpus->impl->line_count());
      for (const auto& seq : corpus->impl->sequences()) {
        lcpseg::Rng rng(lcpseg::mix_seed(
            seed, (static_cast<uint64_t>(s) << 32) ^ static_cast<uint64_t>(seq.origin)));
        lcpseg::SymbolSequence rewritten;
        rewritten.origin = seq.origin;
        rewritten.ids = applier.apply(seq.ids, dropout, rng);
        for (const lcpseg::TokenId id : rewritten.ids) {
          if (!result->seg.global_vocab.contains(id)) result->seg.global_vocab.insert(id);
        }
        pass.sequences.push_back(std::move(rewritten));
      }
      result->seg.passes.push_back(std::move(pass));
    }
    result->seg.stop_reason = "samples-complete";
    result->algorithm = dropout > 0.0 ? "bpe-dropout" : "bpe";
    result->seed = seed;
    result->hyper = {{"vocab_size", model->bpe.rules.size() + model->bpe.base_vocab.size()},
                     {"dropout", dropout},
                     {"samples", samples}};
    *out = result.release();
  });
}

lcpseg_status_t lcpseg_model_save(const lcpseg_model_t* model, const char* path) {
  return guarded([&] {
    require(model && path, "model and path must be non-null");
    if (model->kind == lcpseg::ModelKind::kBpe) {
      lcpseg::save_bpe_model(model->bpe, path);
    } else {
      lcpseg::save_lcp_model(model->lcp, path);
    }
  });
}

lcpseg_status_t lcpseg_model_open(const char* path, lcpseg_model_t** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-null");
    auto model = std::make_unique<lcpseg_model>();
    model->kind = lcpseg::sniff_model(path);
    if (model->kind == lcpseg::ModelKind::kBpe) {
      model->bpe = lcpseg::load_bpe_model(path);
    } else {
      model->lcp = lcpseg::load_lcp_model(path);
    }
    *out = model.release();
  });
}

lcpseg_model_kind_t lcpseg_model_kind(const lcpseg_model_t* model) {
  return model && model->kind == lcpseg::ModelKind::kLcp ? LCPSEG_MODEL_LCP
                                                         : LCPSEG_MODEL_BPE;
}

size_t lcpseg_model_vocab_size(const lcpseg_model_t* model) {
  if (!model) return 0;
  if (model->kind == lcpseg::ModelKind::kLcp) return model->lcp.entries.size();
  // Vocabulary = base symbols + one entry per rule (the serialized format
  // carries only rules, so base symbols may be absent on a loaded model).
  return model->bpe.base_vocab.size() + model->bpe.rules.size();
}

void lcpseg_model_free(lcpseg_model_t* model) { delete model; }

lcpseg_status_t lcpseg_segment_file(const lcpseg_model_t* model, const char* input_path,
                                    const char* output_path, lcpseg_boundary_mode_t mode,
                                    const lcpseg_segment_options_t* options) {
  return guarded([&] {
    require(model && input_path && output_path, "model and paths must be non-null");
    const ResolvedSegmentOptions opts = resolve_segment_options(options);
    const lcpseg::Corpus corpus =
        lcpseg::Corpus::from_file(input_path, to_mode(mode));

    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw lcpseg::IoError(std::string("cannot open output file: ") + output_path);
    std::vector<std::string> symbols;
    for (size_t i = 0; i < corpus.line_count(); ++i) {
      symbols.clear();
      for (const lcpseg::TokenId id : corpus.sequences()[i].ids) {
        symbols.push_back(corpus.symbols().text(id));
      }
      const auto tokens = segment_one(model, symbols, to_mode(mode), opts, i);
      out << lcpseg::render_tokens(tokens, opts.separator, opts.blank_marker) << '\n';
    }
    if (!out) throw lcpseg::IoError(std::string("error while writing: ") + output_path);
  });
}

lcpseg_status_t lcpseg_segment_line(const lcpseg_model_t* model, const char* line,
                                    lcpseg_boundary_mode_t mode,
                                    const lcpseg_segment_options_t* options, char** out) {
  return guarded([&] {
    require(model && line && out, "model, line and out must be non-null");
    const ResolvedSegmentOptions opts = resolve_segment_options(options);
    const auto symbols = lcpseg::tokenize_sentence(line);
    const auto tokens = segment_one(model, symbols, to_mode(mode), opts, 0);
    *out = copy_string(lcpseg::render_tokens(tokens, opts.separator, opts.blank_marker));
  });
}

size_t lcpseg_result_pass_count(const lcpseg_result_t* result) {
  return result ? result->seg.passes.size() : 0;
}

size_t lcpseg_result_pass_depth(const lcpseg_result_t* result, size_t pass) {
  if (!result || pass >= result->seg.passes.size()) return 0;
  return result->seg.passes[pass].trace.depth;
}

int lcpseg_result_limit_tripped(const lcpseg_result_t* result) {
  return result && result->seg.limit_tripped ? 1 : 0;
}

lcpseg_status_t lcpseg_result_write_pass(const lcpseg_result_t* result, size_t pass,
                                         const char* path, const char* separator,
                                         const char* blank_marker) {
  return guarded([&] {
    require(result && path, "result and path must be non-null");
    require(pass < result->seg.passes.size(), "pass index out of range");
    const std::string_view sep = separator ? separator : lcpseg::kDefaultSeparator;
    require(!sep.empty(), "separator must be non-empty");
    const std::string_view marker =
        blank_marker ? blank_marker : lcpseg::kDefaultBlankMarker;
    lcpseg::write_rendered_file(path, result->seg.passes[pass].sequences,
                                result->seg.symbols, sep, marker);
  });
}

lcpseg_status_t lcpseg_result_stats_json(const lcpseg_result_t* result, char** out_json) {
  return guarded([&] {
    require(result && out_json, "result and out_json must be non-null");
    const lcpseg::SegmentationStats stats =
        lcpseg::compute_stats(result->seg, *result->corpus);
    *out_json = copy_string(stats_to_json(result, stats).dump());
  });
}

void lcpseg_result_free(lcpseg_result_t* result) { delete result; }

lcpseg_status_t lcpseg_corpus_bleu(const char* const* candidates,
                                   const char* const* references, size_t count,
                                   int max_order, const double* weights, int raw_matches,
                                   double* out) {
  return guarded([&] {
    require(candidates && references && out, "candidates, references and out must be non-null");
    const auto split_words = [](const char* line) {
      std::vector<std::string> words;
      std::istringstream stream{std::string(line)};
      std::string word;
      while (stream >> word) words.push_back(std::move(word));
      return words;
    };
    std::vector<std::vector<std::string>> cand, ref;
    cand.reserve(count);
    ref.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(candidates[i] && references[i], "sentence entries must be non-null");
      cand.push_back(split_words(candidates[i]));
      ref.push_back(split_words(references[i]));
    }
    lcpseg::BleuOptions options;
    options.max_order = max_order;
    if (weights) {
      options.weights.assign(weights, weights + max_order);
    }
    options.raw_matches = raw_matches != 0;
    *out = lcpseg::corpus_bleu(cand, ref, options);
  });
}

}  // extern "C"
