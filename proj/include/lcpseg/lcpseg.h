/* Copyright 2026 The lcpseg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the lcpseg subword segmentation library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return LCPSEG_OK on success; on failure they return an error
 * code and leave a human-readable message in lcpseg_last_error() (the
 * message is thread-local and valid until the next call on that thread).
 * Output handles are written only on success.
 */

#ifndef LCPSEG_LCPSEG_H_
#define LCPSEG_LCPSEG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LCPSEG_API __declspec(dllexport)
#else
#define LCPSEG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcpseg_status {
  LCPSEG_OK = 0,
  LCPSEG_ERR_PARAM = 1,    /* invalid argument or hyperparameter */
  LCPSEG_ERR_IO = 2,       /* file could not be read or written */
  LCPSEG_ERR_PARSE = 3,    /* malformed corpus, model file, or encoding */
  LCPSEG_ERR_CONTRACT = 4, /* internal consistency check failed */
  LCPSEG_ERR_INTERNAL = 5, /* unexpected failure */
} lcpseg_status_t;

typedef enum lcpseg_boundary_mode {
  /* Blanks are unmergeable boundaries; no subword ever spans a blank. */
  LCPSEG_BOUNDARY_RESPECT = 0,
  /* Blanks are ordinary symbols and may be merged into subwords. */
  LCPSEG_BOUNDARY_MERGE_ACROSS = 1,
} lcpseg_boundary_mode_t;

typedef enum lcpseg_model_kind {
  LCPSEG_MODEL_BPE = 0,
  LCPSEG_MODEL_LCP = 1,
} lcpseg_model_kind_t;

typedef enum lcpseg_test_mode {
  /* Deterministic left-to-right longest prefix match against the vocabulary. */
  LCPSEG_TEST_MODE_GREEDY = 0,
  /* Randomized labeling rounds restricted to entries already in the vocabulary. */
  LCPSEG_TEST_MODE_LCP_SAMPLE = 1,
} lcpseg_test_mode_t;

typedef struct lcpseg_corpus lcpseg_corpus_t;
typedef struct lcpseg_model lcpseg_model_t;
typedef struct lcpseg_result lcpseg_result_t;

/* Hyperparameters of LCP-dropout training. Zero-valued limits select the
 * documented defaults. */
typedef struct lcpseg_lcp_params {
  size_t vocab_size;    /* v: total vocabulary budget (required, > 0) */
  size_t partial_vocab; /* l: per-pass budget; 0 = vocab_size / 2 */
  double topk;          /* k in (0,1]: fraction of candidate bigrams kept per step */
  size_t max_passes;    /* 0 = 100 */
  size_t max_inner;     /* labelings per pass; 0 = 100000 */
  size_t max_relabel;   /* consecutive unproductive labelings per pass; 0 = 32 */
  size_t stall_limit;   /* consecutive passes adding no vocabulary; 0 = 10 */
} lcpseg_lcp_params_t;

typedef struct lcpseg_segment_options {
  double dropout;                /* BPE models: per-occurrence merge drop probability */
  lcpseg_test_mode_t test_mode;  /* LCP models */
  uint64_t seed;                 /* randomness root for dropout / lcp-sample */
  size_t max_relabel;            /* lcp-sample stop; 0 = 32 */
  const char* separator;         /* token joiner in rendered output; NULL = " " */
  const char* blank_marker;      /* rendering of blanks inside tokens; NULL = U+2581 */
} lcpseg_segment_options_t;

LCPSEG_API const char* lcpseg_status_name(lcpseg_status_t status);
LCPSEG_API const char* lcpseg_last_error(void);
LCPSEG_API void lcpseg_string_free(char* s);

/* -- corpus ------------------------------------------------------------- */

/* Loads a UTF-8 corpus, one sentence per LF-terminated line. Empty lines are
 * preserved as empty sentences. */
LCPSEG_API lcpseg_status_t lcpseg_corpus_open(const char* path,
                                              lcpseg_boundary_mode_t mode,
                                              lcpseg_corpus_t** out);
LCPSEG_API lcpseg_status_t lcpseg_corpus_from_lines(const char* const* lines,
                                                    size_t count,
                                                    lcpseg_boundary_mode_t mode,
                                                    lcpseg_corpus_t** out);
LCPSEG_API size_t lcpseg_corpus_line_count(const lcpseg_corpus_t* corpus);
LCPSEG_API void lcpseg_corpus_free(lcpseg_corpus_t* corpus);

/* -- training ----------------------------------------------------------- */

/* Frequency-greedy BPE. Stops at vocab_size entries or when no bigram occurs
 * twice (pass merge_singletons != 0 to keep merging single-occurrence pairs). */
LCPSEG_API lcpseg_status_t lcpseg_train_bpe(const lcpseg_corpus_t* corpus,
                                            size_t vocab_size,
                                            int merge_singletons,
                                            lcpseg_model_t** out);

/* LCP-dropout. Produces the trained vocabulary model and, optionally, the
 * multi-pass segmentation result (pass out_result = NULL to discard it).
 * label_script_path, when non-NULL, replays scripted labelings instead of
 * drawing random ones; intended for reproducing fixed traces. */
LCPSEG_API lcpseg_status_t lcpseg_train_lcp(const lcpseg_corpus_t* corpus,
                                            const lcpseg_lcp_params_t* params,
                                            uint64_t seed,
                                            const char* label_script_path,
                                            lcpseg_model_t** out_model,
                                            lcpseg_result_t** out_result);

/* Applies a trained BPE model `samples` times with the given dropout, giving
 * a multi-pass result comparable to LCP-dropout output. */
LCPSEG_API lcpseg_status_t lcpseg_sample_bpe(const lcpseg_model_t* model,
                                             const lcpseg_corpus_t* corpus,
                                             size_t samples,
                                             double dropout,
                                             uint64_t seed,
                                             lcpseg_result_t** out);

/* -- models ------------------------------------------------------------- */

LCPSEG_API lcpseg_status_t lcpseg_model_save(const lcpseg_model_t* model,
                                             const char* path);
LCPSEG_API lcpseg_status_t lcpseg_model_open(const char* path,
                                             lcpseg_model_t** out);
LCPSEG_API lcpseg_model_kind_t lcpseg_model_kind(const lcpseg_model_t* model);
LCPSEG_API size_t lcpseg_model_vocab_size(const lcpseg_model_t* model);
LCPSEG_API void lcpseg_model_free(lcpseg_model_t* model);

/* -- segmentation ------------------------------------------------------- */

/* Segments a corpus file line by line and writes the rendered tokens to
 * output_path. Output line count always equals input line count. */
LCPSEG_API lcpseg_status_t lcpseg_segment_file(const lcpseg_model_t* model,
                                               const char* input_path,
                                               const char* output_path,
                                               lcpseg_boundary_mode_t mode,
                                               const lcpseg_segment_options_t* options);

/* Segments a single sentence; *out receives a rendered string owned by the
 * caller (release with lcpseg_string_free). Randomized modes behave like
 * line 0 of a file segmented with the same options. */
LCPSEG_API lcpseg_status_t lcpseg_segment_line(const lcpseg_model_t* model,
                                               const char* line,
                                               lcpseg_boundary_mode_t mode,
                                               const lcpseg_segment_options_t* options,
                                               char** out);

/* -- multi-pass results -------------------------------------------------- */

LCPSEG_API size_t lcpseg_result_pass_count(const lcpseg_result_t* result);
LCPSEG_API size_t lcpseg_result_pass_depth(const lcpseg_result_t* result, size_t pass);
LCPSEG_API int lcpseg_result_limit_tripped(const lcpseg_result_t* result);

/* Writes pass `pass` (0-based) as one rendered line per input sentence. */
LCPSEG_API lcpseg_status_t lcpseg_result_write_pass(const lcpseg_result_t* result,
                                                    size_t pass,
                                                    const char* path,
                                                    const char* separator,
                                                    const char* blank_marker);

/* Segmentation statistics plus the run's hyperparameters and seed, as one
 * JSON object (release with lcpseg_string_free). */
LCPSEG_API lcpseg_status_t lcpseg_result_stats_json(const lcpseg_result_t* result,
                                                    char** out_json);
LCPSEG_API void lcpseg_result_free(lcpseg_result_t* result);

/* -- evaluation ---------------------------------------------------------- */

/* Corpus-level BLEU over whitespace-tokenized lines. weights may be NULL for
 * uniform 1/max_order weights; raw_matches != 0 disables clipping. */
LCPSEG_API lcpseg_status_t lcpseg_corpus_bleu(const char* const* candidates,
                                              const char* const* references,
                                              size_t count,
                                              int max_order,
                                              const double* weights,
                                              int raw_matches,
                                              double* out);

#ifdef __cplusplus
}
#endif

#endif /* LCPSEG_LCPSEG_H_ */
