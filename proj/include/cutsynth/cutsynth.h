/*
 * Copyright 2026 The cutsynth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * cutsynth C API.
 *
 * All objects are opaque handles created and destroyed through this
 * interface. Every fallible call returns a cs_status; on failure a
 * human-readable message for the calling thread is available from
 * cs_last_error() until the next failing call on that thread. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with cs_string_free().
 */

#ifndef CUTSYNTH_CUTSYNTH_H_
#define CUTSYNTH_CUTSYNTH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CUTSYNTH_BUILDING_LIBRARY)
#define CUTSYNTH_API __declspec(dllexport)
#else
#define CUTSYNTH_API __declspec(dllimport)
#endif
#else
#define CUTSYNTH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_EMPTY_MASK = 2,
  CS_ERR_DIMENSION_MISMATCH = 3,
  CS_ERR_EMPTY_UNION = 4,
  CS_ERR_INVALID_COUNT = 5,
  CS_ERR_NO_SEEDS = 6,
  CS_ERR_INVALID_ANCHOR = 7,
  CS_ERR_OUT_OF_BOUNDS = 8,
  CS_ERR_EMPTY_SPEC = 9,
  CS_ERR_GROUP_TOO_SMALL = 10,
  CS_ERR_TOO_FEW_SOURCES = 11,
  CS_ERR_NO_POSITIVES = 12,
  CS_ERR_NO_NEGATIVES = 13,
  CS_ERR_MISSING_CLASS = 14,
  CS_ERR_EMPTY_BUCKET = 15,
  CS_ERR_EMPTY_SCORES = 16,
  CS_ERR_IO = 17,
  CS_ERR_PARSE = 18,
  CS_ERR_INTERNAL = 99
} cs_status;

/* Class ids used by the evaluation entry points. */
enum { CS_LABEL_COARSE = 0, CS_LABEL_FINE = 1 };

typedef struct cs_mask cs_mask;
typedef struct cs_image cs_image;
typedef struct cs_builder cs_builder;
typedef struct cs_manifest cs_manifest;

CUTSYNTH_API const char* cs_version(void);
CUTSYNTH_API const char* cs_status_name(cs_status status);
CUTSYNTH_API const char* cs_last_error(void);
CUTSYNTH_API void cs_string_free(char* s);

/* ---- Masks ---------------------------------------------------------------
 * Row-major, one byte per pixel, nonzero = object. */

CUTSYNTH_API cs_status cs_mask_create(int width, int height,
                                      const uint8_t* bits, cs_mask** out);
CUTSYNTH_API cs_status cs_mask_load_png(const char* path, cs_mask** out);
CUTSYNTH_API cs_status cs_mask_save_png(const cs_mask* mask, const char* path);
CUTSYNTH_API void cs_mask_free(cs_mask* mask);
CUTSYNTH_API cs_status cs_mask_size(const cs_mask* mask, int* width,
                                    int* height);
/* Copies width*height bytes (0 or 1) into `bits`. */
CUTSYNTH_API cs_status cs_mask_copy_bits(const cs_mask* mask, uint8_t* bits,
                                         size_t capacity);
/* box = {x0, y0, x1, y1}, inclusive. */
CUTSYNTH_API cs_status cs_mask_bounding_box(const cs_mask* mask, int box[4]);
CUTSYNTH_API cs_status cs_change_ratio(const cs_mask* augmented,
                                       const cs_mask* original, double* out);
CUTSYNTH_API cs_status cs_dice_coefficient(const double* prediction, size_t n,
                                           const cs_mask* target, double eps,
                                           double* out);

/* ---- Images --------------------------------------------------------------
 * 8-bit RGB, interleaved, row-major. */

CUTSYNTH_API cs_status cs_image_create(int width, int height,
                                       const uint8_t* rgb, cs_image** out);
CUTSYNTH_API cs_status cs_image_load_png(const char* path, cs_image** out);
CUTSYNTH_API cs_status cs_image_save_png(const cs_image* image,
                                         const char* path);
CUTSYNTH_API void cs_image_free(cs_image* image);
CUTSYNTH_API cs_status cs_image_size(const cs_image* image, int* width,
                                     int* height);
/* New image with `left` and `right` placed side by side (heights must match). */
CUTSYNTH_API cs_status cs_image_side_by_side(const cs_image* left,
                                             const cs_image* right,
                                             cs_image** out);
CUTSYNTH_API cs_status cs_fill_background(const cs_image* image,
                                          const cs_mask* mask, cs_image** out);

/* ---- Single augmentation ------------------------------------------------ */

typedef struct cs_aug_params {
  int n_seeds;
  /* "grid", "horizontal", "vertical", "diagonal_main", "diagonal_secondary" */
  const char* strategy;
  double move_lo;
  double move_hi;
  double noise;
  int anchor_id; /* 0..8, row-major over the object's bounding box */
} cs_aug_params;

/* Runs one augmentation with a random stream seeded by `seed`. `background`
 * may be NULL to use the built-in fill. When the cell is rejected, *rejected
 * is set to 1, CS_OK is returned and the image/mask outputs are NULL. */
CUTSYNTH_API cs_status cs_augment_once(const cs_image* image,
                                       const cs_mask* mask,
                                       const cs_image* background,
                                       const cs_aug_params* params,
                                       uint64_t seed, cs_image** out_image,
                                       cs_mask** out_mask, double* out_c,
                                       int* rejected);

/* ---- Dataset generation ------------------------------------------------- */

CUTSYNTH_API cs_status cs_builder_create(cs_builder** out);
CUTSYNTH_API void cs_builder_free(cs_builder* builder);
/* `background_path` may be NULL or empty. */
CUTSYNTH_API cs_status cs_builder_add_source(cs_builder* builder,
                                             const char* source_id,
                                             const char* object_name,
                                             const char* image_path,
                                             const char* mask_path,
                                             const char* background_path);
/* Grid spec as JSON text; missing keys keep their defaults. */
CUTSYNTH_API cs_status cs_builder_set_grid_json(cs_builder* builder,
                                                const char* json);
CUTSYNTH_API cs_status cs_builder_set_seed(cs_builder* builder, uint64_t seed);
CUTSYNTH_API cs_status cs_builder_set_workers(cs_builder* builder, int workers);
/* Images and masks are written below this directory when set. */
CUTSYNTH_API cs_status cs_builder_set_output_dir(cs_builder* builder,
                                                 const char* dir);
/* Per-source failures do not fail the run; inspect them with
 * cs_manifest_source_error(). */
CUTSYNTH_API cs_status cs_builder_run(cs_builder* builder, cs_manifest** out);

/* ---- Manifests ---------------------------------------------------------- */

CUTSYNTH_API cs_status cs_manifest_load(const char* path, cs_manifest** out);
CUTSYNTH_API cs_status cs_manifest_save(const cs_manifest* manifest,
                                        const char* path);
CUTSYNTH_API void cs_manifest_free(cs_manifest* manifest);
CUTSYNTH_API size_t cs_manifest_record_count(const cs_manifest* manifest);
CUTSYNTH_API cs_status cs_manifest_counts(const cs_manifest* manifest,
                                          size_t* accepted, size_t* rejected);
CUTSYNTH_API size_t cs_manifest_source_count(const cs_manifest* manifest);
/* Borrowed strings valid until the manifest is modified or freed. The error
 * string is empty for sources that were processed. */
CUTSYNTH_API const char* cs_manifest_source_id(const cs_manifest* manifest,
                                               size_t index);
CUTSYNTH_API const char* cs_manifest_source_error(const cs_manifest* manifest,
                                                  size_t index);
CUTSYNTH_API cs_status cs_manifest_record_json(const cs_manifest* manifest,
                                               size_t index, char** out);
/* Median-split labels and regression targets. Newline-separated warnings are
 * returned through `warnings` when it is not NULL. */
CUTSYNTH_API cs_status cs_manifest_assign_labels(cs_manifest* manifest,
                                                 char** warnings);
/* "change_ratio" or "seed_points". */
CUTSYNTH_API cs_status cs_manifest_set_target(cs_manifest* manifest,
                                              const char* target);
CUTSYNTH_API cs_status cs_manifest_split(cs_manifest* manifest,
                                         double train_fraction, uint64_t seed);

/* ---- Evaluation --------------------------------------------------------- */

/* labels[i] is CS_LABEL_FINE or CS_LABEL_COARSE; scores are fineness. */
CUTSYNTH_API cs_status cs_average_precision(const double* scores,
                                            const int* labels, size_t n,
                                            int positive, double* out);
CUTSYNTH_API cs_status cs_macro_map(const double* scores, const int* labels,
                                    size_t n, double* out);
CUTSYNTH_API cs_status cs_aggregate_video(const double* frame_scores, size_t n,
                                          double top_fraction, double* out);
/* JSON report with map_all / map_seen / map_unseen and per-bucket details.
 * `manifest` may be NULL when the score rows carry their own labels. */
CUTSYNTH_API cs_status cs_evaluate_file(const char* scores_path,
                                        const cs_manifest* manifest,
                                        char** report_json);
/* JSON array of {video_id, frames, score}. */
CUTSYNTH_API cs_status cs_aggregate_video_file(const char* scores_path,
                                               double top_fraction,
                                               char** report_json);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // CUTSYNTH_CUTSYNTH_H_
