// Copyright 2026 The bzcontour Authors. All Rights Reserved.
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

/* C interface to the bzcontour shape codec.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a bzc_status; on
 * failure the calling thread's bzc_last_error() describes what went wrong.
 * Functions that fill caller buffers take a capacity and report the size
 * they need, so a first call with capacity 0 can be used as a size query.
 * All functions are safe to call concurrently on distinct handles, and on
 * shared handles as long as no thread frees them.
 */
#ifndef BZCONTOUR_H_
#define BZCONTOUR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BZC_BUILDING_LIBRARY)
#    define BZC_API __declspec(dllexport)
#  else
#    define BZC_API __declspec(dllimport)
#  endif
#else
#  define BZC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bzc_status {
  BZC_OK = 0,
  BZC_ERR_INVALID_ARGUMENT = 1,
  BZC_ERR_FORMAT = 2,
  BZC_ERR_EMPTY_OBJECT = 3,
  BZC_ERR_DEGENERATE_OBJECT = 4,
  BZC_ERR_PRECONDITION = 5,
  BZC_ERR_INVARIANT = 6,
  BZC_ERR_UNSUPPORTED_LAYOUT = 7,
  BZC_ERR_UNDEFINED_METRIC = 8,
  BZC_ERR_IO = 9,
  BZC_ERR_BUFFER_TOO_SMALL = 10,
  BZC_ERR_INTERNAL = 99
} bzc_status;

typedef enum bzc_shape_kind {
  BZC_SHAPE_BLOB = 0,
  BZC_SHAPE_ELLIPSE = 1,
  BZC_SHAPE_DUMBBELL = 2
} bzc_shape_kind;

typedef struct bzc_mask bzc_mask;
typedef struct bzc_contour bzc_contour;

typedef struct bzc_fit_report {
  double residual[4];    /* RMS pixel error per arc */
  int64_t arc_length[4]; /* boundary points per arc, junctions included */
} bzc_fit_report;

typedef struct bzc_metrics {
  double iou;
  double hausdorff;
  double mcc;
  double fp_rate;
  double fn_rate;
} bzc_metrics;

typedef struct bzc_summary {
  int64_t count;
  double miou;
  double siou;
  double hausdorff;
  double mcc;
  double fp_rate;
  double fn_rate;
} bzc_summary;

typedef struct bzc_loss {
  double total;
  double l_ce;
  double l_matching;
  double gradient[40];
} bzc_loss;

typedef struct bzc_fidelity_item {
  int32_t ok; /* 0 when the mask could not be encoded */
  bzc_status status;
  bzc_metrics metrics;
  bzc_fit_report fit;
} bzc_fidelity_item;

/* ---- library ---------------------------------------------------------- */

BZC_API const char* bzc_version(void);
BZC_API const char* bzc_status_string(bzc_status status);
/* Message for the last failing call on this thread; "" if none. */
BZC_API const char* bzc_last_error(void);
BZC_API uint64_t bzc_derive_seed(uint64_t base, const char* stream, const uint64_t* path,
                                 size_t path_len);

/* ---- masks ------------------------------------------------------------ */

/* bits may be NULL for an all-background mask; nonzero bytes are foreground. */
BZC_API bzc_status bzc_mask_create(int32_t width, int32_t height, const uint8_t* bits,
                                   bzc_mask** out);
BZC_API bzc_status bzc_mask_load_pgm(const uint8_t* bytes, size_t len, int32_t threshold,
                                     bzc_mask** out);
BZC_API bzc_status bzc_mask_read_file(const char* path, int32_t threshold, bzc_mask** out);
/* Written atomically (temporary file + rename). */
BZC_API bzc_status bzc_mask_write_file(const bzc_mask* mask, const char* path);
BZC_API bzc_status bzc_mask_to_pgm(const bzc_mask* mask, uint8_t* buffer, size_t capacity,
                                   size_t* written);
BZC_API void bzc_mask_free(bzc_mask* mask);

BZC_API int32_t bzc_mask_width(const bzc_mask* mask);
BZC_API int32_t bzc_mask_height(const bzc_mask* mask);
BZC_API int64_t bzc_mask_count(const bzc_mask* mask);
/* Copies width*height bytes (0 or 1), row-major. */
BZC_API bzc_status bzc_mask_get_bits(const bzc_mask* mask, uint8_t* out, size_t capacity);

BZC_API bzc_status bzc_mask_largest_component(const bzc_mask* mask, int32_t connectivity,
                                              bzc_mask** out);
BZC_API bzc_status bzc_mask_smooth(const bzc_mask* mask, int32_t radius, bzc_mask** out);
BZC_API bzc_status bzc_mask_generate(bzc_shape_kind kind, int32_t width, int32_t height,
                                     uint64_t seed, double scale, bzc_mask** out);
/* Synthetic corpus: blobs, then ellipses, then dumbbells, shape scale drawn
 * in [0.5, 0.9]. out receives one new handle per shape. */
BZC_API bzc_status bzc_generate_corpus(int32_t blobs, int32_t ellipses, int32_t dumbbells,
                                       int32_t width, int32_t height, uint64_t seed,
                                       bzc_mask** out, size_t capacity, size_t* count);
/* Boundary trace as x,y pairs. */
BZC_API bzc_status bzc_mask_trace(const bzc_mask* mask, double* xy, size_t capacity_points,
                                  size_t* n_points);
BZC_API bzc_status bzc_rasterize_polygon(const double* xy, size_t n_points, int32_t width,
                                         int32_t height, bzc_mask** out);

/* ---- contours --------------------------------------------------------- */

/* report may be NULL. */
BZC_API bzc_status bzc_encode_mask(const bzc_mask* mask, int32_t degree, int32_t smooth_radius,
                                   bzc_contour** out, bzc_fit_report* report);
BZC_API void bzc_contour_free(bzc_contour* contour);

BZC_API int32_t bzc_contour_degree(const bzc_contour* contour);
BZC_API int32_t bzc_contour_width(const bzc_contour* contour);
BZC_API int32_t bzc_contour_height(const bzc_contour* contour);
/* 4 * (degree + 1) points, segment by segment, as x,y pairs. */
BZC_API bzc_status bzc_contour_control_points(const bzc_contour* contour, double* xy,
                                              size_t capacity_points, size_t* n_points);
/* Builds a contour from 4 * (degree + 1) points laid out as above. */
BZC_API bzc_status bzc_contour_create(const double* xy, size_t n_points, int32_t degree,
                                      int32_t width, int32_t height, bzc_contour** out);

BZC_API bzc_status bzc_contour_to_json(const bzc_contour* contour, char* buffer, size_t capacity,
                                       size_t* written);
BZC_API bzc_status bzc_contour_from_json(const char* json, size_t len, bzc_contour** out);
BZC_API bzc_status bzc_contour_read_file(const char* path, bzc_contour** out);
BZC_API bzc_status bzc_contour_write_file(const bzc_contour* contour, const char* path);

/* Degree-5 only: 4 extremes then 16 interior points, x then y. */
BZC_API bzc_status bzc_contour_flatten(const bzc_contour* contour, double out[40]);
BZC_API bzc_status bzc_contour_unflatten(const double values[40], int32_t width, int32_t height,
                                         bzc_contour** out);

/* Closed polygon of 4 * (samples - 1) vertices. */
BZC_API bzc_status bzc_contour_decode(const bzc_contour* contour, int32_t samples_per_segment,
                                      double* xy, size_t capacity_points, size_t* n_points);
/* Scales the contour into width x height, samples it and fills it. */
BZC_API bzc_status bzc_contour_render(const bzc_contour* contour, int32_t width, int32_t height,
                                      int32_t samples_per_segment, bzc_mask** out);
BZC_API bzc_status bzc_contour_perturb(const bzc_contour* contour, double delta, uint64_t seed,
                                       bzc_contour** out);
/* Grey-level PGM: background 0, mask foreground 80 (base may be NULL),
 * decoded outline 255, control points 160. */
BZC_API bzc_status bzc_render_overlay_file(const bzc_mask* base, const bzc_contour* contour,
                                           int32_t samples_per_segment, const char* path);

/* ---- metrics ---------------------------------------------------------- */

BZC_API bzc_status bzc_evaluate_masks(const bzc_mask* pred, const bzc_mask* gt, bzc_metrics* out);
BZC_API bzc_status bzc_evaluate_contour(const bzc_contour* pred, const bzc_mask* gt,
                                        int32_t samples_per_segment, bzc_metrics* out);
BZC_API bzc_status bzc_hausdorff(const double* a_xy, size_t a_points, const double* b_xy,
                                 size_t b_points, double* out);
BZC_API bzc_status bzc_summarize(const bzc_metrics* reports, size_t count, bzc_summary* out);

/* ---- decoder losses --------------------------------------------------- */

BZC_API bzc_status bzc_total_loss(const bzc_contour* pred, const bzc_contour* gt, int32_t n_samples,
                                  uint64_t seed, bzc_loss* out);
BZC_API bzc_status bzc_gradient_check(uint64_t seed, int32_t pairs, int32_t n_samples,
                                      double* max_relative_error);

/* ---- experiments ------------------------------------------------------ */

/* items must hold `count` entries; summary covers the successful ones. */
BZC_API bzc_status bzc_fidelity_study(const bzc_mask* const* corpus, size_t count, int32_t degree,
                                      int32_t samples_per_segment, int32_t smooth_radius,
                                      int32_t jobs, bzc_fidelity_item* items, bzc_summary* summary);
/* miou_bezier and miou_polygon must hold n_deltas entries. */
BZC_API bzc_status bzc_sensitivity_sweep(const bzc_mask* const* corpus, size_t count,
                                         const double* deltas, size_t n_deltas, int32_t trials,
                                         uint64_t seed, int32_t degree, int32_t samples_per_segment,
                                         int32_t smooth_radius, int32_t jobs, double* miou_bezier,
                                         double* miou_polygon, size_t* images_used);

#ifdef __cplusplus
}
#endif

#endif /* BZCONTOUR_H_ */
