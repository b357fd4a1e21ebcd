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

#include "bzcontour/bzcontour.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bzcontour/bdsd.hpp"
#include "bzcontour/contour_json.hpp"
#include "bzcontour/error.hpp"
#include "bzcontour/experiments.hpp"
#include "bzcontour/metrics.hpp"
#include "bzcontour/seed.hpp"
#include "file_util.hpp"

struct bzc_mask {
  bzc::BinaryMask value;
};

struct bzc_contour {
  bzc::PiecewiseContour value;
};

namespace {

thread_local std::string g_last_error;

bzc_status to_status(bzc::ErrorCode code) {
  switch (code) {
    case bzc::ErrorCode::kInvalidArgument: return BZC_ERR_INVALID_ARGUMENT;
    case bzc::ErrorCode::kFormat: return BZC_ERR_FORMAT;
    case bzc::ErrorCode::kEmptyObject: return BZC_ERR_EMPTY_OBJECT;
    case bzc::ErrorCode::kDegenerateObject: return BZC_ERR_DEGENERATE_OBJECT;
    case bzc::ErrorCode::kPrecondition: return BZC_ERR_PRECONDITION;
    case bzc::ErrorCode::kInvariantViolation: return BZC_ERR_INVARIANT;
    case bzc::ErrorCode::kUnsupportedLayout: return BZC_ERR_UNSUPPORTED_LAYOUT;
    case bzc::ErrorCode::kUndefinedMetric: return BZC_ERR_UNDEFINED_METRIC;
    case bzc::ErrorCode::kIo: return BZC_ERR_IO;
  }
  return BZC_ERR_INTERNAL;
}

struct BufferTooSmall {};

template <typename Fn>
bzc_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return BZC_OK;
  } catch (const bzc::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const BufferTooSmall&) {
    g_last_error = "output buffer too small";
    return BZC_ERR_BUFFER_TOO_SMALL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BZC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BZC_ERR_INTERNAL;
  }
}

template <typename T>
void require(const T* p, const char* what) {
  if (p == nullptr) bzc::fail(bzc::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

std::vector<bzc::Point2> read_points(const double* xy, std::size_t n) {
  if (n > 0) require(xy, "point buffer");
  std::vector<bzc::Point2> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
  return pts;
}

// Reports the needed size, then fails if the caller's buffer cannot hold it.
void write_points(const std::vector<bzc::Point2>& pts, double* xy, std::size_t capacity,
                  std::size_t* n_points) {
  if (n_points != nullptr) *n_points = pts.size();
  if (capacity < pts.size()) throw BufferTooSmall{};
  if (!pts.empty()) require(xy, "output buffer");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    xy[2 * i] = pts[i].x;
    xy[2 * i + 1] = pts[i].y;
  }
}

void write_bytes(const void* data, std::size_t len, void* buffer, std::size_t capacity,
                 std::size_t* written) {
  if (written != nullptr) *written = len;
  if (capacity < len) throw BufferTooSmall{};
  if (len > 0) {
    require(buffer, "output buffer");
    std::memcpy(buffer, data, len);
  }
}

bzc_metrics to_c(const bzc::MetricsReport& r) {
  return {r.iou, r.hausdorff, r.mcc, r.fp_rate, r.fn_rate};
}

bzc::MetricsReport from_c(const bzc_metrics& r) {
  return {r.iou, r.hausdorff, r.mcc, r.fp_rate, r.fn_rate};
}

bzc_summary to_c(const bzc::DatasetSummary& s) {
  return {static_cast<int64_t>(s.count), s.miou, s.siou, s.hausdorff, s.mcc, s.fp_rate, s.fn_rate};
}

bzc_fit_report to_c(const bzc::FitReport& r) {
  bzc_fit_report out{};
  for (int k = 0; k < 4; ++k) {
    out.residual[k] = r.residuals[k];
    out.arc_length[k] = static_cast<int64_t>(r.arc_lengths[k]);
  }
  return out;
}

std::vector<bzc::BinaryMask> copy_corpus(const bzc_mask* const* corpus, std::size_t count) {
  if (count > 0) require(corpus, "corpus");
  std::vector<bzc::BinaryMask> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    require(corpus[i], "corpus entry");
    out.push_back(corpus[i]->value);
  }
  return out;
}

template <typename T, typename... Args>
T* make(Args&&... args) {
  return new T{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* bzc_version(void) { return "1.0.0"; }

const char* bzc_status_string(bzc_status status) {
  switch (status) {
    case BZC_OK: return "ok";
    case BZC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case BZC_ERR_FORMAT: return "format-error";
    case BZC_ERR_EMPTY_OBJECT: return "empty-object";
    case BZC_ERR_DEGENERATE_OBJECT: return "degenerate-object";
    case BZC_ERR_PRECONDITION: return "precondition-violation";
    case BZC_ERR_INVARIANT: return "invariant-violation";
    case BZC_ERR_UNSUPPORTED_LAYOUT: return "unsupported-layout";
    case BZC_ERR_UNDEFINED_METRIC: return "undefined-metric";
    case BZC_ERR_IO: return "io-error";
    case BZC_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case BZC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* bzc_last_error(void) { return g_last_error.c_str(); }

uint64_t bzc_derive_seed(uint64_t base, const char* stream, const uint64_t* path,
                         size_t path_len) {
  const std::string_view name = stream != nullptr ? stream : "";
  if (path == nullptr) path_len = 0;
  return bzc::derive_seed(base, name, std::span<const uint64_t>(path, path_len));
}

bzc_status bzc_mask_create(int32_t width, int32_t height, const uint8_t* bits, bzc_mask** out) {
  return guarded([&] {
    require(out, "out");
    if (width < 1 || height < 1) bzc::fail(bzc::ErrorCode::kInvalidArgument, "mask size must be >= 1");
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<uint8_t> data(n, 0);
    if (bits != nullptr) std::copy(bits, bits + n, data.begin());
    *out = make<bzc_mask>(bzc::BinaryMask(width, height, std::move(data)));
  });
}

bzc_status bzc_mask_load_pgm(const uint8_t* bytes, size_t len, int32_t threshold, bzc_mask** out) {
  return guarded([&] {
    require(out, "out");
    if (len > 0) require(bytes, "bytes");
    *out = make<bzc_mask>(bzc::load_mask(std::span<const uint8_t>(bytes, len), threshold));
  });
}

bzc_status bzc_mask_read_file(const char* path, int32_t threshold, bzc_mask** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = make<bzc_mask>(bzc::read_mask_file(path, threshold));
  });
}

bzc_status bzc_mask_write_file(const bzc_mask* mask, const char* path) {
  return guarded([&] {
    require(mask, "mask");
    require(path, "path");
    bzc::write_mask_file(mask->value, path);
  });
}

bzc_status bzc_mask_to_pgm(const bzc_mask* mask, uint8_t* buffer, size_t capacity,
                           size_t* written) {
  return guarded([&] {
    require(mask, "mask");
    const auto bytes = bzc::encode_pgm(mask->value);
    write_bytes(bytes.data(), bytes.size(), buffer, capacity, written);
  });
}

void bzc_mask_free(bzc_mask* mask) { delete mask; }

int32_t bzc_mask_width(const bzc_mask* mask) { return mask ? mask->value.width() : 0; }
int32_t bzc_mask_height(const bzc_mask* mask) { return mask ? mask->value.height() : 0; }
int64_t bzc_mask_count(const bzc_mask* mask) {
  return mask ? static_cast<int64_t>(mask->value.count()) : 0;
}

bzc_status bzc_mask_get_bits(const bzc_mask* mask, uint8_t* out, size_t capacity) {
  return guarded([&] {
    require(mask, "mask");
    const auto bits = mask->value.bits();
    write_bytes(bits.data(), bits.size(), out, capacity, nullptr);
  });
}

bzc_status bzc_mask_largest_component(const bzc_mask* mask, int32_t connectivity, bzc_mask** out) {
  return guarded([&] {
    require(mask, "mask");
    require(out, "out");
    *out = make<bzc_mask>(bzc::largest_component(mask->value, connectivity));
  });
}

bzc_status bzc_mask_smooth(const bzc_mask* mask, int32_t radius, bzc_mask** out) {
  return guarded([&] {
    require(mask, "mask");
    require(out, "out");
    *out = make<bzc_mask>(bzc::morphological_smooth(mask->value, radius));
  });
}

bzc_status bzc_mask_generate(bzc_shape_kind kind, int32_t width, int32_t height, uint64_t seed,
                             double scale, bzc_mask** out) {
  return guarded([&] {
    require(out, "out");
    bzc::SyntheticShapeSpec spec;
    switch (kind) {
      case BZC_SHAPE_BLOB: spec.kind = bzc::ShapeKind::kBlob; break;
      case BZC_SHAPE_ELLIPSE: spec.kind = bzc::ShapeKind::kEllipse; break;
      case BZC_SHAPE_DUMBBELL: spec.kind = bzc::ShapeKind::kDumbbell; break;
      default: bzc::fail(bzc::ErrorCode::kInvalidArgument, "unknown shape kind");
    }
    spec.width = width;
    spec.height = height;
    spec.seed = seed;
    spec.scale = scale;
    *out = make<bzc_mask>(bzc::generate_shape(spec));
  });
}

bzc_status bzc_mask_trace(const bzc_mask* mask, double* xy, size_t capacity_points,
                          size_t* n_points) {
  return guarded([&] {
    require(mask, "mask");
    write_points(bzc::trace_boundary(mask->value).points, xy, capacity_points, n_points);
  });
}

bzc_status bzc_generate_corpus(int32_t blobs, int32_t ellipses, int32_t dumbbells, int32_t width,
                               int32_t height, uint64_t seed, bzc_mask** out, size_t capacity,
                               size_t* count) {
  return guarded([&] {
    bzc::CorpusSpec spec;
    spec.blobs = blobs;
    spec.ellipses = ellipses;
    spec.dumbbells = dumbbells;
    spec.width = width;
    spec.height = height;
    spec.seed = seed;
    std::vector<bzc::BinaryMask> corpus = bzc::generate_corpus(spec);
    if (count != nullptr) *count = corpus.size();
    if (capacity < corpus.size()) throw BufferTooSmall{};
    if (!corpus.empty()) require(out, "out");
    for (std::size_t i = 0; i < corpus.size(); ++i) out[i] = nullptr;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      out[i] = make<bzc_mask>(std::move(corpus[i]));
    }
  });
}

bzc_status bzc_rasterize_polygon(const double* xy, size_t n_points, int32_t width, int32_t height,
                                 bzc_mask** out) {
  return guarded([&] {
    require(out, "out");
    const auto pts = read_points(xy, n_points);
    *out = make<bzc_mask>(bzc::rasterize_polygon(pts, width, height));
  });
}

bzc_status bzc_encode_mask(const bzc_mask* mask, int32_t degree, int32_t smooth_radius,
                           bzc_contour** out, bzc_fit_report* report) {
  return guarded([&] {
    require(mask, "mask");
    require(out, "out");
    bzc::EncodeResult result = bzc::encode_mask(mask->value, degree, smooth_radius);
    if (report != nullptr) *report = to_c(result.report);
    *out = make<bzc_contour>(std::move(result.contour));
  });
}

void bzc_contour_free(bzc_contour* contour) { delete contour; }

int32_t bzc_contour_degree(const bzc_contour* c) { return c ? c->value.degree() : 0; }
int32_t bzc_contour_width(const bzc_contour* c) { return c ? c->value.width() : 0; }
int32_t bzc_contour_height(const bzc_contour* c) { return c ? c->value.height() : 0; }

bzc_status bzc_contour_control_points(const bzc_contour* contour, double* xy,
                                      size_t capacity_points, size_t* n_points) {
  return guarded([&] {
    require(contour, "contour");
    std::vector<bzc::Point2> pts;
    for (const auto& seg : contour->value.segments()) {
      pts.insert(pts.end(), seg.control_points().begin(), seg.control_points().end());
    }
    write_points(pts, xy, capacity_points, n_points);
  });
}

bzc_status bzc_contour_create(const double* xy, size_t n_points, int32_t degree, int32_t width,
                              int32_t height, bzc_contour** out) {
  return guarded([&] {
    require(out, "out");
    if (degree < 1 || degree > bzc::kMaxDegree) {
      bzc::fail(bzc::ErrorCode::kInvalidArgument, "degree out of range");
    }
    const std::size_t per = static_cast<std::size_t>(degree) + 1;
    if (n_points != 4 * per) {
      bzc::fail(bzc::ErrorCode::kInvalidArgument, "expected 4 * (degree + 1) control points");
    }
    const auto pts = read_points(xy, n_points);
    std::array<bzc::BezierSegment, 4> segments;
    for (int k = 0; k < 4; ++k) {
      segments[k] = bzc::BezierSegment(
          std::vector<bzc::Point2>(pts.begin() + k * per, pts.begin() + (k + 1) * per));
    }
    *out = make<bzc_contour>(bzc::PiecewiseContour(std::move(segments), width, height));
  });
}

bzc_status bzc_contour_to_json(const bzc_contour* contour, char* buffer, size_t capacity,
                               size_t* written) {
  return guarded([&] {
    require(contour, "contour");
    const std::string text = bzc::contour_to_json(contour->value);
    // Include the terminating NUL in what the caller must provide.
    write_bytes(text.c_str(), text.size() + 1, buffer, capacity, written);
  });
}

bzc_status bzc_contour_from_json(const char* json, size_t len, bzc_contour** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = make<bzc_contour>(bzc::contour_from_json(std::string(json, len)));
  });
}

bzc_status bzc_contour_read_file(const char* path, bzc_contour** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = make<bzc_contour>(bzc::read_contour_file(path));
  });
}

bzc_status bzc_contour_write_file(const bzc_contour* contour, const char* path) {
  return guarded([&] {
    require(contour, "contour");
    require(path, "path");
    bzc::write_contour_file(contour->value, path);
  });
}

bzc_status bzc_contour_flatten(const bzc_contour* contour, double out[40]) {
  return guarded([&] {
    require(contour, "contour");
    require(out, "out");
    const auto flat = bzc::flatten(contour->value);
    std::copy(flat.begin(), flat.end(), out);
  });
}

bzc_status bzc_contour_unflatten(const double values[40], int32_t width, int32_t height,
                                 bzc_contour** out) {
  return guarded([&] {
    require(values, "values");
    require(out, "out");
    *out = make<bzc_contour>(
        bzc::unflatten(std::span<const double>(values, bzc::kFlatSize), width, height));
  });
}

bzc_status bzc_contour_decode(const bzc_contour* contour, int32_t samples_per_segment, double* xy,
                              size_t capacity_points, size_t* n_points) {
  return guarded([&] {
    require(contour, "contour");
    write_points(bzc::decode_contour(contour->value, samples_per_segment), xy, capacity_points,
                 n_points);
  });
}

bzc_status bzc_contour_render(const bzc_contour* contour, int32_t width, int32_t height,
                              int32_t samples_per_segment, bzc_mask** out) {
  return guarded([&] {
    require(contour, "contour");
    require(out, "out");
    *out = make<bzc_mask>(bzc::render_contour(contour->value, width, height, samples_per_segment));
  });
}

bzc_status bzc_contour_perturb(const bzc_contour* contour, double delta, uint64_t seed,
                               bzc_contour** out) {
  return guarded([&] {
    require(contour, "contour");
    require(out, "out");
    *out = make<bzc_contour>(bzc::perturb_contour(contour->value, delta, seed));
  });
}

bzc_status bzc_render_overlay_file(const bzc_mask* base, const bzc_contour* contour,
                                   int32_t samples_per_segment, const char* path) {
  return guarded([&] {
    require(contour, "contour");
    require(path, "path");
    const int w = base ? base->value.width() : contour->value.width();
    const int h = base ? base->value.height() : contour->value.height();
    const bzc::PiecewiseContour scaled = bzc::rescale(contour->value, w, h);
    std::vector<uint8_t> grey(static_cast<std::size_t>(w) * h, 0);
    auto plot = [&](double x, double y, uint8_t level) {
      const int c = static_cast<int>(std::floor(x));
      const int r = static_cast<int>(std::floor(y));
      if (r >= 0 && c >= 0 && r < h && c < w) grey[static_cast<std::size_t>(r) * w + c] = level;
    };
    if (base != nullptr) {
      const auto bits = base->value.bits();
      for (std::size_t i = 0; i < bits.size(); ++i) grey[i] = bits[i] ? 80 : 0;
    }
    const auto polygon = bzc::decode_contour(scaled, samples_per_segment);
    for (std::size_t i = 0; i < polygon.size(); ++i) {
      const bzc::Point2 a = polygon[i];
      const bzc::Point2 b = polygon[(i + 1) % polygon.size()];
      const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * bzc::distance(a, b))));
      for (int s = 0; s <= steps; ++s) {
        const double u = static_cast<double>(s) / steps;
        plot(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), 255);
      }
    }
    for (const auto& seg : scaled.segments()) {
      for (const bzc::Point2& p : seg.control_points()) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) plot(p.x + dx, p.y + dy, 160);
        }
      }
    }
    std::string file = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    file.append(reinterpret_cast<const char*>(grey.data()), grey.size());
    bzc::detail::write_file_atomic(path, file);
  });
}

bzc_status bzc_evaluate_masks(const bzc_mask* pred, const bzc_mask* gt, bzc_metrics* out) {
  return guarded([&] {
    require(pred, "pred");
    require(gt, "gt");
    require(out, "out");
    *out = to_c(bzc::evaluate_masks(pred->value, gt->value));
  });
}

bzc_status bzc_evaluate_contour(const bzc_contour* pred, const bzc_mask* gt,
                                int32_t samples_per_segment, bzc_metrics* out) {
  return guarded([&] {
    require(pred, "pred");
    require(gt, "gt");
    require(out, "out");
    *out = to_c(bzc::evaluate_contour(pred->value, gt->value, samples_per_segment));
  });
}

bzc_status bzc_hausdorff(const double* a_xy, size_t a_points, const double* b_xy, size_t b_points,
                         double* out) {
  return guarded([&] {
    require(out, "out");
    *out = bzc::hausdorff(read_points(a_xy, a_points), read_points(b_xy, b_points));
  });
}

bzc_status bzc_summarize(const bzc_metrics* reports, size_t count, bzc_summary* out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(reports, "reports");
    std::vector<bzc::MetricsReport> rs;
    rs.reserve(count);
    for (size_t i = 0; i < count; ++i) rs.push_back(from_c(reports[i]));
    *out = to_c(bzc::summarize(rs));
  });
}

bzc_status bzc_total_loss(const bzc_contour* pred, const bzc_contour* gt, int32_t n_samples,
                          uint64_t seed, bzc_loss* out) {
  return guarded([&] {
    require(pred, "pred");
    require(gt, "gt");
    require(out, "out");
    const bzc::LossValue v = bzc::total_loss(pred->value, gt->value, n_samples, seed);
    out->total = v.total;
    out->l_ce = v.l_ce;
    out->l_matching = v.l_matching;
    std::copy(v.gradient.begin(), v.gradient.end(), out->gradient);
  });
}

bzc_status bzc_gradient_check(uint64_t seed, int32_t pairs, int32_t n_samples,
                              double* max_relative_error) {
  return guarded([&] {
    require(max_relative_error, "max_relative_error");
    *max_relative_error = bzc::gradient_check(seed, pairs, n_samples).max_relative_error;
  });
}

bzc_status bzc_fidelity_study(const bzc_mask* const* corpus, size_t count, int32_t degree,
                              int32_t samples_per_segment, int32_t smooth_radius, int32_t jobs,
                              bzc_fidelity_item* items, bzc_summary* summary) {
  return guarded([&] {
    const auto masks = copy_corpus(corpus, count);
    const bzc::FidelityResult result =
        bzc::fidelity_study(masks, degree, samples_per_segment, smooth_radius, jobs);
    if (items != nullptr) {
      for (size_t i = 0; i < count; ++i) {
        const bzc::FidelityItem& item = result.items[i];
        items[i] = bzc_fidelity_item{};
        items[i].ok = item.ok ? 1 : 0;
        items[i].status = item.ok ? BZC_OK : to_status(item.code);
        items[i].metrics = to_c(item.metrics);
        items[i].fit = to_c(item.fit);
      }
    }
    if (summary != nullptr) *summary = to_c(result.summary);
  });
}

bzc_status bzc_sensitivity_sweep(const bzc_mask* const* corpus, size_t count, const double* deltas,
                                 size_t n_deltas, int32_t trials, uint64_t seed, int32_t degree,
                                 int32_t samples_per_segment, int32_t smooth_radius, int32_t jobs,
                                 double* miou_bezier, double* miou_polygon, size_t* images_used) {
  return guarded([&] {
    if (n_deltas > 0) {
      require(deltas, "deltas");
      require(miou_bezier, "miou_bezier");
      require(miou_polygon, "miou_polygon");
    }
    const auto masks = copy_corpus(corpus, count);
    bzc::SensitivityOptions options;
    options.degree = degree;
    options.samples_per_segment = samples_per_segment;
    options.smooth_radius = smooth_radius;
    options.jobs = jobs;
    const bzc::SensitivityCurve curve = bzc::sensitivity_sweep(
        masks, std::span<const double>(deltas, n_deltas), trials, seed, options);
    std::copy(curve.miou_bezier.begin(), curve.miou_bezier.end(), miou_bezier);
    std::copy(curve.miou_polygon.begin(), curve.miou_polygon.end(), miou_polygon);
    if (images_used != nullptr) *images_used = curve.images;
  });
}

}  // extern "C"
