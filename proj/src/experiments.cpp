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

#include "bzcontour/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <random>
#include <thread>

#include "bzcontour/error.hpp"
#include "bzcontour/seed.hpp"

namespace bzc {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();  // joins
  // Lowest index first, matching what a serial run would have thrown.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

FidelityResult fidelity_study(std::span<const BinaryMask> corpus, int degree,
                              int samples_per_segment, int smooth_radius, int jobs) {
  if (corpus.empty()) fail(ErrorCode::kInvalidArgument, "fidelity study needs a non-empty corpus");
  FidelityResult result;
  result.items.resize(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    FidelityItem& item = result.items[i];
    try {
      const EncodeResult enc = encode_mask(corpus[i], degree, smooth_radius);
      item.metrics = evaluate_contour(enc.contour, corpus[i], samples_per_segment);
      item.fit = enc.report;
      item.ok = true;
    } catch (const Error& e) {
      item.ok = false;
      item.code = e.code();
      item.error = e.what();
    }
  });

  std::vector<MetricsReport> ok;
  double residual_sum = 0.0;
  for (const auto& item : result.items) {
    if (!item.ok) {
      ++result.skipped;
      continue;
    }
    ok.push_back(item.metrics);
    for (double r : item.fit.residuals) residual_sum += r;
  }
  if (!ok.empty()) {
    result.summary = summarize(ok);
    result.mean_residual = residual_sum / (4.0 * static_cast<double>(ok.size()));
  }
  return result;
}

std::vector<Point2> perturb_points(std::span<const Point2> points, double delta,
                                   std::uint64_t seed) {
  if (!(delta >= 0.0)) fail(ErrorCode::kInvalidArgument, "noise level must be >= 0");
  std::vector<Point2> out(points.begin(), points.end());
  if (delta == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, delta);
  for (Point2& p : out) {
    p.x += noise(rng);
    p.y += noise(rng);
  }
  return out;
}

PiecewiseContour perturb_contour(const PiecewiseContour& contour, double delta,
                                 std::uint64_t seed) {
  if (!(delta >= 0.0)) fail(ErrorCode::kInvalidArgument, "noise level must be >= 0");
  if (delta == 0.0) return contour;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, delta);
  auto jitter = [&](Point2 p) {
    const double dx = noise(rng);
    const double dy = noise(rng);
    return Point2{p.x + dx, p.y + dy};
  };
  std::array<Point2, 4> junctions{};
  for (int k = 0; k < 4; ++k) junctions[k] = jitter(contour.junction(k));
  std::array<BezierSegment, 4> segments;
  for (int k = 0; k < 4; ++k) {
    std::vector<Point2> pts = contour.segment(k).control_points();
    pts.front() = junctions[k];
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) pts[i] = jitter(pts[i]);
    pts.back() = junctions[(k + 1) % 4];
    segments[k] = BezierSegment(std::move(pts));
  }
  return PiecewiseContour(std::move(segments), contour.width(), contour.height());
}

std::vector<Point2> polygon_baseline(const BoundaryTrace& trace, int k) {
  if (k < 3) fail(ErrorCode::kInvalidArgument, "polygon baseline needs k >= 3");
  const std::size_t m = trace.points.size();
  if (m < static_cast<std::size_t>(k)) {
    fail(ErrorCode::kDegenerateObject, "boundary has fewer points than polygon vertices");
  }
  std::vector<Point2> out;
  out.reserve(k);
  const std::size_t kk = static_cast<std::size_t>(k);
  for (std::size_t j = 0; j < kk; ++j) {
    // round(j * m / k) in integer arithmetic, halves rounding up
    out.push_back(trace.points[(2 * j * m + kk) / (2 * kk)]);
  }
  return out;
}

SensitivityCurve sensitivity_sweep(std::span<const BinaryMask> corpus,
                                   std::span<const double> deltas, int trials,
                                   std::uint64_t seed, const SensitivityOptions& options) {
  if (corpus.empty()) fail(ErrorCode::kInvalidArgument, "sensitivity sweep needs a non-empty corpus");
  if (trials < 1) fail(ErrorCode::kInvalidArgument, "sensitivity sweep needs at least one trial");
  for (double d : deltas) {
    if (!(d >= 0.0)) fail(ErrorCode::kInvalidArgument, "noise levels must be >= 0");
  }
  const std::size_t nd = deltas.size();
  struct PerImage {
    bool ok = false;
    std::vector<double> bezier;
    std::vector<double> polygon;
  };
  std::vector<PerImage> per_image(corpus.size());

  parallel_for(corpus.size(), options.jobs, [&](std::size_t i) {
    const BinaryMask& gt = corpus[i];
    PerImage& out = per_image[i];
    std::vector<Point2> polygon;
    std::optional<PiecewiseContour> contour;
    try {
      const BinaryMask object = prepare_object(gt, options.smooth_radius);
      polygon = polygon_baseline(trace_boundary(object), options.polygon_points);
      contour = encode_mask(gt, options.degree, options.smooth_radius).contour;
    } catch (const Error&) {
      return;
    }
    out.ok = true;
    out.bezier.assign(nd, 0.0);
    out.polygon.assign(nd, 0.0);
    for (std::size_t d = 0; d < nd; ++d) {
      for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial = static_cast<std::uint64_t>(t);
        const PiecewiseContour noisy = perturb_contour(
            *contour, deltas[d], derive_seed(seed, "sensitivity-bezier", {i, d, trial}));
        out.bezier[d] += iou(confusion(
            render_contour(noisy, gt.width(), gt.height(), options.samples_per_segment), gt));
        const auto noisy_polygon = perturb_points(
            polygon, deltas[d], derive_seed(seed, "sensitivity-polygon", {i, d, trial}));
        out.polygon[d] += iou(confusion(render_boundary_polygon(noisy_polygon, gt.width(), gt.height()), gt));
      }
      out.bezier[d] /= trials;
      out.polygon[d] /= trials;
    }
  });

  SensitivityCurve curve;
  curve.deltas.assign(deltas.begin(), deltas.end());
  curve.trials = trials;
  curve.miou_bezier.assign(nd, 0.0);
  curve.miou_polygon.assign(nd, 0.0);
  for (const PerImage& p : per_image) {
    if (!p.ok) {
      ++curve.skipped;
      continue;
    }
    ++curve.images;
    for (std::size_t d = 0; d < nd; ++d) {
      curve.miou_bezier[d] += p.bezier[d];
      curve.miou_polygon[d] += p.polygon[d];
    }
  }
  if (curve.images > 0) {
    for (std::size_t d = 0; d < nd; ++d) {
      curve.miou_bezier[d] /= static_cast<double>(curve.images);
      curve.miou_polygon[d] /= static_cast<double>(curve.images);
    }
  }
  return curve;
}

}  // namespace bzc
