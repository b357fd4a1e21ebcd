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

#include "bzcontour/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bzcontour/error.hpp"

namespace bzc {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    fail(ErrorCode::kInvalidArgument, "confusion: mask dimensions differ");
  }
  ConfusionCounts c;
  const auto p = pred.bits();
  const auto g = gt.bits();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i]) {
      g[i] ? ++c.tp : ++c.fp;
    } else {
      g[i] ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

double iou(const ConfusionCounts& c) {
  const std::int64_t denom = c.tp + c.fp + c.fn;
  return denom == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double mcc(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp);
  const double tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn);
  const double a = tp + fp, b = tp + fn, d = tn + fp, e = tn + fn;
  if (a == 0 || b == 0 || d == 0 || e == 0) return 0.0;
  const double value = (tp * tn - fp * fn) / std::sqrt(a * b * d * e);
  return std::clamp(value, -1.0, 1.0);
}

ErrorRates fp_fn_rates(const ConfusionCounts& c) {
  ErrorRates r;
  if (c.fp + c.tn > 0) r.fp_rate = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
  if (c.fn + c.tp > 0) r.fn_rate = static_cast<double>(c.fn) / static_cast<double>(c.fn + c.tp);
  return r;
}

namespace {

double directed_sq(std::span<const Point2> from, std::span<const Point2> to, double running) {
  for (const Point2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& q : to) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      const double d = dx * dx + dy * dy;
      if (d < best) {
        best = d;
        if (best < running) break;
      }
    }
    running = std::max(running, best);
  }
  return running;
}

}  // namespace

double hausdorff(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kUndefinedMetric, "Hausdorff of an empty point set");
  double sq = directed_sq(a, b, 0.0);
  sq = directed_sq(b, a, sq);
  return std::sqrt(sq);
}

namespace {

double boundary_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return hausdorff(a, b);
}

MetricsReport from_counts(const ConfusionCounts& c, double hd) {
  const ErrorRates rates = fp_fn_rates(c);
  return {iou(c), hd, mcc(c), rates.fp_rate, rates.fn_rate};
}

}  // namespace

MetricsReport evaluate_masks(const BinaryMask& pred, const BinaryMask& gt) {
  const ConfusionCounts c = confusion(pred, gt);
  return from_counts(c, boundary_distance(boundary_pixels(pred), boundary_pixels(gt)));
}

MetricsReport evaluate_contour(const PiecewiseContour& pred, const BinaryMask& gt,
                               int samples_per_segment) {
  const PiecewiseContour scaled = rescale(pred, gt.width(), gt.height());
  const auto polygon = decode_contour(scaled, samples_per_segment);
  const BinaryMask raster = render_boundary_polygon(polygon, gt.width(), gt.height());
  const ConfusionCounts c = confusion(raster, gt);
  return from_counts(c, boundary_distance(polygon, boundary_pixels(gt)));
}

DatasetSummary summarize(std::span<const MetricsReport> per_image) {
  if (per_image.empty()) fail(ErrorCode::kInvalidArgument, "summarize needs at least one report");
  DatasetSummary s;
  s.count = per_image.size();
  const double n = static_cast<double>(per_image.size());
  for (const auto& r : per_image) {
    s.miou += r.iou;
    s.hausdorff += r.hausdorff;
    s.mcc += r.mcc;
    s.fp_rate += r.fp_rate;
    s.fn_rate += r.fn_rate;
  }
  s.miou /= n;
  s.hausdorff /= n;
  s.mcc /= n;
  s.fp_rate /= n;
  s.fn_rate /= n;
  double var = 0.0;
  for (const auto& r : per_image) var += (r.iou - s.miou) * (r.iou - s.miou);
  s.siou = std::sqrt(var / n);
  return s;
}

}  // namespace bzc
