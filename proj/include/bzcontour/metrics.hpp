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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bzcontour/contour_fit.hpp"
#include "bzcontour/mask.hpp"

namespace bzc {

/// Pixel counts with foreground as the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + tn + fp + fn; }
};

struct MetricsReport {
  double iou = 0.0;
  double hausdorff = 0.0;  // pixels
  double mcc = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
};

struct DatasetSummary {
  std::size_t count = 0;
  double miou = 0.0;
  double siou = 0.0;  // population standard deviation of IoU
  double hausdorff = 0.0;
  double mcc = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
};

struct ErrorRates {
  double fp_rate = 0.0;
  double fn_rate = 0.0;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// tp / (tp + fp + fn); 1 when both masks are empty.
double iou(const ConfusionCounts& c);
/// 0 whenever a marginal is empty.
double mcc(const ConfusionCounts& c);
ErrorRates fp_fn_rates(const ConfusionCounts& c);

/// Symmetric Euclidean Hausdorff distance. The inner scan stops as soon as a
/// point is closer than the running maximum, which cannot change the result.
double hausdorff(std::span<const Point2> a, std::span<const Point2> b);

/// Hausdorff over boundary pixels. Conventions for empty inputs: both empty
/// gives 0, one empty gives +infinity.
MetricsReport evaluate_masks(const BinaryMask& pred, const BinaryMask& gt);

/// Contour rendered into the mask's frame; Hausdorff between densely sampled
/// contour points and the mask's boundary pixels.
MetricsReport evaluate_contour(const PiecewiseContour& pred, const BinaryMask& gt,
                               int samples_per_segment = kDefaultSamplesPerSegment);

DatasetSummary summarize(std::span<const MetricsReport> per_image);

}  // namespace bzc
