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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bzcontour/contour_fit.hpp"
#include "bzcontour/error.hpp"
#include "bzcontour/mask.hpp"
#include "bzcontour/metrics.hpp"

namespace bzc {

enum class ShapeKind { kBlob, kEllipse, kDumbbell };

const char* to_string(ShapeKind kind);
ShapeKind parse_shape_kind(const std::string& name);

struct SyntheticShapeSpec {
  ShapeKind kind = ShapeKind::kBlob;
  int width = 256;
  int height = 256;
  std::uint64_t seed = 0;
  double scale = 0.8;  // shape extent as a fraction of the frame
};

/// Deterministic single-component mask. Parameters that give an empty or
/// split mask are redrawn from a derived seed, at most 100 times.
BinaryMask generate_shape(const SyntheticShapeSpec& spec);

struct CorpusSpec {
  int blobs = 200;
  int ellipses = 50;
  int dumbbells = 50;
  int width = 256;
  int height = 256;
  double min_scale = 0.5;
  double max_scale = 0.9;
  std::uint64_t seed = 0;
};

/// Shapes of each kind in order blob, ellipse, dumbbell. Shape i draws only
/// from streams keyed by (kind, i).
std::vector<BinaryMask> generate_corpus(const CorpusSpec& spec);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Exceptions are
/// rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

struct FidelityItem {
  bool ok = false;
  ErrorCode code = ErrorCode::kInvalidArgument;  // set when !ok
  std::string error;                             // set when !ok
  MetricsReport metrics;
  FitReport fit;
};

struct FidelityResult {
  std::vector<FidelityItem> items;
  DatasetSummary summary;  // over successful items only
  std::size_t skipped = 0;
  double mean_residual = 0.0;  // mean of per-arc RMS residuals
};

/// Per mask: encode, render at samples_per_segment, compare with the mask.
FidelityResult fidelity_study(std::span<const BinaryMask> corpus, int degree,
                              int samples_per_segment = kDefaultSamplesPerSegment,
                              int smooth_radius = 0, int jobs = 1);

/// Gaussian noise with standard deviation `delta` pixels on every free point.
/// Each junction is drawn once so the chain stays closed.
PiecewiseContour perturb_contour(const PiecewiseContour& contour, double delta,
                                 std::uint64_t seed);
std::vector<Point2> perturb_points(std::span<const Point2> points, double delta,
                                   std::uint64_t seed);

/// k trace points at indices round(j * m / k).
std::vector<Point2> polygon_baseline(const BoundaryTrace& trace, int k);

inline constexpr int kPolygonBaselinePoints = 20;

struct SensitivityCurve {
  std::vector<double> deltas;
  std::vector<double> miou_bezier;
  std::vector<double> miou_polygon;
  int trials = 0;
  std::size_t images = 0;   // masks that encoded successfully
  std::size_t skipped = 0;  // masks that failed to encode
};

struct SensitivityOptions {
  int degree = kDefaultDegree;
  int samples_per_segment = kDefaultSamplesPerSegment;
  int smooth_radius = 0;
  int polygon_points = kPolygonBaselinePoints;
  int jobs = 1;
};

SensitivityCurve sensitivity_sweep(std::span<const BinaryMask> corpus,
                                   std::span<const double> deltas, int trials,
                                   std::uint64_t seed, const SensitivityOptions& options = {});

}  // namespace bzc
