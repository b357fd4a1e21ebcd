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

#include <array>
#include <span>
#include <vector>

#include "bzcontour/bezier.hpp"
#include "bzcontour/mask.hpp"

namespace bzc {

inline constexpr int kDefaultDegree = 5;
inline constexpr int kDefaultSamplesPerSegment = 128;
/// Extremes plus interior control points of a degree-5 contour, as x/y pairs.
inline constexpr int kFlatSize = 40;

/// Junction points of the four arcs, with their positions in the trace.
/// Ties: top prefers the smallest x, leftmost the largest y, bottom the
/// largest x, rightmost the smallest y.
struct ExtremePoints {
  Point2 top;
  Point2 leftmost;
  Point2 bottom;
  Point2 rightmost;
  std::array<std::size_t, 4> indices{};  // top, leftmost, bottom, rightmost

  std::array<Point2, 4> points() const { return {top, leftmost, bottom, rightmost}; }
};

/// Closed chain of four equal-degree segments joined at the extreme points,
/// in the order top -> leftmost -> bottom -> rightmost -> top. The frame is
/// the pixel size of the image the contour lives in.
class PiecewiseContour {
 public:
  PiecewiseContour(std::array<BezierSegment, 4> segments, int width, int height);

  const std::array<BezierSegment, 4>& segments() const { return segments_; }
  const BezierSegment& segment(int k) const { return segments_[k]; }
  int degree() const { return segments_[0].degree(); }
  int width() const { return width_; }
  int height() const { return height_; }

  /// Junction k is the first control point of segment k.
  Point2 junction(int k) const { return segments_[k].front(); }

  friend bool operator==(const PiecewiseContour&, const PiecewiseContour&) = default;

 private:
  std::array<BezierSegment, 4> segments_;
  int width_;
  int height_;
};

struct FitReport {
  std::array<double, 4> residuals{};        // RMS pixel error per arc
  std::array<std::size_t, 4> arc_lengths{};  // points per arc, junctions included
};

struct ArcFit {
  BezierSegment segment;
  double residual = 0.0;
};

ExtremePoints find_extreme_points(const BoundaryTrace& trace);

/// The four arcs of the trace between consecutive extremes. Consecutive arcs
/// share their junction point.
std::array<std::vector<Point2>, 4> split_boundary(const BoundaryTrace& trace,
                                                  const ExtremePoints& extremes);

/// Least-squares fit with endpoints pinned to the arc ends and t assigned by
/// point index. See the implementation for the short-arc rule.
ArcFit fit_arc(std::span<const Point2> arc, int degree);

struct EncodeResult {
  PiecewiseContour contour;
  FitReport report;
};

/// Largest 8-connected component, smoothed when smooth_radius > 0 (and
/// reduced to its largest piece again). Throws kEmptyObject if nothing is left.
BinaryMask prepare_object(const BinaryMask& mask, int smooth_radius);

/// largest component -> optional smoothing -> trace -> extremes -> split ->
/// per-arc fit.
EncodeResult encode_mask(const BinaryMask& mask, int degree = kDefaultDegree,
                         int smooth_radius = 0);

/// Closed polygon with 4 * (samples_per_segment - 1) vertices; the shared
/// end of each segment is emitted once.
std::vector<Point2> decode_contour(const PiecewiseContour& contour, int samples_per_segment);

/// Contour scaled from its own frame to width x height, decoded and filled.
BinaryMask render_contour(const PiecewiseContour& contour, int width, int height,
                          int samples_per_segment = kDefaultSamplesPerSegment);

/// Multiplies every control point by (sx, sy) and sets the frame to w x h.
PiecewiseContour rescale(const PiecewiseContour& contour, int width, int height);

/// Layout: top, leftmost, bottom, rightmost (x, y each), then the four
/// interior points of each segment in segment order. Degree 5 only.
std::array<double, kFlatSize> flatten(const PiecewiseContour& contour);
PiecewiseContour unflatten(std::span<const double> values, int width, int height);

}  // namespace bzc
