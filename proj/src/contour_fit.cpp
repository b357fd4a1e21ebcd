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

#include "bzcontour/contour_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "bzcontour/error.hpp"

namespace bzc {

PiecewiseContour::PiecewiseContour(std::array<BezierSegment, 4> segments, int width, int height)
    : segments_(std::move(segments)), width_(width), height_(height) {
  if (width < 1 || height < 1) fail(ErrorCode::kInvariantViolation, "contour frame must be >= 1x1");
  const int degree = segments_[0].degree();
  if (degree < 1) fail(ErrorCode::kInvariantViolation, "contour segment is empty");
  for (int k = 0; k < 4; ++k) {
    if (segments_[k].degree() != degree) {
      fail(ErrorCode::kInvariantViolation, "contour segments have different degrees");
    }
    if (!(segments_[k].back() == segments_[(k + 1) % 4].front())) {
      fail(ErrorCode::kInvariantViolation,
           "contour is not closed at junction " + std::to_string((k + 1) % 4));
    }
  }
}

ExtremePoints find_extreme_points(const BoundaryTrace& trace) {
  const auto& pts = trace.points;
  if (pts.size() < 4) {
    fail(ErrorCode::kDegenerateObject,
         "boundary has " + std::to_string(pts.size()) + " points, need at least 4");
  }
  std::size_t top = 0, left = 0, bottom = 0, right = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point2 p = pts[i];
    if (p.y < pts[top].y || (p.y == pts[top].y && p.x < pts[top].x)) top = i;
    if (p.x < pts[left].x || (p.x == pts[left].x && p.y > pts[left].y)) left = i;
    if (p.y > pts[bottom].y || (p.y == pts[bottom].y && p.x > pts[bottom].x)) bottom = i;
    if (p.x > pts[right].x || (p.x == pts[right].x && p.y < pts[right].y)) right = i;
  }
  ExtremePoints out;
  out.top = pts[top];
  out.leftmost = pts[left];
  out.bottom = pts[bottom];
  out.rightmost = pts[right];
  out.indices = {top, left, bottom, right};
  return out;
}

std::array<std::vector<Point2>, 4> split_boundary(const BoundaryTrace& trace,
                                                  const ExtremePoints& extremes) {
  const auto& pts = trace.points;
  const std::size_t m = pts.size();
  const auto& idx = extremes.indices;
  for (std::size_t i : idx) {
    if (i >= m) fail(ErrorCode::kInvalidArgument, "extreme index outside the trace");
  }
  // Rotate so the walk starts at the top extreme; the remaining extremes
  // must then be met in order.
  auto offset = [&](std::size_t i) { return (i + m - idx[0]) % m; };
  const std::array<std::size_t, 5> stops{0, offset(idx[1]), offset(idx[2]), offset(idx[3]), m};
  if (!(stops[1] <= stops[2] && stops[2] <= stops[3])) {
    fail(ErrorCode::kDegenerateObject, "extreme points are not met in top/left/bottom/right order");
  }
  std::array<std::vector<Point2>, 4> arcs;
  for (int k = 0; k < 4; ++k) {
    for (std::size_t s = stops[k]; s <= stops[k + 1]; ++s) {
      arcs[k].push_back(pts[(idx[0] + s) % m]);
    }
  }
  return arcs;
}

ArcFit fit_arc(std::span<const Point2> arc, int degree) {
  if (arc.empty()) fail(ErrorCode::kInvalidArgument, "cannot fit an empty arc");
  if (degree < 1 || degree > kMaxDegree) {
    fail(ErrorCode::kInvalidArgument, "fit degree " + std::to_string(degree) + " out of range");
  }
  const std::size_t m = arc.size();
  const int n = degree;
  const Point2 origin = arc.front();
  const Point2 chord = arc.back() - origin;

  // Control points relative to the first arc point, initialised on the chord.
  std::vector<Point2> rel(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) rel[j] = (static_cast<double>(j) / n) * chord;

  auto t_of = [m](std::size_t i) {
    return m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
  };

  // Interior rows only: at t = 0 and t = 1 the interior basis vanishes and
  // the pinned endpoints satisfy their rows exactly. The correction to the
  // chord placement is the minimum-norm least-squares solution, so a
  // well-posed arc gets the unique LS fit and an arc with fewer than
  // degree + 1 points interpolates with the smallest departure from the chord.
  const Eigen::Index rows = m > 2 ? static_cast<Eigen::Index>(m - 2) : 0;
  if (n >= 2 && rows > 0) {
    Eigen::MatrixXd a(rows, n - 1);
    Eigen::MatrixXd rhs(rows, 2);
    std::vector<double> basis(static_cast<std::size_t>(n) + 1);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const std::size_t i = static_cast<std::size_t>(r) + 1;
      bernstein_basis(n, t_of(i), basis);
      Point2 prior;
      for (int j = 0; j <= n; ++j) prior = prior + basis[j] * rel[j];
      const Point2 target = arc[i] - origin;
      rhs(r, 0) = target.x - prior.x;
      rhs(r, 1) = target.y - prior.y;
      for (int j = 1; j < n; ++j) a(r, j - 1) = basis[j];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a.rows(), a.cols());
    cod.setThreshold(1e-10);
    cod.compute(a);
    const Eigen::MatrixXd correction = cod.solve(rhs);
    for (int j = 1; j < n; ++j) {
      rel[j].x += correction(j - 1, 0);
      rel[j].y += correction(j - 1, 1);
    }
  }

  std::vector<Point2> control(rel.size());
  for (std::size_t j = 0; j < rel.size(); ++j) control[j] = origin + rel[j];
  control.front() = arc.front();
  control.back() = arc.back();
  BezierSegment segment(std::move(control));

  double sum_sq = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 d = eval_bernstein(segment, t_of(i)) - arc[i];
    sum_sq += d.x * d.x + d.y * d.y;
  }
  return {std::move(segment), std::sqrt(sum_sq / static_cast<double>(m))};
}

BinaryMask prepare_object(const BinaryMask& mask, int smooth_radius) {
  if (mask.empty()) fail(ErrorCode::kEmptyObject, "mask has no foreground pixels");
  BinaryMask object = largest_component(mask, 8);
  if (smooth_radius > 0) {
    // Opening can split a thin neck, so keep the largest piece again.
    object = largest_component(morphological_smooth(object, smooth_radius), 8);
    if (object.empty()) fail(ErrorCode::kEmptyObject, "object vanished under smoothing");
  }
  return object;
}

EncodeResult encode_mask(const BinaryMask& mask, int degree, int smooth_radius) {
  if (degree < 1 || degree > kMaxDegree) {
    fail(ErrorCode::kInvalidArgument, "fit degree " + std::to_string(degree) + " out of range");
  }
  const BinaryMask object = prepare_object(mask, smooth_radius);
  const BoundaryTrace trace = trace_boundary(object);
  const ExtremePoints extremes = find_extreme_points(trace);
  const auto arcs = split_boundary(trace, extremes);

  FitReport report;
  std::array<BezierSegment, 4> segments;
  for (int k = 0; k < 4; ++k) {
    ArcFit fit = fit_arc(arcs[k], degree);
    segments[k] = std::move(fit.segment);
    report.residuals[k] = fit.residual;
    report.arc_lengths[k] = arcs[k].size();
  }
  return {PiecewiseContour(std::move(segments), mask.width(), mask.height()), report};
}

std::vector<Point2> decode_contour(const PiecewiseContour& contour, int samples_per_segment) {
  if (samples_per_segment < 2) {
    fail(ErrorCode::kInvalidArgument, "samples_per_segment must be >= 2");
  }
  const auto ts = uniform_ts(samples_per_segment);
  const std::span<const double> open_ts(ts.data(), ts.size() - 1);
  std::vector<Point2> polygon;
  polygon.reserve(4 * open_ts.size());
  for (const auto& segment : contour.segments()) {
    for (double t : open_ts) polygon.push_back(eval_bernstein(segment, t));
  }
  return polygon;
}

PiecewiseContour rescale(const PiecewiseContour& contour, int width, int height) {
  if (width < 1 || height < 1) fail(ErrorCode::kInvalidArgument, "target frame must be >= 1x1");
  if (width == contour.width() && height == contour.height()) return contour;
  const double sx = static_cast<double>(width) / contour.width();
  const double sy = static_cast<double>(height) / contour.height();
  std::array<BezierSegment, 4> segments;
  for (int k = 0; k < 4; ++k) {
    std::vector<Point2> pts = contour.segment(k).control_points();
    for (Point2& p : pts) p = {p.x * sx, p.y * sy};
    segments[k] = BezierSegment(std::move(pts));
  }
  return PiecewiseContour(std::move(segments), width, height);
}

BinaryMask render_contour(const PiecewiseContour& contour, int width, int height,
                          int samples_per_segment) {
  const auto polygon = decode_contour(rescale(contour, width, height), samples_per_segment);
  return render_boundary_polygon(polygon, width, height);
}

std::array<double, kFlatSize> flatten(const PiecewiseContour& contour) {
  if (contour.degree() != 5) {
    fail(ErrorCode::kUnsupportedLayout,
         "flat layout is defined for degree 5, got " + std::to_string(contour.degree()));
  }
  std::array<double, kFlatSize> v{};
  for (int k = 0; k < 4; ++k) {
    v[2 * k] = contour.junction(k).x;
    v[2 * k + 1] = contour.junction(k).y;
  }
  for (int k = 0; k < 4; ++k) {
    const auto& pts = contour.segment(k).control_points();
    for (int i = 1; i <= 4; ++i) {
      const int slot = 4 + 4 * k + (i - 1);
      v[2 * slot] = pts[i].x;
      v[2 * slot + 1] = pts[i].y;
    }
  }
  return v;
}

PiecewiseContour unflatten(std::span<const double> values, int width, int height) {
  if (values.size() != kFlatSize) {
    fail(ErrorCode::kUnsupportedLayout,
         "flat contour must have 40 values, got " + std::to_string(values.size()));
  }
  auto point = [&](int slot) { return Point2{values[2 * slot], values[2 * slot + 1]}; };
  std::array<BezierSegment, 4> segments;
  for (int k = 0; k < 4; ++k) {
    std::vector<Point2> pts;
    pts.push_back(point(k));
    for (int i = 1; i <= 4; ++i) pts.push_back(point(4 + 4 * k + (i - 1)));
    pts.push_back(point((k + 1) % 4));
    segments[k] = BezierSegment(std::move(pts));
  }
  return PiecewiseContour(std::move(segments), width, height);
}

}  // namespace bzc
