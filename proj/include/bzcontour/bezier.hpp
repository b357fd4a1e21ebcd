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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace bzc {

/// Image-plane point in pixels; y grows downward.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline constexpr int kMaxDegree = 20;

/// Exact binomial coefficient for 0 <= k <= n <= kMaxDegree.
std::uint64_t binomial(int n, int k);

/// Bernstein weights b_{n,0}(t) .. b_{n,n}(t).
std::vector<double> bernstein_basis(int degree, double t);

/// Non-allocating variant; `out` must hold degree + 1 values. Arguments are
/// validated the same way as bernstein_basis.
void bernstein_basis(int degree, double t, std::span<double> out);

/// One polynomial Bézier curve of degree control_points().size() - 1.
class BezierSegment {
 public:
  BezierSegment() = default;
  explicit BezierSegment(std::vector<Point2> control_points);

  int degree() const { return static_cast<int>(points_.size()) - 1; }
  const std::vector<Point2>& control_points() const { return points_; }
  Point2 front() const { return points_.front(); }
  Point2 back() const { return points_.back(); }

  friend bool operator==(const BezierSegment&, const BezierSegment&) = default;

 private:
  std::vector<Point2> points_;
};

Point2 eval_bernstein(const BezierSegment& segment, double t);
Point2 eval_de_casteljau(const BezierSegment& segment, double t);
std::vector<Point2> sample_segment(const BezierSegment& segment, std::span<const double> ts);

/// Rewrites a degree-n segment as an equivalent degree n+1 segment.
BezierSegment elevate_degree(const BezierSegment& segment);

/// `count` parameters spread evenly over [0, 1] with both ends included.
std::vector<double> uniform_ts(int count);

}  // namespace bzc
