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

#include "bzcontour/bezier.hpp"

#include <array>
#include <string>

#include "bzcontour/error.hpp"

namespace bzc {
namespace {

using BinomialTable = std::array<std::array<std::uint64_t, kMaxDegree + 1>, kMaxDegree + 1>;

constexpr BinomialTable make_binomials() {
  BinomialTable table{};
  for (int n = 0; n <= kMaxDegree; ++n) {
    table[n][0] = 1;
    for (int k = 1; k <= n; ++k) {
      table[n][k] = table[n - 1][k - 1] + (k < n ? table[n - 1][k] : 0);
    }
  }
  return table;
}

constexpr BinomialTable kBinomials = make_binomials();
static_assert(kBinomials[20][10] == 184756);
static_assert(kBinomials[5][2] == 10);

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree) {
    fail(ErrorCode::kInvalidArgument,
         "degree " + std::to_string(degree) + " outside [1, " + std::to_string(kMaxDegree) + "]");
  }
}

void check_t(double t) {
  // Written so that NaN is rejected as well.
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "parameter t=" + std::to_string(t) + " outside [0, 1]");
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kFormat: return "format-error";
    case ErrorCode::kEmptyObject: return "empty-object";
    case ErrorCode::kDegenerateObject: return "degenerate-object";
    case ErrorCode::kPrecondition: return "precondition-violation";
    case ErrorCode::kInvariantViolation: return "invariant-violation";
    case ErrorCode::kUnsupportedLayout: return "unsupported-layout";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kIo: return "io-error";
  }
  return "unknown";
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxDegree || k < 0 || k > n) {
    fail(ErrorCode::kInvalidArgument, "binomial index out of range");
  }
  return kBinomials[n][k];
}

void bernstein_basis(int degree, double t, std::span<double> out) {
  check_degree(degree);
  check_t(t);
  if (out.size() != static_cast<std::size_t>(degree) + 1) {
    fail(ErrorCode::kInvalidArgument, "basis output span has wrong length");
  }
  // Pass 1: ascending powers of t. Pass 2: multiply in descending powers of
  // (1 - t) while walking back down, so no power is ever formed by division.
  const double s = 1.0 - t;
  double power = 1.0;
  for (int i = 0; i <= degree; ++i) {
    out[i] = static_cast<double>(kBinomials[degree][i]) * power;
    power *= t;
  }
  power = 1.0;
  for (int i = degree; i >= 0; --i) {
    out[i] *= power;
    power *= s;
  }
}

std::vector<double> bernstein_basis(int degree, double t) {
  check_degree(degree);
  std::vector<double> out(static_cast<std::size_t>(degree) + 1);
  bernstein_basis(degree, t, out);
  return out;
}

BezierSegment::BezierSegment(std::vector<Point2> control_points)
    : points_(std::move(control_points)) {
  if (points_.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "a Bezier segment needs at least 2 control points");
  }
  if (points_.size() > kMaxDegree + 1) {
    fail(ErrorCode::kInvalidArgument, "Bezier degree above " + std::to_string(kMaxDegree));
  }
  for (const Point2& p : points_) {
    if (!p.finite()) fail(ErrorCode::kInvalidArgument, "non-finite control point");
  }
}

Point2 eval_bernstein(const BezierSegment& segment, double t) {
  const int n = segment.degree();
  std::array<double, kMaxDegree + 1> weights{};
  bernstein_basis(n, t, std::span<double>(weights.data(), n + 1));
  const auto& pts = segment.control_points();
  Point2 out;
  for (int i = 0; i <= n; ++i) {
    out.x += weights[i] * pts[i].x;
    out.y += weights[i] * pts[i].y;
  }
  return out;
}

Point2 eval_de_casteljau(const BezierSegment& segment, double t) {
  check_t(t);
  const auto& pts = segment.control_points();
  std::array<Point2, kMaxDegree + 1> work{};
  std::copy(pts.begin(), pts.end(), work.begin());
  const double s = 1.0 - t;
  for (int level = segment.degree(); level > 0; --level) {
    for (int i = 0; i < level; ++i) {
      work[i] = {s * work[i].x + t * work[i + 1].x, s * work[i].y + t * work[i + 1].y};
    }
  }
  return work[0];
}

std::vector<Point2> sample_segment(const BezierSegment& segment, std::span<const double> ts) {
  std::vector<Point2> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(eval_bernstein(segment, t));
  return out;
}

BezierSegment elevate_degree(const BezierSegment& segment) {
  const auto& p = segment.control_points();
  const int n = segment.degree();
  std::vector<Point2> q(static_cast<std::size_t>(n) + 2);
  q.front() = p.front();
  q.back() = p.back();
  for (int i = 1; i <= n; ++i) {
    const double a = static_cast<double>(i) / (n + 1);
    q[i] = {a * p[i - 1].x + (1.0 - a) * p[i].x, a * p[i - 1].y + (1.0 - a) * p[i].y};
  }
  return BezierSegment(std::move(q));
}

std::vector<double> uniform_ts(int count) {
  if (count < 2) fail(ErrorCode::kInvalidArgument, "uniform_ts needs at least 2 samples");
  std::vector<double> ts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ts[i] = static_cast<double>(i) / (count - 1);
  return ts;
}

}  // namespace bzc
