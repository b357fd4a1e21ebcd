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
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bzcontour/contour_fit.hpp"

namespace bzc {

inline constexpr int kDefaultLossSamples = 72;

/// Curve parameters and the segment each one is applied to.
struct SampledTs {
  std::vector<double> ts;
  std::vector<int> segment_ids;

  std::size_t size() const { return ts.size(); }
};

struct DecodedPoints {
  std::vector<Point2> points;
  std::vector<double> ts;
  std::vector<int> segment_ids;
};

/// Sparse Jacobian of the decoder with respect to the flattened contour.
/// Output point j depends on the six control points of its segment; the
/// same weight applies to x->x and y->y.
struct DecoderJacobian {
  struct Term {
    int slot;       // point index in the flat layout (0..19)
    double weight;  // Bernstein weight
  };
  std::vector<std::array<Term, 6>> rows;

  /// Dense (2N x 40) row-major matrix, rows ordered x0, y0, x1, y1, ...
  std::vector<double> dense() const;

  /// J^T g for g of length 2N laid out like the dense rows.
  std::array<double, kFlatSize> apply_transpose(std::span<const double> g) const;
};

struct LossValue {
  double total = 0.0;
  double l_ce = 0.0;
  double l_matching = 0.0;
  std::array<double, kFlatSize> gradient{};  // d total / d flatten(pred), pixel units
};

struct SmoothL1 {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d pred
};

inline constexpr double kSmoothL1Beta = 1.0;
inline constexpr double kLambdaCe = 1.0;
inline constexpr double kLambdaMatching = 1.0;

SampledTs sample_ts(int n, std::uint64_t seed);

DecodedPoints bdsd_forward(const PiecewiseContour& contour, const SampledTs& ts);
DecoderJacobian bdsd_jacobian(const PiecewiseContour& contour, const SampledTs& ts);

/// Mean over elements of 0.5 d^2 / beta (|d| < beta) or |d| - 0.5 beta.
SmoothL1 smooth_l1(std::span<const double> pred, std::span<const double> target,
                   double beta = kSmoothL1Beta);

/// lambda_ce * L1(flat pred, flat gt) + lambda_matching * L1(decoded pred,
/// decoded gt), both on coordinates divided by the frame size.
LossValue total_loss(const PiecewiseContour& pred, const PiecewiseContour& gt, int n,
                     std::uint64_t seed);

struct GradientCheck {
  int pairs = 0;
  double max_relative_error = 0.0;
};

/// Compares the analytic total-loss gradient with central differences on
/// random contour pairs inside a 256x256 frame.
GradientCheck gradient_check(std::uint64_t seed, int pairs, int n_samples = kDefaultLossSamples,
                             double step = 1e-5);

/// Random degree-5 contour with every point inside width x height.
PiecewiseContour random_contour(std::mt19937_64& rng, int width, int height);

}  // namespace bzc
