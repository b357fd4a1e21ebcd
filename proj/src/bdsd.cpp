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

#include "bzcontour/bdsd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bzcontour/error.hpp"
#include "bzcontour/seed.hpp"

namespace bzc {
namespace {

constexpr int kDegree = 5;

void require_degree5(const PiecewiseContour& contour) {
  if (contour.degree() != kDegree) {
    fail(ErrorCode::kInvalidArgument,
         "decoder expects degree-5 contours, got " + std::to_string(contour.degree()));
  }
}

void check_ts(const SampledTs& ts) {
  if (ts.ts.size() != ts.segment_ids.size()) {
    fail(ErrorCode::kInvalidArgument, "ts and segment ids differ in length");
  }
  for (int id : ts.segment_ids) {
    if (id < 0 || id > 3) fail(ErrorCode::kInvalidArgument, "segment id outside 0..3");
  }
}

// Flat-layout point index of control point i of segment k.
int slot_of(int k, int i) {
  if (i == 0) return k;
  if (i == kDegree) return (k + 1) % 4;
  return 4 + 4 * k + (i - 1);
}

}  // namespace

SampledTs sample_ts(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "need at least one t sample");
  std::mt19937_64 rng(seed);
  SampledTs out;
  out.ts.reserve(n);
  out.segment_ids.reserve(n);
  for (int j = 0; j < n; ++j) {
    out.ts.push_back(unit_uniform(rng));
    out.segment_ids.push_back(static_cast<int>(rng() >> 62));
  }
  return out;
}

DecodedPoints bdsd_forward(const PiecewiseContour& contour, const SampledTs& ts) {
  require_degree5(contour);
  check_ts(ts);
  DecodedPoints out;
  out.ts = ts.ts;
  out.segment_ids = ts.segment_ids;
  out.points.reserve(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    out.points.push_back(eval_bernstein(contour.segment(ts.segment_ids[j]), ts.ts[j]));
  }
  return out;
}

DecoderJacobian bdsd_jacobian(const PiecewiseContour& contour, const SampledTs& ts) {
  require_degree5(contour);
  check_ts(ts);
  DecoderJacobian jac;
  jac.rows.reserve(ts.size());
  std::array<double, kDegree + 1> basis{};
  for (std::size_t j = 0; j < ts.size(); ++j) {
    bernstein_basis(kDegree, ts.ts[j], basis);
    std::array<DecoderJacobian::Term, 6> row{};
    for (int i = 0; i <= kDegree; ++i) row[i] = {slot_of(ts.segment_ids[j], i), basis[i]};
    jac.rows.push_back(row);
  }
  return jac;
}

std::vector<double> DecoderJacobian::dense() const {
  std::vector<double> m(rows.size() * 2 * kFlatSize, 0.0);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (const Term& term : rows[j]) {
      m[(2 * j) * kFlatSize + 2 * term.slot] += term.weight;
      m[(2 * j + 1) * kFlatSize + 2 * term.slot + 1] += term.weight;
    }
  }
  return m;
}

std::array<double, kFlatSize> DecoderJacobian::apply_transpose(std::span<const double> g) const {
  if (g.size() != 2 * rows.size()) {
    fail(ErrorCode::kInvalidArgument, "gradient length does not match decoder output");
  }
  std::array<double, kFlatSize> out{};
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (const Term& term : rows[j]) {
      out[2 * term.slot] += term.weight * g[2 * j];
      out[2 * term.slot + 1] += term.weight * g[2 * j + 1];
    }
  }
  return out;
}

SmoothL1 smooth_l1(std::span<const double> pred, std::span<const double> target, double beta) {
  if (pred.size() != target.size()) {
    fail(ErrorCode::kInvalidArgument, "smooth L1 inputs differ in length");
  }
  if (!(beta > 0.0)) fail(ErrorCode::kInvalidArgument, "smooth L1 beta must be positive");
  SmoothL1 out;
  out.grad.resize(pred.size(), 0.0);
  if (pred.empty()) return out;
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    if (std::abs(d) < beta) {
      out.loss += 0.5 * d * d / beta;
      out.grad[i] = d / beta * inv_n;
    } else {
      out.loss += std::abs(d) - 0.5 * beta;
      out.grad[i] = (d > 0 ? 1.0 : -1.0) * inv_n;
    }
  }
  out.loss *= inv_n;
  return out;
}

LossValue total_loss(const PiecewiseContour& pred, const PiecewiseContour& gt, int n,
                     std::uint64_t seed) {
  require_degree5(pred);
  require_degree5(gt);
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    fail(ErrorCode::kInvalidArgument, "prediction and ground truth frames differ");
  }
  std::array<double, kFlatSize> scale{};
  for (int i = 0; i < kFlatSize; ++i) {
    scale[i] = 1.0 / (i % 2 == 0 ? pred.width() : pred.height());
  }

  auto flat_pred = flatten(pred);
  auto flat_gt = flatten(gt);
  for (int i = 0; i < kFlatSize; ++i) {
    flat_pred[i] *= scale[i];
    flat_gt[i] *= scale[i];
  }
  const SmoothL1 ce = smooth_l1(flat_pred, flat_gt);

  const SampledTs ts = sample_ts(n, seed);
  const DecodedPoints dp = bdsd_forward(pred, ts);
  const DecodedPoints dg = bdsd_forward(gt, ts);
  std::vector<double> out_pred(2 * ts.size());
  std::vector<double> out_gt(2 * ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    out_pred[2 * j] = dp.points[j].x * scale[0];
    out_pred[2 * j + 1] = dp.points[j].y * scale[1];
    out_gt[2 * j] = dg.points[j].x * scale[0];
    out_gt[2 * j + 1] = dg.points[j].y * scale[1];
  }
  const SmoothL1 matching = smooth_l1(out_pred, out_gt);

  LossValue value;
  value.l_ce = ce.loss;
  value.l_matching = matching.loss;
  value.total = kLambdaCe * ce.loss + kLambdaMatching * matching.loss;

  // The decoder is linear, so the same Jacobian maps normalised control
  // points to normalised outputs.
  const auto back = bdsd_jacobian(pred, ts).apply_transpose(matching.grad);
  for (int i = 0; i < kFlatSize; ++i) {
    value.gradient[i] = (kLambdaCe * ce.grad[i] + kLambdaMatching * back[i]) * scale[i];
  }
  return value;
}

PiecewiseContour random_contour(std::mt19937_64& rng, int width, int height) {
  std::array<double, kFlatSize> v{};
  for (int i = 0; i < kFlatSize; ++i) {
    v[i] = unit_uniform(rng) * (i % 2 == 0 ? width : height);
  }
  return unflatten(v, width, height);
}

GradientCheck gradient_check(std::uint64_t seed, int pairs, int n_samples, double step) {
  if (pairs < 1) fail(ErrorCode::kInvalidArgument, "gradient check needs at least one pair");
  constexpr int kFrame = 256;
  GradientCheck result;
  for (int p = 0; p < pairs; ++p) {
    std::mt19937_64 rng(derive_seed(seed, "gradcheck", {static_cast<std::uint64_t>(p)}));
    const PiecewiseContour pred = random_contour(rng, kFrame, kFrame);
    const PiecewiseContour gt = random_contour(rng, kFrame, kFrame);
    const std::uint64_t loss_seed = derive_seed(seed, "gradcheck-ts", {static_cast<std::uint64_t>(p)});
    const LossValue analytic = total_loss(pred, gt, n_samples, loss_seed);

    const auto base = flatten(pred);
    double max_diff = 0.0;
    double max_fd = 0.0;
    for (int i = 0; i < kFlatSize; ++i) {
      auto plus = base;
      auto minus = base;
      plus[i] += step;
      minus[i] -= step;
      const double lp = total_loss(unflatten(plus, kFrame, kFrame), gt, n_samples, loss_seed).total;
      const double lm = total_loss(unflatten(minus, kFrame, kFrame), gt, n_samples, loss_seed).total;
      const double fd = (lp - lm) / (plus[i] - minus[i]);
      max_diff = std::max(max_diff, std::abs(fd - analytic.gradient[i]));
      max_fd = std::max(max_fd, std::abs(fd));
    }
    const double rel = max_fd > 0.0 ? max_diff / max_fd : max_diff;
    result.max_relative_error = std::max(result.max_relative_error, rel);
    ++result.pairs;
  }
  return result;
}

}  // namespace bzc
