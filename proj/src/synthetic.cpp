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

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "bzcontour/error.hpp"
#include "bzcontour/experiments.hpp"
#include "bzcontour/seed.hpp"

namespace bzc {
namespace {

constexpr int kMaxAttempts = 100;
constexpr int kBlobVertices = 720;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

struct Frame {
  double cx;
  double cy;
  double extent;  // radius of the disc the shape must stay inside
};

Frame place(std::mt19937_64& rng, const SyntheticShapeSpec& spec) {
  const double half = 0.5 * std::min(spec.width, spec.height);
  const double extent = spec.scale * half;
  const double slack = half - extent;
  return {0.5 * spec.width + slack * uniform(rng, -1.0, 1.0),
          0.5 * spec.height + slack * uniform(rng, -1.0, 1.0), extent};
}

// r(theta) = r0 (1 + sum_{k=2..6} a_k cos(k theta + phi_k)), |a_k| <= 0.08.
// The harmonics sum to at most 0.4, so r stays within [0.6, 1.4] r0 and the
// outline is star-shaped around the centre.
BinaryMask make_blob(std::mt19937_64& rng, const SyntheticShapeSpec& spec) {
  const Frame f = place(rng, spec);
  const double r0 = f.extent / 1.4;
  std::array<double, 5> amp{};
  std::array<double, 5> phase{};
  for (int k = 0; k < 5; ++k) {
    amp[k] = uniform(rng, -0.08, 0.08);
    phase[k] = uniform(rng, 0.0, kTwoPi);
  }
  std::vector<Point2> outline;
  outline.reserve(kBlobVertices);
  for (int v = 0; v < kBlobVertices; ++v) {
    const double theta = kTwoPi * v / kBlobVertices;
    double factor = 1.0;
    for (int k = 0; k < 5; ++k) factor += amp[k] * std::cos((k + 2) * theta + phase[k]);
    const double r = r0 * factor;
    outline.push_back({f.cx + r * std::cos(theta), f.cy + r * std::sin(theta)});
  }
  return rasterize_polygon(outline, spec.width, spec.height);
}

BinaryMask make_ellipse(std::mt19937_64& rng, const SyntheticShapeSpec& spec) {
  const Frame f = place(rng, spec);
  const double a = f.extent * uniform(rng, 0.6, 1.0);
  const double b = f.extent * uniform(rng, 0.6, 1.0);
  const double angle = uniform(rng, 0.0, std::numbers::pi);
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  BinaryMask mask(spec.width, spec.height);
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c) {
      const double dx = c + 0.5 - f.cx;
      const double dy = r + 0.5 - f.cy;
      const double u = (ca * dx + sa * dy) / a;
      const double v = (-sa * dx + ca * dy) / b;
      if (u * u + v * v <= 1.0) mask.set(r, c, true);
    }
  }
  return mask;
}

// Two overlapping discs; the overlap keeps the union connected while the
// waist stays narrower than either disc.
BinaryMask make_dumbbell(std::mt19937_64& rng, const SyntheticShapeSpec& spec) {
  const Frame f = place(rng, spec);
  const double rd = f.extent * uniform(rng, 0.42, 0.5);
  const double sep = rd * uniform(rng, 1.3, 1.7);
  const double angle = uniform(rng, 0.0, std::numbers::pi);
  const double ox = 0.5 * sep * std::cos(angle);
  const double oy = 0.5 * sep * std::sin(angle);
  BinaryMask mask(spec.width, spec.height);
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c) {
      const double x = c + 0.5 - f.cx;
      const double y = r + 0.5 - f.cy;
      const double d1 = (x - ox) * (x - ox) + (y - oy) * (y - oy);
      const double d2 = (x + ox) * (x + ox) + (y + oy) * (y + oy);
      if (d1 <= rd * rd || d2 <= rd * rd) mask.set(r, c, true);
    }
  }
  return mask;
}

}  // namespace

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kBlob: return "blob";
    case ShapeKind::kEllipse: return "ellipse";
    case ShapeKind::kDumbbell: return "dumbbell";
  }
  return "unknown";
}

ShapeKind parse_shape_kind(const std::string& name) {
  if (name == "blob") return ShapeKind::kBlob;
  if (name == "ellipse") return ShapeKind::kEllipse;
  if (name == "dumbbell") return ShapeKind::kDumbbell;
  fail(ErrorCode::kInvalidArgument, "unknown shape kind '" + name + "'");
}

BinaryMask generate_shape(const SyntheticShapeSpec& spec) {
  if (spec.width < 1 || spec.height < 1) {
    fail(ErrorCode::kInvalidArgument, "synthetic frame must be >= 1x1");
  }
  if (!(spec.scale > 0.0 && spec.scale <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "synthetic scale must lie in (0, 1]");
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(
        derive_seed(spec.seed, to_string(spec.kind), {static_cast<std::uint64_t>(attempt)}));
    BinaryMask mask = [&] {
      switch (spec.kind) {
        case ShapeKind::kEllipse: return make_ellipse(rng, spec);
        case ShapeKind::kDumbbell: return make_dumbbell(rng, spec);
        case ShapeKind::kBlob: break;
      }
      return make_blob(rng, spec);
    }();
    if (count_components(mask, 8) == 1) return mask;
  }
  fail(ErrorCode::kDegenerateObject, "could not generate a single-component shape in 100 attempts");
}

std::vector<BinaryMask> generate_corpus(const CorpusSpec& spec) {
  if (spec.blobs < 0 || spec.ellipses < 0 || spec.dumbbells < 0) {
    fail(ErrorCode::kInvalidArgument, "corpus counts must be non-negative");
  }
  if (!(spec.min_scale > 0.0 && spec.min_scale <= spec.max_scale && spec.max_scale <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "corpus scale range must satisfy 0 < min <= max <= 1");
  }
  std::vector<BinaryMask> corpus;
  corpus.reserve(static_cast<std::size_t>(spec.blobs + spec.ellipses + spec.dumbbells));
  const std::array<std::pair<ShapeKind, int>, 3> plan{
      {{ShapeKind::kBlob, spec.blobs},
       {ShapeKind::kEllipse, spec.ellipses},
       {ShapeKind::kDumbbell, spec.dumbbells}}};
  for (const auto& [kind, count] : plan) {
    for (int i = 0; i < count; ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      std::mt19937_64 scale_rng(derive_seed(spec.seed, std::string("scale-") + to_string(kind), {idx}));
      SyntheticShapeSpec shape;
      shape.kind = kind;
      shape.width = spec.width;
      shape.height = spec.height;
      shape.seed = derive_seed(spec.seed, std::string("shape-") + to_string(kind), {idx});
      shape.scale = uniform(scale_rng, spec.min_scale, spec.max_scale);
      corpus.push_back(generate_shape(shape));
    }
  }
  return corpus;
}

}  // namespace bzc
