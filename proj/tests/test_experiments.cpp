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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bzcontour/error.hpp"
#include "bzcontour/experiments.hpp"
#include "bzcontour/seed.hpp"
#include "oracles.hpp"

using bzc::BinaryMask;
using bzc::Point2;

namespace {

bzc::CorpusSpec small_corpus(int blobs, int size = 96) {
  bzc::CorpusSpec spec;
  spec.blobs = blobs;
  spec.ellipses = 0;
  spec.dumbbells = 0;
  spec.width = size;
  spec.height = size;
  spec.seed = 4;
  return spec;
}

}  // namespace

TEST(Seed, NamedStreamsAreIndependent) {
  EXPECT_EQ(bzc::derive_seed(1, "a", {2, 3}), bzc::derive_seed(1, "a", {2, 3}));
  EXPECT_NE(bzc::derive_seed(1, "a", {2, 3}), bzc::derive_seed(1, "b", {2, 3}));
  EXPECT_NE(bzc::derive_seed(1, "a", {2, 3}), bzc::derive_seed(1, "a", {3, 2}));
  EXPECT_NE(bzc::derive_seed(1, "a"), bzc::derive_seed(2, "a"));
}

TEST(Synthetic, Deterministic) {
  for (auto kind : {bzc::ShapeKind::kBlob, bzc::ShapeKind::kEllipse, bzc::ShapeKind::kDumbbell}) {
    bzc::SyntheticShapeSpec spec;
    spec.kind = kind;
    spec.seed = 77;
    EXPECT_EQ(bzc::generate_shape(spec), bzc::generate_shape(spec));
  }
}

TEST(Synthetic, EllipseArea) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    bzc::SyntheticShapeSpec spec;
    spec.kind = bzc::ShapeKind::kEllipse;
    spec.scale = 0.5;
    spec.seed = seed;
    const BinaryMask m = bzc::generate_shape(spec);
    EXPECT_EQ(bzc::count_components(m, 8), 1);
    const double frac = static_cast<double>(m.count()) / (256.0 * 256.0);
    EXPECT_GE(frac, 0.05);
    EXPECT_LE(frac, 0.25);
  }
}

TEST(Synthetic, BlobsAreSingleComponent) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    bzc::SyntheticShapeSpec spec;
    spec.width = 64;
    spec.height = 64;
    spec.seed = seed;
    ASSERT_EQ(bzc::count_components(bzc::generate_shape(spec), 8), 1) << "seed " << seed;
  }
}

TEST(Synthetic, DumbbellsHaveAWaist) {
  bzc::SyntheticShapeSpec spec;
  spec.kind = bzc::ShapeKind::kDumbbell;
  spec.seed = 3;
  const BinaryMask m = bzc::generate_shape(spec);
  EXPECT_EQ(bzc::count_components(m, 8), 1);
  EXPECT_GT(m.count(), 1000u);
}

TEST(Synthetic, BadSpec) {
  bzc::SyntheticShapeSpec spec;
  spec.scale = 0.0;
  EXPECT_THROW(bzc::generate_shape(spec), bzc::Error);
  EXPECT_THROW(bzc::parse_shape_kind("triangle"), bzc::Error);
  EXPECT_EQ(bzc::parse_shape_kind("dumbbell"), bzc::ShapeKind::kDumbbell);
}

TEST(Corpus, AddingShapesKeepsOthers) {
  auto spec = small_corpus(5);
  const auto a = bzc::generate_corpus(spec);
  spec.blobs = 8;
  spec.ellipses = 2;
  const auto b = bzc::generate_corpus(spec);
  ASSERT_EQ(a.size(), 5u);
  ASSERT_EQ(b.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(ParallelFor, SameResultsAnyJobCount) {
  std::vector<double> serial(100), parallel(100);
  auto work = [](std::size_t i) { return std::sqrt(static_cast<double>(i)) * 3.0; };
  bzc::parallel_for(100, 1, [&](std::size_t i) { serial[i] = work(i); });
  bzc::parallel_for(100, 7, [&](std::size_t i) { parallel[i] = work(i); });
  EXPECT_EQ(serial, parallel);
}

TEST(ParallelFor, LowestIndexErrorWins) {
  try {
    bzc::parallel_for(50, 4, [](std::size_t i) {
      if (i == 13 || i == 40) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "13");
  }
}

TEST(Fidelity, CorpusMiou) {
  const auto corpus = bzc::generate_corpus(small_corpus(30, 128));
  const auto r = bzc::fidelity_study(corpus, 5);
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_GE(r.summary.miou, 0.95);
  EXPECT_EQ(r.summary.count, 30u);
}

TEST(Fidelity, JobsDoNotChangeResults) {
  const auto corpus = bzc::generate_corpus(small_corpus(12));
  const auto a = bzc::fidelity_study(corpus, 5, 128, 0, 1);
  const auto b = bzc::fidelity_study(corpus, 5, 128, 0, 4);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(a.items[i].metrics.iou, b.items[i].metrics.iou);
    EXPECT_EQ(a.items[i].fit.residuals, b.items[i].fit.residuals);
  }
  EXPECT_EQ(a.summary.miou, b.summary.miou);
}

TEST(Fidelity, SingleDiscHasZeroSpread) {
  const std::vector<BinaryMask> one{oracle::disc_mask(64, 64, 32, 32, 20)};
  const auto r = bzc::fidelity_study(one, 5);
  EXPECT_EQ(r.summary.siou, 0.0);
  EXPECT_GE(r.summary.miou, 0.97);
}

TEST(Fidelity, FailuresAreCountedNotThrown) {
  std::vector<BinaryMask> corpus{oracle::disc_mask(32, 32, 16, 16, 8), BinaryMask(32, 32)};
  const auto r = bzc::fidelity_study(corpus, 5);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_FALSE(r.items[1].ok);
  EXPECT_EQ(r.items[1].code, bzc::ErrorCode::kEmptyObject);
  EXPECT_EQ(r.summary.count, 1u);
}

TEST(Fidelity, DegreeSweepResidualNonIncreasing) {
  const auto corpus = bzc::generate_corpus(small_corpus(20, 128));
  double prev = INFINITY;
  for (int n = 3; n <= 9; ++n) {
    const double r = bzc::fidelity_study(corpus, n).mean_residual;
    EXPECT_LE(r, prev + 1e-12) << "degree " << n;
    prev = r;
  }
}

TEST(Perturb, ZeroAndDeterminism) {
  const auto c = bzc::encode_mask(oracle::disc_mask(64, 64, 32, 32, 20)).contour;
  EXPECT_EQ(bzc::perturb_contour(c, 0.0, 5), c);
  EXPECT_EQ(bzc::perturb_contour(c, 2.0, 5), bzc::perturb_contour(c, 2.0, 5));
  EXPECT_NE(bzc::perturb_contour(c, 2.0, 5), bzc::perturb_contour(c, 2.0, 6));
  EXPECT_THROW(bzc::perturb_contour(c, -1.0, 5), bzc::Error);
}

TEST(Perturb, StaysClosed) {
  const auto c = bzc::encode_mask(oracle::disc_mask(64, 64, 32, 32, 20)).contour;
  const auto p = bzc::perturb_contour(c, 5.0, 1);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(p.segment(k).back(), p.segment((k + 1) % 4).front());
}

TEST(Perturb, StandardDeviation) {
  const std::vector<Point2> one{{10, 20}};
  const double delta = 3.0;
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = bzc::perturb_points(one, delta, bzc::derive_seed(1, "std", {static_cast<std::uint64_t>(i)}))[0].x;
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(sd, delta, 0.02 * delta);
}

TEST(PolygonBaseline, Examples) {
  bzc::BoundaryTrace t;
  for (int i = 0; i < 200; ++i) t.points.push_back({static_cast<double>(i), 0.0});
  const auto p = bzc::polygon_baseline(t, 20);
  ASSERT_EQ(p.size(), 20u);
  for (int j = 0; j < 20; ++j) EXPECT_EQ(p[j].x, 10.0 * j);
  bzc::BoundaryTrace small;
  for (int i = 0; i < 7; ++i) small.points.push_back({static_cast<double>(i), 1.0});
  EXPECT_EQ(bzc::polygon_baseline(small, 7), small.points);
  EXPECT_THROW(bzc::polygon_baseline(small, 8), bzc::Error);
}

TEST(PolygonBaseline, DiscTwentyGon) {
  const BinaryMask disc = oracle::disc_mask(96, 96, 48, 48, 30);
  const auto poly = bzc::polygon_baseline(bzc::trace_boundary(disc), 20);
  EXPECT_GE(bzc::iou(bzc::confusion(bzc::rasterize_polygon(poly, 96, 96), disc)), 0.9);
}

TEST(Sensitivity, ZeroNoiseMatchesBaselines) {
  const auto corpus = bzc::generate_corpus(small_corpus(6));
  const std::vector<double> deltas{0.0};
  const auto curve = bzc::sensitivity_sweep(corpus, deltas, 3, 1);
  const auto fid = bzc::fidelity_study(corpus, 5);
  EXPECT_NEAR(curve.miou_bezier[0], fid.summary.miou, 1e-12);
  double poly = 0.0;
  for (const auto& m : corpus) {
    const auto p = bzc::polygon_baseline(bzc::trace_boundary(bzc::largest_component(m)), 20);
    poly += bzc::iou(bzc::confusion(bzc::render_boundary_polygon(p, m.width(), m.height()), m));
  }
  EXPECT_NEAR(curve.miou_polygon[0], poly / static_cast<double>(corpus.size()), 1e-12);
}

TEST(Sensitivity, MonotoneAndJobIndependent) {
  const auto corpus = bzc::generate_corpus(small_corpus(10, 128));
  const std::vector<double> deltas{0, 2, 5, 10, 20};
  bzc::SensitivityOptions serial;
  bzc::SensitivityOptions threaded;
  threaded.jobs = 4;
  const auto a = bzc::sensitivity_sweep(corpus, deltas, 5, 9, serial);
  const auto b = bzc::sensitivity_sweep(corpus, deltas, 5, 9, threaded);
  EXPECT_EQ(a.miou_bezier, b.miou_bezier);
  EXPECT_EQ(a.miou_polygon, b.miou_polygon);
  for (std::size_t d = 1; d < deltas.size(); ++d) {
    EXPECT_LE(a.miou_bezier[d], a.miou_bezier[d - 1] + 0.01);
    EXPECT_LE(a.miou_polygon[d], a.miou_polygon[d - 1] + 0.01);
  }
  EXPECT_THROW(bzc::sensitivity_sweep(corpus, deltas, 0, 9), bzc::Error);
}

TEST(Sensitivity, SmallerObjectsScoreLowerUnderNoise) {
  auto spec = small_corpus(20, 128);
  const std::vector<double> deltas{2.0};
  const double large = bzc::sensitivity_sweep(bzc::generate_corpus(spec), deltas, 5, 3).miou_bezier[0];
  spec.min_scale /= 4.0;
  spec.max_scale /= 4.0;
  const double small = bzc::sensitivity_sweep(bzc::generate_corpus(spec), deltas, 5, 3).miou_bezier[0];
  EXPECT_LT(small, large);
}
