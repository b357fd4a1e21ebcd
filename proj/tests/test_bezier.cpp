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
#include <limits>
#include <random>

#include "bzcontour/bezier.hpp"
#include "bzcontour/error.hpp"
#include "oracles.hpp"

using bzc::BezierSegment;
using bzc::Point2;

namespace {

void expect_near(Point2 a, Point2 b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
}

const BezierSegment kCubic({{0, 0}, {0, 1}, {1, 1}, {1, 0}});

}  // namespace

TEST(Binomial, SmallTable) {
  EXPECT_EQ(bzc::binomial(5, 0), 1u);
  EXPECT_EQ(bzc::binomial(5, 2), 10u);
  EXPECT_EQ(bzc::binomial(20, 10), 184756u);
  EXPECT_THROW(bzc::binomial(4, 5), bzc::Error);
}

TEST(BernsteinBasis, Endpoint) {
  const auto b = bzc::bernstein_basis(5, 0.0);
  ASSERT_EQ(b.size(), 6u);
  EXPECT_EQ(b[0], 1.0);
  for (int i = 1; i < 6; ++i) EXPECT_EQ(b[i], 0.0);
  const auto e = bzc::bernstein_basis(5, 1.0);
  EXPECT_EQ(e[5], 1.0);
}

TEST(BernsteinBasis, CubicMidpoint) {
  const auto b = bzc::bernstein_basis(3, 0.5);
  EXPECT_DOUBLE_EQ(b[0], 0.125);
  EXPECT_DOUBLE_EQ(b[1], 0.375);
  EXPECT_DOUBLE_EQ(b[2], 0.375);
  EXPECT_DOUBLE_EQ(b[3], 0.125);
}

TEST(BernsteinBasis, PartitionOfUnityAndPowOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const double t = oracle::uniform(rng, 0.0, 1.0);
    const auto b = bzc::bernstein_basis(n, t);
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      EXPECT_GE(b[i], 0.0);
      EXPECT_NEAR(b[i], oracle::bernstein(n, i, t), 1e-13);
      sum += b[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(BernsteinBasis, RejectsBadInput) {
  EXPECT_THROW(bzc::bernstein_basis(0, 0.5), bzc::Error);
  EXPECT_THROW(bzc::bernstein_basis(21, 0.5), bzc::Error);
  EXPECT_THROW(bzc::bernstein_basis(3, -0.1), bzc::Error);
  EXPECT_THROW(bzc::bernstein_basis(3, 1.1), bzc::Error);
  EXPECT_THROW(bzc::bernstein_basis(3, std::numeric_limits<double>::quiet_NaN()), bzc::Error);
}

TEST(Segment, Validation) {
  EXPECT_THROW(BezierSegment({{0, 0}}), bzc::Error);
  EXPECT_THROW(BezierSegment(std::vector<Point2>(22, Point2{0, 0})), bzc::Error);
  EXPECT_THROW(BezierSegment({{0, 0}, {std::numeric_limits<double>::infinity(), 0}}), bzc::Error);
  EXPECT_EQ(BezierSegment(std::vector<Point2>(21, Point2{1, 1})).degree(), 20);
}

TEST(EvalBernstein, CubicAndEndpoints) {
  expect_near(bzc::eval_bernstein(kCubic, 0.5), {0.5, 0.75}, 1e-15);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto seg = oracle::random_segment(rng, 1 + static_cast<int>(rng() % 8));
    EXPECT_EQ(bzc::eval_bernstein(seg, 0.0), seg.front());
    EXPECT_EQ(bzc::eval_bernstein(seg, 1.0), seg.back());
  }
}

TEST(EvalBernstein, LinearPrecision) {
  std::vector<Point2> pts;
  for (int i = 0; i <= 5; ++i) pts.push_back({2.0 * i, 0.0});
  expect_near(bzc::eval_bernstein(BezierSegment(pts), 0.3), {3.0, 0.0}, 1e-14);
}

TEST(DeCasteljau, Examples) {
  expect_near(bzc::eval_de_casteljau(kCubic, 0.5), {0.5, 0.75}, 1e-15);
  expect_near(bzc::eval_de_casteljau(BezierSegment({{0, 0}, {4, 2}}), 0.25), {1.0, 0.5}, 1e-15);
}

TEST(DeCasteljau, AgreesWithBernstein) {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 100; ++s) {
    const auto seg = oracle::random_segment(rng, 5);
    for (int k = 0; k < 100; ++k) {
      const double t = oracle::uniform(rng, 0.0, 1.0);
      expect_near(bzc::eval_de_casteljau(seg, t), bzc::eval_bernstein(seg, t), 1e-10);
    }
  }
}

TEST(SampleSegment, Examples) {
  const std::vector<double> ends{0.0, 1.0};
  const auto e = bzc::sample_segment(kCubic, ends);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0], kCubic.front());
  EXPECT_EQ(e[1], kCubic.back());

  const BezierSegment flat(std::vector<Point2>(6, Point2{3, 3}));
  for (const auto& p : bzc::sample_segment(flat, bzc::uniform_ts(17))) expect_near(p, {3, 3}, 1e-14);

  // 129 samples put t = 0.5 exactly in the middle.
  const auto ts = bzc::uniform_ts(129);
  EXPECT_EQ(ts[64], 0.5);
  expect_near(bzc::sample_segment(kCubic, ts)[64], {0.5, 0.75}, 1e-15);
  const auto mid = bzc::sample_segment(kCubic, bzc::uniform_ts(128));
  expect_near(mid[64], {0.5, 0.75}, 0.01);
}

TEST(UniformTs, Spacing) {
  const auto ts = bzc::uniform_ts(5);
  ASSERT_EQ(ts.size(), 5u);
  EXPECT_EQ(ts.front(), 0.0);
  EXPECT_EQ(ts.back(), 1.0);
  EXPECT_DOUBLE_EQ(ts[2], 0.5);
  EXPECT_THROW(bzc::uniform_ts(1), bzc::Error);
}

TEST(Elevate, LineExample) {
  const auto e = bzc::elevate_degree(BezierSegment({{0, 0}, {2, 0}}));
  ASSERT_EQ(e.degree(), 2);
  expect_near(e.control_points()[1], {1, 0}, 1e-15);
}

TEST(Elevate, SameTrace) {
  std::mt19937_64 rng(9);
  for (int s = 0; s < 50; ++s) {
    const auto seg = oracle::random_segment(rng, 1 + static_cast<int>(rng() % 10));
    const auto up = bzc::elevate_degree(seg);
    EXPECT_EQ(up.degree(), seg.degree() + 1);
    for (int k = 0; k < 50; ++k) {
      const double t = oracle::uniform(rng, 0.0, 1.0);
      expect_near(bzc::eval_bernstein(up, t), bzc::eval_bernstein(seg, t), 1e-10);
    }
  }
}

TEST(Elevate, CubicTwiceIsQuintic) {
  const auto q = bzc::elevate_degree(bzc::elevate_degree(kCubic));
  EXPECT_EQ(q.degree(), 5);
  for (double t : bzc::uniform_ts(33)) {
    expect_near(bzc::eval_de_casteljau(q, t), bzc::eval_de_casteljau(kCubic, t), 1e-12);
  }
}

TEST(Elevate, RefusesPastMaxDegree) {
  EXPECT_THROW(bzc::elevate_degree(BezierSegment(std::vector<Point2>(21, Point2{0, 0}))), bzc::Error);
}
