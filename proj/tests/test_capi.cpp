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

// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "bzcontour/bzcontour.h"

namespace {

bzc_mask* disc(int size, double radius) {
  std::vector<uint8_t> bits(static_cast<size_t>(size) * size, 0);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double dx = c + 0.5 - size / 2.0;
      const double dy = r + 0.5 - size / 2.0;
      bits[static_cast<size_t>(r) * size + c] = dx * dx + dy * dy <= radius * radius;
    }
  }
  bzc_mask* m = nullptr;
  EXPECT_EQ(bzc_mask_create(size, size, bits.data(), &m), BZC_OK);
  return m;
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(bzc_version(), "1.0.0");
  EXPECT_STREQ(bzc_status_string(BZC_OK), "ok");
  EXPECT_STREQ(bzc_status_string(BZC_ERR_EMPTY_OBJECT), "empty-object");
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(bzc_mask_create(4, 4, nullptr, nullptr), BZC_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(bzc_last_error()), "");
  bzc_mask* m = nullptr;
  EXPECT_EQ(bzc_mask_create(0, 4, nullptr, &m), BZC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(bzc_mask_width(nullptr), 0);
  bzc_mask_free(nullptr);
  bzc_contour_free(nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
  EXPECT_EQ(bzc_mask_create(0, 0, nullptr, nullptr), BZC_ERR_INVALID_ARGUMENT);
  std::string other;
  std::thread([&] { other = bzc_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(bzc_last_error()), "");
}

TEST(CApi, EncodeDecodeRoundTrip) {
  bzc_mask* m = disc(64, 20);
  EXPECT_GT(bzc_mask_count(m), 1000);
  bzc_contour* c = nullptr;
  bzc_fit_report report{};
  ASSERT_EQ(bzc_encode_mask(m, 5, 0, &c, &report), BZC_OK);
  EXPECT_EQ(bzc_contour_degree(c), 5);
  EXPECT_EQ(bzc_contour_width(c), 64);
  for (int k = 0; k < 4; ++k) EXPECT_GT(report.arc_length[k], 1);

  size_t n = 0;
  EXPECT_EQ(bzc_contour_control_points(c, nullptr, 0, &n), BZC_ERR_BUFFER_TOO_SMALL);
  EXPECT_EQ(n, 24u);
  std::vector<double> xy(2 * n);
  ASSERT_EQ(bzc_contour_control_points(c, xy.data(), n, &n), BZC_OK);

  bzc_contour* rebuilt = nullptr;
  ASSERT_EQ(bzc_contour_create(xy.data(), n, 5, 64, 64, &rebuilt), BZC_OK);
  double a[40], b[40];
  ASSERT_EQ(bzc_contour_flatten(c, a), BZC_OK);
  ASSERT_EQ(bzc_contour_flatten(rebuilt, b), BZC_OK);
  EXPECT_EQ(std::memcmp(a, b, sizeof a), 0);

  bzc_mask* raster = nullptr;
  ASSERT_EQ(bzc_contour_render(c, 64, 64, 128, &raster), BZC_OK);
  bzc_metrics metrics{};
  ASSERT_EQ(bzc_evaluate_masks(raster, m, &metrics), BZC_OK);
  EXPECT_GE(metrics.iou, 0.97);
  bzc_metrics direct{};
  ASSERT_EQ(bzc_evaluate_contour(c, m, 128, &direct), BZC_OK);
  EXPECT_EQ(direct.iou, metrics.iou);

  size_t verts = 0;
  EXPECT_EQ(bzc_contour_decode(c, 2, nullptr, 0, &verts), BZC_ERR_BUFFER_TOO_SMALL);
  EXPECT_EQ(verts, 4u);

  bzc_mask_free(raster);
  bzc_contour_free(rebuilt);
  bzc_contour_free(c);
  bzc_mask_free(m);
}

TEST(CApi, EncodeEmptyMask) {
  bzc_mask* m = nullptr;
  ASSERT_EQ(bzc_mask_create(8, 8, nullptr, &m), BZC_OK);
  bzc_contour* c = nullptr;
  EXPECT_EQ(bzc_encode_mask(m, 5, 0, &c, nullptr), BZC_ERR_EMPTY_OBJECT);
  EXPECT_EQ(c, nullptr);
  bzc_mask_free(m);
}

TEST(CApi, JsonRoundTrip) {
  bzc_mask* m = disc(48, 15);
  bzc_contour* c = nullptr;
  ASSERT_EQ(bzc_encode_mask(m, 5, 0, &c, nullptr), BZC_OK);
  size_t len = 0;
  EXPECT_EQ(bzc_contour_to_json(c, nullptr, 0, &len), BZC_ERR_BUFFER_TOO_SMALL);
  std::string text(len, '\0');
  ASSERT_EQ(bzc_contour_to_json(c, text.data(), len, &len), BZC_OK);
  EXPECT_EQ(text.back(), '\0');
  bzc_contour* back = nullptr;
  ASSERT_EQ(bzc_contour_from_json(text.c_str(), len - 1, &back), BZC_OK);
  double a[40], b[40];
  bzc_contour_flatten(c, a);
  bzc_contour_flatten(back, b);
  EXPECT_EQ(std::memcmp(a, b, sizeof a), 0);
  bzc_contour* bad = nullptr;
  EXPECT_EQ(bzc_contour_from_json("{", 1, &bad), BZC_ERR_FORMAT);
  bzc_contour_free(back);
  bzc_contour_free(c);
  bzc_mask_free(m);
}

TEST(CApi, PgmRoundTripAndFiles) {
  bzc_mask* m = disc(20, 6);
  size_t len = 0;
  EXPECT_EQ(bzc_mask_to_pgm(m, nullptr, 0, &len), BZC_ERR_BUFFER_TOO_SMALL);
  std::vector<uint8_t> bytes(len);
  ASSERT_EQ(bzc_mask_to_pgm(m, bytes.data(), len, &len), BZC_OK);
  bzc_mask* back = nullptr;
  ASSERT_EQ(bzc_mask_load_pgm(bytes.data(), len, 127, &back), BZC_OK);
  EXPECT_EQ(bzc_mask_count(back), bzc_mask_count(m));

  const auto dir = std::filesystem::temp_directory_path() / "bzc_capi_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "m.pgm").string();
  ASSERT_EQ(bzc_mask_write_file(m, path.c_str()), BZC_OK);
  bzc_mask* read = nullptr;
  ASSERT_EQ(bzc_mask_read_file(path.c_str(), 127, &read), BZC_OK);
  std::vector<uint8_t> x(400), y(400);
  bzc_mask_get_bits(m, x.data(), x.size());
  bzc_mask_get_bits(read, y.data(), y.size());
  EXPECT_EQ(x, y);
  EXPECT_EQ(bzc_mask_read_file((dir / "nope.pgm").string().c_str(), 127, &read), BZC_ERR_IO);

  bzc_contour* c = nullptr;
  ASSERT_EQ(bzc_encode_mask(m, 5, 0, &c, nullptr), BZC_OK);
  const std::string overlay = (dir / "overlay.pgm").string();
  ASSERT_EQ(bzc_render_overlay_file(m, c, 64, overlay.c_str()), BZC_OK);
  EXPECT_TRUE(std::filesystem::exists(overlay));

  bzc_contour_free(c);
  bzc_mask_free(read);
  bzc_mask_free(back);
  bzc_mask_free(m);
}

TEST(CApi, TraceAndRasterize) {
  const double sq[] = {1, 1, 5, 1, 5, 5, 1, 5};
  bzc_mask* m = nullptr;
  ASSERT_EQ(bzc_rasterize_polygon(sq, 4, 8, 8, &m), BZC_OK);
  EXPECT_EQ(bzc_mask_count(m), 16);
  size_t n = 0;
  EXPECT_EQ(bzc_mask_trace(m, nullptr, 0, &n), BZC_ERR_BUFFER_TOO_SMALL);
  EXPECT_EQ(n, 12u);
  std::vector<double> xy(2 * n);
  ASSERT_EQ(bzc_mask_trace(m, xy.data(), n, &n), BZC_OK);
  EXPECT_EQ(xy[0], 1.5);
  EXPECT_EQ(xy[1], 1.5);
  bzc_mask_free(m);
}

TEST(CApi, MetricsAndLosses) {
  const double a[] = {0, 0};
  const double b[] = {3, 4};
  double hd = 0;
  ASSERT_EQ(bzc_hausdorff(a, 1, b, 1, &hd), BZC_OK);
  EXPECT_EQ(hd, 5.0);
  EXPECT_EQ(bzc_hausdorff(a, 0, b, 1, &hd), BZC_ERR_UNDEFINED_METRIC);

  bzc_metrics rs[2] = {{0.4, 1, 0, 0, 0}, {0.6, 3, 0, 0, 0}};
  bzc_summary s{};
  ASSERT_EQ(bzc_summarize(rs, 2, &s), BZC_OK);
  EXPECT_NEAR(s.miou, 0.5, 1e-15);
  EXPECT_NEAR(s.siou, 0.1, 1e-15);
  EXPECT_EQ(s.count, 2);

  double err = 1.0;
  ASSERT_EQ(bzc_gradient_check(0, 5, 72, &err), BZC_OK);
  EXPECT_LT(err, 1e-5);

  bzc_mask* m = disc(64, 20);
  bzc_contour* c = nullptr;
  ASSERT_EQ(bzc_encode_mask(m, 5, 0, &c, nullptr), BZC_OK);
  bzc_contour* p = nullptr;
  ASSERT_EQ(bzc_contour_perturb(c, 2.0, 3, &p), BZC_OK);
  bzc_loss loss{};
  ASSERT_EQ(bzc_total_loss(p, c, 72, 1, &loss), BZC_OK);
  EXPECT_GT(loss.total, 0.0);
  EXPECT_DOUBLE_EQ(loss.total, loss.l_ce + loss.l_matching);
  ASSERT_EQ(bzc_total_loss(c, c, 72, 1, &loss), BZC_OK);
  EXPECT_EQ(loss.total, 0.0);

  bzc_contour* c4 = nullptr;
  ASSERT_EQ(bzc_encode_mask(m, 4, 0, &c4, nullptr), BZC_OK);
  double flat[40];
  EXPECT_EQ(bzc_contour_flatten(c4, flat), BZC_ERR_UNSUPPORTED_LAYOUT);

  bzc_contour_free(c4);
  bzc_contour_free(p);
  bzc_contour_free(c);
  bzc_mask_free(m);
}

TEST(CApi, Experiments) {
  std::vector<bzc_mask*> corpus(6, nullptr);
  size_t n = 0;
  ASSERT_EQ(bzc_generate_corpus(6, 0, 0, 96, 96, 2, corpus.data(), corpus.size(), &n), BZC_OK);
  ASSERT_EQ(n, 6u);
  bzc_mask* empty = nullptr;
  ASSERT_EQ(bzc_mask_create(96, 96, nullptr, &empty), BZC_OK);
  corpus.push_back(empty);

  std::vector<const bzc_mask*> handles(corpus.begin(), corpus.end());
  std::vector<bzc_fidelity_item> items(handles.size());
  bzc_summary s{};
  ASSERT_EQ(bzc_fidelity_study(handles.data(), handles.size(), 5, 128, 0, 2, items.data(), &s), BZC_OK);
  EXPECT_EQ(s.count, 6);
  EXPECT_EQ(items[6].ok, 0);
  EXPECT_EQ(items[6].status, BZC_ERR_EMPTY_OBJECT);
  EXPECT_GE(s.miou, 0.95);

  const double deltas[] = {0.0, 5.0};
  double bez[2], poly[2];
  size_t used = 0;
  ASSERT_EQ(bzc_sensitivity_sweep(handles.data(), handles.size(), deltas, 2, 3, 1, 5, 128, 0, 2, bez, poly,
                                  &used),
            BZC_OK);
  EXPECT_EQ(used, 6u);
  EXPECT_NEAR(bez[0], s.miou, 1e-12);
  EXPECT_LE(bez[1], bez[0] + 0.01);
  for (auto* m : corpus) bzc_mask_free(m);
}

TEST(CApi, DeriveSeedIsStable) {
  const uint64_t path[] = {1, 2};
  EXPECT_EQ(bzc_derive_seed(5, "x", path, 2), bzc_derive_seed(5, "x", path, 2));
  EXPECT_NE(bzc_derive_seed(5, "x", path, 2), bzc_derive_seed(5, "x", path, 1));
}
