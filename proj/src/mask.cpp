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

#include "bzcontour/mask.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <string>

#include "bzcontour/error.hpp"

namespace bzc {

BinaryMask::BinaryMask(int width, int height)
    : BinaryMask(width, height,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                           static_cast<std::size_t>(std::max(height, 0)))) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) fail(ErrorCode::kInvalidArgument, "mask dimensions must be >= 1");
  if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    fail(ErrorCode::kInvalidArgument, "mask bit count does not match width*height");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

namespace {

constexpr std::array<std::pair<int, int>, 4> kNeighbors4{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

// Clockwise on screen (y down), starting east.
constexpr std::array<std::pair<int, int>, 8> kNeighbors8{
    {{0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};
constexpr int kWest = 4;

int direction_between(int r0, int c0, int r1, int c1) {
  for (int d = 0; d < 8; ++d) {
    if (r0 + kNeighbors8[d].first == r1 && c0 + kNeighbors8[d].second == c1) return d;
  }
  return -1;
}

Point2 pixel_center(int row, int col) { return {col + 0.5, row + 0.5}; }

}  // namespace

std::vector<int> label_components(const BinaryMask& mask, int connectivity, int* count) {
  if (connectivity != 4 && connectivity != 8) {
    fail(ErrorCode::kInvalidArgument, "connectivity must be 4 or 8");
  }
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, 0);
  int next = 0;
  std::deque<std::pair<int, int>> queue;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!mask.at(r, c) || labels[static_cast<std::size_t>(r) * w + c] != 0) continue;
      ++next;
      labels[static_cast<std::size_t>(r) * w + c] = next;
      queue.emplace_back(r, c);
      while (!queue.empty()) {
        const auto [pr, pc] = queue.front();
        queue.pop_front();
        for (int d = 0; d < 8; ++d) {
          if (connectivity == 4 && d % 2 == 1) continue;  // diagonals are odd indices
          const int nr = pr + kNeighbors8[d].first;
          const int nc = pc + kNeighbors8[d].second;
          if (!mask.get(nr, nc)) continue;
          int& label = labels[static_cast<std::size_t>(nr) * w + nc];
          if (label == 0) {
            label = next;
            queue.emplace_back(nr, nc);
          }
        }
      }
    }
  }
  if (count != nullptr) *count = next;
  return labels;
}

int count_components(const BinaryMask& mask, int connectivity) {
  int n = 0;
  label_components(mask, connectivity, &n);
  return n;
}

BinaryMask largest_component(const BinaryMask& mask, int connectivity) {
  int n = 0;
  const auto labels = label_components(mask, connectivity, &n);
  if (n <= 1) return mask;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(n) + 1, 0);
  for (int label : labels) ++sizes[label];
  // Labels follow raster order of each component's first pixel, so a strict
  // comparison keeps the earliest component on ties.
  int best = 1;
  for (int label = 2; label <= n; ++label) {
    if (sizes[label] > sizes[best]) best = label;
  }
  BinaryMask out(mask.width(), mask.height());
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (labels[static_cast<std::size_t>(r) * mask.width() + c] == best) out.set(r, c, true);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> disc_offsets(int radius) {
  if (radius < 0) fail(ErrorCode::kInvalidArgument, "radius must be >= 0");
  const double limit = (radius + 0.5) * (radius + 0.5);
  std::vector<std::pair<int, int>> out;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      if (dr * dr + dc * dc <= limit) out.emplace_back(dr, dc);
    }
  }
  return out;
}

namespace {

using Offsets = std::vector<std::pair<int, int>>;

BinaryMask erode(const BinaryMask& in, const Offsets& disc) {
  BinaryMask out(in.width(), in.height());
  for (int r = 0; r < in.height(); ++r) {
    for (int c = 0; c < in.width(); ++c) {
      if (!in.at(r, c)) continue;
      bool keep = true;
      for (const auto& [dr, dc] : disc) {
        if (!in.get(r + dr, c + dc)) {
          keep = false;
          break;
        }
      }
      if (keep) out.set(r, c, true);
    }
  }
  return out;
}

BinaryMask dilate(const BinaryMask& in, const Offsets& disc) {
  BinaryMask out(in.width(), in.height());
  for (int r = 0; r < in.height(); ++r) {
    for (int c = 0; c < in.width(); ++c) {
      if (!in.at(r, c)) continue;
      for (const auto& [dr, dc] : disc) {
        const int nr = r + dr;
        const int nc = c + dc;
        if (nr >= 0 && nc >= 0 && nr < in.height() && nc < in.width()) out.set(nr, nc, true);
      }
    }
  }
  return out;
}

}  // namespace

BinaryMask morphological_smooth(const BinaryMask& mask, int radius) {
  if (radius < 0) fail(ErrorCode::kInvalidArgument, "radius must be >= 0");
  if (radius == 0) return mask;
  const Offsets disc = disc_offsets(radius);

  // A margin of 2r keeps every intermediate result exact: the closing's
  // dilation reaches r past the frame and its erosion looks r further.
  const int pad = 2 * radius;
  BinaryMask canvas(mask.width() + 2 * pad, mask.height() + 2 * pad);
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (mask.at(r, c)) canvas.set(r + pad, c + pad, true);
    }
  }
  const BinaryMask opened = dilate(erode(canvas, disc), disc);
  const BinaryMask closed = erode(dilate(opened, disc), disc);

  BinaryMask out(mask.width(), mask.height());
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (closed.at(r + pad, c + pad)) out.set(r, c, true);
    }
  }
  return out;
}

BoundaryTrace trace_boundary(const BinaryMask& mask) {
  const int components = count_components(mask, 8);
  if (components == 0) fail(ErrorCode::kEmptyObject, "mask has no foreground pixels");
  if (components > 1) {
    fail(ErrorCode::kPrecondition,
         "trace_boundary expects one 8-connected object, found " + std::to_string(components));
  }

  int r0 = -1;
  int c0 = -1;
  for (int r = 0; r < mask.height() && r0 < 0; ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (mask.at(r, c)) {
        r0 = r;
        c0 = c;
        break;
      }
    }
  }

  BoundaryTrace trace;
  trace.points.push_back(pixel_center(r0, c0));

  // Border following for an outer border whose west neighbour is
  // background: search clockwise from west for the pixel that closes the
  // loop, then walk counter-clockwise around each successive pixel.
  int first_dir = -1;
  for (int k = 0; k < 8; ++k) {
    const int d = (kWest + k) % 8;
    if (mask.get(r0 + kNeighbors8[d].first, c0 + kNeighbors8[d].second)) {
      first_dir = d;
      break;
    }
  }
  if (first_dir < 0) return trace;  // isolated pixel

  const int r1 = r0 + kNeighbors8[first_dir].first;
  const int c1 = c0 + kNeighbors8[first_dir].second;

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(mask.width()) * mask.height(), 0);
  seen[static_cast<std::size_t>(r0) * mask.width() + c0] = 1;

  int prev_r = r1, prev_c = c1;
  int cur_r = r0, cur_c = c0;
  const std::size_t max_steps = 4 * seen.size() + 8;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const int back = direction_between(cur_r, cur_c, prev_r, prev_c);
    int next_r = -1, next_c = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = ((back - k) % 8 + 8) % 8;
      const int nr = cur_r + kNeighbors8[d].first;
      const int nc = cur_c + kNeighbors8[d].second;
      if (mask.get(nr, nc)) {
        next_r = nr;
        next_c = nc;
        break;
      }
    }
    if (next_r == r0 && next_c == c0 && cur_r == r1 && cur_c == c1) return trace;
    prev_r = cur_r;
    prev_c = cur_c;
    cur_r = next_r;
    cur_c = next_c;
    auto& flag = seen[static_cast<std::size_t>(cur_r) * mask.width() + cur_c];
    if (!flag) {
      flag = 1;
      trace.points.push_back(pixel_center(cur_r, cur_c));
    }
  }
  fail(ErrorCode::kInvariantViolation, "border following did not terminate");
}

BinaryMask rasterize_polygon(std::span<const Point2> vertices, int width, int height) {
  if (vertices.size() < 3) fail(ErrorCode::kInvalidArgument, "polygon needs at least 3 vertices");
  for (const Point2& v : vertices) {
    if (!v.finite()) fail(ErrorCode::kInvalidArgument, "non-finite polygon vertex");
  }
  BinaryMask out(width, height);

  // Crossing abscissae per row centre y = r + 0.5. An edge crosses a row when
  // y lies in [min(y_i, y_j), max(y_i, y_j)).
  std::vector<std::vector<double>> crossings(static_cast<std::size_t>(height));
  const std::size_t n = vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = vertices[i];
    const Point2 b = vertices[j];
    if (a.y == b.y) continue;
    const double lo = std::min(a.y, b.y);
    const double hi = std::max(a.y, b.y);
    // Candidate rows with one row of slack; the exact test is below.
    const int r_begin = static_cast<int>(std::clamp(std::ceil(lo - 0.5) - 1.0, 0.0, double(height)));
    const int r_end = static_cast<int>(std::clamp(std::ceil(hi - 0.5) + 1.0, 0.0, double(height)));
    for (int r = r_begin; r < r_end; ++r) {
      const double y = r + 0.5;
      if ((a.y > y) != (b.y > y)) {
        crossings[r].push_back((b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x);
      }
    }
  }

  for (int r = 0; r < height; ++r) {
    auto& xs = crossings[r];
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Pixel centre x = c + 0.5 is inside iff xs[k] <= x < xs[k+1].
      const double lo = xs[k];
      const double hi = xs[k + 1];
      if (hi <= 0.0 || lo >= width) continue;
      int c = static_cast<int>(std::max(0.0, std::floor(lo - 0.5)));
      while (c < width && c + 0.5 < lo) ++c;
      for (; c < width && c + 0.5 < hi; ++c) out.set(r, c, true);
    }
  }
  return out;
}

BinaryMask render_boundary_polygon(std::span<const Point2> vertices, int width, int height) {
  if (vertices.size() < 3) fail(ErrorCode::kInvalidArgument, "polygon needs at least 3 vertices");
  std::vector<Point2> pts;
  pts.reserve(vertices.size());
  for (const Point2& v : vertices) {
    if (!v.finite()) fail(ErrorCode::kInvalidArgument, "non-finite polygon vertex");
    if (pts.empty() || !(v == pts.back())) pts.push_back(v);
  }
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  const std::size_t n = pts.size();
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % n];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (n < 3 || area2 == 0.0) return rasterize_polygon(vertices, width, height);

  // Unit outward normal of edge i (from vertex i to i+1).
  const double side = area2 > 0.0 ? 1.0 : -1.0;
  std::vector<Point2> normal(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 d = pts[(i + 1) % n] - pts[i];
    const double len = std::hypot(d.x, d.y);
    normal[i] = Point2{side * d.y / len, -side * d.x / len};
  }
  constexpr double kHalf = 0.5;
  std::vector<Point2> grown(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 n1 = normal[(i + n - 1) % n];
    const Point2 n2 = normal[i];
    // Miter length capped at twice the offset for sharp turns.
    const double denom = std::max(1.0 + n1.x * n2.x + n1.y * n2.y, 0.5);
    grown[i] = pts[i] + (kHalf / denom) * (n1 + n2);
  }
  return rasterize_polygon(grown, width, height);
}

std::vector<Point2> boundary_pixels(const BinaryMask& mask) {
  std::vector<Point2> out;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      for (const auto& [dr, dc] : kNeighbors4) {
        if (!mask.get(r + dr, c + dc)) {
          out.push_back(pixel_center(r, c));
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace bzc
