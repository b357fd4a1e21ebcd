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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bzcontour/bezier.hpp"

namespace bzc {

/// Row-major binary image. Pixel (row r, col c) covers the unit square with
/// centre (c + 0.5, r + 0.5) in continuous coordinates.
class BinaryMask {
 public:
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int row, int col) const { return bits_[index(row, col)] != 0; }
  /// Out-of-frame reads are background.
  bool get(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_ && at(row, col);
  }
  void set(int row, int col, bool value) { bits_[index(row, col)] = value ? 1 : 0; }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Closed loop of boundary pixel centres.
struct BoundaryTrace {
  std::vector<Point2> points;
  bool closed = true;
};

/// Binary PGM (P5, maxval <= 255). Pixels strictly above `threshold` are
/// foreground.
BinaryMask load_mask(std::span<const std::uint8_t> bytes, int threshold = 127);
/// Foreground as 255, background as 0.
std::vector<std::uint8_t> encode_pgm(const BinaryMask& mask);

BinaryMask read_mask_file(const std::string& path, int threshold = 127);
/// Writes via a temporary file and rename.
void write_mask_file(const BinaryMask& mask, const std::string& path);

/// Connected foreground components, labelled 1.. in raster order of their
/// first pixel. Background is 0.
std::vector<int> label_components(const BinaryMask& mask, int connectivity, int* count);
int count_components(const BinaryMask& mask, int connectivity);

BinaryMask largest_component(const BinaryMask& mask, int connectivity = 8);

/// Opening followed by closing with a digital disc of the given radius,
/// evaluated as if the frame were embedded in an infinite background.
BinaryMask morphological_smooth(const BinaryMask& mask, int radius);

/// Offsets (drow, dcol) of the digital disc: drow^2 + dcol^2 <= (r + 0.5)^2.
std::vector<std::pair<int, int>> disc_offsets(int radius);

/// Outer-border following over 8-connected foreground starting from the
/// first foreground pixel in raster order. The first step goes down the left
/// side, so extreme points are met in the order top, leftmost, bottom,
/// rightmost. Pixels revisited by thin parts appear once, at first visit.
BoundaryTrace trace_boundary(const BinaryMask& mask);

/// Even-odd fill; a pixel is set iff its centre is inside the polygon.
BinaryMask rasterize_polygon(std::span<const Point2> vertices, int width, int height);

/// Mask bounded by a polygon that runs through boundary pixel centres. Each
/// edge is pushed half a pixel outward (mitred joins) before the centre fill,
/// so a traced axis-aligned block renders back to itself.
BinaryMask render_boundary_polygon(std::span<const Point2> vertices, int width, int height);

/// Foreground pixels that have a background 4-neighbour or touch the frame edge.
std::vector<Point2> boundary_pixels(const BinaryMask& mask);

}  // namespace bzc
