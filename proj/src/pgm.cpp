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

#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "bzcontour/error.hpp"
#include "bzcontour/mask.hpp"
#include "file_util.hpp"

namespace bzc {
namespace detail {

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << path << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter++;
  const std::string tmp = tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot create " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorCode::kIo, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot rename onto " + path);
  }
}

}  // namespace detail

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal.
  long next_number() {
    skip_separators();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      fail(ErrorCode::kFormat, "PGM header: expected a number");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) fail(ErrorCode::kFormat, "PGM header: number too large");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail(ErrorCode::kFormat, "PGM header: missing separator before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;  // past the magic
};

}  // namespace

BinaryMask load_mask(std::span<const std::uint8_t> bytes, int threshold) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    fail(ErrorCode::kFormat, "not a binary PGM (missing P5 magic)");
  }
  HeaderReader header(bytes);
  const long width = header.next_number();
  const long height = header.next_number();
  const long maxval = header.next_number();
  if (width < 1 || height < 1) fail(ErrorCode::kFormat, "PGM header: zero dimension");
  if (maxval < 1 || maxval > 255) fail(ErrorCode::kFormat, "PGM header: only 8-bit maxval supported");
  const std::size_t offset = header.raster_offset();
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - offset < n) fail(ErrorCode::kFormat, "PGM raster truncated");

  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = bytes[offset + i] > threshold ? 1 : 0;
  return BinaryMask(static_cast<int>(width), static_cast<int>(height), std::move(bits));
}

std::vector<std::uint8_t> encode_pgm(const BinaryMask& mask) {
  const std::string header =
      "P5\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + mask.bits().size());
  for (std::uint8_t b : mask.bits()) out.push_back(b ? 255 : 0);
  return out;
}

BinaryMask read_mask_file(const std::string& path, int threshold) {
  const auto bytes = detail::read_file_bytes(path);
  return load_mask(bytes, threshold);
}

void write_mask_file(const BinaryMask& mask, const std::string& path) {
  const auto bytes = encode_pgm(mask);
  detail::write_file_atomic(
      path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace bzc
