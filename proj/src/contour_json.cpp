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

#include "bzcontour/contour_json.hpp"

#include <json.hpp>

#include "bzcontour/error.hpp"
#include "file_util.hpp"

namespace bzc {

using nlohmann::json;

std::string contour_to_json(const PiecewiseContour& contour) {
  json segments = json::array();
  for (const auto& segment : contour.segments()) {
    json points = json::array();
    for (const Point2& p : segment.control_points()) points.push_back({p.x, p.y});
    segments.push_back({{"control_points", std::move(points)}});
  }
  json doc = {{"version", kContourJsonVersion},
              {"width", contour.width()},
              {"height", contour.height()},
              {"degree", contour.degree()},
              {"segments", std::move(segments)}};
  return doc.dump(2) + "\n";
}

PiecewiseContour contour_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kFormat, std::string("contour JSON parse error: ") + e.what());
  }
  auto require_int = [&](const char* key) {
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_number_integer()) {
      fail(ErrorCode::kFormat, std::string("contour JSON: missing integer field '") + key + "'");
    }
    return doc[key].get<long long>();
  };
  if (require_int("version") != kContourJsonVersion) {
    fail(ErrorCode::kFormat, "contour JSON: unsupported version");
  }
  const long long width = require_int("width");
  const long long height = require_int("height");
  const long long degree = require_int("degree");
  if (width < 1 || height < 1 || width > (1 << 24) || height > (1 << 24)) {
    fail(ErrorCode::kFormat, "contour JSON: invalid frame size");
  }
  if (degree < 1 || degree > kMaxDegree) fail(ErrorCode::kFormat, "contour JSON: invalid degree");
  const json& segs = doc.contains("segments") ? doc["segments"] : json();
  if (!segs.is_array() || segs.size() != 4) {
    fail(ErrorCode::kFormat, "contour JSON: 'segments' must be an array of 4");
  }

  std::array<BezierSegment, 4> segments;
  for (int k = 0; k < 4; ++k) {
    const json& s = segs[k];
    if (!s.is_object() || !s.contains("control_points") || !s["control_points"].is_array() ||
        s["control_points"].size() != static_cast<std::size_t>(degree) + 1) {
      fail(ErrorCode::kFormat, "contour JSON: segment " + std::to_string(k) +
                                   " must have degree+1 control points");
    }
    std::vector<Point2> pts;
    for (const json& p : s["control_points"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        fail(ErrorCode::kFormat, "contour JSON: control points must be [x, y] pairs");
      }
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
      segments[k] = BezierSegment(std::move(pts));
    } catch (const Error& e) {
      fail(ErrorCode::kFormat, std::string("contour JSON: ") + e.what());
    }
  }
  try {
    return PiecewiseContour(std::move(segments), static_cast<int>(width),
                            static_cast<int>(height));
  } catch (const Error& e) {
    fail(ErrorCode::kFormat, std::string("contour JSON: ") + e.what());
  }
}

PiecewiseContour read_contour_file(const std::string& path) {
  const auto bytes = detail::read_file_bytes(path);
  return contour_from_json(std::string(bytes.begin(), bytes.end()));
}

void write_contour_file(const PiecewiseContour& contour, const std::string& path) {
  detail::write_file_atomic(path, contour_to_json(contour));
}

}  // namespace bzc
