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

#include <string>

#include "bzcontour/contour_fit.hpp"

namespace bzc {

inline constexpr int kContourJsonVersion = 1;

/// {"version":1,"width":W,"height":H,"degree":n,
///  "segments":[{"control_points":[[x,y],...]}, x4]}
/// Doubles are written in the shortest form that parses back to the same
/// value, so a write/read cycle is lossless.
std::string contour_to_json(const PiecewiseContour& contour);

/// Throws Error(kFormat) on schema violations, including a broken chain.
PiecewiseContour contour_from_json(const std::string& text);

PiecewiseContour read_contour_file(const std::string& path);
void write_contour_file(const PiecewiseContour& contour, const std::string& path);

}  // namespace bzc
