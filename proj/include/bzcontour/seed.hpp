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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace bzc {

/// Deterministic child seed for a named stream and a position within it, so
/// that e.g. adding images to a batch leaves every other image's draws alone.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                          std::initializer_list<std::uint64_t> path = {});
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                          std::span<const std::uint64_t> path);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace bzc
