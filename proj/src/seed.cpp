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

#include "bzcontour/seed.hpp"

namespace bzc {
namespace {

// splitmix64 finaliser
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                          std::initializer_list<std::uint64_t> path) {
  return derive_seed(base, stream, std::span<const std::uint64_t>(path.begin(), path.size()));
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view stream,
                          std::span<const std::uint64_t> path) {
  // FNV-1a over the stream name.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = mix(base ^ mix(h));
  for (std::uint64_t v : path) state = mix(state ^ mix(v + 0x632be59bd9b4e019ULL));
  return state;
}

}  // namespace bzc
