// Copyright (c) 2026 The adacomm Authors. All Rights Reserved.
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

#include "adacomm/rng.hpp"

namespace adacomm {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream RngStream::substream(std::uint64_t seed, StreamTag tag,
                               std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed + kGolden);
  key = mix64(key ^ static_cast<std::uint64_t>(tag));
  for (std::uint64_t p : path) {
    key = mix64(key + kGolden + p);
  }
  return RngStream(key);
}

RngStream::result_type RngStream::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::uniform01() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace adacomm
