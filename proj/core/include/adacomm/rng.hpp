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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace adacomm {

/// Stream tags used when deriving substreams, so that e.g. worker 3's
/// gradient noise never collides with the delay sampler's stream 3.
enum class StreamTag : std::uint64_t {
  kWorker = 0x776f726b,
  kDelay = 0x64656c61,
  kSample = 0x73616d70,
  kData = 0x64617461,
  kInit = 0x696e6974,
};

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator so it plugs into
/// the <random> distributions.
///
/// Substreams are keyed by (seed, path...) through a hash, which gives every
/// (worker, round) or sample index its own independent stream. Results then
/// do not depend on the order in which streams are consumed.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept : state_(seed) {}

  static RngStream substream(std::uint64_t seed, StreamTag tag,
                             std::initializer_list<std::uint64_t> path = {});

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

 private:
  std::uint64_t state_;
};

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace adacomm
