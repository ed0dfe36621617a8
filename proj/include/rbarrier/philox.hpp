/*
   Copyright 2026 The rbarrier Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#pragma once

#include <array>
#include <cstdint>

namespace rbarrier {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). A pure function of
/// (counter, key); no state is shared between streams.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// Tags separating the independent substreams of a single path.
enum class StreamTag : std::uint32_t {
    joint_gaussian = 1,  // (W, W^H) block
    independent_bm = 2,  // increments of B
    auxiliary = 3,
};

/// Deterministic stream of uniforms/normals keyed by (seed, path, tag).
///
/// The i-th draw of a stream depends only on the key triple and i, so paths
/// can be simulated in any order, on any number of workers.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t path, StreamTag tag) noexcept;

    /// 64 random bits.
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal via Box-Muller; draws come in cached pairs.
    double normal() noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_;
    PhiloxCounter ctr_;
    std::array<std::uint64_t, 2> words_{};
    int word_pos_ = 2;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// SplitMix64 finalizer; used to derive per-row seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

} // namespace rbarrier
