// Copyright 2026 The qdb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>

namespace qdb {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// "splitmix64-ctr": a counter-based generator. Output i of a stream is
/// mix64(key + i * golden), where the key is derived from (seed, stream) by
/// the same finaliser. Any substream can be reconstructed from its index
/// alone, so shot i of a run draws the same numbers whichever engine or
/// worker executes it.
///
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
        : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Independent child stream; does not advance this generator.
    CounterRng substream(std::uint64_t index) const noexcept {
        CounterRng child;
        child.key_ = mix64(key_ ^ mix64(index ^ 0xd1b54a32d192ed03ULL));
        return child;
    }

    std::uint64_t counter() const noexcept { return counter_; }

 private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace qdb
