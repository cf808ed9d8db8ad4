// Copyright 2026 The spinmur Authors
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

// Seeded reproducible randomness. The generator is splitmix64 (Steele,
// Lea & Flood's SplittableRandom finalizer), chosen because the algorithm is
// tiny, published, and trivially reimplementable, so seeds documented in
// reports mean the same stream everywhere. Derived seeds for shards and
// restarts are plain stream draws, making every parallel decomposition
// reproduce the serial one.

#include <cstdint>

#include "spinmur/geometry.hpp"

namespace spinmur {

/// splitmix64: 64-bit state, one additive constant, two xor-shift-multiplies.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform direction on the unit sphere (area measure).
    Vec3 unit_vector() {
        double cz = uniform(-1.0, 1.0);
        double phi = uniform(0.0, 6.283185307179586476925287);
        double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
        return {sz * std::cos(phi), sz * std::sin(phi), cz};
    }

    /// Uniform point in the closed unit ball (rejection-free via radius CDF).
    Vec3 ball_point() {
        double radius = std::cbrt(next_double());
        return radius * unit_vector();
    }

    /// Derived seed for shard/restart `index` of stream `seed`: the
    /// (index+1)-th draw of the parent stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed);
        std::uint64_t out = 0;
        for (std::uint64_t i = 0; i <= index; ++i) {
            out = g.next_u64();
        }
        return out;
    }
};

/// Name of the generator algorithm, echoed in report metadata.
inline constexpr const char *kRngName = "splitmix64";

}  // namespace spinmur
