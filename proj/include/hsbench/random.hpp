// Copyright 2026 The hsbench Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace hsbench {

/// Seeded pseudo-random stream.
///
/// Only the raw 64-bit output of mt19937_64 is used; every derived variate
/// (uniform, normal, bounded integer) is computed here rather than through
/// <random> distributions, whose algorithms are implementation-defined. This
/// keeps a given seed bit-identical across standard libraries.
///
/// Independent workers never share a stream: they call split() with their
/// task index, which derives a child seed deterministically.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Child stream for task `index`. Same (seed, index) gives the same child.
    [[nodiscard]] RandomSource split(std::uint64_t index) const {
        return RandomSource(mix(seed_ ^ mix(index + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), unbiased (rejection on the top range).
    std::uint64_t index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller; one value per call.
    double normal() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Number of failures before the first success of a Bernoulli(p) sequence.
    std::uint64_t geometric(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return UINT64_MAX;
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        const double k = std::floor(std::log(u) / std::log1p(-p));
        return k >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(k);
    }

    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(values[i - 1], values[j]);
        }
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace hsbench
