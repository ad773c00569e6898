// Copyright 2026 The edgebo Authors.
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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace edgebo {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives the seed of an independent sub-stream from a root seed, so that
/// e.g. the environment trajectory does not change when the number of draws
/// consumed by the acquisition step changes.
inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t stream_id) {
    return mix64(root ^ mix64(stream_id ^ 0x5bf03635ULL));
}

/// Stream identifiers used by the experiment harness.
enum class Stream : std::uint64_t {
    environment = 1,
    exp3 = 2,
    acquisition = 3,
    hyperfit = 4,
    bco = 5,
    mab_power = 6,
    mab_freq = 7,
};

inline std::uint64_t substream_seed(std::uint64_t root, Stream s) {
    return substream_seed(root, static_cast<std::uint64_t>(s));
}

/// Deterministic random source. std::normal_distribution and
/// std::uniform_real_distribution are implementation-defined, so the
/// distributions are generated here directly from the mt19937_64 stream;
/// identical seeds give bit-identical sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal deviate (Marsaglia polar method, one value cached).
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * f;
        has_cache_ = true;
        return u * f;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Index sampled from a discrete distribution given by `probs`
    /// (assumed to sum to one; the last index absorbs round-off).
    template <typename Vec>
    int categorical(const Vec& probs) {
        const double u = uniform();
        double acc = 0.0;
        const int n = static_cast<int>(probs.size());
        for (int i = 0; i < n; ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        return n - 1;
    }

private:
    std::mt19937_64 gen_;
    bool has_cache_ = false;
    double cache_ = 0.0;
};

}  // namespace edgebo
