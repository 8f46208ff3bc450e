// Copyright 2026 The qest Authors
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

#ifndef QEST_RNG_HPP
#define QEST_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace qest {

/// Default seed used by the fuzzing commands when QEST_SEED is not set.
inline constexpr std::uint64_t kDefaultFuzzSeed = 0xC0FFEE;

/// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
/// generators", OOPSLA 2014).  Counter-based: the state is a counter
/// advanced by the golden-ratio increment and each output is a bijective
/// finalizer of it, so streams derived from distinct seeds never overlap
/// in practice.  Chosen for bit-reproducible fuzzing across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the second leg of each pair is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    /// Derive the seed of an independent substream. Used to make per-sample
    /// streams that do not depend on evaluation order (thread-safe fuzzing).
    static std::uint64_t substream(std::uint64_t base, std::uint64_t index) {
        SplitMix64 g(base ^ (0x632be59bd9b4e019ULL * (index + 1)));
        g.next();
        return g.next();
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace qest

#endif // QEST_RNG_HPP
