/*
   Copyright 2026 The entropyforge authors

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

#ifndef ENTROPYFORGE_CORE_RANDOM_STREAM_HPP
#define ENTROPYFORGE_CORE_RANDOM_STREAM_HPP

#include <cstdint>
#include <vector>

#include "entropyforge/core/rational.hpp"

namespace entropyforge {

/// Default seed for all deterministic runs; overridable via CLI/env.
inline constexpr uint64_t kDefaultSeed = 20260331ull;

/// splitmix64: tiny, deterministic, platform-independent.
class RandomStream {
  public:
    explicit RandomStream(uint64_t seed) : s_(seed ^ 0x9e3779b97f4a7c15ull) {}

    uint64_t next_u64() {
        s_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] inclusive.
    long next_in(long lo, long hi) {
        return lo + static_cast<long>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    /// Generic small rational: numerator and denominator in [1, 50], avoiding
    /// the values in `exclude` (the orbit-singular values of the map at hand).
    Rat next_small_rational(const std::vector<Rat>& exclude = {}) {
        for (;;) {
            Rat r(next_in(1, 50), next_in(1, 50));
            bool bad = r.is_zero();
            for (const Rat& e : exclude)
                if (r == e) bad = true;
            if (!bad) return r;
        }
    }

  private:
    uint64_t s_;
};

}  // namespace entropyforge

#endif
