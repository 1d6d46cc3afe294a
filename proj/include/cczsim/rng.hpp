// Copyright 2026 The cczsim Authors
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

#ifndef CCZSIM_RNG_HPP
#define CCZSIM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace cczsim {

/// 64-bit Mersenne Twister with portable derived draws. The standard distributions are
/// avoided because their output is implementation-defined.
class Rng {
   public:
    explicit Rng(std::initializer_list<uint64_t> key) {
        std::vector<uint32_t> words;
        for (auto k : key) {
            words.push_back(static_cast<uint32_t>(k));
            words.push_back(static_cast<uint32_t>(k >> 32));
        }
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }

    uint64_t next() { return engine_(); }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    bool coin() { return engine_() >> 63; }
    /// Uniform integer in [0, bound).
    uint64_t below(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

   private:
    std::mt19937_64 engine_;
};

/// Stream for one trial of one (L, p) point.
inline Rng trial_rng(uint64_t seed, int L, size_t p_index, uint64_t trial) {
    return Rng({seed, static_cast<uint64_t>(L), static_cast<uint64_t>(p_index), trial});
}

}  // namespace cczsim

#endif
