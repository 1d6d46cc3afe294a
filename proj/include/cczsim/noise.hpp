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

#ifndef CCZSIM_NOISE_HPP
#define CCZSIM_NOISE_HPP

#include <string>

#include "cczsim/pauli.hpp"
#include "cczsim/rng.hpp"

namespace cczsim {

enum class NoisePosition : uint8_t { BeforeCCZ, AfterCCZ };

struct NoiseConfig {
    double p = 0.0;
    NoisePosition position = NoisePosition::AfterCCZ;
    bool ccz_enabled = true;
    uint64_t seed = 0;

    void validate() const {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("noise probability must lie in [0, 1]");
        }
    }
};

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability out of range: " + std::to_string(p));
    }
}

/// Vector of independent Bernoulli(p) bits.
inline BitVec bernoulli_bits(size_t n, double p, Rng &rng) {
    BitVec out(n);
    if (p <= 0.0) {
        return out;
    }
    for (size_t k = 0; k < n; k++) {
        if (rng.bernoulli(p)) {
            out.flip(k);
        }
    }
    return out;
}

/// Vector of independent fair coins.
inline BitVec random_bits(size_t n, Rng &rng) {
    BitVec out(n);
    auto words = out.words();
    for (auto &w : words) {
        w = rng.next();
    }
    if (n % 64 && !words.empty()) {
        words.back() &= (uint64_t{1} << (n % 64)) - 1;
    }
    return out;
}

/// Sets each X bit of the frame independently with probability 1/2.
inline void random_half_flips(PauliFrame &frame, Rng &rng) { frame.x = random_bits(frame.size(), rng); }

/// Applies X, Y or Z with probability p/3 each on every qubit.
inline void depolarise(PauliFrame &frame, double p, Rng &rng) {
    check_probability(p);
    if (p == 0.0) {
        return;
    }
    for (size_t q = 0; q < frame.size(); q++) {
        if (!rng.bernoulli(p)) {
            continue;
        }
        switch (rng.below(3)) {
            case 0:
                frame.x.flip(q);
                break;
            case 1:
                frame.x.flip(q);
                frame.z.flip(q);
                break;
            default:
                frame.z.flip(q);
                break;
        }
    }
}

inline Syndrome flip_measurements(const Syndrome &s, double p, Rng &rng) {
    check_probability(p);
    Syndrome out = s;
    if (p == 1.0) {
        for (size_t k = 0; k < out.bits.size(); k++) {
            out.bits.flip(k);
        }
        return out;
    }
    out.bits ^= bernoulli_bits(s.bits.size(), p, rng);
    return out;
}

struct Codeword {
    BitVec pattern;
    bool logical = false;
};

/// Random element of the X-stabiliser group, times logical X with probability 1/2 when
/// `with_logical` is set.
inline Codeword random_x_codeword(const CssCode &code, Rng &rng, bool with_logical = true) {
    Codeword out{code.hx.transpose_multiply(random_bits(code.hx.num_rows(), rng)), false};
    if (with_logical && rng.coin()) {
        out.logical = true;
        for (auto q : code.logical_x) {
            out.pattern.flip(q);
        }
    }
    return out;
}

/// Random element of the Z-stabiliser group.
inline BitVec random_z_stabiliser(const CssCode &code, Rng &rng) {
    return code.hz.transpose_multiply(random_bits(code.hz.num_rows(), rng));
}

}  // namespace cczsim

#endif
