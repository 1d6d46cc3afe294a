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

#ifndef CCZSIM_PAULI_HPP
#define CCZSIM_PAULI_HPP

#include <array>
#include <stdexcept>

#include "cczsim/lattice.hpp"

namespace cczsim {

/// X and Z error indicators of one code. Y sets both.
struct PauliFrame {
    BitVec x;
    BitVec z;

    PauliFrame() = default;
    explicit PauliFrame(size_t n) : x(n), z(n) {}
    size_t size() const { return x.size(); }
};

using TriFrame = std::array<PauliFrame, 3>;

inline TriFrame make_tri_frame(const TriLattice &lat) {
    return {PauliFrame(lat.n()), PauliFrame(lat.n()), PauliFrame(lat.n())};
}

enum class CheckFamily : uint8_t { ZChecks, XChecks };
enum class Basis : uint8_t { X, Z };

struct Syndrome {
    CheckFamily family;
    BitVec bits;
};

inline void check_frame(const CssCode &code, const PauliFrame &frame) {
    if (frame.x.size() != code.n || frame.z.size() != code.n) {
        throw std::invalid_argument("frame size does not match code");
    }
}

inline Syndrome z_syndrome_of_x_errors(const CssCode &code, const PauliFrame &frame) {
    check_frame(code, frame);
    return {CheckFamily::ZChecks, code.hz.multiply(frame.x)};
}

inline Syndrome x_syndrome_of_z_errors(const CssCode &code, const PauliFrame &frame) {
    check_frame(code, frame);
    return {CheckFamily::XChecks, code.hx.multiply(frame.z)};
}

/// Whether the `basis` component of the frame acts trivially on the logical qubit.
/// The Z component is tested against logical X and vice versa. The component must have
/// trivial syndrome.
inline bool commutes_with_logical(const CssCode &code, const PauliFrame &frame, Basis basis) {
    check_frame(code, frame);
    if (basis == Basis::Z) {
        if (code.hx.multiply(frame.z).any()) {
            throw std::logic_error("commutes_with_logical called on a Z component with nontrivial syndrome");
        }
        return !frame.z.parity_at(code.logical_x);
    }
    if (code.hz.multiply(frame.x).any()) {
        throw std::logic_error("commutes_with_logical called on an X component with nontrivial syndrome");
    }
    return !frame.x.parity_at(code.logical_z);
}

}  // namespace cczsim

#endif
