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


#ifndef CCZSIM_CCZ_HPP
#define CCZSIM_CCZ_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "cczsim/noise.hpp"
#include "cczsim/pauli.hpp"

namespace cczsim {

/// Z errors produced in each code by commuting the transversal CCZ past the X patterns
/// `x`: code k receives x_i AND x_j for the other two codes i, j.
inline std::array<BitVec, 3> ccz_induced_z(const std::array<const BitVec *, 3> &x) {
    return {*x[1] & *x[2], *x[0] & *x[2], *x[0] & *x[1]};
}

/// Applies the transversal CCZ to a frame whose X components hold the full X patterns
/// (codeword plus errors). X components are unchanged.
inline void apply_transversal_ccz(TriFrame &frame) {
    auto induced = ccz_induced_z({&frame[0].x, &frame[1].x, &frame[2].x});
    for (int k = 0; k < 3; k++) {
        frame[k].z ^= induced[k];
    }
}

/// Rectangular X membrane.
///
/// Octahedral code: the edges along `normal` crossing the plane `normal = plane + 1/2`,
/// at the cubic vertices (u, v) with lo <= (u, v) <= hi in the two other axes.
/// Cuboctahedral codes: every edge of the unit squares [lo, hi) in the plane
/// `normal = plane`.
struct MembraneSpec {
    CodeId code;
    int normal;
    int plane;
    std::array<int, 2> lo;
    std::array<int, 2> hi;
};

/// An X membrane of one code as a qubit support.
struct Membrane {
    CodeId code;
    BitVec support;
};

inline Membrane membrane_support(const TriLattice &lat, const MembraneSpec &spec) {
    if (spec.normal < 0 || spec.normal > 2) {
        throw std::invalid_argument("membrane normal must be 0, 1 or 2");
    }
    const int e = (spec.normal + 1) % 3, f = (spec.normal + 2) % 3;
    BitVec sup(lat.n());
    auto put = [&](int pn, int pe, int pf) {
        Coord c{};
        c[spec.normal] = pn;
        c[e] = pe;
        c[f] = pf;
        int32_t q = lat.qubit_at(c);
        if (q >= 0) {
            sup.set(static_cast<size_t>(q), true);
        }
    };
    if (spec.code == CodeId::Oct) {
        for (int u = spec.lo[0]; u <= spec.hi[0]; u++) {
            for (int v = spec.lo[1]; v <= spec.hi[1]; v++) {
                put(2 * spec.plane + 1, 2 * u, 2 * v);
            }
        }
    } else {
        for (int u = spec.lo[0]; u < spec.hi[0]; u++) {
            for (int v = spec.lo[1]; v <= spec.hi[1]; v++) {
                put(2 * spec.plane, 2 * u + 1, 2 * v);
            }
        }
        for (int u = spec.lo[0]; u <= spec.hi[0]; u++) {
            for (int v = spec.lo[1]; v < spec.hi[1]; v++) {
                put(2 * spec.plane, 2 * u, 2 * v + 1);
            }
        }
    }
    return {spec.code, std::move(sup)};
}

/// Sampled outcome statistics of the X stabilisers after a CCZ acts on membranes.
struct OutcomeStats {
    struct Boundary {
        size_t membrane;
        CodeId code;
        std::vector<uint32_t> cells;  // Hx rows of `code`
        uint64_t odd_samples = 0;
    };

    uint64_t samples = 0;
    std::array<std::vector<uint64_t>, 3> flips;  // per code, per Hx row
    std::vector<Boundary> boundaries;
    std::array<uint64_t, 3> odd_total_samples{};  // samples with an odd number of flags in the code
    uint64_t off_boundary_flips = 0;              // flags on cells outside every boundary

    double frequency(CodeId c, uint32_t row) const {
        return samples ? static_cast<double>(flips[static_cast<int>(c)][row]) / static_cast<double>(samples) : 0.0;
    }
};

/// Draws random codeword patterns for all three codes, adds the membranes, applies the
/// CCZ and tallies the X syndromes of the induced Z errors.
inline OutcomeStats sample_projection(const TriLattice &lat, const std::vector<Membrane> &membranes, uint64_t samples,
                                      Rng &rng) {
    std::array<int, 3> used{};
    OutcomeStats st;
    std::array<std::vector<uint8_t>, 3> on_boundary;
    for (int c = 0; c < 3; c++) {
        st.flips[c].assign(lat.codes[c].hx.num_rows(), 0);
        on_boundary[c].assign(lat.codes[c].hx.num_rows(), 0);
    }
    for (size_t m = 0; m < membranes.size(); m++) {
        const auto &mem = membranes[m];
        if (used[static_cast<int>(mem.code)]++) {
            throw std::invalid_argument("at most one membrane per code");
        }
        auto cells = boundary_cells(lat, mem.code, mem.support);
        for (auto other : ALL_CODES) {
            if (other == mem.code) {
                continue;
            }
            OutcomeStats::Boundary b{m, other, {}, 0};
            for (const auto &cell : cells) {
                if (cell.code == other) {
                    b.cells.push_back(cell.row);
                    on_boundary[static_cast<int>(other)][cell.row] = 1;
                }
            }
            st.boundaries.push_back(std::move(b));
        }
    }
    for (uint64_t s = 0; s < samples; s++) {
        TriFrame frame = make_tri_frame(lat);
        for (int c = 0; c < 3; c++) {
            frame[c].x = random_x_codeword(lat.codes[c], rng).pattern;
        }
        for (const auto &mem : membranes) {
            frame[static_cast<int>(mem.code)].x ^= mem.support;
        }
        apply_transversal_ccz(frame);
        std::array<BitVec, 3> synd;
        for (int c = 0; c < 3; c++) {
            synd[c] = x_syndrome_of_z_errors(lat.codes[c], frame[c]).bits;
            auto ones = synd[c].ones();
            for (auto r : ones) {
                st.flips[c][r]++;
                st.off_boundary_flips += !on_boundary[c][r];
            }
            st.odd_total_samples[c] += ones.size() & 1;
        }
        for (auto &b : st.boundaries) {
            b.odd_samples += synd[static_cast<int>(b.code)].parity_at(b.cells);
        }
        st.samples++;
    }
    return st;
}

/// Whether `support` contains a representative of the logical Z of `code`: the logical
/// restricted to the complement must lie in the span of the Z stabilisers restricted there.
inline bool contains_logical_z(const CssCode &code, const BitVec &support) {
    BitVec outside(code.n);
    for (size_t q = 0; q < code.n; q++) {
        if (!support[q]) {
            outside.flip(q);
        }
    }
    RowBasis basis(code.n);
    for (size_t r = 0; r < code.hz.num_rows(); r++) {
        basis.insert(code.hz.row_vec(r) & outside);
    }
    return basis.contains(code.logical_z_vec() & outside);
}

/// A CCZ acting on the X membrane can cause a logical error only if the membrane holds
/// logical Z representatives of both other codes.
inline bool logical_failure_condition(const TriLattice &lat, const Membrane &membrane) {
    for (auto other : ALL_CODES) {
        if (other != membrane.code && !contains_logical_z(lat.code(other), membrane.support)) {
            return false;
        }
    }
    return true;
}

}  // namespace cczsim

#endif
