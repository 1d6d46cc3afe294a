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


#include "cczsim/ccz.hpp"

#include <gtest/gtest.h>

using namespace cczsim;

namespace {

// Independent route to the logical-failure condition: a logical Z fits inside the support
// exactly when the logical X restricted to it is not spanned by restricted X stabilisers.
bool oracle_contains_logical_z(const CssCode &code, const BitVec &support) {
    RowBasis basis(code.n);
    for (size_t r = 0; r < code.hx.num_rows(); r++) {
        basis.insert(code.hx.row_vec(r) & support);
    }
    return !basis.contains(code.logical_x_vec() & support);
}

const MembraneSpec kOctBulk{CodeId::Oct, 0, 3, {2, 2}, {4, 4}};
const MembraneSpec kCub1Linked{CodeId::Cub1, 1, 3, {4, 3}, {5, 5}};

}  // namespace

TEST(ccz, local_rule) {
    auto lat = build_tri_lattice(3);
    TriFrame f = make_tri_frame(*lat);
    apply_transversal_ccz(f);
    for (const auto &c : f) {
        EXPECT_FALSE(c.z.any());
    }
    f[0].x.flip(5);
    f[1].x.flip(5);
    f[1].x.flip(6);
    apply_transversal_ccz(f);
    EXPECT_EQ(f[2].z.ones(), std::vector<uint32_t>{5});
    EXPECT_FALSE(f[0].z.any());
    EXPECT_FALSE(f[1].z.any());
    EXPECT_EQ(f[1].x.popcount(), 2u);
}

TEST(ccz, codeword_patterns_create_no_syndrome) {
    for (int L : {3, 5}) {
        auto lat = build_tri_lattice(L);
        Rng rng({51, static_cast<uint64_t>(L)});
        for (int t = 0; t < 300; t++) {
            TriFrame f = make_tri_frame(*lat);
            for (int c = 0; c < 3; c++) {
                f[c].x = random_x_codeword(lat->codes[c], rng).pattern;
            }
            apply_transversal_ccz(f);
            for (int c = 0; c < 3; c++) {
                ASSERT_FALSE(x_syndrome_of_z_errors(lat->codes[c], f[c]).bits.any());
            }
        }
    }
}

TEST(ccz, rule_is_bilinear) {
    auto lat = build_tri_lattice(5);
    Rng rng({52});
    const size_t n = lat->n();
    for (int t = 0; t < 200; t++) {
        BitVec a = random_bits(n, rng), a2 = random_bits(n, rng), b = random_bits(n, rng), c = random_bits(n, rng);
        BitVec sum = a ^ a2;
        auto lhs = ccz_induced_z({&sum, &b, &c});
        auto r1 = ccz_induced_z({&a, &b, &c});
        auto r2 = ccz_induced_z({&a2, &b, &c});
        // Code 0 is untouched by code 0's pattern; the others are linear in it.
        EXPECT_EQ(lhs[0], r1[0]);
        EXPECT_EQ(lhs[1], r1[1] ^ r2[1]);
        EXPECT_EQ(lhs[2], r1[2] ^ r2[2]);
    }
}

TEST(ccz, boundary_cells_of_single_edge_membrane) {
    auto lat = build_tri_lattice(5);
    auto m = membrane_support(*lat, {CodeId::Oct, 0, 2, {2, 2}, {2, 2}});
    ASSERT_EQ(m.support.popcount(), 1u);
    auto cells = boundary_cells(*lat, CodeId::Oct, m.support);
    ASSERT_EQ(cells.size(), 4u);
    for (const auto &cell : cells) {
        EXPECT_NE(cell.code, CodeId::Oct);
        const auto &code = lat->code(cell.code);
        EXPECT_EQ(code.hx.row(cell.row).size(), 12u);
    }
    EXPECT_TRUE(boundary_cells(*lat, CodeId::Oct, BitVec(lat->n())).empty());
    for (auto c : ALL_CODES) {
        EXPECT_TRUE(boundary_cells(*lat, c, lat->code(c).logical_x_vec()).empty());
    }
}

TEST(ccz, boundary_cells_rejects_open_supports) {
    auto lat = build_tri_lattice(5);
    // Two opposite edges of one cube: that cube's cell sees four flagged faces.
    BitVec bad(lat->n());
    bad.flip(static_cast<size_t>(lat->qubit_at({5, 4, 4})));
    bad.flip(static_cast<size_t>(lat->qubit_at({5, 6, 6})));
    EXPECT_THROW(boundary_cells(*lat, CodeId::Cub1, bad), std::invalid_argument);
}

TEST(ccz, single_membrane_parity_law) {
    auto lat = build_tri_lattice(7);
    Rng rng({53});
    for (const auto &spec : {kOctBulk, kCub1Linked, MembraneSpec{CodeId::Cub2, 2, 3, {2, 2}, {4, 5}}}) {
        auto m = membrane_support(*lat, spec);
        auto st = sample_projection(*lat, {m}, 4000, rng);
        EXPECT_EQ(st.off_boundary_flips, 0u);
        for (int c = 0; c < 3; c++) {
            EXPECT_EQ(st.odd_total_samples[c], 0u);
        }
        for (const auto &b : st.boundaries) {
            EXPECT_EQ(b.odd_samples, 0u);
            EXPECT_FALSE(b.cells.empty());
            for (auto r : b.cells) {
                EXPECT_NEAR(st.frequency(b.code, r), 0.5, 0.035);
            }
        }
        for (const auto &flips : st.flips[static_cast<int>(spec.code)]) {
            EXPECT_EQ(flips, 0u);
        }
    }
}

TEST(ccz, empty_membrane_list_never_flips) {
    auto lat = build_tri_lattice(5);
    Rng rng({54});
    auto st = sample_projection(*lat, {}, 200, rng);
    for (const auto &code_flips : st.flips) {
        for (auto f : code_flips) {
            EXPECT_EQ(f, 0u);
        }
    }
}

TEST(ccz, overlapping_membranes_rejected) {
    auto lat = build_tri_lattice(5);
    Rng rng({55});
    auto m = membrane_support(*lat, {CodeId::Oct, 0, 2, {1, 1}, {2, 2}});
    EXPECT_THROW(sample_projection(*lat, {m, m}, 1, rng), std::invalid_argument);
}

TEST(ccz, linked_membranes_carry_linking_charge) {
    auto lat = build_tri_lattice(7);
    Rng rng({56});
    auto a = membrane_support(*lat, kOctBulk);
    auto g = membrane_support(*lat, kCub1Linked);
    ASSERT_EQ((a.support & g.support).popcount(), 1u);
    auto st = sample_projection(*lat, {a, g}, 4000, rng);
    int checked = 0;
    for (const auto &b : st.boundaries) {
        if (b.code == CodeId::Cub2) {
            EXPECT_EQ(b.odd_samples, st.samples) << "membrane " << b.membrane;
            checked++;
        }
    }
    EXPECT_EQ(checked, 2);
}

TEST(ccz, code_swap_symmetry) {
    auto lat = build_tri_lattice(7);
    Rng rng({57});
    auto m = membrane_support(*lat, kOctBulk);
    auto st = sample_projection(*lat, {m}, 4000, rng);
    double f1 = 0, f2 = 0;
    size_t n1 = 0, n2 = 0;
    for (const auto &b : st.boundaries) {
        for (auto r : b.cells) {
            (b.code == CodeId::Cub1 ? f1 : f2) += st.frequency(b.code, r);
        }
        (b.code == CodeId::Cub1 ? n1 : n2) += b.cells.size();
    }
    ASSERT_EQ(n1, n2);
    EXPECT_NEAR(f1 / n1, f2 / n2, 0.03);
}

TEST(ccz, logical_failure_condition) {
    auto lat = build_tri_lattice(5);
    for (auto c : ALL_CODES) {
        Membrane full{c, lat->code(c).logical_x_vec()};
        EXPECT_TRUE(logical_failure_condition(*lat, full));
    }
    EXPECT_FALSE(logical_failure_condition(*lat, membrane_support(*lat, {CodeId::Oct, 0, 2, {1, 1}, {1, 1}})));
    EXPECT_FALSE(logical_failure_condition(*lat, membrane_support(*lat, {CodeId::Cub1, 1, 0, {1, 1}, {2, 2}})));
    // A strip crossing the lattice in one transverse direction only.
    auto strip = membrane_support(*lat, {CodeId::Oct, 0, 0, {0, 1}, {4, 2}});
    EXPECT_FALSE(logical_failure_condition(*lat, strip));
    EXPECT_TRUE(contains_logical_z(lat->code(CodeId::Cub1), strip.support) ||
                contains_logical_z(lat->code(CodeId::Cub2), strip.support));
}

TEST(ccz, logical_containment_agrees_with_cleaning_route) {
    auto lat = build_tri_lattice(3);
    Rng rng({58});
    for (const auto &code : lat->codes) {
        for (int t = 0; t < 300; t++) {
            BitVec s = bernoulli_bits(code.n, 0.2 + 0.6 * rng.uniform(), rng);
            if (rng.below(4) == 0) {
                s |= code.logical_z_vec();
            }
            ASSERT_EQ(contains_logical_z(code, s), oracle_contains_logical_z(code, s));
        }
    }
}
