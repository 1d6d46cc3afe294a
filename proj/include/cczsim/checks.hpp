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

// Structural checks over a built lattice. Each returns a violation count.

#ifndef CCZSIM_CHECKS_HPP
#define CCZSIM_CHECKS_HPP

#include <set>

#include "cczsim/lattice.hpp"

namespace cczsim {

inline size_t count_css_violations(const SparseMatrix &hx, const SparseMatrix &hz) {
    size_t bad = 0;
    for (size_t r = 0; r < hz.num_rows(); r++) {
        std::map<uint32_t, int> overlap;
        for (auto q : hz.row(r)) {
            for (auto x : hx.col(q)) {
                overlap[x]++;
            }
        }
        for (const auto &kv : overlap) {
            bad += kv.second & 1;
        }
    }
    return bad;
}
inline size_t count_css_violations(const CssCode &code) { return count_css_violations(code.hx, code.hz); }
inline size_t count_css_violations_2d(const Code2D &code) { return count_css_violations(code.hx, code.hz); }

/// Pairs of X-type supports from two codes whose sitewise intersection is not in the
/// Z-stabiliser space of the third code (or, for two logicals, is not a logical Z there).
inline size_t count_transversality_violations(const TriLattice &lat) {
    const size_t n = lat.n();
    size_t bad = 0;
    const int triples[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
    for (const auto &t : triples) {
        const CssCode &ci = lat.codes[t[0]];
        const CssCode &cj = lat.codes[t[1]];
        const CssCode &ck = lat.codes[t[2]];
        RowBasis stab = row_basis_of(ck.hz);
        RowBasis stab_and_logical = stab;
        stab_and_logical.insert(ck.logical_z_vec());

        // Index nx is the logical of each code.
        const uint32_t li = static_cast<uint32_t>(ci.hx.num_rows());
        const uint32_t lj = static_cast<uint32_t>(cj.hx.num_rows());
        auto support_i = [&](uint32_t r) -> const std::vector<uint32_t> & { return r == li ? ci.logical_x : ci.hx.row(r); };
        BitVec lxj = cj.logical_x_vec();
        for (uint32_t a = 0; a <= li; a++) {
            const auto &sa = support_i(a);
            std::set<uint32_t> partners;
            for (auto q : sa) {
                for (auto r : cj.hx.col(q)) {
                    partners.insert(r);
                }
                if (lxj[q]) {
                    partners.insert(lj);
                }
            }
            BitVec va = BitVec::from_indices(n, sa);
            for (auto b : partners) {
                BitVec inter = va & (b == lj ? lxj : cj.hx.row_vec(b));
                bool both_logical = a == li && b == lj;
                bool ok = both_logical ? (!stab.contains(inter) && stab_and_logical.contains(inter)) : stab.contains(inter);
                bad += !ok;
            }
        }
    }
    return bad;
}

/// Z stabilisers that are neither contained in the outer set nor meet it in at most one qubit.
/// With `strict`, containment does not excuse a row.
inline size_t count_admissibility_violations(const CssCode &code, bool strict) {
    size_t bad = 0;
    for (const auto &row : code.hz.rows()) {
        size_t on_outer = 0;
        for (auto q : row) {
            on_outer += code.is_outer[q];
        }
        bool contained = on_outer == row.size();
        if (on_outer > 1 && (strict || !contained)) {
            bad++;
        }
    }
    return bad;
}

}  // namespace cczsim

#endif
