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


#ifndef CCZSIM_JUMP_HPP
#define CCZSIM_JUMP_HPP

#include <stdexcept>

#include "cczsim/decoders.hpp"
#include "cczsim/noise.hpp"

namespace cczsim {

/// X-basis outcomes of the inner qubits, bit set for -1. Stored over all qubits of the
/// code with the outer bits held at zero.
struct MeasurementRecord {
    BitVec outcomes;
    bool corrected = false;
    // Simulation side: the Z pattern the projection leaves on the outer qubits.
    BitVec outer_pattern;
};

/// Measures the inner qubits: the outcomes are a random Z-stabiliser element restricted
/// to the inner qubits, flipped by the frame's Z errors there.
inline MeasurementRecord measure_out_inner(const CssCode &code, const PauliFrame &frame, Rng &rng) {
    check_frame(code, frame);
    BitVec g = random_z_stabiliser(code, rng);
    MeasurementRecord rec{g ^ frame.z, false, BitVec(code.n)};
    for (auto q : code.outer) {
        rec.outcomes.set(q, false);
        rec.outer_pattern.set(q, g[q]);
    }
    return rec;
}

/// X-check syndrome from the inner outcomes alone; outer qubits count as +1.
inline Syndrome reconstruct_x_syndrome(const CssCode &code, const MeasurementRecord &rec) {
    return {CheckFamily::XChecks, code.hx.multiply(rec.outcomes)};
}

/// Flips the recorded outcomes on the support of an inner-only correction.
inline void apply_inner_correction(const CssCode &code, MeasurementRecord &rec, const BitVec &correction) {
    for (auto q : correction.ones()) {
        if (code.is_outer[q]) {
            throw std::invalid_argument("inner correction touches an outer qubit");
        }
        rec.outcomes.flip(q);
    }
    rec.corrected = true;
}

/// Z correction on the outer qubits (indexed as in the 2D code) and the number of
/// layers the sweep visited.
struct SweepResult {
    BitVec correction;
    size_t layers = 0;
};

namespace detail {

class Sweep {
   public:
    Sweep(const CssCode &code, const MeasurementRecord &rec) : code_(code), w_(rec.outcomes) {}

    void apply(int32_t gen) {
        for (auto q : code_.hz.row(static_cast<size_t>(gen))) {
            w_.flip(q);
        }
    }
    bool minus(int32_t q) const { return q >= 0 && w_[static_cast<size_t>(q)]; }
    const BitVec &working() const { return w_; }
    void require_clear(const std::vector<uint32_t> &layer) const {
        for (auto q : layer) {
            if (w_[q]) {
                throw std::runtime_error("measurement record is not a Z-stabiliser restriction");
            }
        }
    }
    // Pushes every -1 on a single-qubit layer down with one of its candidate generators.
    void push_layer(const std::vector<uint32_t> &layer, Rng *rng) {
        for (auto q : layer) {
            if (!w_[q]) {
                continue;
            }
            const auto &g = code_.jump.push_generators[q];
            if (g[0] < 0) {
                throw std::runtime_error("measurement record is not a Z-stabiliser restriction");
            }
            bool second = g[1] >= 0 && rng && rng->coin();
            apply(second ? g[1] : g[0]);
        }
    }
    // Clears a quadruple by one of the generator subsets reproducing its -1 pattern,
    // chosen uniformly when several exist.
    void clear_quad(const Quadruple &quad, Rng &rng) {
        unsigned target = 0;
        for (int i = 0; i < 4; i++) {
            target |= static_cast<unsigned>(minus(quad.qubits[i])) << i;
        }
        if (target == 0) {
            return;
        }
        unsigned fixes[16];
        int count = 0;
        for (unsigned s = 1; s < 16; s++) {
            unsigned effect = 0;
            bool ok = true;
            for (int i = 0; i < 4 && ok; i++) {
                if (!((s >> i) & 1)) {
                    continue;
                }
                ok = quad.gens[i] >= 0;
                // Generator i covers qubits i-1 and i.
                for (int j : {(i + 3) % 4, i}) {
                    if (quad.qubits[j] >= 0) {
                        effect ^= 1u << j;
                    }
                }
            }
            if (ok && effect == target) {
                fixes[count++] = s;
            }
        }
        if (count == 0) {
            throw std::runtime_error("measurement record is not a Z-stabiliser restriction");
        }
        unsigned s = fixes[count == 1 ? 0 : rng.below(static_cast<uint64_t>(count))];
        for (int i = 0; i < 4; i++) {
            if ((s >> i) & 1) {
                apply(quad.gens[i]);
            }
        }
    }
    SweepResult finish(size_t layers) const {
        SweepResult out{BitVec(code_.code2d.n), layers};
        for (size_t k = 0; k < code_.outer.size(); k++) {
            out.correction.set(k, w_[code_.outer[k]]);
        }
        return out;
    }

   private:
    const CssCode &code_;
    BitVec w_;
};

}  // namespace detail

/// Sweeps the octahedral code from the far boundary to the collapse boundary, pushing
/// each -1 outcome down with the vertical square beneath it.
inline SweepResult octahedral_sweep(const CssCode &code, const MeasurementRecord &rec) {
    if (code.id != CodeId::Oct) {
        throw std::invalid_argument("octahedral sweep needs the octahedral code");
    }
    const JumpPlan &plan = code.jump;
    detail::Sweep sw(code, rec);
    size_t visited = 0;
    for (size_t li = 0; li < plan.layers.size(); li++, visited++) {
        switch (plan.layer_kind[li]) {
            case LayerKind::Single:
                sw.push_layer(plan.layers[li], nullptr);
                break;
            case LayerKind::Verify:
                sw.require_clear(plan.layers[li]);
                break;
            case LayerKind::Outer:
                break;
            case LayerKind::Quad:
                throw std::logic_error("octahedral plan has a quadruple layer");
        }
    }
    return sw.finish(visited);
}

/// Sweeps a cuboctahedral code: single-qubit layers push each -1 down with one of the
/// two candidate triangles at random, quadruple layers clear each face of four in-plane
/// edges with adjacent triangle pairs.
inline SweepResult cuboctahedral_quads(const CssCode &code, const MeasurementRecord &rec, Rng &rng) {
    if (code.id == CodeId::Oct) {
        throw std::invalid_argument("quadruple sweep needs a cuboctahedral code");
    }
    const JumpPlan &plan = code.jump;
    detail::Sweep sw(code, rec);
    size_t visited = 0;
    for (size_t li = 0; li < plan.layers.size(); li++, visited++) {
        switch (plan.layer_kind[li]) {
            case LayerKind::Single:
                sw.push_layer(plan.layers[li], &rng);
                break;
            case LayerKind::Quad:
                for (const auto &quad : plan.quads[li]) {
                    sw.clear_quad(quad, rng);
                }
                sw.require_clear(plan.layers[li]);
                break;
            case LayerKind::Outer:
                break;
            case LayerKind::Verify:
                sw.require_clear(plan.layers[li]);
                break;
        }
    }
    return sw.finish(visited);
}

inline SweepResult sweep(const CssCode &code, const MeasurementRecord &rec, Rng &rng) {
    return code.id == CodeId::Oct ? octahedral_sweep(code, rec) : cuboctahedral_quads(code, rec, rng);
}

/// The frame left on the 2D code: outer X errors, and outer Z errors combined with the
/// projected stabiliser pattern and the sweep correction.
inline PauliFrame collapse(const CssCode &code, const PauliFrame &frame, const MeasurementRecord &rec,
                           const SweepResult &sweep) {
    check_frame(code, frame);
    PauliFrame out(code.code2d.n);
    for (size_t k = 0; k < code.outer.size(); k++) {
        uint32_t q = code.outer[k];
        out.x.set(k, frame.x[q]);
        out.z.set(k, frame.z[q] ^ rec.outer_pattern[q] ^ sweep.correction[k]);
    }
    return out;
}

}  // namespace cczsim

#endif
