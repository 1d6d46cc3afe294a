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


#ifndef CCZSIM_DECODERS_HPP
#define CCZSIM_DECODERS_HPP

#include "cczsim/bposd.hpp"
#include "cczsim/matching.hpp"
#include "cczsim/pauli.hpp"

namespace cczsim {

/// Matching decoders of one code, built once per lattice and shared by all trials.
struct CodeDecoders {
    explicit CodeDecoders(const CssCode &code)
        : metachecks(MatchingGraph::from_check_matrix(code.metachecks)),
          x_checks(MatchingGraph::from_check_matrix(code.hx)),
          x_checks_2d(MatchingGraph::from_check_matrix(code.code2d.hx)),
          z_checks_2d(MatchingGraph::from_check_matrix(code.code2d.hz)) {}

    MatchingDecoder metachecks;   // nodes: metachecks, bits: Hz rows
    MatchingDecoder x_checks;     // nodes: Hx rows, bits: qubits
    MatchingDecoder x_checks_2d;  // 2D X checks (decode Z errors)
    MatchingDecoder z_checks_2d;  // 2D Z checks (decode X errors)
};

/// Closes a noisy Z-check syndrome into loops by matching the violated metachecks and
/// flipping the implied syndrome bits.
inline Syndrome repair_measured_syndrome(const CssCode &code, const CodeDecoders &dec, const Syndrome &noisy) {
    if (noisy.family != CheckFamily::ZChecks || noisy.bits.size() != code.hz.num_rows()) {
        throw std::invalid_argument("metacheck repair needs a Z-check syndrome");
    }
    Syndrome out = noisy;
    BitVec violated = code.metachecks.multiply(noisy.bits);
    if (violated.any()) {
        out.bits ^= dec.metachecks.decode(violated);
    }
    return out;
}

/// Matches the X-check defects over the whole code and keeps only the inner part of the
/// correction.
inline BitVec boundary_modified_decode(const CssCode &code, const CodeDecoders &dec, const Syndrome &reconstructed) {
    if (reconstructed.family != CheckFamily::XChecks || reconstructed.bits.size() != code.hx.num_rows()) {
        throw std::invalid_argument("boundary-modified decoding needs an X-check syndrome");
    }
    BitVec c = dec.x_checks.decode(reconstructed.bits);
    for (auto q : code.outer) {
        c.set(q, false);
    }
    return c;
}

/// BP-OSD priors for phenomenological rate p, kept away from 0 and 1/2.
inline SparseCheck prep_check(const CssCode &code, double p) {
    double prior = std::clamp(p, 1e-3, 0.3);
    return {code.hz, std::vector<double>(code.n, prior)};
}

}  // namespace cczsim

#endif
