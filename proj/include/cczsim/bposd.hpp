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

#ifndef CCZSIM_BPOSD_HPP
#define CCZSIM_BPOSD_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cczsim/gf2.hpp"

namespace cczsim {

struct BpOsdConfig {
    int max_iters = 30;
    int osd_order = 0;  // 0 for OSD-0, otherwise exhaustive over this many extra columns (<= 10)

    void validate() const {
        if (max_iters < 1) {
            throw std::invalid_argument("max BP iterations must be positive");
        }
        if (osd_order < 0 || osd_order > 10) {
            throw std::invalid_argument("OSD order must lie in [0, 10]");
        }
    }
};

/// Check matrix with per-column error priors.
struct SparseCheck {
    SparseMatrix h;
    std::vector<double> priors;
};

struct BpOsdStats {
    bool bp_converged = false;
    int iterations = 0;
    size_t osd_columns = 0;  // columns scanned by the elimination
};

/// Product-sum belief propagation with a serial (check-layered) schedule, followed by
/// ordered-statistics post-processing when BP does not converge.
class BpOsdDecoder {
   public:
    BpOsdDecoder(SparseCheck check, BpOsdConfig config) : c_(std::move(check)), cfg_(config) {
        cfg_.validate();
        const auto &h = c_.h;
        if (c_.priors.size() != h.num_cols()) {
            throw std::invalid_argument("one prior per column required");
        }
        for (double p : c_.priors) {
            if (!(p > 0.0 && p < 1.0)) {
                throw std::invalid_argument("priors must lie in (0, 1)");
            }
        }
        row_start_.push_back(0);
        for (size_t r = 0; r < h.num_rows(); r++) {
            for (auto v : h.row(r)) {
                edge_var_.push_back(v);
            }
            row_start_.push_back(static_cast<uint32_t>(edge_var_.size()));
        }
        channel_llr_.resize(h.num_cols());
        for (size_t v = 0; v < h.num_cols(); v++) {
            channel_llr_[v] = std::log((1.0 - c_.priors[v]) / c_.priors[v]);
        }
    }

    const SparseCheck &check() const { return c_; }
    const BpOsdConfig &config() const { return cfg_; }

    /// Negative log-probability of an error pattern under the priors, up to a constant.
    double cost(const BitVec &e) const {
        double total = 0;
        for (auto v : e.ones()) {
            total += channel_llr_[v];
        }
        return total;
    }

    BitVec decode(const BitVec &syndrome, BpOsdStats *stats = nullptr) const {
        const auto &h = c_.h;
        if (syndrome.size() != h.num_rows()) {
            throw std::invalid_argument("syndrome length does not match check rows");
        }
        BpOsdStats local;
        BitVec out(h.num_cols());
        if (!syndrome.any()) {
            if (stats) {
                *stats = local;
                stats->bp_converged = true;
            }
            return out;
        }
        std::vector<double> posterior;
        if (run_bp(syndrome, out, posterior, local.iterations)) {
            local.bp_converged = true;
            if (stats) {
                *stats = local;
            }
            return out;
        }
        out = osd(syndrome, posterior, local.osd_columns);
        if (stats) {
            *stats = local;
        }
        return out;
    }

    /// Plain BP. Returns true when the hard decision reproduces the syndrome.
    bool run_bp(const BitVec &syndrome, BitVec &hard, std::vector<double> &posterior, int &iterations) const {
        const auto &h = c_.h;
        const size_t m = h.num_rows();
        std::vector<double> msg(edge_var_.size(), 0.0);
        posterior = channel_llr_;
        std::vector<double> q, t, prefix;
        for (iterations = 1; iterations <= cfg_.max_iters; iterations++) {
            for (size_t r = 0; r < m; r++) {
                const uint32_t b = row_start_[r], e = row_start_[r + 1];
                const size_t deg = e - b;
                q.resize(deg);
                t.resize(deg);
                prefix.resize(deg + 1);
                for (size_t k = 0; k < deg; k++) {
                    q[k] = posterior[edge_var_[b + k]] - msg[b + k];
                    t[k] = std::tanh(q[k] / 2);
                }
                prefix[0] = 1.0;
                for (size_t k = 0; k < deg; k++) {
                    prefix[k + 1] = prefix[k] * t[k];
                }
                double suffix = 1.0;
                const double sign = syndrome[r] ? -1.0 : 1.0;
                for (size_t k = deg; k-- > 0;) {
                    double extr = std::clamp(prefix[k] * suffix, -0.999999999999, 0.999999999999);
                    suffix *= t[k];
                    double out_msg = sign * 2.0 * std::atanh(extr);
                    msg[b + k] = out_msg;
                    posterior[edge_var_[b + k]] = q[k] + out_msg;
                }
            }
            hard = BitVec(h.num_cols());
            for (size_t v = 0; v < h.num_cols(); v++) {
                if (posterior[v] < 0) {
                    hard.flip(v);
                }
            }
            if (h.multiply(hard) == syndrome) {
                return true;
            }
        }
        iterations = cfg_.max_iters;
        return false;
    }

    /// Ordered-statistics decoding over columns sorted by posterior reliability.
    BitVec osd(const BitVec &syndrome, const std::vector<double> &posterior, size_t &scanned) const {
        const auto &h = c_.h;
        const size_t m = h.num_rows(), n = h.num_cols();
        std::vector<uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](uint32_t a, uint32_t b) { return posterior[a] < posterior[b]; });

        // Echelon basis of chosen columns; comb[k] records which chosen columns sum to basis[k].
        std::vector<BitVec> basis;
        std::vector<size_t> pivot;
        std::vector<BitVec> comb;
        std::vector<uint32_t> chosen;
        std::vector<uint32_t> dependent;
        const size_t max_rank = m;
        BitVec s_red = syndrome;
        BitVec s_comb(max_rank);
        bool solved = false;
        scanned = 0;
        for (auto col : order) {
            if (solved && dependent.size() >= static_cast<size_t>(cfg_.osd_order)) {
                break;
            }
            scanned++;
            BitVec v(m);
            for (auto r : h.col(col)) {
                v.flip(r);
            }
            BitVec cb(max_rank);
            for (size_t k = 0; k < basis.size(); k++) {
                if (v[pivot[k]]) {
                    v ^= basis[k];
                    cb ^= comb[k];
                }
            }
            size_t p = v.first_one();
            if (p == m) {
                if (dependent.size() < static_cast<size_t>(cfg_.osd_order)) {
                    dependent.push_back(col);
                }
                continue;
            }
            cb.flip(chosen.size());
            chosen.push_back(col);
            if (s_red[p]) {
                s_red ^= v;
                s_comb ^= cb;
            }
            basis.push_back(std::move(v));
            pivot.push_back(p);
            comb.push_back(std::move(cb));
            solved = !s_red.any();
        }
        if (!solved) {
            throw std::runtime_error("syndrome is not in the column space of the check matrix");
        }
        auto expand = [&](const BitVec &c) {
            BitVec e(n);
            for (auto k : c.ones()) {
                e.flip(chosen[k]);
            }
            return e;
        };
        BitVec best = expand(s_comb);
        const size_t eps = std::min<size_t>(dependent.size(), static_cast<size_t>(cfg_.osd_order));
        if (eps == 0) {
            return best;
        }
        double best_cost = cost(best);
        for (uint32_t mask = 1; mask < (1u << eps); mask++) {
            BitVec target = syndrome;
            BitVec extra(n);
            for (size_t i = 0; i < eps; i++) {
                if ((mask >> i) & 1) {
                    extra.flip(dependent[i]);
                    for (auto r : h.col(dependent[i])) {
                        target.flip(r);
                    }
                }
            }
            BitVec tc(max_rank);
            for (size_t k = 0; k < basis.size(); k++) {
                if (target[pivot[k]]) {
                    target ^= basis[k];
                    tc ^= comb[k];
                }
            }
            if (target.any()) {
                continue;
            }
            BitVec cand = expand(tc) ^ extra;
            double cc = cost(cand);
            if (cc < best_cost) {
                best_cost = cc;
                best = std::move(cand);
            }
        }
        return best;
    }

   private:
    SparseCheck c_;
    BpOsdConfig cfg_;
    std::vector<uint32_t> row_start_;
    std::vector<uint32_t> edge_var_;
    std::vector<double> channel_llr_;
};

/// Convenience: decode with a freshly built decoder.
inline BitVec bposd(const SparseCheck &check, const BitVec &syndrome, BpOsdConfig cfg = {}) {
    return BpOsdDecoder(check, cfg).decode(syndrome);
}

}  // namespace cczsim

#endif
