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


#ifndef CCZSIM_EXPERIMENT_HPP
#define CCZSIM_EXPERIMENT_HPP

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cczsim/ccz.hpp"
#include "cczsim/decoders.hpp"
#include "cczsim/jump.hpp"
#include "cczsim/stats.hpp"

namespace cczsim {

struct ExperimentConfig {
    std::vector<int> lattice_sizes;
    std::vector<double> error_rates;
    uint64_t trials = 0;
    NoisePosition position = NoisePosition::AfterCCZ;
    bool ccz_enabled = true;
    uint64_t seed = 0;
    std::string output_dir = ".";
    int workers = 1;
    BpOsdConfig bposd;

    void validate() const {
        if (trials < 1) {
            throw std::invalid_argument("trials must be at least 1");
        }
        if (lattice_sizes.empty() || error_rates.empty()) {
            throw std::invalid_argument("need at least one lattice size and one error rate");
        }
        for (int L : lattice_sizes) {
            if (L < 3 || L % 2 == 0) {
                throw std::invalid_argument("lattice sizes must be odd and at least 3");
            }
        }
        for (double p : error_rates) {
            check_probability(p);
        }
        if (workers < 1) {
            throw std::invalid_argument("workers must be at least 1");
        }
        bposd.validate();
    }
};

/// "noccz", "before" or "after".
inline std::string variant_name(bool ccz, NoisePosition pos) {
    if (!ccz) {
        return "noccz";
    }
    return pos == NoisePosition::BeforeCCZ ? "before" : "after";
}

struct TrialOutcome {
    std::array<bool, 3> fail_x{};
    std::array<bool, 3> fail_z{};
    // Qubits whose CCZ-induced Z differs from the ideal codeword's, summed over codes.
    uint64_t cz_flips = 0;
    // Weight of the residual X error left by preparation, summed over codes.
    uint64_t prep_residual = 0;

    bool operator==(const TrialOutcome &) const = default;
};

/// Intermediate state of one trial, for inspection.
struct TrialTrace {
    std::array<Codeword, 3> codewords;
    TriFrame after_prep;
    TriFrame after_ccz;
};

/// Lattice plus the decoders that do not depend on p.
struct LatticeContext {
    explicit LatticeContext(int L) : lattice(build_tri_lattice(L)) {
        for (const auto &code : lattice->codes) {
            decoders.push_back(std::make_unique<CodeDecoders>(code));
        }
    }
    std::shared_ptr<const TriLattice> lattice;
    std::vector<std::unique_ptr<CodeDecoders>> decoders;
};

/// Runs trials of the full pipeline at one (L, p).
class TrialRunner {
   public:
    TrialRunner(const LatticeContext &ctx, double p, NoisePosition position, bool ccz, BpOsdConfig bp = {})
        : ctx_(ctx), p_(p), position_(position), ccz_(ccz) {
        check_probability(p);
        for (const auto &code : ctx.lattice->codes) {
            prep_.emplace_back(prep_check(code, p), bp);
        }
    }

    TrialOutcome run(Rng &rng, TrialTrace *trace = nullptr, const std::vector<Membrane> &planted = {}) const {
        const TriLattice &lat = *ctx_.lattice;
        TrialOutcome out;
        TriFrame frame = make_tri_frame(lat);
        std::array<Codeword, 3> cw;

        // Preparation of |+> with one round of noisy Z-check measurements.
        for (int c = 0; c < 3; c++) {
            const CssCode &code = lat.codes[c];
            const CodeDecoders &dec = *ctx_.decoders[c];
            cw[c] = random_x_codeword(code, rng);
            Syndrome flips = flip_measurements({CheckFamily::ZChecks, BitVec(code.hz.num_rows())}, p_, rng);
            Syndrome residual = repair_measured_syndrome(code, dec, flips);
            BitVec e = residual.bits.any() ? prep_[c].decode(residual.bits) : BitVec(code.n);
            out.prep_residual += e.popcount();
            frame[c].x = cw[c].pattern ^ e;
        }
        for (const auto &m : planted) {
            frame[static_cast<int>(m.code)].x ^= m.support;
        }
        if (trace) {
            trace->codewords = cw;
            trace->after_prep = frame;
        }

        if (position_ == NoisePosition::BeforeCCZ) {
            for (auto &f : frame) {
                depolarise(f, p_, rng);
            }
        }
        {
            auto actual = ccz_induced_z({&frame[0].x, &frame[1].x, &frame[2].x});
            auto ideal = ccz_induced_z({&cw[0].pattern, &cw[1].pattern, &cw[2].pattern});
            for (int c = 0; c < 3; c++) {
                out.cz_flips += (actual[c] ^ ideal[c]).popcount();
            }
            if (ccz_) {
                for (int c = 0; c < 3; c++) {
                    frame[c].z ^= actual[c];
                }
            }
        }
        if (position_ == NoisePosition::AfterCCZ) {
            for (auto &f : frame) {
                depolarise(f, p_, rng);
            }
        }
        if (trace) {
            trace->after_ccz = frame;
        }

        // Dimension jump and perfect 2D decoding.
        for (int c = 0; c < 3; c++) {
            const CssCode &code = lat.codes[c];
            const CodeDecoders &dec = *ctx_.decoders[c];
            MeasurementRecord rec = measure_out_inner(code, frame[c], rng);
            BitVec inner = boundary_modified_decode(code, dec, reconstruct_x_syndrome(code, rec));
            apply_inner_correction(code, rec, inner);
            SweepResult sw = sweep(code, rec, rng);
            PauliFrame f2 = collapse(code, frame[c], rec, sw);

            const Code2D &c2 = code.code2d;
            f2.z ^= dec.x_checks_2d.decode(c2.hx.multiply(f2.z));
            f2.x ^= dec.z_checks_2d.decode(c2.hz.multiply(f2.x));
            int i = (c + 1) % 3, j = (c + 2) % 3;
            bool want_z = ccz_ && cw[i].logical && cw[j].logical;
            out.fail_z[c] = f2.z.parity_at(c2.logical_x) != want_z;
            out.fail_x[c] = f2.x.parity_at(c2.logical_z) != cw[c].logical;
        }
        return out;
    }

    const LatticeContext &context() const { return ctx_; }

   private:
    const LatticeContext &ctx_;
    double p_;
    NoisePosition position_;
    bool ccz_;
    std::vector<BpOsdDecoder> prep_;
};

/// One trial of the configured experiment, seeded from (seed, L, p index, trial index).
inline TrialOutcome run_trial(const LatticeContext &ctx, const ExperimentConfig &cfg, size_t p_index, uint64_t trial) {
    TrialRunner runner(ctx, cfg.error_rates.at(p_index), cfg.position, cfg.ccz_enabled, cfg.bposd);
    Rng rng = trial_rng(cfg.seed, ctx.lattice->L, p_index, trial);
    return runner.run(rng);
}

/// Aggregated failures at one (L, p).
struct DataRow {
    double p = 0;
    uint64_t trials = 0;
    std::array<uint64_t, 3> fails_x{};
    std::array<uint64_t, 3> fails_z{};
    uint64_t cz_flips = 0;
    uint64_t prep_residual = 0;

    double pfail_x(int c) const { return static_cast<double>(fails_x[c]) / static_cast<double>(trials); }
    double pfail_z(int c) const { return static_cast<double>(fails_z[c]) / static_cast<double>(trials); }
    double err_x(int c) const { return agresti_coull(fails_x[c], trials).halfwidth; }
    double err_z(int c) const { return agresti_coull(fails_z[c], trials).halfwidth; }

    void add(const TrialOutcome &t) {
        trials++;
        for (int c = 0; c < 3; c++) {
            fails_x[c] += t.fail_x[c];
            fails_z[c] += t.fail_z[c];
        }
        cz_flips += t.cz_flips;
        prep_residual += t.prep_residual;
    }
    void merge(const DataRow &o) {
        trials += o.trials;
        for (int c = 0; c < 3; c++) {
            fails_x[c] += o.fails_x[c];
            fails_z[c] += o.fails_z[c];
        }
        cz_flips += o.cz_flips;
        prep_residual += o.prep_residual;
    }
};

struct SweepTable {
    int L;
    std::vector<DataRow> rows;  // one per error rate, in config order
};

/// Runs every (L, p) point with trials spread over a worker pool. Counts are integer
/// sums, so the result does not depend on the worker count or scheduling.
inline std::vector<SweepTable> run_sweep(const ExperimentConfig &cfg,
                                         const std::function<void(int, double, const DataRow &)> &on_point = {}) {
    cfg.validate();
    std::vector<SweepTable> out;
    for (int L : cfg.lattice_sizes) {
        LatticeContext ctx(L);
        SweepTable table{L, {}};
        for (size_t pi = 0; pi < cfg.error_rates.size(); pi++) {
            const double p = cfg.error_rates[pi];
            TrialRunner runner(ctx, p, cfg.position, cfg.ccz_enabled, cfg.bposd);
            const int workers = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(cfg.workers), cfg.trials));
            std::vector<DataRow> partial(static_cast<size_t>(workers));
            std::atomic<uint64_t> next{0};
            std::mutex err_mu;
            std::exception_ptr err;
            auto work = [&](int w) {
                try {
                    constexpr uint64_t CHUNK = 16;
                    for (;;) {
                        uint64_t start = next.fetch_add(CHUNK);
                        if (start >= cfg.trials) {
                            break;
                        }
                        uint64_t stop = std::min(cfg.trials, start + CHUNK);
                        for (uint64_t t = start; t < stop; t++) {
                            Rng rng = trial_rng(cfg.seed, L, pi, t);
                            partial[static_cast<size_t>(w)].add(runner.run(rng));
                        }
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) {
                        err = std::current_exception();
                    }
                    next.store(cfg.trials);
                }
            };
            if (workers == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (int w = 0; w < workers; w++) {
                    pool.emplace_back(work, w);
                }
                for (auto &t : pool) {
                    t.join();
                }
            }
            if (err) {
                std::rethrow_exception(err);
            }
            DataRow row;
            row.p = p;
            for (const auto &part : partial) {
                row.merge(part);
            }
            if (on_point) {
                on_point(L, p, row);
            }
            table.rows.push_back(row);
        }
        out.push_back(std::move(table));
    }
    return out;
}

}  // namespace cczsim

#endif
