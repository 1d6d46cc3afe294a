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


#include "cczsim/experiment.hpp"

#include <gtest/gtest.h>

#include "cczsim/io.hpp"

using namespace cczsim;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.lattice_sizes = {3, 5};
    cfg.error_rates = {0.0, 0.02};
    cfg.trials = 40;
    cfg.seed = 99;
    return cfg;
}

}  // namespace

TEST(experiment, config_validation) {
    auto cfg = small_config();
    EXPECT_NO_THROW(cfg.validate());
    cfg.trials = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.error_rates = {0.01, 1.5};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.lattice_sizes = {4};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.workers = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(experiment, noiseless_runs_never_fail) {
    for (int L : {3, 5, 7}) {
        LatticeContext ctx(L);
        for (bool ccz : {false, true}) {
            for (auto pos : {NoisePosition::BeforeCCZ, NoisePosition::AfterCCZ}) {
                TrialRunner runner(ctx, 0.0, pos, ccz);
                for (uint64_t t = 0; t < 60; t++) {
                    Rng rng = trial_rng(5, L, 0, t);
                    TrialOutcome o = runner.run(rng);
                    ASSERT_EQ(o, TrialOutcome{}) << "L=" << L << " ccz=" << ccz << " trial " << t;
                }
            }
        }
    }
}

TEST(experiment, same_seed_same_outcome) {
    auto cfg = small_config();
    cfg.error_rates = {0.03};
    LatticeContext ctx(5);
    for (uint64_t t = 0; t < 30; t++) {
        EXPECT_EQ(run_trial(ctx, cfg, 0, t), run_trial(ctx, cfg, 0, t));
    }
}

TEST(experiment, sweep_is_independent_of_worker_count) {
    auto cfg = small_config();
    cfg.error_rates = {0.01, 0.03};
    cfg.trials = 50;
    cfg.workers = 1;
    auto a = run_sweep(cfg);
    cfg.workers = 3;
    auto b = run_sweep(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < a[i].rows.size(); j++) {
            EXPECT_EQ(a[i].rows[j].trials, 50u);
            EXPECT_EQ(a[i].rows[j].fails_x, b[i].rows[j].fails_x);
            EXPECT_EQ(a[i].rows[j].fails_z, b[i].rows[j].fails_z);
            EXPECT_EQ(a[i].rows[j].cz_flips, b[i].rows[j].cz_flips);
        }
        for (auto c : ALL_CODES) {
            EXPECT_EQ(csv_text(a[i].rows, c), csv_text(b[i].rows, c));
        }
    }
}

TEST(experiment, sweep_counts_match_individual_trials) {
    auto cfg = small_config();
    cfg.lattice_sizes = {5};
    cfg.error_rates = {0.03};
    cfg.trials = 64;
    cfg.workers = 4;
    auto sweep = run_sweep(cfg);
    LatticeContext ctx(5);
    DataRow want;
    for (uint64_t t = 0; t < cfg.trials; t++) {
        want.add(run_trial(ctx, cfg, 0, t));
    }
    EXPECT_EQ(sweep[0].rows[0].fails_x, want.fails_x);
    EXPECT_EQ(sweep[0].rows[0].fails_z, want.fails_z);
    EXPECT_EQ(sweep[0].rows[0].trials, want.trials);
}

TEST(experiment, ccz_changes_nothing_before_the_gate) {
    LatticeContext ctx(5);
    for (auto pos : {NoisePosition::BeforeCCZ, NoisePosition::AfterCCZ}) {
        TrialRunner on(ctx, 0.02, pos, true), off(ctx, 0.02, pos, false);
        for (uint64_t t = 0; t < 40; t++) {
            TrialTrace a, b;
            Rng ra = trial_rng(3, 5, 0, t), rb = trial_rng(3, 5, 0, t);
            on.run(ra, &a);
            off.run(rb, &b);
            for (int c = 0; c < 3; c++) {
                ASSERT_EQ(a.after_prep[c].x, b.after_prep[c].x);
                ASSERT_EQ(a.after_prep[c].z, b.after_prep[c].z);
                ASSERT_EQ(a.codewords[c].pattern, b.codewords[c].pattern);
            }
            // The gate only adds the induced Z; X parts stay equal.
            if (pos == NoisePosition::BeforeCCZ) {
                auto induced = ccz_induced_z({&b.after_ccz[0].x, &b.after_ccz[1].x, &b.after_ccz[2].x});
                for (int c = 0; c < 3; c++) {
                    ASSERT_EQ(a.after_ccz[c].x, b.after_ccz[c].x);
                    ASSERT_EQ(a.after_ccz[c].z, b.after_ccz[c].z ^ induced[c]);
                }
            }
        }
    }
}

TEST(experiment, planted_membranes_leave_intersection_in_third_code) {
    auto lat_ctx = LatticeContext(7);
    const auto &lat = *lat_ctx.lattice;
    Membrane alpha = membrane_support(lat, {CodeId::Oct, 0, 3, {2, 2}, {4, 4}});
    Membrane gamma = membrane_support(lat, {CodeId::Cub1, 1, 3, {4, 3}, {5, 5}});
    TrialRunner runner(lat_ctx, 0.0, NoisePosition::AfterCCZ, true);
    for (uint64_t t = 0; t < 10; t++) {
        std::array<BitVec, 3> z;
        int k = 0;
        for (const auto &planted : std::vector<std::vector<Membrane>>{{alpha, gamma}, {alpha}, {gamma}, {}}) {
            TrialTrace tr;
            Rng rng = trial_rng(8, 7, 0, t);
            runner.run(rng, &tr, planted);
            if (k == 0) {
                z = {tr.after_ccz[0].z, tr.after_ccz[1].z, tr.after_ccz[2].z};
            } else {
                for (int c = 0; c < 3; c++) {
                    z[c] ^= tr.after_ccz[c].z;
                }
            }
            k++;
        }
        EXPECT_EQ(z[2], alpha.support & gamma.support);
        EXPECT_FALSE(z[0].any());
        EXPECT_FALSE(z[1].any());
        EXPECT_GT((alpha.support & gamma.support).popcount(), 0u);
    }
}

TEST(experiment, fresh_x_noise_before_the_gate_raises_cz_rate) {
    LatticeContext ctx(5);
    TrialRunner before(ctx, 0.01, NoisePosition::BeforeCCZ, true), after(ctx, 0.01, NoisePosition::AfterCCZ, true);
    DataRow b, a;
    for (uint64_t t = 0; t < 10000; t++) {
        Rng rb = trial_rng(4, 5, 0, t), ra = trial_rng(4, 5, 0, t);
        b.add(before.run(rb));
        a.add(after.run(ra));
    }
    EXPECT_GT(b.cz_flips, a.cz_flips);
    // Each fresh X error induces Z in each other code with probability about one half.
    const double n = static_cast<double>(ctx.lattice->n());
    const double extra = static_cast<double>(b.cz_flips - a.cz_flips) / (1e4 * 3 * n);
    EXPECT_NEAR(extra, 2 * 0.5 * 0.01 * 2 / 3, 0.002);
    // With noise after the gate only preparation residuals feed it, at the same one-half per other code.
    ASSERT_GT(a.prep_residual, 1000u);
    EXPECT_NEAR(static_cast<double>(a.cz_flips) / static_cast<double>(a.prep_residual), 1.0, 0.1);
}

TEST(experiment, far_below_threshold_octahedral_z_rarely_fails) {
    ExperimentConfig cfg;
    cfg.lattice_sizes = {9};
    cfg.error_rates = {0.002};
    cfg.trials = 1000;
    cfg.ccz_enabled = false;
    cfg.seed = 17;
    auto t = run_sweep(cfg);
    EXPECT_LT(t[0].rows[0].pfail_z(0), 0.01);
}

TEST(io, csv_format) {
    DataRow r;
    r.p = 0.0125;
    r.trials = 1000;
    r.fails_x = {3, 4, 5};
    r.fails_z = {10, 0, 1000};
    std::string text = csv_text({r}, CodeId::Cub1);
    // Intervals: ñ = 1003.8416, p̃ = 5.9208/ñ and 1.9208/ñ.
    EXPECT_EQ(text, std::string(CSV_HEADER) + "\n0.0125,1000,4,0,0.004,0.00473693,0,0.00270344\n");
    EXPECT_EQ(csv_name("before", CodeId::Cub2, 11), "data_before_cub2_L11.csv");
}

TEST(io, csv_round_trip) {
    auto dir = std::filesystem::temp_directory_path() / "cczsim_io_test";
    std::filesystem::remove_all(dir);
    auto cfg = small_config();
    cfg.trials = 10;
    cfg.output_dir = dir.string();
    auto tables = run_sweep(cfg);
    for (const auto &t : tables) {
        write_tables(dir, "noccz", t);
    }
    auto back = read_tables(dir, "noccz", CodeId::Oct);
    ASSERT_EQ(back.size(), 2u);
    ASSERT_EQ(back[5].size(), 2u);
    EXPECT_EQ(back[5][1].trials, 10u);
    EXPECT_EQ(back[5][1].fails_z, tables[1].rows[1].fails_z[0]);
    auto pts = fit_points(back, 'z');
    EXPECT_EQ(pts.size(), 4u);
    EXPECT_NE(svg_plot(pts, "t").find("<polyline"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(io, membrane_specs) {
    auto specs = parse_membrane_specs("oct:0:3:2,2:4,4; cub1:1:3:4,3:5,5");
    ASSERT_EQ(specs.size(), 2u);
    EXPECT_EQ(specs[1].code, CodeId::Cub1);
    EXPECT_EQ(specs[1].hi, (std::array<int, 2>{5, 5}));
    EXPECT_THROW(parse_membrane_specs("oct:0:3"), std::invalid_argument);
    EXPECT_THROW(parse_membrane_specs("tet:0:3:2,2:4,4"), std::invalid_argument);
}
