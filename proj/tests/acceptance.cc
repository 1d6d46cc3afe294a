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


// Acceptance checks, one PASS/FAIL line per criterion.
//   acceptance [--criterion N] [--data DIR]

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "cczsim/bposd.hpp"
#include "cczsim/checks.hpp"
#include "cczsim/io.hpp"
#include "oracles.hpp"

using namespace cczsim;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

Verdict structural() {
    size_t css = 0, trans = 0, logical = 0, admiss = 0, strict_cub = 0;
    for (int L : {3, 5, 7}) {
        auto lat = build_tri_lattice(L);
        trans += count_transversality_violations(*lat);
        for (const auto &code : lat->codes) {
            css += count_css_violations(code);
            BitVec lx = code.logical_x_vec(), lz = code.logical_z_vec();
            logical += !lx.dot(lz);
            logical += code.hz.multiply(lx).any() + code.hx.multiply(lz).any();
            logical += row_basis_of(code.hx).contains(lx) + row_basis_of(code.hz).contains(lz);
            logical += code.n - gf2_rank(code.hx) - gf2_rank(code.hz) != 1;
            admiss += count_admissibility_violations(code, false);
            if (code.id != CodeId::Oct) {
                strict_cub += count_admissibility_violations(code, true);
            }
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "L=3,5,7: css %zu, transversality %zu, logical %zu, admissibility %zu (cub strict %zu) violations",
                  css, trans, logical, admiss, strict_cub);
    return {css + trans + logical + admiss + strict_cub == 0, buf};
}

const MembraneSpec OCT_BULK{CodeId::Oct, 0, 3, {2, 2}, {4, 4}};
const MembraneSpec CUB1_LINKED{CodeId::Cub1, 1, 3, {4, 3}, {5, 5}};
const MembraneSpec CUB2_BULK{CodeId::Cub2, 2, 3, {2, 2}, {4, 5}};

Verdict parity_laws() {
    auto lat = build_tri_lattice(7);
    const uint64_t samples = 10000;
    uint64_t off = 0, odd = 0, cells = 0, bad_freq = 0;
    double worst = 0;
    Rng rng({2026, 2});
    for (const auto &spec : {OCT_BULK, CUB1_LINKED, CUB2_BULK}) {
        auto st = sample_projection(*lat, {membrane_support(*lat, spec)}, samples, rng);
        off += st.off_boundary_flips;
        for (int c = 0; c < 3; c++) {
            odd += st.odd_total_samples[c];
        }
        for (const auto &b : st.boundaries) {
            odd += b.odd_samples;
            for (auto row : b.cells) {
                double dev = std::abs(st.frequency(b.code, row) - 0.5);
                worst = std::max(worst, dev);
                bad_freq += dev > 0.02;
                cells++;
            }
        }
    }
    auto a = membrane_support(*lat, OCT_BULK), g = membrane_support(*lat, CUB1_LINKED);
    auto st = sample_projection(*lat, {a, g}, samples, rng);
    uint64_t linked = 0, linked_odd = 0;
    for (const auto &b : st.boundaries) {
        if (b.code == CodeId::Cub2) {
            linked++;
            linked_odd += b.odd_samples == st.samples;
        }
    }
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "single membranes: off-boundary flags %lu, odd-parity samples %lu, %lu/%lu cells outside 0.5+-0.02 "
                  "(max dev %.4f); linked: %lu/%lu code-3 boundaries odd in every sample, |a&g|=%zu",
                  off, odd, bad_freq, cells, worst, linked_odd, linked, (a.support & g.support).popcount());
    bool ok = off == 0 && odd == 0 && bad_freq == 0 && cells > 0 && linked == 2 && linked_odd == 2 &&
              (a.support & g.support).popcount() % 2 == 1;
    return {ok, buf};
}

Verdict noiseless() {
    uint64_t fails = 0, trials = 0;
    for (bool ccz : {false, true}) {
        ExperimentConfig cfg;
        cfg.lattice_sizes = {5, 7, 9};
        cfg.error_rates = {0.0};
        cfg.trials = 1000;
        cfg.ccz_enabled = ccz;
        cfg.seed = 2026;
        for (const auto &t : run_sweep(cfg)) {
            for (const auto &r : t.rows) {
                trials += r.trials;
                for (int c = 0; c < 3; c++) {
                    fails += r.fails_x[c] + r.fails_z[c];
                }
            }
        }
    }
    return {fails == 0, std::to_string(fails) + " logical failures in " + std::to_string(trials) +
                            " noiseless trials (L=5,7,9, CCZ on and off)"};
}

Verdict decoders() {
    Rng rng({2026, 4});
    size_t instances = 0, mismatch = 0;
    while (instances < 1000) {
        MatchingGraph g = oracle::random_graph(rng, 14, 30, 6, true);
        MatchingDecoder dec(g);
        const size_t count = 1 + rng.below(8);
        std::vector<uint32_t> defects;
        while (defects.size() < count) {
            auto d = static_cast<uint32_t>(rng.below(g.num_nodes - 1));
            if (std::find(defects.begin(), defects.end(), d) == defects.end()) {
                defects.push_back(d);
            }
        }
        std::sort(defects.begin(), defects.end());
        uint64_t want = oracle::min_matching_weight(g, defects);
        if (want == oracle::UNMATCHABLE) {
            continue;
        }
        instances++;
        uint64_t w = 0;
        BitVec c = dec.decode_defects(defects, &w);
        mismatch += w != want || oracle::graph_syndrome(g, c) != defects;
    }
    auto lat = build_tri_lattice(3);
    size_t checked = 0, wrong = 0;
    for (const auto &code : lat->codes) {
        oracle::MinWeightTable table(code.hz, code.logical_z, 2);
        BpOsdDecoder dec({code.hz, std::vector<double>(code.n, 0.05)}, {});
        for (uint32_t a = 0; a < code.n; a++) {
            for (uint32_t b = a; b < code.n; b++) {
                BitVec e(code.n);
                e.flip(a);
                if (b != a) {
                    e.flip(b);
                }
                BitVec s = code.hz.multiply(e);
                const auto *entry = table.lookup(s);
                BitVec corr = dec.decode(s);
                if (code.hz.multiply(corr) != s) {
                    wrong++;
                    continue;
                }
                if (entry->ambiguous) {
                    continue;
                }
                checked++;
                wrong += table.logical_class(corr) != entry->logical_class;
            }
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "MWPM: %zu/%zu random instances differ from exhaustive pairing; BP-OSD: %zu/%zu weight<=2 errors "
                  "decoded to a different coset than minimum weight",
                  mismatch, instances, wrong, checked);
    return {mismatch == 0 && wrong == 0, buf};
}

Verdict thresholds(const std::vector<std::string> &dirs) {
    for (const auto &dir : dirs) {
        if (!std::filesystem::is_directory(dir)) {
            return {false, "no data directory " + dir};
        }
    }
    std::string detail;
    bool ok = true;
    auto fitted = [&](const std::string &variant, CodeId code, char basis, double &pth) {
        auto tables = read_tables(dirs, variant, code);
        std::set<int> sizes;
        for (const auto &[L, rows] : tables) {
            sizes.insert(L);
        }
        std::string name = variant + "/" + code_name(code) + "/" + basis;
        if (sizes != std::set<int>{5, 7, 9, 11}) {
            detail += " " + name + ": missing lattice sizes;";
            return false;
        }
        try {
            FitResult r = fit_threshold(fit_points(tables, basis));
            if (r.degenerate) {
                detail += " " + name + ": no crossing;";
                return false;
            }
            char buf[120];
            std::snprintf(buf, sizeof buf, " %s %.3f%%(%.3f)%s;", name.c_str(), 100 * r.pth, 100 * r.pth_error,
                          r.converged ? "" : " unconverged");
            detail += buf;
            pth = r.pth;
            return r.converged;
        } catch (const std::exception &e) {
            detail += " " + name + ": " + e.what() + ";";
            return false;
        }
    };
    auto check = [&](bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            detail += " [miss: " + what + "]";
        }
    };
    double oct_no = 0, oct_before = 0, oct_after = 0, v = 0;
    bool have_no = fitted("noccz", CodeId::Oct, 'z', oct_no);
    check(have_no && std::abs(oct_no - 0.0179) <= 0.0035, "oct Z no-CCZ 1.79+-0.35%");
    bool have_before = fitted("before", CodeId::Oct, 'z', oct_before);
    check(have_before && std::abs(oct_before - 0.0107) <= 0.0035, "oct Z before 1.07+-0.35%");
    check(have_no && have_before && oct_no - oct_before >= 0.004, "before below no-CCZ by >=0.4%");
    bool have_after = fitted("after", CodeId::Oct, 'z', oct_after);
    check(have_no && have_after && std::abs(oct_after - oct_no) <= 0.002, "after within 0.2% of no-CCZ");
    for (auto c : {CodeId::Cub1, CodeId::Cub2}) {
        check(fitted("noccz", c, 'z', v) && std::abs(v - 0.0052) <= 0.002,
              std::string(code_name(c)) + " Z no-CCZ 0.52+-0.2%");
    }
    for (auto c : ALL_CODES) {
        check(fitted("noccz", c, 'x', v) && v >= 0.024 && v <= 0.032, std::string(code_name(c)) + " X in 2.4-3.2%");
    }
    return {ok, detail};
}

Verdict linking_charge() {
    LatticeContext ctx(7);
    const auto &lat = *ctx.lattice;
    TrialRunner runner(ctx, 0.0, NoisePosition::AfterCCZ, true);
    Rng geo({2026, 6});
    int geometries = 0, exact = 0;
    while (geometries < 100) {
        // Octahedral membrane crossing x = 2a+1, cuboctahedral sheet in y = 2b.
        const int a = 1 + static_cast<int>(geo.below(4));
        const int b = 1 + static_cast<int>(geo.below(5));
        MembraneSpec sa{CodeId::Oct, 0, a, {static_cast<int>(geo.below(3)), static_cast<int>(geo.below(3))}, {}};
        sa.hi = {sa.lo[0] + 1 + static_cast<int>(geo.below(3)), sa.lo[1] + 1 + static_cast<int>(geo.below(3))};
        MembraneSpec sg{CodeId::Cub1, 1, b, {static_cast<int>(geo.below(3)), static_cast<int>(geo.below(3))}, {}};
        sg.hi = {sg.lo[0] + 1 + static_cast<int>(geo.below(3)), sg.lo[1] + 1 + static_cast<int>(geo.below(3))};
        Membrane alpha = membrane_support(lat, sa), gamma = membrane_support(lat, sg);
        const BitVec want = alpha.support & gamma.support;
        if (!want.any()) {
            continue;
        }
        geometries++;
        std::array<BitVec, 3> z;
        bool first = true;
        for (const auto &planted : std::vector<std::vector<Membrane>>{{alpha, gamma}, {alpha}, {gamma}, {}}) {
            TrialTrace tr;
            Rng rng = trial_rng(2026, 7, 0, static_cast<uint64_t>(geometries));
            runner.run(rng, &tr, planted);
            for (int c = 0; c < 3; c++) {
                z[c] = first ? tr.after_ccz[c].z : z[c] ^ tr.after_ccz[c].z;
            }
            first = false;
        }
        exact += z[2] == want && !z[0].any() && !z[1].any();
    }
    return {exact == geometries,
            std::to_string(exact) + "/" + std::to_string(geometries) + " planted geometries give exactly Z on a&g in code 3"};
}

Verdict reproducible() {
    auto base = std::filesystem::temp_directory_path() / "cczsim_acceptance_repro";
    std::filesystem::remove_all(base);
    std::vector<std::string> text[2];
    for (int run = 0; run < 2; run++) {
        ExperimentConfig cfg;
        cfg.lattice_sizes = {5, 7};
        cfg.error_rates = {0.01, 0.02, 0.03};
        cfg.trials = 300;
        cfg.seed = 77;
        cfg.position = NoisePosition::BeforeCCZ;
        cfg.workers = run == 0 ? 1 : 2;
        cfg.output_dir = (base / std::to_string(run)).string();
        for (const auto &t : run_sweep(cfg)) {
            write_tables(cfg.output_dir, "before", t);
        }
        for (int L : cfg.lattice_sizes) {
            for (auto c : ALL_CODES) {
                std::ifstream f(std::filesystem::path(cfg.output_dir) / csv_name("before", c, L), std::ios::binary);
                text[run].emplace_back(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
            }
        }
    }
    std::filesystem::remove_all(base);
    size_t same = 0;
    for (size_t k = 0; k < text[0].size(); k++) {
        same += !text[0][k].empty() && text[0][k] == text[1][k];
    }
    return {same == text[0].size(), std::to_string(same) + "/" + std::to_string(text[0].size()) +
                                        " CSV files byte-identical across two runs (1 vs 2 workers)"};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    std::vector<std::string> data{std::string(CCZSIM_SOURCE_DIR) + "/results/desk",
                                  std::string(CCZSIM_SOURCE_DIR) + "/results/desk_extra"};
    app.add_option("--criterion", only, "run a single criterion (1-7)");
    app.add_option("--data", data, "directories with threshold-run CSVs")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> all = {
        {"structural exactness", structural},
        {"parity laws", parity_laws},
        {"noiseless pipeline", noiseless},
        {"decoder oracle equivalence", decoders},
        {"threshold reproduction", [&] { return thresholds(data); }},
        {"linking charge in pipeline", linking_charge},
        {"reproducibility", reproducible},
    };
    bool ok = true;
    for (size_t k = 0; k < all.size(); k++) {
        if (only && static_cast<size_t>(only) != k + 1) {
            continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = all[k].second();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu (%s): %s  %s  [%.1fs]\n", k + 1, all[k].first.c_str(), v.pass ? "PASS" : "FAIL",
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        ok &= v.pass;
    }
    return ok ? 0 : 1;
}
