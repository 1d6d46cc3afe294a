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


#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

#include "cczsim/io.hpp"

using namespace cczsim;

namespace {

std::vector<double> parse_rates(const std::string &spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a = 0, b = 0;
        int n = 0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 1) {
            throw CLI::ValidationError("--error-rates", "expected a:b:n");
        }
        for (int k = 0; k < n; k++) {
            out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    return out;
}

int simulate(const ExperimentConfig &cfg) {
    cfg.validate();
    const std::string variant = variant_name(cfg.ccz_enabled, cfg.position);
    write_manifest(cfg.output_dir, cfg);
    for (int L : cfg.lattice_sizes) {
        ExperimentConfig one = cfg;
        one.lattice_sizes = {L};
        auto t0 = std::chrono::steady_clock::now();
        auto tables = run_sweep(one, [&](int, double p, const DataRow &row) {
            std::fprintf(stderr, "%s L=%d p=%s  fails_x %lu/%lu/%lu  fails_z %lu/%lu/%lu  (%lu trials)\n",
                         variant.c_str(), L, fmt6(p).c_str(), row.fails_x[0], row.fails_x[1], row.fails_x[2],
                         row.fails_z[0], row.fails_z[1], row.fails_z[2], row.trials);
        });
        write_tables(cfg.output_dir, variant, tables[0]);
        write_diagnostics(cfg.output_dir, variant, tables[0], build_tri_lattice(L)->n());
        std::fprintf(stderr, "L=%d done in %.1fs\n", L,
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return 0;
}

// CZ-induced rate q at the tabulated rate closest to p.
// (rate, q) of the diagnostics row closest to p.
std::optional<std::pair<double, double>> nearest_q(const std::vector<std::string> &dirs, const std::string &variant,
                                                   int L, double p) {
    std::optional<std::pair<double, double>> out;
    double best = 1e9;
    for (const auto &dir : dirs) {
        std::ifstream f(std::filesystem::path(dir) / ("diag_" + variant + "_L" + std::to_string(L) + ".csv"));
        std::string line;
        std::getline(f, line);
        while (std::getline(f, line)) {
            double pr = 0, qv = 0, pres = 0;
            unsigned long t = 0;
            if (std::sscanf(line.c_str(), "%lf,%lu,%lf,%lf", &pr, &t, &qv, &pres) == 4 && std::abs(pr - p) < best) {
                best = std::abs(pr - p);
                out = {pr, qv};
            }
        }
    }
    return out;
}

// Threshold shift expected from the measured CZ rate q(L), relative to the no-CCZ curves.
// Rates are converted to the per-qubit Z probability p_Z = 2p/3 that q adds to.
void effective_rate_report(const std::vector<std::string> &dirs, const std::string &variant, CodeId code,
                           const FitOptions &opt) {
    auto iid = read_tables(dirs, "noccz", code);
    if (iid.empty()) {
        return;
    }
    auto pts = fit_points(iid, 'z');
    FitResult base;
    try {
        base = fit_threshold(pts, opt);
    } catch (const std::invalid_argument &e) {
        std::printf("effective-rate diagnostics unavailable: %s\n", e.what());
        return;
    }
    if (base.degenerate) {
        return;
    }
    std::map<int, double> slopes, q, q_at;
    for (const auto &[L, m] : linear_slopes(pts, base.window_lo, base.window_hi)) {
        slopes[L] = 1.5 * m;
        if (auto v = nearest_q(dirs, variant, L, base.pth)) {
            q_at[L] = v->first;
            q[L] = v->second;
        }
    }
    try {
        auto rep = effective_rate_diagnostics(base.pth * 2 / 3, slopes, q);
        std::printf("no-CCZ pth %.5f; q(L) from the nearest %s rate\n", base.pth, variant.c_str());
        for (const auto &[L, pr] : q_at) {
            std::printf("  L%d  q %.4g at p = %.4g%s\n", L, q[L], pr,
                        std::abs(pr - base.pth) > 0.1 * base.pth ? "  (far from pth)" : "");
        }
        for (const auto &s : rep.shifts) {
            std::printf("  L%d/L%d  m %.3g/%.3g  dp_Z %+.5f%s\n", s.L1, s.L2, slopes[s.L1], slopes[s.L2], s.dp,
                        s.criterion ? "  (m2/m1 < q1/q2)" : "");
        }
        std::printf("pth_true %.5f (in p)\n", rep.pth_true * 1.5);
    } catch (const std::invalid_argument &e) {
        std::printf("effective-rate diagnostics unavailable: %s\n", e.what());
    }
}

int fit(const std::vector<std::string> &dirs, const std::string &variant, const std::string &code, const std::string &basis,
        int bootstrap) {
    auto tables = read_tables(dirs, variant, parse_code(code));
    if (tables.empty()) {
        std::cerr << "no data files for " << variant << "/" << code << "\n";
        return 1;
    }
    auto pts = fit_points(tables, basis.at(0));
    FitOptions opt;
    opt.bootstrap = bootstrap;
    FitResult r = fit_threshold(pts, opt);
    std::printf("variant %s  code %s  basis %s\n", variant.c_str(), code.c_str(), basis.c_str());
    if (r.degenerate) {
        std::printf("degenerate: no crossing between consecutive lattice sizes\n");
        return 2;
    }
    std::printf("crossing %.5f  window [%.5f, %.5f]  points %zu\n", r.crossing, r.window_lo, r.window_hi,
                r.points_used);
    std::printf("pth %.5f +- %.5f  nu %.3f  a0 %.4g a1 %.4g a2 %.4g  chi2 %.3g  %s  bootstrap %d ok / %d failed\n",
                r.pth, r.pth_error, r.nu, r.a0, r.a1, r.a2, r.chi2, r.converged ? "converged" : "NOT CONVERGED",
                r.bootstrap_ok, r.bootstrap_failed);

    if (variant != "noccz" && basis == "z") {
        effective_rate_report(dirs, variant, parse_code(code), opt);
    }
    return r.converged ? 0 : 3;
}

int oracle(int L, const std::string &spec, uint64_t samples, uint64_t seed) {
    auto lat = build_tri_lattice(L);
    std::vector<Membrane> ms;
    for (const auto &s : parse_membrane_specs(spec)) {
        ms.push_back(membrane_support(*lat, s));
    }
    Rng rng({seed});
    OutcomeStats st = sample_projection(*lat, ms, samples, rng);
    std::printf("samples %lu  off-boundary flags %lu\n", st.samples, st.off_boundary_flips);
    for (int c = 0; c < 3; c++) {
        std::printf("code %s: samples with odd total %lu\n", code_name(static_cast<CodeId>(c)), st.odd_total_samples[c]);
    }
    std::printf("membrane,code,cells,odd_fraction,min_freq,max_freq\n");
    for (const auto &b : st.boundaries) {
        double lo = 1, hi = 0;
        for (auto row : b.cells) {
            lo = std::min(lo, st.frequency(b.code, row));
            hi = std::max(hi, st.frequency(b.code, row));
        }
        std::printf("%zu,%s,%zu,%s,%s,%s\n", b.membrane, code_name(b.code), b.cells.size(),
                    fmt6(static_cast<double>(b.odd_samples) / static_cast<double>(st.samples)).c_str(),
                    fmt6(lo).c_str(), fmt6(hi).c_str());
    }
    return 0;
}

int plot(const std::vector<std::string> &dirs, const std::string &out, const std::string &variant, const std::string &code,
         const std::string &basis) {
    auto pts = fit_points(read_tables(dirs, variant, parse_code(code)), basis.at(0));
    if (pts.empty()) {
        std::cerr << "no data\n";
        return 1;
    }
    write_text(out, svg_plot(pts, variant + " " + code + " " + basis));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Transversal CCZ and dimension-jump threshold simulator"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string rates = "0.004:0.012:9", position = "after", ccz = "on";
    cfg.lattice_sizes = {9, 11, 13};
    cfg.trials = 20000;
    cfg.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto *sim = app.add_subcommand("simulate", "run the Monte Carlo sweep and write CSVs");
    sim->add_option("--lattice-sizes", cfg.lattice_sizes)->delimiter(',');
    sim->add_option("--error-rates", rates, "a:b:n or a comma list");
    sim->add_option("--trials", cfg.trials);
    sim->add_option("--noise-position", position)->check(CLI::IsMember({"before", "after"}));
    sim->add_option("--ccz", ccz)->check(CLI::IsMember({"on", "off"}));
    sim->add_option("--seed", cfg.seed);
    sim->add_option("--workers", cfg.workers);
    sim->add_option("--out", cfg.output_dir);
    sim->add_option("--max-bp-iters", cfg.bposd.max_iters);
    sim->add_option("--osd-order", cfg.bposd.osd_order);

    std::vector<std::string> in{"."};
    std::string variant = "noccz", code = "oct", basis = "z";
    int bootstrap = 500;
    auto *fitc = app.add_subcommand("fit", "finite-size scaling fit of a (variant, code, basis) data set");
    fitc->add_option("--in", in, "data directories, merged")->delimiter(',');
    fitc->add_option("--variant", variant)->check(CLI::IsMember({"noccz", "before", "after"}));
    fitc->add_option("--code", code)->check(CLI::IsMember({"oct", "cub1", "cub2"}));
    fitc->add_option("--basis", basis)->check(CLI::IsMember({"x", "z"}));
    fitc->add_option("--bootstrap", bootstrap);

    std::string membranes;
    uint64_t samples = 10000, oseed = 1;
    int oL = 7;
    auto *orc = app.add_subcommand("oracle", "sample CCZ-induced syndromes for planted membranes");
    orc->add_option("--membranes", membranes, "code:normal:plane:lo0,lo1:hi0,hi1[;...]")->required();
    orc->add_option("--samples", samples);
    orc->add_option("--lattice-size", oL);
    orc->add_option("--seed", oseed);

    std::string svg = "plot.svg";
    auto *pl = app.add_subcommand("plot", "log-scale failure curves as SVG");
    pl->add_option("--in", in, "data directories, merged")->delimiter(',');
    pl->add_option("--out", svg);
    pl->add_option("--variant", variant)->check(CLI::IsMember({"noccz", "before", "after"}));
    pl->add_option("--code", code)->check(CLI::IsMember({"oct", "cub1", "cub2"}));
    pl->add_option("--basis", basis)->check(CLI::IsMember({"x", "z"}));

    int dL = 3;
    auto *dump = app.add_subcommand("dump", "print the lattice, codes and jump plan");
    dump->add_option("--lattice-size", dL);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*sim) {
            cfg.error_rates = parse_rates(rates);
            cfg.position = position == "before" ? NoisePosition::BeforeCCZ : NoisePosition::AfterCCZ;
            cfg.ccz_enabled = ccz == "on";
            return simulate(cfg);
        }
        if (*fitc) {
            return fit(in, variant, code, basis, bootstrap);
        }
        if (*orc) {
            return oracle(oL, membranes, samples, oseed);
        }
        if (*pl) {
            return plot(in, svg, variant, code, basis);
        }
        if (*dump) {
            dump_lattice(std::cout, *build_tri_lattice(dL));
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
