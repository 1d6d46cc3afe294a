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


#ifndef CCZSIM_IO_HPP
#define CCZSIM_IO_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cczsim/ccz.hpp"
#include "cczsim/experiment.hpp"
#include "json.hpp"

#ifndef CCZSIM_GIT_DESCRIBE
#define CCZSIM_GIT_DESCRIBE "unknown"
#endif

namespace cczsim {

inline std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string csv_name(const std::string &variant, CodeId c, int L) {
    return "data_" + variant + "_" + code_name(c) + "_L" + std::to_string(L) + ".csv";
}

inline constexpr const char *CSV_HEADER = "p,trials,fails_x,fails_z,pfail_x,err_x,pfail_z,err_z";

inline std::string csv_text(const std::vector<DataRow> &rows, CodeId code) {
    const int c = static_cast<int>(code);
    std::ostringstream out;
    out << CSV_HEADER << '\n';
    for (const auto &r : rows) {
        out << fmt6(r.p) << ',' << r.trials << ',' << r.fails_x[c] << ',' << r.fails_z[c] << ',' << fmt6(r.pfail_x(c))
            << ',' << fmt6(r.err_x(c)) << ',' << fmt6(r.pfail_z(c)) << ',' << fmt6(r.err_z(c)) << '\n';
    }
    return out.str();
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    f << text;
    if (!f) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

/// One CSV per code for a finished lattice size.
inline void write_tables(const std::filesystem::path &dir, const std::string &variant, const SweepTable &t) {
    std::filesystem::create_directories(dir);
    for (auto c : ALL_CODES) {
        write_text(dir / csv_name(variant, c, t.L), csv_text(t.rows, c));
    }
}

/// Per-rate CZ and residual-prep statistics, normalised per qubit and code.
inline void write_diagnostics(const std::filesystem::path &dir, const std::string &variant, const SweepTable &t,
                              size_t n) {
    std::ostringstream out;
    out << "p,trials,q,p_res\n";
    for (const auto &r : t.rows) {
        const double norm = static_cast<double>(r.trials) * 3.0 * static_cast<double>(n);
        out << fmt6(r.p) << ',' << r.trials << ',' << fmt6(static_cast<double>(r.cz_flips) / norm) << ','
            << fmt6(static_cast<double>(r.prep_residual) / norm) << '\n';
    }
    write_text(dir / ("diag_" + variant + "_L" + std::to_string(t.L) + ".csv"), out.str());
}

inline nlohmann::ordered_json manifest_json(const ExperimentConfig &cfg) {
    nlohmann::ordered_json j;
    j["git_describe"] = CCZSIM_GIT_DESCRIBE;
    j["variant"] = variant_name(cfg.ccz_enabled, cfg.position);
    j["lattice_sizes"] = cfg.lattice_sizes;
    j["error_rates"] = cfg.error_rates;
    j["trials"] = cfg.trials;
    j["noise_position"] = cfg.position == NoisePosition::BeforeCCZ ? "before" : "after";
    j["ccz"] = cfg.ccz_enabled;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["decoders"] = {{"prep", "bp-osd"},
                     {"bp_max_iters", cfg.bposd.max_iters},
                     {"osd_order", cfg.bposd.osd_order},
                     {"bp_prior_clamp", {1e-3, 0.3}},
                     {"syndrome_repair", "mwpm"},
                     {"jump", "mwpm, inner qubits only"},
                     {"final_2d", "mwpm"}};
    j["fit"] = {{"window", "rates within 30% of the coarse crossing"}, {"bootstrap_resamples", 500}};
    return j;
}

inline void write_manifest(const std::filesystem::path &dir, const ExperimentConfig &cfg) {
    std::filesystem::create_directories(dir);
    write_text(dir / ("manifest_" + variant_name(cfg.ccz_enabled, cfg.position) + ".json"),
               manifest_json(cfg).dump(2) + "\n");
}

struct CsvRow {
    double p;
    uint64_t trials, fails_x, fails_z;
};

inline std::vector<CsvRow> read_csv(const std::filesystem::path &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::string line;
    std::getline(f, line);
    if (line != CSV_HEADER) {
        throw std::runtime_error(path.string() + ": unexpected header");
    }
    std::vector<CsvRow> out;
    while (std::getline(f, line)) {
        if (line.empty()) {
            continue;
        }
        CsvRow r{};
        if (std::sscanf(line.c_str(), "%lf,%lu,%lu,%lu", &r.p, &r.trials, &r.fails_x, &r.fails_z) != 4) {
            throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
        }
        out.push_back(r);
    }
    return out;
}

/// All data files for one (variant, code), keyed by L.
inline std::map<int, std::vector<CsvRow>> read_tables(const std::filesystem::path &dir, const std::string &variant,
                                                      CodeId code) {
    std::map<int, std::vector<CsvRow>> out;
    const std::regex pat("data_" + variant + "_" + code_name(code) + "_L([0-9]+)\\.csv");
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pat)) {
            out[std::stoi(m[1])] = read_csv(entry.path());
        }
    }
    return out;
}

/// Tables from several run directories, merged per L. A rate may appear only once per L.
inline std::map<int, std::vector<CsvRow>> read_tables(const std::vector<std::string> &dirs, const std::string &variant,
                                                      CodeId code) {
    std::map<int, std::vector<CsvRow>> out;
    for (const auto &dir : dirs) {
        for (auto &[L, rows] : read_tables(std::filesystem::path(dir), variant, code)) {
            auto &dst = out[L];
            for (const auto &r : rows) {
                for (const auto &have : dst) {
                    if (have.p == r.p) {
                        throw std::runtime_error("rate " + fmt6(r.p) + " appears twice for L=" + std::to_string(L));
                    }
                }
                dst.push_back(r);
            }
        }
    }
    for (auto &[L, rows] : out) {
        std::sort(rows.begin(), rows.end(), [](const CsvRow &a, const CsvRow &b) { return a.p < b.p; });
    }
    return out;
}

inline std::vector<FitPoint> fit_points(const std::map<int, std::vector<CsvRow>> &tables, char basis) {
    if (basis != 'x' && basis != 'z') {
        throw std::invalid_argument("basis must be x or z");
    }
    std::vector<FitPoint> out;
    for (const auto &[L, rows] : tables) {
        for (const auto &r : rows) {
            out.push_back({L, r.p, basis == 'x' ? r.fails_x : r.fails_z, r.trials});
        }
    }
    return out;
}

/// Membranes as "code:normal:plane:lo0,lo1:hi0,hi1", several joined by ';'.
inline std::vector<MembraneSpec> parse_membrane_specs(const std::string &text) {
    std::vector<MembraneSpec> out;
    std::stringstream all(text);
    std::string item;
    const std::regex pat(R"(\s*(\w+):(\d):(-?\d+):(-?\d+),(-?\d+):(-?\d+),(-?\d+)\s*)");
    while (std::getline(all, item, ';')) {
        if (item.find_first_not_of(" ") == std::string::npos) {
            continue;
        }
        std::smatch m;
        if (!std::regex_match(item, m, pat)) {
            throw std::invalid_argument("bad membrane spec '" + item + "'");
        }
        MembraneSpec s{parse_code(m[1]), std::stoi(m[2]), std::stoi(m[3]), {std::stoi(m[4]), std::stoi(m[5])},
                       {std::stoi(m[6]), std::stoi(m[7])}};
        if (s.normal > 2) {
            throw std::invalid_argument("membrane normal must be 0, 1 or 2");
        }
        out.push_back(s);
    }
    if (out.empty()) {
        throw std::invalid_argument("no membranes given");
    }
    return out;
}

/// Log-scale p_fail against p, one polyline per lattice size.
inline std::string svg_plot(const std::vector<FitPoint> &pts, const std::string &title) {
    const double W = 640, H = 480, ml = 70, mr = 90, mt = 40, mb = 50;
    double pmin = 1e9, pmax = -1e9, fmin = 1.0;
    for (const auto &pt : pts) {
        pmin = std::min(pmin, pt.p);
        pmax = std::max(pmax, pt.p);
        if (pt.fails > 0) {
            fmin = std::min(fmin, pt.pfail());
        }
    }
    if (pts.empty() || pmax <= pmin) {
        pmin = 0;
        pmax = 1;
    }
    const double lmin = std::floor(std::log10(fmin)), lmax = 0;
    auto X = [&](double p) { return ml + (p - pmin) / (pmax - pmin) * (W - ml - mr); };
    auto Y = [&](double f) {
        double l = std::log10(std::max(f, std::pow(10.0, lmin)));
        return mt + (lmax - l) / (lmax - lmin) * (H - mt - mb);
    };
    static const char *colours[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    for (int d = static_cast<int>(lmin); d <= 0; d++) {
        double y = Y(std::pow(10.0, d));
        s << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"12\">1e" << d
          << "</text>\n";
    }
    for (int k = 0; k <= 4; k++) {
        double p = pmin + (pmax - pmin) * k / 4;
        s << "<text x=\"" << X(p) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\" font-size=\"12\">"
          << fmt6(p) << "</text>\n";
    }
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"13\">p</text>\n";
    std::map<int, std::vector<const FitPoint *>> byL;
    for (const auto &pt : pts) {
        byL[pt.L].push_back(&pt);
    }
    int k = 0;
    for (auto &[L, row] : byL) {
        std::sort(row.begin(), row.end(), [](auto a, auto b) { return a->p < b->p; });
        const char *col = colours[k++ % 7];
        s << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
        for (auto pt : row) {
            s << X(pt->p) << ',' << Y(pt->pfail()) << ' ';
        }
        s << "\"/>\n";
        for (auto pt : row) {
            s << "<circle cx=\"" << X(pt->p) << "\" cy=\"" << Y(pt->pfail()) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        }
        s << "<text x=\"" << W - mr + 10 << "\" y=\"" << mt + 18 * k << "\" fill=\"" << col
          << "\" font-size=\"13\">L=" << L << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace cczsim

#endif
