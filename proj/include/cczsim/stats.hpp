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


#ifndef CCZSIM_STATS_HPP
#define CCZSIM_STATS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unsupported/Eigen/NonLinearOptimization>
#include <vector>

namespace cczsim {

struct Interval {
    double center;
    double halfwidth;
};

inline Interval agresti_coull(uint64_t k, uint64_t n, double z = 1.96) {
    if (n < 1 || k > n) {
        throw std::invalid_argument("Agresti-Coull needs 0 <= k <= n and n >= 1");
    }
    if (!(z >= 0)) {
        throw std::invalid_argument("quantile must be non-negative");
    }
    const double z2 = z * z;
    const double nt = static_cast<double>(n) + z2;
    const double pt = (static_cast<double>(k) + z2 / 2) / nt;
    return {pt, z * std::sqrt(pt * (1 - pt) / nt)};
}

/// Failure count at one (L, p) for a single code and basis.
struct FitPoint {
    int L;
    double p;
    uint64_t fails;
    uint64_t trials;

    double pfail() const { return static_cast<double>(fails) / static_cast<double>(trials); }
};

struct FitOptions {
    double window = 0.3;  // relative half-width around the coarse crossing
    int bootstrap = 500;
    uint64_t seed = 1;
};

struct FitResult {
    double pth = 0, nu = 0, a0 = 0, a1 = 0, a2 = 0;
    double pth_error = 0;
    double crossing = 0;  // coarse estimate the window is centred on
    double window_lo = 0, window_hi = 0;
    size_t points_used = 0;
    double chi2 = 0;
    bool degenerate = false;  // no crossing between consecutive sizes
    bool converged = false;
    int bootstrap_ok = 0;
    int bootstrap_failed = 0;
};

namespace detail {

inline std::map<int, std::map<double, const FitPoint *>> by_size(const std::vector<FitPoint> &pts) {
    std::map<int, std::map<double, const FitPoint *>> out;
    for (const auto &pt : pts) {
        if (pt.trials < 1 || pt.fails > pt.trials) {
            throw std::invalid_argument("fit point with invalid counts");
        }
        out[pt.L][pt.p] = &pt;
    }
    return out;
}

/// Rates where consecutive sizes cross, going from "larger is better" to "larger is worse".
inline std::vector<double> crossings(const std::vector<FitPoint> &pts) {
    auto sizes = by_size(pts);
    std::vector<double> out;
    for (auto it = sizes.begin(); it != sizes.end(); ++it) {
        auto nx = std::next(it);
        if (nx == sizes.end()) {
            break;
        }
        std::vector<std::pair<double, double>> diff;
        for (const auto &[p, small] : it->second) {
            auto big = nx->second.find(p);
            if (big != nx->second.end()) {
                diff.push_back({p, big->second->pfail() - small->pfail()});
            }
        }
        for (size_t i = 0; i + 1 < diff.size(); i++) {
            auto [p0, d0] = diff[i];
            auto [p1, d1] = diff[i + 1];
            if (d0 < 0 && d1 > 0) {
                out.push_back(p0 + (p1 - p0) * (-d0) / (d1 - d0));
            }
        }
    }
    return out;
}

// Weighted residuals of the quadratic finite-size ansatz. x = (a0, a1, a2, pth, nu).
struct AnsatzFunctor {
    using Scalar = double;
    const std::vector<FitPoint> &pts;
    std::vector<double> fails;
    std::vector<double> sigma;

    AnsatzFunctor(const std::vector<FitPoint> &points, const std::vector<double> &k) : pts(points), fails(k) {
        for (size_t i = 0; i < pts.size(); i++) {
            auto ci = agresti_coull(static_cast<uint64_t>(k[i]), pts[i].trials, 1.0);
            sigma.push_back(ci.halfwidth);
        }
    }
    int inputs() const { return 5; }
    int values() const { return static_cast<int>(pts.size()); }

    int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &f) const {
        for (size_t i = 0; i < pts.size(); i++) {
            const double s = std::pow(pts[i].L, 1.0 / x[4]);
            const double u = (pts[i].p - x[3]) * s;
            const double model = x[0] + x[1] * u + x[2] * u * u;
            f[static_cast<Eigen::Index>(i)] = (model - fails[i] / static_cast<double>(pts[i].trials)) / sigma[i];
        }
        return 0;
    }
    int df(const Eigen::VectorXd &x, Eigen::MatrixXd &J) const {
        for (size_t i = 0; i < pts.size(); i++) {
            const auto r = static_cast<Eigen::Index>(i);
            const double lnL = std::log(pts[i].L);
            const double s = std::pow(pts[i].L, 1.0 / x[4]);
            const double u = (pts[i].p - x[3]) * s;
            const double dmodel_du = x[1] + 2 * x[2] * u;
            J(r, 0) = 1 / sigma[i];
            J(r, 1) = u / sigma[i];
            J(r, 2) = u * u / sigma[i];
            J(r, 3) = dmodel_du * (-s) / sigma[i];
            J(r, 4) = dmodel_du * u * lnL * (-1.0 / (x[4] * x[4])) / sigma[i];
        }
        return 0;
    }
};

inline bool lm_fit(const std::vector<FitPoint> &pts, const std::vector<double> &k, Eigen::VectorXd &x, double *chi2) {
    AnsatzFunctor f(pts, k);
    Eigen::LevenbergMarquardt<AnsatzFunctor> lm(f);
    lm.parameters.maxfev = 2000;
    auto status = lm.minimize(x);
    using namespace Eigen::LevenbergMarquardtSpace;
    bool ok = status == RelativeReductionTooSmall || status == RelativeErrorTooSmall ||
              status == RelativeErrorAndReductionTooSmall || status == CosinusTooSmall || status == FtolTooSmall ||
              status == XtolTooSmall || status == GtolTooSmall;
    Eigen::VectorXd res(f.values());
    f(x, res);
    if (chi2) {
        *chi2 = res.squaredNorm();
    }
    return ok && x.allFinite() && res.allFinite() && x[4] > 0;
}

}  // namespace detail

/// Finite-size scaling fit of p_fail = a0 + a1 u + a2 u^2 with u = (p - pth) L^(1/nu).
/// Points are restricted to a window around the coarse crossing of consecutive sizes.
inline FitResult fit_threshold(const std::vector<FitPoint> &points, const FitOptions &opt = {}) {
    FitResult r;
    auto cross = detail::crossings(points);
    if (cross.empty()) {
        r.degenerate = true;
        return r;
    }
    std::sort(cross.begin(), cross.end());
    const size_t mid = cross.size() / 2;
    r.crossing = cross.size() % 2 ? cross[mid] : (cross[mid - 1] + cross[mid]) / 2;
    r.window_lo = r.crossing * (1 - opt.window);
    r.window_hi = r.crossing * (1 + opt.window);

    std::vector<FitPoint> pts;
    std::set<int> sizes;
    std::set<double> rates;
    for (const auto &pt : points) {
        if (pt.p >= r.window_lo && pt.p <= r.window_hi) {
            pts.push_back(pt);
            sizes.insert(pt.L);
            rates.insert(pt.p);
        }
    }
    if (sizes.size() < 3 || rates.size() < 4) {
        throw std::invalid_argument("fit needs at least 3 lattice sizes and 4 rates inside the window");
    }
    r.points_used = pts.size();

    // Starting point: nu = 1 at the crossing, quadratic coefficients by linear least squares.
    Eigen::MatrixXd A(pts.size(), 3);
    Eigen::VectorXd b(pts.size());
    for (size_t i = 0; i < pts.size(); i++) {
        const double u = (pts[i].p - r.crossing) * pts[i].L;
        A.row(static_cast<Eigen::Index>(i)) << 1, u, u * u;
        b[static_cast<Eigen::Index>(i)] = pts[i].pfail();
    }
    Eigen::Vector3d a = A.colPivHouseholderQr().solve(b);
    Eigen::VectorXd x(5);
    x << a[0], a[1], a[2], r.crossing, 1.0;

    std::vector<double> k;
    for (const auto &pt : pts) {
        k.push_back(static_cast<double>(pt.fails));
    }
    r.converged = detail::lm_fit(pts, k, x, &r.chi2);
    r.a0 = x[0];
    r.a1 = x[1];
    r.a2 = x[2];
    r.pth = x[3];
    r.nu = x[4];

    std::mt19937_64 gen(opt.seed);
    std::vector<double> boot;
    for (int bi = 0; bi < opt.bootstrap; bi++) {
        std::vector<double> kb;
        for (const auto &pt : pts) {
            std::binomial_distribution<uint64_t> draw(pt.trials, pt.pfail());
            kb.push_back(static_cast<double>(draw(gen)));
        }
        Eigen::VectorXd xb = x;
        if (detail::lm_fit(pts, kb, xb, nullptr)) {
            boot.push_back(xb[3]);
        } else {
            r.bootstrap_failed++;
        }
    }
    r.bootstrap_ok = static_cast<int>(boot.size());
    if (boot.size() >= 2) {
        double mean = 0;
        for (double v : boot) {
            mean += v;
        }
        mean /= static_cast<double>(boot.size());
        double var = 0;
        for (double v : boot) {
            var += (v - mean) * (v - mean);
        }
        r.pth_error = std::sqrt(var / static_cast<double>(boot.size() - 1));
    }
    return r;
}

/// Least-squares slope of p_fail against p for each size, over rates in [lo, hi].
inline std::map<int, double> linear_slopes(const std::vector<FitPoint> &points, double lo, double hi) {
    std::map<int, double> out;
    for (const auto &[L, row] : detail::by_size(points)) {
        double n = 0, sp = 0, sf = 0, spp = 0, spf = 0;
        for (const auto &[p, pt] : row) {
            if (p < lo || p > hi) {
                continue;
            }
            n += 1;
            sp += p;
            sf += pt->pfail();
            spp += p * p;
            spf += p * pt->pfail();
        }
        const double den = n * spp - sp * sp;
        if (n >= 2 && den > 0) {
            out[L] = (n * spf - sp * sf) / den;
        }
    }
    return out;
}

struct ThresholdShift {
    int L1, L2;
    double dp;
    bool criterion;  // m_L2 / m_L1 < q(L1) / q(L2)
};

struct EffectiveRateReport {
    double pth_iid = 0;
    double pth_true = 0;
    std::vector<ThresholdShift> shifts;
};

/// Crossing shifts when size-dependent extra error q(L) is added to an IID rate whose
/// curves cross at pth_iid with local slopes m(L).
inline EffectiveRateReport effective_rate_diagnostics(double pth_iid, const std::map<int, double> &slopes,
                                                      const std::map<int, double> &q) {
    if (slopes.size() < 2) {
        throw std::invalid_argument("need slopes for at least two lattice sizes");
    }
    EffectiveRateReport rep;
    rep.pth_iid = pth_iid;
    rep.pth_true = std::numeric_limits<double>::infinity();
    for (auto i = slopes.begin(); i != slopes.end(); ++i) {
        for (auto j = std::next(i); j != slopes.end(); ++j) {
            auto q1 = q.find(i->first), q2 = q.find(j->first);
            if (q1 == q.end() || q2 == q.end()) {
                throw std::invalid_argument("missing q estimate for a lattice size");
            }
            const double m1 = i->second, m2 = j->second;
            if (m1 == m2) {
                throw std::invalid_argument("equal slopes: curves are parallel and never cross");
            }
            ThresholdShift s{i->first, j->first, (m2 * q2->second - m1 * q1->second) / (m1 - m2), false};
            s.criterion = q2->second > 0 && m2 / m1 < q1->second / q2->second;
            rep.pth_true = std::min(rep.pth_true, pth_iid + s.dp);
            rep.shifts.push_back(s);
        }
    }
    return rep;
}

}  // namespace cczsim

#endif
