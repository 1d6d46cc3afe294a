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

// Maximum-weight general matching with Edmonds' blossom algorithm and a primal-dual
// update, O(n^3). Follows the structure of Van Rantwijk's reference implementation.

#ifndef CCZSIM_BLOSSOM_HPP
#define CCZSIM_BLOSSOM_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cczsim {

struct WeightedEdge {
    int u;
    int v;
    int64_t w;
};

namespace detail {

class Blossom {
   public:
    Blossom(int nvertex, const std::vector<WeightedEdge> &edges, bool maxcardinality)
        : nv_(nvertex), edges_(edges), maxcard_(maxcardinality) {}

    std::vector<int> solve() {
        const int nv = nv_;
        const int ne = static_cast<int>(edges_.size());
        std::vector<int> result(nv, -1);
        if (ne == 0) {
            return result;
        }
        int64_t maxweight = 0;
        for (auto &e : edges_) {
            if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= nv || e.v >= nv) {
                throw std::invalid_argument("blossom: bad edge");
            }
            // Doubling keeps every dual update integral.
            e.w *= 2;
            maxweight = std::max(maxweight, e.w);
        }
        endpoint_.resize(2 * ne);
        for (int p = 0; p < 2 * ne; p++) {
            endpoint_[p] = p % 2 == 0 ? edges_[p / 2].u : edges_[p / 2].v;
        }
        neighbend_.assign(nv, {});
        for (int k = 0; k < ne; k++) {
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
        }
        mate_.assign(nv, -1);
        label_.assign(2 * nv, 0);
        labelend_.assign(2 * nv, -1);
        inblossom_.resize(nv);
        for (int i = 0; i < nv; i++) {
            inblossom_[i] = i;
        }
        blossomparent_.assign(2 * nv, -1);
        blossomchilds_.assign(2 * nv, {});
        blossombase_.assign(2 * nv, -1);
        for (int i = 0; i < nv; i++) {
            blossombase_[i] = i;
        }
        blossomendps_.assign(2 * nv, {});
        bestedge_.assign(2 * nv, -1);
        blossombestedges_.assign(2 * nv, {});
        has_bestedges_.assign(2 * nv, 0);
        unused_.clear();
        for (int b = nv; b < 2 * nv; b++) {
            unused_.push_back(b);
        }
        dualvar_.assign(2 * nv, 0);
        for (int i = 0; i < nv; i++) {
            dualvar_[i] = maxweight;
        }
        allowedge_.assign(ne, 0);

        for (int stage = 0; stage < nv; stage++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv; b < 2 * nv; b++) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < nv; v++) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = 1;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }

                int deltatype = -1;
                int64_t delta = 0;
                int deltaedge = -1, deltablossom = -1;
                if (!maxcard_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv);
                }
                for (int v = 0; v < nv; v++) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        int64_t d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * nv; b++) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        int64_t d = slack(bestedge_[b]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = nv; b < 2 * nv; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    deltatype = 1;
                    delta = std::max<int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv));
                }
                for (int v = 0; v < nv; v++) {
                    int l = label_[inblossom_[v]];
                    if (l == 1) {
                        dualvar_[v] -= delta;
                    } else if (l == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int b = nv; b < 2 * nv; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = 1;
                    int i = edges_[deltaedge].u, j = edges_[deltaedge].v;
                    if (label_[inblossom_[i]] == 0) {
                        std::swap(i, j);
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = 1;
                    queue_.push_back(edges_[deltaedge].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (int b = nv; b < 2 * nv; b++) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        for (int v = 0; v < nv; v++) {
            result[v] = mate_[v] >= 0 ? endpoint_[mate_[v]] : -1;
        }
        return result;
    }

   private:
    int64_t slack(int k) const { return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2 * edges_[k].w; }

    void leaves(int b, std::vector<int> &out) const {
        if (b < nv_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            leaves(t, out);
        }
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    static int wrap(int j, int len) { return ((j % len) + len) % len; }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (int b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[k].u, w = edges_[k].v;
        int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (int leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) {
                queue_.push_back(leaf);
            }
            inblossom_[leaf] = b;
        }
        std::vector<int> bestedgeto(2 * nv_, -1);
        for (int sub : path) {
            std::vector<int> nblist;
            if (!has_bestedges_[sub]) {
                for (int leaf : leaves(sub)) {
                    for (int p : neighbend_[leaf]) {
                        nblist.push_back(p / 2);
                    }
                }
            } else {
                nblist = blossombestedges_[sub];
            }
            for (int kk : nblist) {
                int i = edges_[kk].u, j = edges_[kk].v;
                if (inblossom_[j] == b) {
                    std::swap(i, j);
                }
                int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = kk;
                }
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = 0;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int kk : bestedgeto) {
            if (kk != -1) {
                blossombestedges_[b].push_back(kk);
            }
        }
        has_bestedges_[b] = 1;
        bestedge_[b] = -1;
        for (int kk : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
                bestedge_[b] = kk;
            }
        }
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < nv_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) {
                    inblossom_[leaf] = s;
                }
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto &childs = blossomchilds_[b];
            const auto &endps = blossomendps_[b];
            const int len = static_cast<int>(childs.size());
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endps[wrap(j - endptrick, len)] / 2] = 1;
                j += jstep;
                p = endps[wrap(j - endptrick, len)] ^ endptrick;
                allowedge_[p / 2] = 1;
                j += jstep;
            }
            int bv = childs[wrap(j, len)];
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (childs[wrap(j, len)] != entrychild) {
                bv = childs[wrap(j, len)];
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found >= 0) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= nv_) {
            augment_blossom(t, v);
        }
        auto &childs = blossomchilds_[b];
        auto &endps = blossomendps_[b];
        const int len = static_cast<int>(childs.size());
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = childs[wrap(j, len)];
            int p = endps[wrap(j - endptrick, len)] ^ endptrick;
            if (t >= nv_) {
                augment_blossom(t, endpoint_[p]);
            }
            j += jstep;
            t = childs[wrap(j, len)];
            if (t >= nv_) {
                augment_blossom(t, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
    }

    void augment_matching(int k) {
        int v = edges_[k].u, w = edges_[k].v;
        int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto &sp : starts) {
            int s = sp[0], p = sp[1];
            while (true) {
                int bs = inblossom_[s];
                if (bs >= nv_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= nv_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int nv_;
    std::vector<WeightedEdge> edges_;
    bool maxcard_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<uint8_t> has_bestedges_;
    std::vector<int> unused_;
    std::vector<int64_t> dualvar_;
    std::vector<uint8_t> allowedge_;
    std::vector<int> queue_;
};

}  // namespace detail

/// Maximum-weight matching. With `maxcardinality`, the maximum-weight matching among those
/// of maximum cardinality. Returns the mate of each vertex or -1.
inline std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges,
                                            bool maxcardinality) {
    detail::Blossom solver(num_vertices, edges, maxcardinality);
    return solver.solve();
}

}  // namespace cczsim

#endif
