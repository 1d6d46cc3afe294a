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

#ifndef CCZSIM_MATCHING_HPP
#define CCZSIM_MATCHING_HPP

#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cczsim/blossom.hpp"
#include "cczsim/gf2.hpp"

namespace cczsim {

/// Undirected graph whose nodes are checks plus one virtual boundary node. Each edge
/// carries a non-negative weight and the correction bits it toggles.
struct MatchingGraph {
    struct Edge {
        uint32_t u;
        uint32_t v;
        uint32_t weight;
        std::vector<uint32_t> support;
    };

    size_t num_nodes = 0;  // includes the boundary node
    uint32_t boundary = 0;
    size_t num_bits = 0;  // length of correction vectors
    std::vector<Edge> edges;

    /// Graph of a check matrix with at most two ones per column. Columns touching one
    /// check become boundary edges; empty columns are dropped.
    static MatchingGraph from_check_matrix(const SparseMatrix &h) {
        MatchingGraph g;
        g.num_nodes = h.num_rows() + 1;
        g.boundary = static_cast<uint32_t>(h.num_rows());
        g.num_bits = h.num_cols();
        for (uint32_t c = 0; c < h.num_cols(); c++) {
            const auto &col = h.col(c);
            if (col.size() > 2) {
                throw std::invalid_argument("check matrix column has more than two ones");
            }
            if (col.size() == 2) {
                g.edges.push_back({col[0], col[1], 1, {c}});
            } else if (col.size() == 1) {
                g.edges.push_back({col[0], g.boundary, 1, {c}});
            }
        }
        return g;
    }
};

/// Exact minimum-weight perfect matching decoder over a MatchingGraph.
class MatchingDecoder {
   public:
    static constexpr uint32_t INF = std::numeric_limits<uint32_t>::max();

    explicit MatchingDecoder(MatchingGraph graph) : g_(std::move(graph)) {
        adj_.assign(g_.num_nodes, {});
        unit_ = true;
        for (uint32_t e = 0; e < g_.edges.size(); e++) {
            const auto &ed = g_.edges[e];
            if (ed.u >= g_.num_nodes || ed.v >= g_.num_nodes) {
                throw std::invalid_argument("matching graph edge out of range");
            }
            adj_[ed.u].push_back({ed.v, e});
            adj_[ed.v].push_back({ed.u, e});
            unit_ &= ed.weight == 1;
        }
        for (auto &a : adj_) {
            std::stable_sort(a.begin(), a.end(), [](const Arc &x, const Arc &y) { return x.to < y.to; });
        }
        // Distance to the boundary and the first edge of a shortest boundary path.
        boundary_dist_.assign(g_.num_nodes, INF);
        boundary_edge_.assign(g_.num_nodes, UINT32_MAX);
        shortest_paths(g_.boundary, INF, boundary_dist_, boundary_edge_, true);
    }

    const MatchingGraph &graph() const { return g_; }
    uint32_t boundary_distance(uint32_t node) const { return boundary_dist_[node]; }

    /// Correction for a syndrome over the check nodes (boundary excluded).
    BitVec decode(const BitVec &syndrome) const { return decode_defects(syndrome.ones()); }

    /// Correction for an explicit defect list. Also reports the matching weight.
    BitVec decode_defects(const std::vector<uint32_t> &defects, uint64_t *total_weight = nullptr) const {
        BitVec correction(g_.num_bits);
        uint64_t weight = 0;
        const size_t m = defects.size();
        if (m == 0) {
            if (total_weight) {
                *total_weight = 0;
            }
            return correction;
        }
        for (auto d : defects) {
            if (d >= g_.num_nodes || d == g_.boundary) {
                throw std::invalid_argument("defect is not a check node");
            }
        }
        uint32_t max_bd = 0;
        for (auto d : defects) {
            if (boundary_dist_[d] != INF) {
                max_bd = std::max(max_bd, boundary_dist_[d]);
            }
        }

        // Pairwise distances, limited to pairs cheaper than sending both to the boundary.
        std::vector<int32_t> slot(g_.num_nodes, -1);
        for (size_t i = 0; i < m; i++) {
            if (slot[defects[i]] >= 0) {
                throw std::invalid_argument("duplicate defect");
            }
            slot[defects[i]] = static_cast<int32_t>(i);
        }
        struct Pair {
            uint32_t i, j, d;
        };
        std::vector<Pair> pairs;
        std::vector<uint32_t> dist(g_.num_nodes, INF), via(g_.num_nodes, UINT32_MAX);
        for (size_t i = 0; i < m; i++) {
            uint32_t bi = boundary_dist_[defects[i]];
            uint32_t limit = bi == INF ? INF : bi + max_bd;
            auto touched = shortest_paths(defects[i], limit, dist, via, false);
            for (auto node : touched) {
                int32_t j = slot[node];
                if (j >= 0 && j != static_cast<int32_t>(i)) {
                    uint32_t bj = boundary_dist_[node];
                    uint64_t both = (bi == INF || bj == INF) ? UINT64_MAX : uint64_t{bi} + bj;
                    if (dist[node] < both) {
                        auto lo = static_cast<uint32_t>(std::min<size_t>(i, j));
                        auto hi = static_cast<uint32_t>(std::max<size_t>(i, j));
                        pairs.push_back({lo, hi, dist[node]});
                    }
                }
            }
            for (auto node : touched) {
                dist[node] = INF;
                via[node] = UINT32_MAX;
            }
        }

        std::sort(pairs.begin(), pairs.end(), [](const Pair &x, const Pair &y) {
            return x.i != y.i ? x.i < y.i : x.j < y.j;
        });
        pairs.erase(std::unique(pairs.begin(), pairs.end(),
                                [](const Pair &x, const Pair &y) { return x.i == y.i && x.j == y.j; }),
                    pairs.end());

        // Connected components of the pruned defect graph.
        std::vector<uint32_t> parent(m);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const auto &p : pairs) {
            uint32_t a = find(p.i), b = find(p.j);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
        std::vector<std::vector<uint32_t>> comp_members(m);
        for (uint32_t i = 0; i < m; i++) {
            comp_members[find(i)].push_back(i);
        }
        std::vector<std::vector<const Pair *>> comp_pairs(m);
        for (const auto &p : pairs) {
            comp_pairs[find(p.i)].push_back(&p);
        }

        std::vector<int32_t> local(m, -1);
        for (uint32_t root = 0; root < m; root++) {
            const auto &members = comp_members[root];
            if (members.empty()) {
                continue;
            }
            const int k = static_cast<int>(members.size());
            for (int a = 0; a < k; a++) {
                local[members[a]] = a;
            }
            // Vertices 0..k-1 are defects, k+a is the boundary twin of defect a.
            std::vector<int> twin(k, -1);
            int nv = k;
            uint32_t max_w = 0;
            for (int a = 0; a < k; a++) {
                uint32_t bd = boundary_dist_[defects[members[a]]];
                if (bd != INF) {
                    twin[a] = nv++;
                    max_w = std::max(max_w, bd);
                }
            }
            for (const Pair *p : comp_pairs[root]) {
                max_w = std::max(max_w, p->d);
            }
            const int64_t big = int64_t{max_w} + 1;
            std::vector<WeightedEdge> edges;
            for (const Pair *p : comp_pairs[root]) {
                int a = local[p->i], b = local[p->j];
                edges.push_back({a, b, big - p->d});
                if (twin[a] >= 0 && twin[b] >= 0) {
                    edges.push_back({twin[a], twin[b], big});
                }
            }
            for (int a = 0; a < k; a++) {
                if (twin[a] >= 0) {
                    edges.push_back({a, twin[a], big - boundary_dist_[defects[members[a]]]});
                }
            }
            std::vector<int> mate = max_weight_matching(nv, edges, true);
            for (int a = 0; a < k; a++) {
                int b = mate[a];
                if (b < 0) {
                    throw std::runtime_error("defect set is not matchable");
                }
                uint32_t da = defects[members[a]];
                if (b >= k) {
                    weight += boundary_dist_[da];
                    apply_boundary_path(da, correction);
                } else if (a < b) {
                    weight += apply_pair_path(da, defects[members[b]], correction, dist, via);
                }
            }
        }
        if (total_weight) {
            *total_weight = weight;
        }
        return correction;
    }

   private:
    struct Arc {
        uint32_t to;
        uint32_t edge;
    };

    // Shortest paths from `source` up to distance `limit`, never expanding through the
    // boundary node (unless it is the source). Returns the touched nodes.
    std::vector<uint32_t> shortest_paths(uint32_t source, uint32_t limit, std::vector<uint32_t> &dist,
                                         std::vector<uint32_t> &via, bool from_boundary,
                                         uint32_t target = UINT32_MAX) const {
        std::vector<uint32_t> touched{source};
        dist[source] = 0;
        auto expandable = [&](uint32_t node) { return node != g_.boundary || (from_boundary && node == source); };
        if (unit_) {
            std::deque<uint32_t> frontier{source};
            while (!frontier.empty()) {
                uint32_t u = frontier.front();
                frontier.pop_front();
                if (!expandable(u) || dist[u] >= limit) {
                    continue;
                }
                for (const auto &arc : adj_[u]) {
                    if (dist[arc.to] == INF) {
                        dist[arc.to] = dist[u] + 1;
                        via[arc.to] = arc.edge;
                        touched.push_back(arc.to);
                        frontier.push_back(arc.to);
                        if (arc.to == target) {
                            return touched;
                        }
                    }
                }
            }
            return touched;
        }
        using Item = std::pair<uint32_t, uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.push({0, source});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (u == target) {
                break;
            }
            if (d != dist[u] || !expandable(u) || d >= limit) {
                continue;
            }
            for (const auto &arc : adj_[u]) {
                uint32_t nd = d + g_.edges[arc.edge].weight;
                if (nd < dist[arc.to]) {
                    if (dist[arc.to] == INF) {
                        touched.push_back(arc.to);
                    }
                    dist[arc.to] = nd;
                    via[arc.to] = arc.edge;
                    heap.push({nd, arc.to});
                }
            }
        }
        return touched;
    }

    void toggle(uint32_t edge, BitVec &out) const {
        for (auto b : g_.edges[edge].support) {
            out.flip(b);
        }
    }
    uint32_t other(uint32_t edge, uint32_t node) const {
        const auto &e = g_.edges[edge];
        return e.u == node ? e.v : e.u;
    }

    void apply_boundary_path(uint32_t node, BitVec &out) const {
        while (node != g_.boundary) {
            uint32_t e = boundary_edge_[node];
            toggle(e, out);
            node = other(e, node);
        }
    }

    uint32_t apply_pair_path(uint32_t a, uint32_t b, BitVec &out, std::vector<uint32_t> &dist,
                             std::vector<uint32_t> &via) const {
        auto touched = shortest_paths(a, INF, dist, via, false, b);
        if (dist[b] == INF) {
            throw std::logic_error("matched defects are disconnected");
        }
        uint32_t d = dist[b];
        for (uint32_t node = b; node != a;) {
            uint32_t e = via[node];
            toggle(e, out);
            node = other(e, node);
        }
        for (auto node : touched) {
            dist[node] = INF;
            via[node] = UINT32_MAX;
        }
        return d;
    }

    MatchingGraph g_;
    bool unit_ = true;
    std::vector<std::vector<Arc>> adj_;
    std::vector<uint32_t> boundary_dist_;
    std::vector<uint32_t> boundary_edge_;
};

/// Free-function form: minimum-weight perfect matching correction for the given defects.
inline BitVec mwpm(const MatchingDecoder &decoder, const std::vector<uint32_t> &defects) {
    return decoder.decode_defects(defects);
}

}  // namespace cczsim

#endif
