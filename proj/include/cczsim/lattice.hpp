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

#ifndef CCZSIM_LATTICE_HPP
#define CCZSIM_LATTICE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cczsim/gf2.hpp"

namespace cczsim {

/// All coordinates are doubled so that edge midpoints are integral.
/// A cubic vertex (a,b,c) sits at (2a,2b,2c).
using Coord = std::array<int, 3>;

enum class CodeId : uint8_t { Oct = 0, Cub1 = 1, Cub2 = 2 };
inline constexpr std::array<CodeId, 3> ALL_CODES{CodeId::Oct, CodeId::Cub1, CodeId::Cub2};

inline const char *code_name(CodeId c) {
    switch (c) {
        case CodeId::Oct:
            return "oct";
        case CodeId::Cub1:
            return "cub1";
        case CodeId::Cub2:
            return "cub2";
    }
    return "?";
}

inline CodeId parse_code(const std::string &s) {
    for (auto c : ALL_CODES) {
        if (s == code_name(c)) {
            return c;
        }
    }
    throw std::invalid_argument("unknown code '" + s + "' (expected oct, cub1 or cub2)");
}

struct RectVertex {
    Coord coord;
    uint32_t index;
};

enum class FaceKind : uint8_t { Square, Triangle };

/// A Z-type face. Squares are anchored at the doubled face centre. Triangles are
/// anchored at the doubled centre of the owning cube plus the doubled corner vertex.
struct FaceId {
    FaceKind kind;
    Coord anchor;
    Coord vertex;
    int colour;  // 1 for squares; 2 or 3 for triangles of even or odd cubes.
};

enum class CellKind : uint8_t { Octahedron, Cuboctahedron };

/// An X-type cell. Octahedra are anchored at a doubled cubic vertex,
/// cuboctahedra at a doubled cube centre.
struct CellId {
    CellKind kind;
    Coord anchor;
    int parity;  // (a+b+c) mod 2 of the cube's minimal corner; 0 for octahedra.
};

/// Qubit geometry of one layer used by the collapse sweeps.
enum class LayerKind : uint8_t {
    Single,  // each -1 outcome is pushed down by one generator (chosen from up to two)
    Quad,    // in-plane edges grouped into quadruples
    Verify,  // must already be +1 once the layer above is processed
    Outer,   // the surviving 2D code
};

struct Quadruple {
    // Edges in cyclic order around the face; -1 when truncated by the boundary.
    std::array<int32_t, 4> qubits;
    // gens[i] is the Hz row shared by qubits[i-1] and qubits[i] (indices mod 4); -1 if absent.
    std::array<int32_t, 4> gens;
};

struct JumpPlan {
    int axis;  // collapse direction (coordinate index)
    std::vector<int> layer_coord;
    std::vector<LayerKind> layer_kind;
    std::vector<std::vector<uint32_t>> layers;  // far boundary first, outer layer last
    // Single layers: candidate Hz rows per qubit (second entry -1 if unique).
    std::vector<std::array<int32_t, 2>> push_generators;
    // Quad layers: quadruples indexed by layer.
    std::vector<std::vector<Quadruple>> quads;
};

/// The 2D surface code left on the outer qubits, indexed locally 0..|N|-1.
struct Code2D {
    size_t n = 0;
    SparseMatrix hx;
    SparseMatrix hz;
    std::vector<uint32_t> logical_x;
    std::vector<uint32_t> logical_z;
};

struct CssCode {
    CodeId id;
    size_t n = 0;
    SparseMatrix hx;
    SparseMatrix hz;
    std::vector<CellId> x_cells;
    std::map<Coord, int32_t> x_cell_lookup;  // anchor -> Hx row
    std::vector<FaceId> z_faces;
    std::vector<uint32_t> logical_x;
    std::vector<uint32_t> logical_z;
    // Rows are exact relations among Hz rows (columns index Hz rows).
    SparseMatrix metachecks;

    std::vector<uint32_t> inner;
    std::vector<uint32_t> outer;
    std::vector<int32_t> outer_index;  // qubit -> index in `outer`, or -1
    std::vector<uint8_t> is_outer;
    Code2D code2d;
    JumpPlan jump;

    BitVec logical_x_vec() const { return BitVec::from_indices(n, logical_x); }
    BitVec logical_z_vec() const { return BitVec::from_indices(n, logical_z); }
};

struct TriLattice {
    int L = 0;
    std::vector<RectVertex> sites;
    std::array<CssCode, 3> codes;

    size_t n() const { return sites.size(); }
    const CssCode &code(CodeId c) const { return codes[static_cast<int>(c)]; }
    /// Per-code qubit columns of a site. All codes share one qubit order.
    std::array<uint32_t, 3> correspondence(uint32_t site) const { return {site, site, site}; }
    int32_t qubit_at(const Coord &p) const {
        int side = 2 * L + 1;
        for (int d = 0; d < 3; d++) {
            if (p[d] < 0 || p[d] >= side) {
                return -1;
            }
        }
        return index_[(static_cast<size_t>(p[0]) * side + p[1]) * side + p[2]];
    }

    std::vector<int32_t> index_;
};

namespace detail {

inline Coord add(Coord a, const Coord &b) {
    for (int d = 0; d < 3; d++) {
        a[d] += b[d];
    }
    return a;
}
inline Coord unit(int d, int s = 1) {
    Coord e{0, 0, 0};
    e[d] = s;
    return e;
}
inline Coord scale(Coord a, int s) {
    for (auto &x : a) {
        x *= s;
    }
    return a;
}

struct SupportIndex {
    std::map<std::vector<uint32_t>, int32_t> rows;
    int32_t find(const std::vector<uint32_t> &support) const {
        auto it = rows.find(support);
        return it == rows.end() ? -1 : it->second;
    }
};

class Geometry {
   public:
    explicit Geometry(const TriLattice &lat) : lat_(lat) {}

    std::vector<uint32_t> collect(const std::vector<Coord> &pts) const {
        std::vector<uint32_t> out;
        for (const auto &p : pts) {
            int32_t q = lat_.qubit_at(p);
            if (q >= 0) {
                out.push_back(static_cast<uint32_t>(q));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<Coord> octahedron(const Coord &v) const {
        std::vector<Coord> pts;
        for (int d = 0; d < 3; d++) {
            for (int s : {1, -1}) {
                pts.push_back(add(scale(v, 2), unit(d, s)));
            }
        }
        return pts;
    }
    std::vector<Coord> cube(const Coord &a) const {
        std::vector<Coord> pts;
        for (int d = 0; d < 3; d++) {
            int e = (d + 1) % 3, f = (d + 2) % 3;
            for (int o1 = 0; o1 < 2; o1++) {
                for (int o2 = 0; o2 < 2; o2++) {
                    Coord p = add(scale(a, 2), unit(d));
                    p[e] += 2 * o1;
                    p[f] += 2 * o2;
                    pts.push_back(p);
                }
            }
        }
        return pts;
    }
    /// The three edges of cube `a` meeting at its corner `u`.
    std::vector<Coord> triangle(const Coord &a, const Coord &u) const {
        std::vector<Coord> pts;
        for (int d = 0; d < 3; d++) {
            pts.push_back(add(scale(u, 2), unit(d, u[d] == a[d] ? 1 : -1)));
        }
        return pts;
    }
    /// Face of the unit cube at `a` with normal d lying in the plane through a.
    std::vector<Coord> square(const Coord &a, int d) const {
        std::vector<Coord> pts;
        int e = (d + 1) % 3, f = (d + 2) % 3;
        for (int o = 0; o < 2; o++) {
            Coord p = add(scale(a, 2), unit(e));
            p[f] += 2 * o;
            pts.push_back(p);
            Coord r = add(scale(a, 2), unit(f));
            r[e] += 2 * o;
            pts.push_back(r);
        }
        return pts;
    }

   private:
    const TriLattice &lat_;
};

inline int cube_parity(const Coord &a) { return ((a[0] + a[1] + a[2]) % 2 + 2) % 2; }

// Cuboctahedral X cells of Cub1 sit on odd cubes, those of Cub2 on even cubes.
inline int x_cube_parity(CodeId c) { return c == CodeId::Cub1 ? 1 : 0; }
inline int triangle_parity(CodeId c) { return 1 - x_cube_parity(c); }

// Rough axis of each code: X cells are kept when their centre lies inside the box along it.
inline int rough_axis(CodeId c) { return static_cast<int>(c); }

inline void build_code(TriLattice &lat, CssCode &code) {
    const int L = lat.L;
    const size_t n = lat.n();
    Geometry geo(lat);
    code.n = n;
    const int ax = rough_axis(code.id);
    const int lo = ax == 0 ? 1 : 0;
    const int hi = ax == 0 ? 2 * L - 1 : 2 * L - 2;

    auto on_plane = [&](auto pred) {
        std::vector<uint32_t> out;
        for (const auto &s : lat.sites) {
            if (pred(s.coord)) {
                out.push_back(s.index);
            }
        }
        return out;
    };
    switch (code.id) {
        case CodeId::Oct:
            code.logical_x = on_plane([](const Coord &p) { return p[0] == 1; });
            code.logical_z = on_plane([](const Coord &p) { return p[1] == 0 && p[2] == 0; });
            break;
        case CodeId::Cub1:
            code.logical_x = on_plane([](const Coord &p) { return p[1] == 0; });
            code.logical_z = on_plane([](const Coord &p) { return p[0] == 1 && p[2] == 0; });
            break;
        case CodeId::Cub2:
            code.logical_x = on_plane([](const Coord &p) { return p[2] == 0; });
            code.logical_z = on_plane([](const Coord &p) { return p[0] == 1 && p[1] == 0; });
            break;
    }

    // X cells.
    std::vector<std::vector<uint32_t>> x_rows;
    for (int a = -1; a <= L; a++) {
        for (int b = -1; b <= L; b++) {
            for (int c = -1; c <= L; c++) {
                Coord v{a, b, c};
                if (code.id == CodeId::Oct) {
                    int centre = 2 * v[ax];
                    auto sup = geo.collect(geo.octahedron(v));
                    if (!sup.empty() && centre >= lo && centre <= hi) {
                        code.x_cells.push_back({CellKind::Octahedron, scale(v, 2), 0});
                        x_rows.push_back(std::move(sup));
                    }
                } else if (cube_parity(v) == x_cube_parity(code.id)) {
                    int centre = 2 * v[ax] + 1;
                    auto sup = geo.collect(geo.cube(v));
                    if (!sup.empty() && centre >= lo && centre <= hi) {
                        code.x_cells.push_back({CellKind::Cuboctahedron, add(scale(v, 2), {1, 1, 1}), cube_parity(v)});
                        x_rows.push_back(std::move(sup));
                    }
                }
            }
        }
    }
    code.hx = SparseMatrix(n, x_rows);
    for (size_t r = 0; r < code.x_cells.size(); r++) {
        code.x_cell_lookup[code.x_cells[r].anchor] = static_cast<int32_t>(r);
    }

    // Z faces: every truncated face commuting with the kept X cells and the X logical.
    BitVec lx = code.logical_x_vec();
    std::vector<std::vector<uint32_t>> z_rows;
    SupportIndex seen;
    auto consider = [&](FaceId id, std::vector<uint32_t> sup) {
        if (sup.empty() || lx.parity_at(sup)) {
            return;
        }
        std::map<uint32_t, int> overlap;
        for (auto q : sup) {
            for (auto r : code.hx.col(q)) {
                overlap[r]++;
            }
        }
        for (const auto &kv : overlap) {
            if (kv.second & 1) {
                return;
            }
        }
        if (seen.find(sup) >= 0) {
            return;
        }
        seen.rows.emplace(sup, static_cast<int32_t>(z_rows.size()));
        code.z_faces.push_back(id);
        z_rows.push_back(std::move(sup));
    };
    for (int a = -1; a <= L; a++) {
        for (int b = -1; b <= L; b++) {
            for (int c = -1; c <= L; c++) {
                Coord cub{a, b, c};
                if (code.id == CodeId::Oct) {
                    for (int d = 0; d < 3; d++) {
                        Coord centre = scale(cub, 2);
                        centre[(d + 1) % 3] += 1;
                        centre[(d + 2) % 3] += 1;
                        consider({FaceKind::Square, centre, centre, 1}, geo.collect(geo.square(cub, d)));
                    }
                } else if (cube_parity(cub) == triangle_parity(code.id)) {
                    for (int corner = 0; corner < 8; corner++) {
                        Coord u{a + (corner & 1), b + ((corner >> 1) & 1), c + ((corner >> 2) & 1)};
                        consider({FaceKind::Triangle, add(scale(cub, 2), {1, 1, 1}), scale(u, 2), 2 + cube_parity(cub)},
                                 geo.collect(geo.triangle(cub, u)));
                    }
                }
            }
        }
    }
    code.hz = SparseMatrix(n, z_rows);

    // Metachecks: cubes for the octahedral code; triangle-parity cubes and octahedra otherwise.
    std::vector<std::vector<uint32_t>> meta_rows;
    auto add_relation = [&](const std::vector<int32_t> &faces) {
        std::vector<uint32_t> row;
        BitVec acc(n);
        for (auto f : faces) {
            if (f < 0) {
                continue;
            }
            row.push_back(static_cast<uint32_t>(f));
            for (auto q : code.hz.row(f)) {
                acc.flip(q);
            }
        }
        if (!row.empty() && !acc.any()) {
            meta_rows.push_back(std::move(row));
        }
    };
    for (int a = -1; a <= L; a++) {
        for (int b = -1; b <= L; b++) {
            for (int c = -1; c <= L; c++) {
                Coord v{a, b, c};
                std::vector<int32_t> faces;
                if (code.id == CodeId::Oct) {
                    for (int d = 0; d < 3; d++) {
                        faces.push_back(seen.find(geo.collect(geo.square(v, d))));
                        faces.push_back(seen.find(geo.collect(geo.square(add(v, unit(d)), d))));
                    }
                    add_relation(faces);
                    continue;
                }
                int tp = triangle_parity(code.id);
                if (cube_parity(v) == tp) {
                    for (int corner = 0; corner < 8; corner++) {
                        Coord u{a + (corner & 1), b + ((corner >> 1) & 1), c + ((corner >> 2) & 1)};
                        faces.push_back(seen.find(geo.collect(geo.triangle(v, u))));
                    }
                    add_relation(faces);
                    faces.clear();
                }
                for (int o = 0; o < 8; o++) {
                    Coord cub{a - (o & 1), b - ((o >> 1) & 1), c - ((o >> 2) & 1)};
                    if (cube_parity(cub) == tp) {
                        faces.push_back(seen.find(geo.collect(geo.triangle(cub, v))));
                    }
                }
                add_relation(faces);
            }
        }
    }
    code.metachecks = SparseMatrix(code.hz.num_rows(), meta_rows);

    // Collapse boundary: z = 0 for the octahedral code, x = 0 for the cuboctahedral codes.
    const int cax = code.id == CodeId::Oct ? 2 : 0;
    const int outer_coord = code.id == CodeId::Oct ? 0 : 1;
    code.outer_index.assign(n, -1);
    code.is_outer.assign(n, 0);
    for (const auto &s : lat.sites) {
        if (s.coord[cax] == outer_coord) {
            code.outer_index[s.index] = static_cast<int32_t>(code.outer.size());
            code.is_outer[s.index] = 1;
            code.outer.push_back(s.index);
        } else {
            code.inner.push_back(s.index);
        }
    }

    // 2D code on the outer qubits.
    Code2D &c2 = code.code2d;
    c2.n = code.outer.size();
    {
        std::vector<std::vector<uint32_t>> rows;
        std::map<std::vector<uint32_t>, int> dedupe;
        for (const auto &r : code.hx.rows()) {
            auto loc = restrict_support(r, code.outer_index);
            if (!loc.empty() && dedupe.emplace(loc, 0).second) {
                rows.push_back(loc);
            }
        }
        c2.hx = SparseMatrix(c2.n, rows);
    }
    {
        std::vector<std::vector<uint32_t>> rows;
        if (code.id == CodeId::Oct) {
            for (const auto &r : code.hz.rows()) {
                auto loc = restrict_support(r, code.outer_index);
                if (loc.size() == r.size()) {
                    rows.push_back(loc);
                }
            }
        } else {
            int tp = triangle_parity(code.id);
            for (int b = -1; b <= L; b++) {
                for (int c = -1; c <= L; c++) {
                    Coord cub{0, b, c};
                    if (cube_parity(cub) != tp) {
                        continue;
                    }
                    BitVec acc(n);
                    for (int corner = 0; corner < 4; corner++) {
                        Coord u{1, b + (corner & 1), c + ((corner >> 1) & 1)};
                        int32_t f = seen.find(geo.collect(geo.triangle(cub, u)));
                        if (f >= 0) {
                            for (auto q : code.hz.row(f)) {
                                acc.flip(q);
                            }
                        }
                    }
                    auto sup = acc.ones();
                    auto loc = restrict_support(sup, code.outer_index);
                    if (!loc.empty() && loc.size() == sup.size()) {
                        rows.push_back(loc);
                    }
                }
            }
        }
        c2.hz = SparseMatrix(c2.n, rows);
    }
    c2.logical_x = restrict_support(code.logical_x, code.outer_index);
    c2.logical_z = restrict_support(code.logical_z, code.outer_index);
    if (c2.logical_z.size() != code.logical_z.size()) {
        throw std::logic_error("logical Z must lie on the collapse boundary");
    }

    // Layer plan, far boundary first.
    JumpPlan &plan = code.jump;
    plan.axis = cax;
    plan.push_generators.assign(n, {-1, -1});
    const int top = code.id == CodeId::Oct ? 2 * L - 2 : 2 * L - 1;
    for (int k = top; k >= outer_coord; k--) {
        plan.layer_coord.push_back(k);
        std::vector<uint32_t> layer;
        for (const auto &s : lat.sites) {
            if (s.coord[cax] == k) {
                layer.push_back(s.index);
            }
        }
        plan.layers.push_back(std::move(layer));
        LayerKind kind;
        if (k == outer_coord) {
            kind = LayerKind::Outer;
        } else if (code.id == CodeId::Oct) {
            kind = k % 2 == 0 ? LayerKind::Single : LayerKind::Verify;
        } else {
            kind = k % 2 == 1 ? LayerKind::Single : LayerKind::Quad;
        }
        plan.layer_kind.push_back(kind);
        plan.quads.emplace_back();
    }
    for (size_t li = 0; li < plan.layers.size(); li++) {
        int k = plan.layer_coord[li];
        if (plan.layer_kind[li] == LayerKind::Single) {
            for (auto q : plan.layers[li]) {
                const Coord &p = lat.sites[q].coord;
                std::vector<int32_t> cands;
                if (code.id == CodeId::Oct) {
                    // Vertical square directly below the in-plane edge.
                    int along = p[0] % 2 ? 0 : 1;
                    Coord a{(p[0] - (along == 0)) / 2, (p[1] - (along == 1)) / 2, k / 2 - 1};
                    int normal = 1 - along;
                    cands.push_back(seen.find(geo.collect(geo.square(a, normal))));
                } else {
                    // Triangle at the lower-x end of the x-edge, in either triangle-parity cube.
                    Coord u{(k - 1) / 2, p[1] / 2, p[2] / 2};
                    for (int o = 0; o < 4; o++) {
                        Coord cub{u[0], u[1] - (o & 1), u[2] - ((o >> 1) & 1)};
                        if (cube_parity(cub) == triangle_parity(code.id)) {
                            cands.push_back(seen.find(geo.collect(geo.triangle(cub, u))));
                        }
                    }
                }
                std::array<int32_t, 2> g{-1, -1};
                size_t m = 0;
                for (auto f : cands) {
                    if (f >= 0 && m < 2) {
                        g[m++] = f;
                    }
                }
                plan.push_generators[q] = g;
            }
        } else if (plan.layer_kind[li] == LayerKind::Quad) {
            int t = k / 2;
            for (int y = -1; y <= L; y++) {
                for (int z = -1; z <= L; z++) {
                    Coord cub{t - 1, y, z};
                    if (cube_parity(cub) != triangle_parity(code.id)) {
                        continue;
                    }
                    Coord corners[4] = {{t, y, z}, {t, y + 1, z}, {t, y + 1, z + 1}, {t, y, z + 1}};
                    Quadruple quad;
                    bool any = false;
                    for (int i = 0; i < 4; i++) {
                        Coord mid = add(scale(corners[i], 1), corners[(i + 1) % 4]);
                        quad.qubits[i] = lat.qubit_at(mid);
                        any |= quad.qubits[i] >= 0;
                        quad.gens[i] = seen.find(geo.collect(geo.triangle(cub, corners[i])));
                    }
                    if (any) {
                        plan.quads[li].push_back(quad);
                    }
                }
            }
        }
    }
}

}  // namespace detail

/// Builds the rectified L×L×L lattice and its three codes. L must be odd and at least 3.
inline std::shared_ptr<const TriLattice> build_tri_lattice(int L) {
    if (L < 3 || L % 2 == 0) {
        throw std::invalid_argument("lattice size must be odd and >= 3, got " + std::to_string(L));
    }
    auto lat = std::make_shared<TriLattice>();
    lat->L = L;
    int side = 2 * L + 1;
    lat->index_.assign(static_cast<size_t>(side) * side * side, -1);
    for (int X = 1; X <= 2 * L - 1; X++) {
        for (int Y = 0; Y <= 2 * L - 2; Y++) {
            for (int Z = 0; Z <= 2 * L - 2; Z++) {
                if ((X & 1) + (Y & 1) + (Z & 1) != 1) {
                    continue;
                }
                auto idx = static_cast<uint32_t>(lat->sites.size());
                lat->sites.push_back({{X, Y, Z}, idx});
                lat->index_[(static_cast<size_t>(X) * side + Y) * side + Z] = static_cast<int32_t>(idx);
            }
        }
    }
    for (int c = 0; c < 3; c++) {
        lat->codes[c].id = static_cast<CodeId>(c);
        detail::build_code(*lat, lat->codes[c]);
    }
    return lat;
}

/// Returns (M, N): the measured-out inner qubits and the surviving outer qubits.
inline std::pair<std::vector<uint32_t>, std::vector<uint32_t>> inner_outer_partition(const CssCode &code) {
    return {code.inner, code.outer};
}

/// Index of the X cell of `code` with the given anchor, or -1.
inline int32_t find_x_cell(const CssCode &code, const Coord &anchor) {
    auto it = code.x_cell_lookup.find(anchor);
    return it == code.x_cell_lookup.end() ? -1 : it->second;
}

struct BoundaryCell {
    CodeId code;
    uint32_t row;
};

/// X cells of the two other codes that own a face flagged by the X membrane `membrane` of code `c`.
/// Each such cell must own exactly two flagged faces; otherwise the set is rejected.
inline std::vector<BoundaryCell> boundary_cells(const TriLattice &lat, CodeId c, const BitVec &membrane) {
    const CssCode &code = lat.code(c);
    if (membrane.size() != code.n) {
        throw std::invalid_argument("membrane size mismatch");
    }
    BitVec flagged = code.hz.multiply(membrane);
    std::map<std::pair<int, uint32_t>, int> owners;
    for (auto f : flagged.ones()) {
        const FaceId &face = code.z_faces[f];
        std::vector<std::pair<CodeId, Coord>> cells;
        if (face.kind == FaceKind::Square) {
            // The two cubes sharing the square.
            int d = 0;
            while (face.anchor[d] % 2 != 0) {
                d++;
            }
            Coord lo = face.anchor, hi = face.anchor;
            lo[d] -= 1;
            hi[d] += 1;
            for (const Coord &centre : {lo, hi}) {
                Coord minc{(centre[0] - 1) / 2, (centre[1] - 1) / 2, (centre[2] - 1) / 2};
                CodeId owner = detail::cube_parity(minc) == detail::x_cube_parity(CodeId::Cub1) ? CodeId::Cub1 : CodeId::Cub2;
                cells.push_back({owner, centre});
            }
        } else {
            Coord minc{(face.anchor[0] - 1) / 2, (face.anchor[1] - 1) / 2, (face.anchor[2] - 1) / 2};
            CodeId cube_owner = detail::cube_parity(minc) == detail::x_cube_parity(CodeId::Cub1) ? CodeId::Cub1 : CodeId::Cub2;
            cells.push_back({cube_owner, face.anchor});
            cells.push_back({CodeId::Oct, face.vertex});
        }
        for (const auto &[owner, anchor] : cells) {
            int32_t r = find_x_cell(lat.code(owner), anchor);
            if (r >= 0) {
                owners[{static_cast<int>(owner), static_cast<uint32_t>(r)}]++;
            }
        }
    }
    std::vector<BoundaryCell> out;
    for (const auto &[key, count] : owners) {
        if (count != 2) {
            throw std::invalid_argument("membrane syndrome is not a union of closed loops");
        }
        out.push_back({static_cast<CodeId>(key.first), key.second});
    }
    return out;
}

namespace detail {
inline void dump_coord(std::ostream &out, const Coord &c) { out << c[0] << ',' << c[1] << ',' << c[2]; }
inline void dump_support(std::ostream &out, const std::vector<uint32_t> &s) {
    for (auto q : s) {
        out << ' ' << q;
    }
    out << '\n';
}
}  // namespace detail

/// Plain-text dump: one line per site, stabiliser and logical.
inline void dump_lattice(std::ostream &out, const TriLattice &lat) {
    out << "# L " << lat.L << " n " << lat.n() << '\n';
    for (const auto &s : lat.sites) {
        out << "site " << s.index << ' ';
        detail::dump_coord(out, s.coord);
        out << '\n';
    }
    for (const auto &code : lat.codes) {
        const char *name = code_name(code.id);
        out << "code " << name << " collapse_axis " << "xyz"[code.jump.axis] << " outer_plane "
            << code.jump.layer_coord.back() << '\n';
        for (size_t r = 0; r < code.hx.num_rows(); r++) {
            const auto &cell = code.x_cells[r];
            out << name << " X " << (cell.kind == CellKind::Octahedron ? "oct " : "cuboct ");
            detail::dump_coord(out, cell.anchor);
            detail::dump_support(out, code.hx.row(r));
        }
        for (size_t r = 0; r < code.hz.num_rows(); r++) {
            const auto &face = code.z_faces[r];
            out << name << " Z " << (face.kind == FaceKind::Square ? "square " : "triangle ");
            detail::dump_coord(out, face.anchor);
            if (face.kind == FaceKind::Triangle) {
                out << '@';
                detail::dump_coord(out, face.vertex);
            }
            detail::dump_support(out, code.hz.row(r));
        }
        out << name << " LX";
        detail::dump_support(out, code.logical_x);
        out << name << " LZ";
        detail::dump_support(out, code.logical_z);
    }
}

}  // namespace cczsim

#endif
