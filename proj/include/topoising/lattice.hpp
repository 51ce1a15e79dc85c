// Copyright 2026 The topoising Authors
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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "topoising/errors.hpp"

namespace topoising {

enum class LatticeKind { honeycomb, square, triangular, square_octagonal };

inline std::string_view to_string(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::honeycomb:
            return "honeycomb";
        case LatticeKind::square:
            return "square";
        case LatticeKind::triangular:
            return "triangular";
        case LatticeKind::square_octagonal:
            return "square_octagonal";
    }
    return "?";
}

inline LatticeKind parse_lattice_kind(std::string_view name) {
    for (auto kind : {LatticeKind::honeycomb, LatticeKind::square, LatticeKind::triangular,
                      LatticeKind::square_octagonal}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    if (name == "square-octagonal") {
        return LatticeKind::square_octagonal;
    }
    throw std::invalid_argument("unknown lattice kind '" + std::string(name) + "'");
}

enum class Color : std::uint8_t { red = 0, green = 1, blue = 2 };

inline std::string_view to_string(Color c) {
    switch (c) {
        case Color::red:
            return "red";
        case Color::green:
            return "green";
        case Color::blue:
            return "blue";
    }
    return "?";
}

inline Color third_color(Color a, Color b) { return static_cast<Color>(3 - static_cast<int>(a) - static_cast<int>(b)); }

/// Point in lattice-vector coordinates (a1, a2 components).
struct Vec2 {
    double a = 0.0;
    double b = 0.0;

    Vec2 &operator+=(Vec2 o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    friend Vec2 operator+(Vec2 p, Vec2 q) { return {p.a + q.a, p.b + q.b}; }
    friend Vec2 operator-(Vec2 p, Vec2 q) { return {p.a - q.a, p.b - q.b}; }
    friend Vec2 operator*(double s, Vec2 p) { return {s * p.a, s * p.b}; }
};

struct Vertex {
    std::size_t id;
    int i, j;  // unit cell
    int role;  // sublattice position within the cell
};

struct Edge {
    std::size_t id;
    std::size_t u, v;
    int di, dj;  // unwrapped cell of v minus cell of u
};

struct Face {
    std::size_t id;
    int i, j;
    int role;
    std::vector<std::size_t> vertices;  // ordered cycle
    std::vector<std::size_t> edges;     // edges[k] joins vertices[k] and vertices[k + 1]
    std::vector<Vec2> center_offsets;   // face center minus position of vertices[k]
};

class TorusLattice {
   public:
    LatticeKind kind() const { return kind_; }
    int L1() const { return L1_; }
    int L2() const { return L2_; }

    const std::vector<Vertex> &vertices() const { return vertices_; }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<Face> &faces() const { return faces_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    int roles_per_cell() const { return roles_; }

    std::size_t vertex_index(int i, int j, int role) const {
        int wi = ((i % L1_) + L1_) % L1_;
        int wj = ((j % L2_) + L2_) % L2_;
        return static_cast<std::size_t>((wi * L2_ + wj) * roles_ + role);
    }

    /// Fractional position of a sublattice role inside its unit cell.
    Vec2 role_offset(int role) const { return role_offsets_.at(static_cast<std::size_t>(role)); }

    /// Displacement from u to v along edge e (in that orientation).
    Vec2 edge_vector(const Edge &e) const {
        return Vec2{static_cast<double>(e.di), static_cast<double>(e.dj)} + role_offset(vertices_[e.v].role) -
               role_offset(vertices_[e.u].role);
    }

    const std::vector<std::size_t> &incident_edges(std::size_t v) const { return incident_.at(v); }
    const std::vector<std::size_t> &edge_faces(std::size_t e) const { return edge_faces_.at(e); }
    /// Faces around a vertex, one entry per corner (repeats possible on tiny tori).
    const std::vector<std::size_t> &vertex_faces(std::size_t v) const { return vertex_faces_.at(v); }

    /// For edge e = (u, v) on a trivalent lattice: the face at u that does not
    /// contain e, and the face at v that does not contain e.
    std::pair<std::size_t, std::size_t> edge_endpoint_faces(std::size_t e) const {
        const Edge &edge = edges_.at(e);
        return {endpoint_face(edge.u, e), endpoint_face(edge.v, e)};
    }

    friend TorusLattice build_lattice(LatticeKind kind, int L1, int L2);

   private:
    std::size_t endpoint_face(std::size_t vertex, std::size_t e) const {
        const auto &bounding = edge_faces_.at(e);
        std::optional<std::size_t> found;
        for (auto f : vertex_faces_.at(vertex)) {
            if (std::find(bounding.begin(), bounding.end(), f) == bounding.end()) {
                if (found && *found != f) {
                    throw std::logic_error("vertex has more than one face outside the edge; lattice is not trivalent");
                }
                found = f;
            }
        }
        if (!found) {
            throw std::logic_error("no endpoint face for edge " + std::to_string(e));
        }
        return *found;
    }

    struct VertexRef {
        int i, j, role;
    };

    void add_vertex_cells() {
        for (int i = 0; i < L1_; ++i) {
            for (int j = 0; j < L2_; ++j) {
                for (int r = 0; r < roles_; ++r) {
                    vertices_.push_back(Vertex{vertices_.size(), i, j, r});
                }
            }
        }
    }

    void add_edge(VertexRef from, VertexRef to) {
        std::size_t u = vertex_index(from.i, from.j, from.role);
        std::size_t v = vertex_index(to.i, to.j, to.role);
        Edge e{edges_.size(), u, v, to.i - from.i, to.j - from.j};
        edge_lookup_[{u, v, e.di, e.dj}] = e.id;
        edge_lookup_[{v, u, -e.di, -e.dj}] = e.id;
        edges_.push_back(e);
    }

    // Cycle given as unwrapped vertex references relative to the face cell.
    void add_face(int i, int j, int role, const std::vector<VertexRef> &cycle) {
        Face f{faces_.size(), i, j, role, {}, {}, {}};
        std::vector<Vec2> positions;
        for (const auto &ref : cycle) {
            f.vertices.push_back(vertex_index(ref.i, ref.j, ref.role));
            positions.push_back(Vec2{static_cast<double>(ref.i), static_cast<double>(ref.j)} + role_offset(ref.role));
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const auto &a = cycle[k];
            const auto &b = cycle[(k + 1) % cycle.size()];
            auto key = std::make_tuple(vertex_index(a.i, a.j, a.role), vertex_index(b.i, b.j, b.role), b.i - a.i,
                                       b.j - a.j);
            auto it = edge_lookup_.find(key);
            if (it == edge_lookup_.end()) {
                throw std::logic_error("face boundary uses a missing edge");
            }
            f.edges.push_back(it->second);
        }
        Vec2 center;
        for (auto p : positions) {
            center += p;
        }
        center = (1.0 / static_cast<double>(positions.size())) * center;
        for (auto p : positions) {
            f.center_offsets.push_back(center - p);
        }
        faces_.push_back(std::move(f));
    }

    void index_incidence() {
        incident_.assign(vertices_.size(), {});
        for (const auto &e : edges_) {
            incident_[e.u].push_back(e.id);
            incident_[e.v].push_back(e.id);
        }
        edge_faces_.assign(edges_.size(), {});
        vertex_faces_.assign(vertices_.size(), {});
        for (const auto &f : faces_) {
            for (auto e : f.edges) {
                edge_faces_[e].push_back(f.id);
            }
            for (auto v : f.vertices) {
                vertex_faces_[v].push_back(f.id);
            }
        }
        edge_lookup_.clear();
    }

    LatticeKind kind_ = LatticeKind::square;
    int L1_ = 0;
    int L2_ = 0;
    int roles_ = 1;
    std::vector<Vec2> role_offsets_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::vector<std::size_t>> edge_faces_;
    std::vector<std::vector<std::size_t>> vertex_faces_;
    std::map<std::tuple<std::size_t, std::size_t, int, int>, std::size_t> edge_lookup_;
};

/// Builds a periodic lattice of L1 x L2 unit cells. Vertex, edge and face
/// indices are cell-major (cell index i * L2 + j) then by role.
inline TorusLattice build_lattice(LatticeKind kind, int L1, int L2) {
    if (L1 < 2 || L2 < 2) {
        throw std::invalid_argument("lattice sizes must be at least 2 (got " + std::to_string(L1) + "x" +
                                    std::to_string(L2) + ")");
    }
    TorusLattice lat;
    lat.kind_ = kind;
    lat.L1_ = L1;
    lat.L2_ = L2;
    using R = TorusLattice::VertexRef;

    switch (kind) {
        case LatticeKind::honeycomb: {
            // A (role 0) at the cell origin, B (role 1) at (1/3, 1/3).
            lat.roles_ = 2;
            lat.role_offsets_ = {{0.0, 0.0}, {1.0 / 3.0, 1.0 / 3.0}};
            lat.add_vertex_cells();
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_edge(R{i, j, 0}, R{i, j, 1});
                    lat.add_edge(R{i, j, 0}, R{i - 1, j, 1});
                    lat.add_edge(R{i, j, 0}, R{i, j - 1, 1});
                }
            }
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_face(i, j, 0,
                                 {R{i, j, 0}, R{i, j, 1}, R{i + 1, j, 0}, R{i + 1, j - 1, 1}, R{i + 1, j - 1, 0},
                                  R{i, j - 1, 1}});
                }
            }
            break;
        }
        case LatticeKind::square: {
            lat.roles_ = 1;
            lat.role_offsets_ = {{0.0, 0.0}};
            lat.add_vertex_cells();
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_edge(R{i, j, 0}, R{i + 1, j, 0});
                    lat.add_edge(R{i, j, 0}, R{i, j + 1, 0});
                }
            }
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_face(i, j, 0, {R{i, j, 0}, R{i + 1, j, 0}, R{i + 1, j + 1, 0}, R{i, j + 1, 0}});
                }
            }
            break;
        }
        case LatticeKind::triangular: {
            lat.roles_ = 1;
            lat.role_offsets_ = {{0.0, 0.0}};
            lat.add_vertex_cells();
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_edge(R{i, j, 0}, R{i + 1, j, 0});
                    lat.add_edge(R{i, j, 0}, R{i, j + 1, 0});
                    lat.add_edge(R{i, j, 0}, R{i + 1, j - 1, 0});
                }
            }
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_face(i, j, 0, {R{i, j, 0}, R{i + 1, j, 0}, R{i, j + 1, 0}});
                    lat.add_face(i, j, 1, {R{i + 1, j, 0}, R{i + 1, j + 1, 0}, R{i, j + 1, 0}});
                }
            }
            break;
        }
        case LatticeKind::square_octagonal: {
            // Each cell holds a square with corners E, N, W, S (roles 0..3); the
            // octagon of cell (i, j) sits to the north-east of that square.
            lat.roles_ = 4;
            lat.role_offsets_ = {{0.25, 0.0}, {0.0, 0.25}, {-0.25, 0.0}, {0.0, -0.25}};
            lat.add_vertex_cells();
            constexpr int E = 0, N = 1, W = 2, S = 3;
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_edge(R{i, j, E}, R{i, j, N});
                    lat.add_edge(R{i, j, N}, R{i, j, W});
                    lat.add_edge(R{i, j, W}, R{i, j, S});
                    lat.add_edge(R{i, j, S}, R{i, j, E});
                    lat.add_edge(R{i, j, E}, R{i + 1, j, W});
                    lat.add_edge(R{i, j, N}, R{i, j + 1, S});
                }
            }
            for (int i = 0; i < L1; ++i) {
                for (int j = 0; j < L2; ++j) {
                    lat.add_face(i, j, 0,
                                 {R{i, j, N}, R{i, j, E}, R{i + 1, j, W}, R{i + 1, j, N}, R{i + 1, j + 1, S},
                                  R{i + 1, j + 1, W}, R{i, j + 1, E}, R{i, j + 1, S}});
                    lat.add_face(i, j, 1, {R{i, j, E}, R{i, j, N}, R{i, j, W}, R{i, j, S}});
                }
            }
            break;
        }
    }
    lat.index_incidence();
    return lat;
}

/// Face-boundary audit: every face's edge list closes up and each edge lies on
/// exactly two face sides.
inline bool boundaries_consistent(const TorusLattice &lat) {
    for (const auto &f : lat.faces()) {
        std::size_t len = f.vertices.size();
        if (f.edges.size() != len || len < 3) {
            return false;
        }
        for (std::size_t k = 0; k < len; ++k) {
            const Edge &e = lat.edges()[f.edges[k]];
            std::size_t a = f.vertices[k];
            std::size_t b = f.vertices[(k + 1) % len];
            if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) {
                return false;
            }
        }
    }
    for (std::size_t e = 0; e < lat.num_edges(); ++e) {
        if (lat.edge_faces(e).size() != 2) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Colorings

using FaceColoring = std::vector<Color>;
using EdgeColoring = std::vector<Color>;

/// Around every vertex the incident faces are pairwise distinct and carry
/// pairwise distinct colors.
inline bool is_valid_face_coloring(const TorusLattice &lat, const FaceColoring &fc) {
    if (fc.size() != lat.num_faces()) {
        return false;
    }
    for (std::size_t v = 0; v < lat.num_vertices(); ++v) {
        const auto &around = lat.vertex_faces(v);
        for (std::size_t a = 0; a < around.size(); ++a) {
            for (std::size_t b = a + 1; b < around.size(); ++b) {
                if (around[a] == around[b] || fc[around[a]] == fc[around[b]]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Seeds face 0 with red and fills the rest by constraint propagation,
/// branching (in red, green, blue order) only when a face has several options.
inline FaceColoring three_color_faces(const TorusLattice &lat) {
    if (lat.kind() != LatticeKind::honeycomb && lat.kind() != LatticeKind::square_octagonal) {
        throw std::invalid_argument("three-coloring is defined for honeycomb and square_octagonal lattices, not " +
                                    std::string(to_string(lat.kind())));
    }
    const std::size_t nf = lat.num_faces();
    // Faces that must differ from each face: every other face sharing a vertex.
    std::vector<std::vector<std::size_t>> conflicts(nf);
    for (std::size_t v = 0; v < lat.num_vertices(); ++v) {
        const auto &around = lat.vertex_faces(v);
        for (std::size_t a = 0; a < around.size(); ++a) {
            for (std::size_t b = 0; b < around.size(); ++b) {
                if (a == b) {
                    continue;
                }
                if (around[a] == around[b]) {
                    throw NotThreeColorable("face " + std::to_string(around[a]) + " meets itself at vertex " +
                                            std::to_string(v) + " on the " + std::to_string(lat.L1()) + "x" +
                                            std::to_string(lat.L2()) + " torus");
                }
                conflicts[around[a]].push_back(around[b]);
            }
        }
    }

    constexpr int kUnset = -1;
    std::vector<int> color(nf, kUnset);

    auto options = [&](std::size_t f) {
        std::array<bool, 3> allowed{true, true, true};
        for (auto g : conflicts[f]) {
            if (color[g] != kUnset) {
                allowed[static_cast<std::size_t>(color[g])] = false;
            }
        }
        return allowed;
    };

    // Iterative depth-first search with an explicit trail.
    struct Choice {
        std::size_t face;
        int color;
    };
    std::vector<Choice> trail;
    color[0] = 0;
    std::size_t colored = 1;
    trail.push_back({0, 0});
    // Face 0 is fixed to red; only later choices may be revisited.
    std::size_t fixed_depth = 1;

    while (colored < nf) {
        std::size_t best = nf;
        int best_count = 4;
        for (std::size_t f = 0; f < nf; ++f) {
            if (color[f] != kUnset) {
                continue;
            }
            auto allowed = options(f);
            int count = allowed[0] + allowed[1] + allowed[2];
            if (count < best_count) {
                best_count = count;
                best = f;
            }
        }
        if (best_count > 0) {
            auto allowed = options(best);
            int c = 0;
            while (!allowed[static_cast<std::size_t>(c)]) {
                ++c;
            }
            color[best] = c;
            ++colored;
            trail.push_back({best, c});
            continue;
        }
        // Dead end: advance the deepest choice that still has an untried color.
        bool advanced = false;
        while (trail.size() > fixed_depth) {
            Choice last = trail.back();
            trail.pop_back();
            color[last.face] = kUnset;
            --colored;
            auto allowed = options(last.face);
            for (int c = last.color + 1; c < 3; ++c) {
                if (allowed[static_cast<std::size_t>(c)]) {
                    color[last.face] = c;
                    ++colored;
                    trail.push_back({last.face, c});
                    advanced = true;
                    break;
                }
            }
            if (advanced) {
                break;
            }
        }
        if (!advanced) {
            throw NotThreeColorable(std::string(to_string(lat.kind())) + " " + std::to_string(lat.L1()) + "x" +
                                    std::to_string(lat.L2()) + " torus admits no face 3-coloring");
        }
    }

    FaceColoring fc(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        fc[f] = static_cast<Color>(color[f]);
    }
    return fc;
}

/// Each edge takes the color missing from its two bounding faces.
inline EdgeColoring color_edges(const TorusLattice &lat, const FaceColoring &fc) {
    if (!is_valid_face_coloring(lat, fc)) {
        throw std::invalid_argument("face coloring is not valid for this lattice");
    }
    EdgeColoring ec(lat.num_edges());
    for (std::size_t e = 0; e < lat.num_edges(); ++e) {
        const auto &bounding = lat.edge_faces(e);
        if (bounding.size() != 2 || fc[bounding[0]] == fc[bounding[1]]) {
            throw std::invalid_argument("edge " + std::to_string(e) + " has inconsistent bounding faces");
        }
        ec[e] = third_color(fc[bounding[0]], fc[bounding[1]]);
    }
    return ec;
}

// ---------------------------------------------------------------------------
// Edge adjacency

struct EdgePair {
    std::size_t first;
    std::size_t second;
    std::size_t vertex;  // shared endpoint

    bool operator==(const EdgePair &) const = default;
};

namespace detail {
inline void sort_pairs(std::vector<EdgePair> &pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const EdgePair &x, const EdgePair &y) {
        return std::tie(x.vertex, x.first, x.second) < std::tie(y.vertex, y.first, y.second);
    });
}
}  // namespace detail

/// All unordered pairs of distinct edges meeting at a vertex.
inline std::vector<EdgePair> adjacent_edge_pairs(const TorusLattice &lat) {
    std::vector<EdgePair> pairs;
    for (std::size_t v = 0; v < lat.num_vertices(); ++v) {
        const auto &inc = lat.incident_edges(v);
        for (std::size_t a = 0; a < inc.size(); ++a) {
            for (std::size_t b = a + 1; b < inc.size(); ++b) {
                if (inc[a] != inc[b]) {
                    pairs.push_back({std::min(inc[a], inc[b]), std::max(inc[a], inc[b]), v});
                }
            }
        }
    }
    detail::sort_pairs(pairs);
    return pairs;
}

/// Pairs of edges that are consecutive around a face corner. These are the
/// links of the medial lattice (the triangle-hexagonal pattern for honeycomb
/// and triangular lattices).
inline std::vector<EdgePair> face_corner_edge_pairs(const TorusLattice &lat) {
    std::vector<EdgePair> pairs;
    for (const auto &f : lat.faces()) {
        std::size_t len = f.edges.size();
        for (std::size_t k = 0; k < len; ++k) {
            std::size_t before = f.edges[(k + len - 1) % len];
            std::size_t after = f.edges[k];
            pairs.push_back({std::min(before, after), std::max(before, after), f.vertices[k]});
        }
    }
    detail::sort_pairs(pairs);
    return pairs;
}

// ---------------------------------------------------------------------------
// Non-contractible loops

enum class LoopCarrier { primal_edges, dual_edges, colored };

inline std::string_view to_string(LoopCarrier c) {
    switch (c) {
        case LoopCarrier::primal_edges:
            return "primal";
        case LoopCarrier::dual_edges:
            return "dual";
        case LoopCarrier::colored:
            return "colored";
    }
    return "?";
}

struct LoopPath {
    LoopCarrier carrier;
    int direction;  // 0 winds along a1, 1 along a2
    std::optional<Color> color;
    std::vector<std::size_t> nodes;  // vertices (primal) or faces (dual, colored) visited; closed
    std::vector<std::size_t> steps;  // edge traversed between nodes[k] and nodes[k + 1]
    std::vector<std::size_t> sites;  // qubit support: edge ids, or vertex ids for colored loops
    std::array<int, 2> winding{0, 0};
};

namespace detail {

struct Hop {
    std::size_t to;
    std::size_t edge;
    Vec2 shift;
};

using HopGraph = std::vector<std::vector<Hop>>;

inline std::size_t corner_of(const Face &f, std::size_t vertex) {
    for (std::size_t k = 0; k < f.vertices.size(); ++k) {
        if (f.vertices[k] == vertex) {
            return k;
        }
    }
    throw std::logic_error("vertex not on face");
}

// Corner index in f of the endpoint `vertex` of edge e, taken from the
// occurrence of e in the face boundary.
inline std::size_t corner_on_edge(const Face &f, std::size_t e, std::size_t vertex) {
    std::size_t len = f.edges.size();
    for (std::size_t k = 0; k < len; ++k) {
        if (f.edges[k] != e) {
            continue;
        }
        if (f.vertices[k] == vertex) {
            return k;
        }
        if (f.vertices[(k + 1) % len] == vertex) {
            return (k + 1) % len;
        }
    }
    throw std::logic_error("edge not on face");
}

inline HopGraph primal_graph(const TorusLattice &lat) {
    HopGraph g(lat.num_vertices());
    for (const auto &e : lat.edges()) {
        Vec2 d = lat.edge_vector(e);
        g[e.u].push_back({e.v, e.id, d});
        g[e.v].push_back({e.u, e.id, Vec2{} - d});
    }
    return g;
}

inline HopGraph dual_graph(const TorusLattice &lat) {
    HopGraph g(lat.num_faces());
    for (const auto &e : lat.edges()) {
        const auto &bounding = lat.edge_faces(e.id);
        const Face &f = lat.faces()[bounding[0]];
        const Face &h = lat.faces()[bounding[1]];
        Vec2 d = f.center_offsets[corner_on_edge(f, e.id, e.u)] - h.center_offsets[corner_on_edge(h, e.id, e.u)];
        // d = center(h) - center(f) with both measured from the shared corner u.
        d = Vec2{} - d;
        g[f.id].push_back({h.id, e.id, d});
        g[h.id].push_back({f.id, e.id, Vec2{} - d});
    }
    return g;
}

inline HopGraph colored_graph(const TorusLattice &lat, const FaceColoring &fc, const EdgeColoring &ec, Color color) {
    HopGraph g(lat.num_faces());
    for (const auto &e : lat.edges()) {
        if (ec[e.id] != color) {
            continue;
        }
        auto [fu, fv] = lat.edge_endpoint_faces(e.id);
        if (fc[fu] != color || fc[fv] != color) {
            throw std::logic_error("edge color does not match its endpoint faces");
        }
        const Face &a = lat.faces()[fu];
        const Face &b = lat.faces()[fv];
        Vec2 d = b.center_offsets[corner_of(b, e.v)] + lat.edge_vector(e) - a.center_offsets[corner_of(a, e.u)];
        g[fu].push_back({fv, e.id, d});
        g[fv].push_back({fu, e.id, Vec2{} - d});
    }
    return g;
}

// Shortest walk in the universal cover from `start` to its translate by
// target; returns the hop sequence.
inline std::vector<Hop> shortest_winding_walk(const HopGraph &g, std::size_t start, Vec2 target, int L1, int L2) {
    constexpr double kScale = 1e6;
    using Key = std::tuple<std::size_t, long long, long long>;
    auto key = [&](std::size_t node, Vec2 p) {
        return Key{node, std::llround(p.a * kScale), std::llround(p.b * kScale)};
    };
    struct State {
        std::size_t node;
        Vec2 pos;
    };
    std::map<Key, std::pair<Key, Hop>> parent;
    std::deque<State> queue;
    Key origin = key(start, {});
    Key goal = key(start, target);
    parent.emplace(origin, std::make_pair(origin, Hop{start, 0, {}}));
    queue.push_back({start, {}});
    const double bound_a = L1 + 1.5;
    const double bound_b = L2 + 1.5;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        Key here = key(s.node, s.pos);
        if (here == goal) {
            std::vector<Hop> walk;
            Key k = goal;
            while (k != origin) {
                const auto &[prev, hop] = parent.at(k);
                walk.push_back(hop);
                k = prev;
            }
            std::reverse(walk.begin(), walk.end());
            return walk;
        }
        for (const auto &hop : g[s.node]) {
            Vec2 next = s.pos + hop.shift;
            if (std::abs(next.a) > bound_a || std::abs(next.b) > bound_b) {
                continue;
            }
            Key k = key(hop.to, next);
            if (parent.contains(k)) {
                continue;
            }
            parent.emplace(k, std::make_pair(here, hop));
            queue.push_back({hop.to, next});
        }
    }
    throw std::logic_error("no non-contractible walk found");
}

inline LoopPath make_loop(const TorusLattice &lat, const HopGraph &g, std::size_t start, int direction,
                          LoopCarrier carrier, std::optional<Color> color) {
    Vec2 target = direction == 0 ? Vec2{static_cast<double>(lat.L1()), 0.0} : Vec2{0.0, static_cast<double>(lat.L2())};
    auto walk = shortest_winding_walk(g, start, target, lat.L1(), lat.L2());
    LoopPath loop{carrier, direction, color, {start}, {}, {}, {0, 0}};
    Vec2 total;
    std::vector<bool> site_parity(carrier == LoopCarrier::colored ? lat.num_vertices() : lat.num_edges(), false);
    for (const auto &hop : walk) {
        loop.nodes.push_back(hop.to);
        loop.steps.push_back(hop.edge);
        total += hop.shift;
        if (carrier == LoopCarrier::colored) {
            const Edge &e = lat.edges()[hop.edge];
            site_parity[e.u] = !site_parity[e.u];
            site_parity[e.v] = !site_parity[e.v];
        } else {
            site_parity[hop.edge] = !site_parity[hop.edge];
        }
    }
    for (std::size_t s = 0; s < site_parity.size(); ++s) {
        if (site_parity[s]) {
            loop.sites.push_back(s);
        }
    }
    loop.winding = {static_cast<int>(std::lround(total.a / lat.L1())), static_cast<int>(std::lround(total.b / lat.L2()))};
    return loop;
}

}  // namespace detail

/// Toric-code loop representatives: a primal edge cycle and a dual cycle per
/// direction, both through the seed cell. Order: primal 0, primal 1, dual 0, dual 1.
inline std::vector<LoopPath> nontrivial_loops(const TorusLattice &lat) {
    auto primal = detail::primal_graph(lat);
    auto dual = detail::dual_graph(lat);
    std::vector<LoopPath> loops;
    for (int d : {0, 1}) {
        loops.push_back(detail::make_loop(lat, primal, 0, d, LoopCarrier::primal_edges, std::nullopt));
    }
    for (int d : {0, 1}) {
        loops.push_back(detail::make_loop(lat, dual, 0, d, LoopCarrier::dual_edges, std::nullopt));
    }
    return loops;
}

/// Color-code loop representatives for each requested color and both
/// directions, ordered color-major. Two colors suffice; the third is dependent.
inline std::vector<LoopPath> nontrivial_loops(const TorusLattice &lat, const FaceColoring &fc,
                                              std::vector<Color> colors = {Color::red, Color::green}) {
    auto ec = color_edges(lat, fc);
    std::vector<LoopPath> loops;
    for (Color c : colors) {
        auto graph = detail::colored_graph(lat, fc, ec, c);
        auto seed = std::find(fc.begin(), fc.end(), c);
        if (seed == fc.end()) {
            throw std::invalid_argument("no face of color " + std::string(to_string(c)));
        }
        auto start = static_cast<std::size_t>(seed - fc.begin());
        for (int d : {0, 1}) {
            loops.push_back(detail::make_loop(lat, graph, start, d, LoopCarrier::colored, c));
        }
    }
    return loops;
}

enum class LoopUse { toric, color };

inline std::vector<LoopPath> nontrivial_loops(const TorusLattice &lat, LoopUse use, const FaceColoring *fc) {
    if (use == LoopUse::toric) {
        return nontrivial_loops(lat);
    }
    if (fc == nullptr) {
        throw std::invalid_argument("colored loops require a face coloring");
    }
    return nontrivial_loops(lat, *fc);
}

/// Path-level commutation audit: every vertex (primal) or face (dual,
/// colored) meets the loop support an even number of times.
inline bool loop_meets_evenly(const TorusLattice &lat, const LoopPath &loop) {
    switch (loop.carrier) {
        case LoopCarrier::primal_edges: {
            std::vector<int> degree(lat.num_vertices(), 0);
            for (auto e : loop.sites) {
                ++degree[lat.edges()[e].u];
                ++degree[lat.edges()[e].v];
            }
            return std::all_of(degree.begin(), degree.end(), [](int d) { return d % 2 == 0; });
        }
        case LoopCarrier::dual_edges: {
            std::vector<int> count(lat.num_faces(), 0);
            for (auto e : loop.sites) {
                for (auto f : lat.edge_faces(e)) {
                    ++count[f];
                }
            }
            return std::all_of(count.begin(), count.end(), [](int c) { return c % 2 == 0; });
        }
        case LoopCarrier::colored: {
            std::vector<bool> on(lat.num_vertices(), false);
            for (auto v : loop.sites) {
                on[v] = true;
            }
            for (const auto &f : lat.faces()) {
                int c = 0;
                for (auto v : f.vertices) {
                    c += on[v] ? 1 : 0;
                }
                if (c % 2 != 0) {
                    return false;
                }
            }
            return true;
        }
    }
    return false;
}

}  // namespace topoising
