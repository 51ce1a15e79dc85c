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

// Rewrites a perturbed stabilizer Hamiltonian in the basis
//   |phi_r> = prod_p (1 + (-1)^{r_p} G_p) |0...0>,
// one virtual spin r_p per X-type generator G_p. G_p acts as Z_p on the
// virtual spins, the Z-type generators act as the identity, and a bond Z_i Z_j
// flips exactly the virtual spins whose generators it anticommutes with.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "topoising/codes.hpp"
#include "topoising/errors.hpp"
#include "topoising/hamiltonians.hpp"
#include "topoising/lattice.hpp"
#include "topoising/pauli_gf2.hpp"
#include "topoising/virtual_model.hpp"

namespace topoising {

/// Independent GF(2) relations among the X-type generators. Each returned set
/// S gives the equation sum_{p in S} r_p = 0 (mod 2).
inline std::vector<std::vector<std::size_t>> virtual_parity_constraints(const StabilizerCode &code) {
    std::vector<BitVector> rows;
    rows.reserve(code.x_generators.size());
    for (const auto &g : code.x_generators) {
        rows.push_back(g.x());
    }
    auto support = Gf2Matrix::from_rows(code.n, std::move(rows));
    std::vector<std::vector<std::size_t>> constraints;
    for (const auto &v : gf2_nullspace(support.transpose())) {
        constraints.push_back(v.indices());
    }
    return constraints;
}

namespace detail {

using CoverKey = std::tuple<std::size_t, long long, long long>;

inline CoverKey cover_key(std::size_t spin, Vec2 d) {
    constexpr double kScale = 1e6;
    return {spin, std::llround(d.a * kScale), std::llround(d.b * kScale)};
}

// Neighbours of each spin on the covering plane: (spin, displacement) pairs.
inline std::vector<std::vector<std::pair<std::size_t, Vec2>>> cover_adjacency(const VirtualIsingModel &vm) {
    std::vector<std::vector<std::pair<std::size_t, Vec2>>> adj(vm.num_spins());
    for (const auto &b : vm.bonds) {
        adj[b.p].emplace_back(b.q, b.displacement);
        adj[b.q].emplace_back(b.p, Vec2{} - b.displacement);
    }
    return adj;
}

inline std::vector<std::set<std::size_t>> simple_adjacency(const VirtualIsingModel &vm) {
    std::vector<std::set<std::size_t>> adj(vm.num_spins());
    for (const auto &b : vm.bonds) {
        adj[b.p].insert(b.q);
        adj[b.q].insert(b.p);
    }
    return adj;
}

// Degree and triangle count per spin on the covering graph, where bonds that
// wrap the torus differently stay distinct.
inline ComponentClass classify_spins(const std::vector<std::vector<std::pair<std::size_t, Vec2>>> &adj,
                                     const std::vector<std::size_t> &spins) {
    std::vector<std::set<CoverKey>> nb(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v) {
        for (const auto &[w, d] : adj[v]) {
            nb[v].insert(cover_key(w, d));
        }
    }
    ComponentClass cls;
    for (auto v : spins) {
        cls.degrees.push_back(nb[v].size());
        std::size_t tri = 0;
        for (const auto &[a, da] : adj[v]) {
            for (const auto &[b, db] : adj[v]) {
                if (cover_key(a, da) < cover_key(b, db) && nb[a].contains(cover_key(b, db - da))) {
                    ++tri;
                }
            }
        }
        cls.triangles.push_back(tri);
    }
    auto uniform = [&](const std::vector<std::size_t> &xs, std::size_t value) {
        return std::all_of(xs.begin(), xs.end(), [&](std::size_t x) { return x == value; });
    };
    if (uniform(cls.degrees, 6) && uniform(cls.triangles, 6)) {
        cls.label = ComponentLabel::triangular;
    } else if (uniform(cls.degrees, 4) && uniform(cls.triangles, 0)) {
        cls.label = ComponentLabel::square;
    }
    cls.small_size_caveat = spins.size() < 9;
    return cls;
}

inline std::vector<VirtualComponent> connected_components(const VirtualIsingModel &vm) {
    std::vector<std::size_t> parent(vm.num_spins());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto &b : vm.bonds) {
        auto a = root(b.p);
        auto c = root(b.q);
        if (a != c) {
            parent[std::max(a, c)] = std::min(a, c);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t s = 0; s < vm.num_spins(); ++s) {
        groups[root(s)].push_back(s);
    }
    // Roots are minimal members, so map order is order of lowest spin.
    std::vector<VirtualComponent> comps;
    auto adj = cover_adjacency(vm);
    for (auto &[r, spins] : groups) {
        VirtualComponent comp;
        comp.spins = std::move(spins);
        comp.classification = classify_spins(adj, comp.spins);
        comps.push_back(std::move(comp));
    }
    return comps;
}

}  // namespace detail

/// Label from local invariants of the multiplicity-collapsed covering graph:
/// uniform degree 6 with 6 triangles per spin is triangular, uniform degree 4
/// with no triangles is square. Fewer than 9 spins sets the small-size caveat.
inline ComponentClass classify_component(const VirtualIsingModel &vm, std::size_t component) {
    const auto &comp = vm.components.at(component);
    return detail::classify_spins(detail::cover_adjacency(vm), comp.spins);
}

namespace detail {

// Vector from a qubit to the center of a generator holding it.
inline std::optional<Vec2> site_to_generator(const StabilizerCode &code, std::size_t site, std::size_t gen) {
    const TorusLattice &lat = *code.lattice;
    const auto &origin = code.x_origins[gen];
    if (code.placement == QubitPlacement::on_edges && origin.kind == GeneratorOrigin::Kind::vertex) {
        const Edge &e = lat.edges()[site];
        Vec2 half = 0.5 * lat.edge_vector(e);
        if (e.u == origin.id) {
            return Vec2{} - half;
        }
        if (e.v == origin.id) {
            return half;
        }
    }
    if (code.placement == QubitPlacement::on_vertices && origin.kind == GeneratorOrigin::Kind::face) {
        const Face &f = lat.faces()[origin.id];
        for (std::size_t k = 0; k < f.vertices.size(); ++k) {
            if (f.vertices[k] == site) {
                return f.center_offsets[k];
            }
        }
    }
    return std::nullopt;
}

// Vector from qubit i to qubit j of a bond.
inline std::optional<Vec2> bond_vector(const StabilizerCode &code, const Bond &bond) {
    const TorusLattice &lat = *code.lattice;
    if (bond.origin.kind == BondOrigin::Kind::lattice_edge && code.placement == QubitPlacement::on_vertices) {
        const Edge &e = lat.edges()[bond.origin.id];
        if (e.u == bond.i && e.v == bond.j) {
            return lat.edge_vector(e);
        }
        if (e.u == bond.j && e.v == bond.i) {
            return Vec2{} - lat.edge_vector(e);
        }
    }
    if (bond.origin.kind == BondOrigin::Kind::shared_vertex && code.placement == QubitPlacement::on_edges) {
        std::size_t v = bond.origin.id;
        auto from_v = [&](std::size_t site) -> std::optional<Vec2> {
            const Edge &e = lat.edges()[site];
            Vec2 half = 0.5 * lat.edge_vector(e);
            if (e.u == v) {
                return half;
            }
            if (e.v == v) {
                return Vec2{} - half;
            }
            return std::nullopt;
        };
        auto a = from_v(bond.i);
        auto b = from_v(bond.j);
        if (a && b) {
            return *b - *a;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline VirtualIsingModel derive_virtual_model(const StabilizerCode &code, const BondSet &bonds) {
    bonds.validate(code.n);
    VirtualIsingModel vm;
    vm.num_z_generators = code.z_generators.size();
    const TorusLattice &lat = *code.lattice;
    for (std::size_t p = 0; p < code.x_generators.size(); ++p) {
        VirtualSpin spin{p, code.x_origins[p], std::nullopt, std::nullopt};
        if (spin.origin.kind == GeneratorOrigin::Kind::face && code.coloring) {
            spin.color = (*code.coloring)[spin.origin.id];
        }
        if (spin.origin.kind == GeneratorOrigin::Kind::vertex) {
            spin.sublattice = lat.vertices()[spin.origin.id].role;
        }
        vm.spins.push_back(spin);
    }

    // X-type generators touching each qubit.
    std::vector<std::vector<std::size_t>> touching(code.n);
    for (std::size_t p = 0; p < code.x_generators.size(); ++p) {
        for (auto site : code.x_generators[p].x().indices()) {
            touching[site].push_back(p);
        }
    }

    using Key = std::tuple<std::size_t, std::size_t, long long, long long>;
    std::map<Key, std::pair<std::size_t, Vec2>> multiplicity;
    std::vector<Key> endpoints;
    endpoints.reserve(bonds.size());
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        const auto &bond = bonds.bonds[b];
        // Generators holding exactly one of the two sites anticommute with Z_i Z_j.
        std::vector<std::size_t> flipped;
        std::set_symmetric_difference(touching[bond.i].begin(), touching[bond.i].end(), touching[bond.j].begin(),
                                      touching[bond.j].end(), std::back_inserter(flipped));
        if (flipped.size() != 2) {
            throw MappingObstruction(b, flipped.size());
        }
        std::size_t p = flipped[0];
        std::size_t q = flipped[1];
        // Unwrapped p -> q: generator p to its site, across the bond, on to q.
        Vec2 d{};
        auto across = detail::bond_vector(code, bond);
        if (across) {
            bool p_has_i = code.x_generators[p].x().get(bond.i);
            std::size_t sp = p_has_i ? bond.i : bond.j;
            std::size_t sq = p_has_i ? bond.j : bond.i;
            auto off_p = detail::site_to_generator(code, sp, p);
            auto off_q = detail::site_to_generator(code, sq, q);
            if (off_p && off_q) {
                Vec2 ij = p_has_i ? *across : Vec2{} - *across;
                d = ij + *off_q - *off_p;
            }
        }
        auto ck = detail::cover_key(0, d);
        Key key{p, q, std::get<1>(ck), std::get<2>(ck)};
        auto &slot = multiplicity[key];
        ++slot.first;
        slot.second = d;
        endpoints.push_back(key);
    }
    std::map<Key, std::size_t> bond_index;
    for (const auto &[key, m] : multiplicity) {
        bond_index[key] = vm.bonds.size();
        vm.bonds.push_back({std::get<0>(key), std::get<1>(key), m.first, m.second});
    }
    for (const auto &key : endpoints) {
        vm.bond_image.push_back(bond_index.at(key));
    }
    vm.parity_constraints = virtual_parity_constraints(code);
    vm.components = detail::connected_components(vm);
    return vm;
}

/// Plain TFIM with one spin per lattice vertex and one bond per lattice edge.
inline VirtualIsingModel tfim_on_lattice(const TorusLattice &lat) {
    VirtualIsingModel vm;
    for (std::size_t v = 0; v < lat.num_vertices(); ++v) {
        vm.spins.push_back({v, {GeneratorOrigin::Kind::vertex, v}, std::nullopt, lat.vertices()[v].role});
    }
    using Key = std::tuple<std::size_t, std::size_t, long long, long long>;
    std::map<Key, std::pair<std::size_t, Vec2>> multiplicity;
    std::vector<Key> endpoints;
    for (const auto &e : lat.edges()) {
        if (e.u == e.v) {
            throw std::invalid_argument("lattice has a self-loop edge; torus too small for a TFIM");
        }
        Vec2 d = e.u < e.v ? lat.edge_vector(e) : Vec2{} - lat.edge_vector(e);
        auto ck = detail::cover_key(0, d);
        Key key{std::min(e.u, e.v), std::max(e.u, e.v), std::get<1>(ck), std::get<2>(ck)};
        auto &slot = multiplicity[key];
        ++slot.first;
        slot.second = d;
        endpoints.push_back(key);
    }
    std::map<Key, std::size_t> bond_index;
    for (const auto &[key, m] : multiplicity) {
        bond_index[key] = vm.bonds.size();
        vm.bonds.push_back({std::get<0>(key), std::get<1>(key), m.first, m.second});
    }
    for (const auto &key : endpoints) {
        vm.bond_image.push_back(bond_index.at(key));
    }
    vm.components = detail::connected_components(vm);
    return vm;
}

/// Optional strict check: the component's simple graph is isomorphic to the
/// vertex graph of `kind` on some L1 x L2 torus with L1 * L2 spins.
inline bool component_isomorphic_to(const VirtualIsingModel &vm, std::size_t component, LatticeKind kind) {
    const auto &spins = vm.components.at(component).spins;
    const std::size_t n = spins.size();
    auto adj_full = detail::simple_adjacency(vm);
    std::map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < n; ++k) {
        local[spins[k]] = k;
    }
    std::vector<std::set<std::size_t>> g(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (auto nb : adj_full[spins[k]]) {
            g[k].insert(local.at(nb));
        }
    }

    auto try_reference = [&](const TorusLattice &ref) {
        if (ref.num_vertices() != n) {
            return false;
        }
        std::vector<std::set<std::size_t>> h(n);
        for (const auto &e : ref.edges()) {
            if (e.u != e.v) {
                h[e.u].insert(e.v);
                h[e.v].insert(e.u);
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (g[k].size() != h[0].size() || h[k].size() != h[0].size()) {
                return false;
            }
        }
        // Extend a map g -> h in BFS order of g; the reference is vertex
        // transitive so spin 0 may be pinned to vertex 0.
        std::vector<std::size_t> order{0};
        std::vector<bool> seen(n, false);
        seen[0] = true;
        for (std::size_t k = 0; k < order.size(); ++k) {
            for (auto nb : g[order[k]]) {
                if (!seen[nb]) {
                    seen[nb] = true;
                    order.push_back(nb);
                }
            }
        }
        if (order.size() != n) {
            return false;
        }
        constexpr std::size_t kNone = static_cast<std::size_t>(-1);
        std::vector<std::size_t> map_to(n, kNone);
        std::vector<bool> used(n, false);
        std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
            if (depth == n) {
                return true;
            }
            std::size_t src = order[depth];
            for (std::size_t cand = 0; cand < n; ++cand) {
                if (used[cand] || (depth == 0 && cand != 0)) {
                    continue;
                }
                bool ok = true;
                for (std::size_t prev = 0; prev < depth && ok; ++prev) {
                    std::size_t other = order[prev];
                    ok = g[src].contains(other) == h[cand].contains(map_to[other]);
                }
                if (!ok) {
                    continue;
                }
                map_to[src] = cand;
                used[cand] = true;
                if (extend(depth + 1)) {
                    return true;
                }
                used[cand] = false;
                map_to[src] = kNone;
            }
            return false;
        };
        return extend(0);
    };

    for (std::size_t a = 2; a <= n; ++a) {
        if (n % a != 0 || n / a < 2) {
            continue;
        }
        if (try_reference(build_lattice(kind, static_cast<int>(a), static_cast<int>(n / a)))) {
            return true;
        }
    }
    return false;
}

struct DictionaryEntry {
    enum class Source { x_generator, z_generator, bond } source;
    std::size_t source_index;
    PauliString real_op;
    std::optional<PauliString> virtual_op;  // nullopt: acts as the identity
    double coefficient;                     // of this single real term
    double aggregated_coefficient;          // of the virtual image after merging
};

/// Term-by-term translation of the perturbed Hamiltonian into virtual-spin
/// operators.
inline std::vector<DictionaryEntry> spectral_dictionary(const StabilizerCode &code, const BondSet &bonds,
                                                        const CouplingParams &cp) {
    cp.validate();
    auto vm = derive_virtual_model(code, bonds);
    const std::size_t nv = vm.num_spins();
    std::vector<DictionaryEntry> entries;
    for (auto ref : code.canonical_order()) {
        if (ref.type == PauliType::x_type) {
            std::array<std::size_t, 1> site{ref.index};
            entries.push_back({DictionaryEntry::Source::x_generator, ref.index, code.generator(ref),
                               z_type(nv, site), -cp.J, -cp.J});
        } else {
            double total = -cp.J * static_cast<double>(code.z_generators.size());
            entries.push_back(
                {DictionaryEntry::Source::z_generator, ref.index, code.generator(ref), std::nullopt, -cp.J, total});
        }
    }
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        const auto &vb = vm.bonds[vm.bond_image[b]];
        std::array<std::size_t, 2> sites{vb.p, vb.q};
        entries.push_back({DictionaryEntry::Source::bond, b, zz(code.n, bonds.bonds[b].i, bonds.bonds[b].j),
                           x_type(nv, sites), -cp.K, -cp.K * static_cast<double>(vm.pair_multiplicity(vb.p, vb.q))});
    }
    return entries;
}

}  // namespace topoising
