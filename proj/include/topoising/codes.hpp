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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topoising/errors.hpp"
#include "topoising/lattice.hpp"
#include "topoising/pauli_gf2.hpp"

namespace topoising {

enum class CodeFamily { toric, color };
enum class QubitPlacement { on_vertices, on_edges };
enum class PauliType { x_type, z_type };

inline std::string_view to_string(CodeFamily f) { return f == CodeFamily::toric ? "toric" : "color"; }
inline std::string_view to_string(QubitPlacement p) {
    return p == QubitPlacement::on_edges ? "on_edges" : "on_vertices";
}
inline std::string_view to_string(PauliType t) { return t == PauliType::x_type ? "x_type" : "z_type"; }

inline CodeFamily parse_code_family(std::string_view name) {
    if (name == "toric") {
        return CodeFamily::toric;
    }
    if (name == "color") {
        return CodeFamily::color;
    }
    throw std::invalid_argument("unknown code family '" + std::string(name) + "'");
}

struct GeneratorOrigin {
    enum class Kind { face, vertex } kind;
    std::size_t id;
};

struct GeneratorRef {
    PauliType type;
    std::size_t index;  // into x_generators or z_generators
};

struct StabilizerCode {
    CodeFamily family;
    std::size_t n;
    QubitPlacement placement;
    std::vector<PauliString> x_generators;
    std::vector<PauliString> z_generators;
    std::vector<GeneratorOrigin> x_origins;
    std::vector<GeneratorOrigin> z_origins;
    std::shared_ptr<const TorusLattice> lattice;
    std::optional<FaceColoring> coloring;

    /// Canonical generator order: face generators before vertex generators,
    /// each in lattice index order, X-type before Z-type within a kind.
    std::vector<GeneratorRef> canonical_order() const {
        std::vector<GeneratorRef> order;
        if (family == CodeFamily::toric) {
            for (std::size_t k = 0; k < z_generators.size(); ++k) {
                order.push_back({PauliType::z_type, k});
            }
            for (std::size_t k = 0; k < x_generators.size(); ++k) {
                order.push_back({PauliType::x_type, k});
            }
        } else {
            for (std::size_t k = 0; k < x_generators.size(); ++k) {
                order.push_back({PauliType::x_type, k});
            }
            for (std::size_t k = 0; k < z_generators.size(); ++k) {
                order.push_back({PauliType::z_type, k});
            }
        }
        return order;
    }

    const PauliString &generator(GeneratorRef ref) const {
        return ref.type == PauliType::x_type ? x_generators.at(ref.index) : z_generators.at(ref.index);
    }

    const GeneratorOrigin &origin(GeneratorRef ref) const {
        return ref.type == PauliType::x_type ? x_origins.at(ref.index) : z_origins.at(ref.index);
    }

    std::vector<PauliString> all_generators() const {
        std::vector<PauliString> out;
        for (auto ref : canonical_order()) {
            out.push_back(generator(ref));
        }
        return out;
    }

    std::size_t num_generators() const { return x_generators.size() + z_generators.size(); }

    /// Symplectic generator matrix, rows in canonical order.
    Gf2Matrix generator_matrix() const {
        auto gens = all_generators();
        return symplectic_matrix(gens);
    }
};

/// Qubits on edges; A_v = X on the edges at v, B_p = Z on the boundary of p.
inline StabilizerCode build_toric_code(std::shared_ptr<const TorusLattice> lat) {
    StabilizerCode code{CodeFamily::toric, lat->num_edges(), QubitPlacement::on_edges, {}, {}, {}, {}, lat, std::nullopt};
    for (const auto &f : lat->faces()) {
        code.z_generators.push_back(z_type(code.n, f.edges));
        code.z_origins.push_back({GeneratorOrigin::Kind::face, f.id});
    }
    for (std::size_t v = 0; v < lat->num_vertices(); ++v) {
        code.x_generators.push_back(x_type(code.n, lat->incident_edges(v)));
        code.x_origins.push_back({GeneratorOrigin::Kind::vertex, v});
    }
    return code;
}

inline StabilizerCode build_toric_code(const TorusLattice &lat) {
    return build_toric_code(std::make_shared<const TorusLattice>(lat));
}

/// Qubits on vertices; each face carries both an all-X and an all-Z operator
/// on its vertex set.
inline StabilizerCode build_color_code(std::shared_ptr<const TorusLattice> lat, const FaceColoring &fc) {
    if (!is_valid_face_coloring(*lat, fc)) {
        throw std::invalid_argument("color code requires a valid face 3-coloring of the lattice");
    }
    StabilizerCode code{CodeFamily::color, lat->num_vertices(), QubitPlacement::on_vertices, {}, {}, {}, {}, lat, fc};
    for (const auto &f : lat->faces()) {
        code.x_generators.push_back(x_type(code.n, f.vertices));
        code.x_origins.push_back({GeneratorOrigin::Kind::face, f.id});
    }
    for (const auto &f : lat->faces()) {
        code.z_generators.push_back(z_type(code.n, f.vertices));
        code.z_origins.push_back({GeneratorOrigin::Kind::face, f.id});
    }
    return code;
}

inline StabilizerCode build_color_code(const TorusLattice &lat, const FaceColoring &fc) {
    return build_color_code(std::make_shared<const TorusLattice>(lat), fc);
}

/// Number of encoded qubits, n - rank of the generator matrix.
inline std::size_t logical_qubits(const StabilizerCode &code) { return code.n - gf2_rank(code.generator_matrix()); }

/// Ground-space dimension of the unperturbed code Hamiltonian.
inline std::uint64_t degeneracy(const StabilizerCode &code) {
    std::size_t k = logical_qubits(code);
    if (k >= 64) {
        throw std::overflow_error("degeneracy exceeds 2^63");
    }
    return std::uint64_t{1} << k;
}

/// Basis of generator subsets whose product is the identity, as index sets
/// into canonical_order().
inline std::vector<std::vector<std::size_t>> constraint_relations(const StabilizerCode &code) {
    auto kernel = gf2_nullspace(code.generator_matrix().transpose());
    std::vector<std::vector<std::size_t>> relations;
    relations.reserve(kernel.size());
    for (const auto &v : kernel) {
        relations.push_back(v.indices());
    }
    return relations;
}

/// True when op (ignoring sign) is a product of stabilizer generators.
inline bool in_stabilizer_group(const StabilizerCode &code, const PauliString &op) {
    return gf2_in_row_space(code.generator_matrix(), op.symplectic());
}

inline bool commutes_with_all_generators(const StabilizerCode &code, const PauliString &op) {
    for (const auto &g : code.x_generators) {
        if (anticommutes(g, op)) {
            return false;
        }
    }
    for (const auto &g : code.z_generators) {
        if (anticommutes(g, op)) {
            return false;
        }
    }
    return true;
}

struct LogicalOperator {
    PauliString op;
    PauliType type;
    int direction;
    std::optional<Color> color;
};

struct LogicalOperatorSet {
    std::vector<LogicalOperator> operators;
    /// Anticommuting (x_type index, z_type index) pairs into operators.
    std::vector<std::pair<std::size_t, std::size_t>> pairing;

    std::optional<std::size_t> find(PauliType type, int direction, std::optional<Color> color = std::nullopt) const {
        for (std::size_t k = 0; k < operators.size(); ++k) {
            const auto &l = operators[k];
            if (l.type == type && l.direction == direction && l.color == color) {
                return k;
            }
        }
        return std::nullopt;
    }
};

/// Loop operators built from the given loop paths. Toric code: dual loops give
/// X-type and primal loops Z-type operators. Color code: every colored loop
/// gives both. X-type operators come first, each group in loop order.
inline LogicalOperatorSet logical_operators(const StabilizerCode &code, const std::vector<LoopPath> &loops) {
    LogicalOperatorSet set;
    std::vector<LogicalOperator> xs;
    std::vector<LogicalOperator> zs;
    for (const auto &loop : loops) {
        if (code.family == CodeFamily::toric) {
            if (loop.carrier == LoopCarrier::dual_edges) {
                xs.push_back({x_type(code.n, loop.sites), PauliType::x_type, loop.direction, std::nullopt});
            } else if (loop.carrier == LoopCarrier::primal_edges) {
                zs.push_back({z_type(code.n, loop.sites), PauliType::z_type, loop.direction, std::nullopt});
            } else {
                throw InvalidLogicalOperator("colored loops do not define toric-code logicals");
            }
        } else {
            if (loop.carrier != LoopCarrier::colored) {
                throw InvalidLogicalOperator("color-code logicals require colored loops");
            }
            xs.push_back({x_type(code.n, loop.sites), PauliType::x_type, loop.direction, loop.color});
            zs.push_back({z_type(code.n, loop.sites), PauliType::z_type, loop.direction, loop.color});
        }
    }
    set.operators = std::move(xs);
    set.operators.insert(set.operators.end(), zs.begin(), zs.end());

    auto generators = code.generator_matrix();
    for (std::size_t k = 0; k < set.operators.size(); ++k) {
        const auto &l = set.operators[k];
        if (!commutes_with_all_generators(code, l.op)) {
            throw InvalidLogicalOperator("loop operator " + std::to_string(k) + " anticommutes with a generator");
        }
        if (gf2_in_row_space(generators, l.op.symplectic())) {
            throw InvalidLogicalOperator("loop operator " + std::to_string(k) + " is a product of generators");
        }
    }
    for (std::size_t a = 0; a < set.operators.size(); ++a) {
        if (set.operators[a].type != PauliType::x_type) {
            continue;
        }
        for (std::size_t b = 0; b < set.operators.size(); ++b) {
            if (set.operators[b].type == PauliType::z_type && anticommutes(set.operators[a].op, set.operators[b].op)) {
                set.pairing.emplace_back(a, b);
            }
        }
    }
    return set;
}

}  // namespace topoising
