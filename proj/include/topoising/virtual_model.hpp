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
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "topoising/codes.hpp"
#include "topoising/lattice.hpp"

namespace topoising {

struct VirtualSpin {
    std::size_t id;
    GeneratorOrigin origin;
    std::optional<Color> color;   // color-code faces
    std::optional<int> sublattice;  // vertex role, for vertex-attached spins
};

/// Bonds between the same pair of spins are kept apart when they wind
/// differently around the torus; the Hamiltonian adds them up.
struct VirtualBond {
    std::size_t p;
    std::size_t q;  // p < q
    std::size_t multiplicity;
    Vec2 displacement{};  // from p to q on the covering plane
};

enum class ComponentLabel { triangular, square, other };

inline std::string_view to_string(ComponentLabel l) {
    switch (l) {
        case ComponentLabel::triangular:
            return "triangular";
        case ComponentLabel::square:
            return "square";
        case ComponentLabel::other:
            return "other";
    }
    return "?";
}

struct ComponentClass {
    ComponentLabel label = ComponentLabel::other;
    bool small_size_caveat = false;
    std::vector<std::size_t> degrees;    // simple-graph degree per spin
    std::vector<std::size_t> triangles;  // triangles through each spin
};

struct VirtualComponent {
    std::vector<std::size_t> spins;  // ascending
    ComponentClass classification;
};

/// Transverse-field Ising model on virtual spins: -J sum Z_p - K sum m X_p X_q,
/// restricted to the parity-constraint sector.
struct VirtualIsingModel {
    std::vector<VirtualSpin> spins;
    std::vector<VirtualBond> bonds;
    std::vector<std::vector<std::size_t>> parity_constraints;  // sum of r_p over each set is even
    std::vector<VirtualComponent> components;
    std::size_t num_z_generators = 0;  // stabilized generators folded into the scalar offset
    std::vector<std::size_t> bond_image;  // real bond index -> index into bonds

    std::size_t num_spins() const { return spins.size(); }

    /// Summed multiplicity of all bonds joining p and q.
    std::size_t pair_multiplicity(std::size_t p, std::size_t q) const {
        if (p > q) {
            std::swap(p, q);
        }
        std::size_t total = 0;
        for (const auto &b : bonds) {
            if (b.p == p && b.q == q) {
                total += b.multiplicity;
            }
        }
        return total;
    }

    std::size_t total_multiplicity() const {
        std::size_t total = 0;
        for (const auto &b : bonds) {
            total += b.multiplicity;
        }
        return total;
    }
};

}  // namespace topoising
