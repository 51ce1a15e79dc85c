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

#include <gtest/gtest.h>

#include <set>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "topoising/mapping.hpp"

using namespace topoising;

namespace {

struct Instance {
    CodeFamily family;
    LatticeKind kind;
    int L1, L2;
};

StabilizerCode make(const Instance &in) {
    return in.family == CodeFamily::toric ? oracle::toric(in.kind, in.L1, in.L2)
                                          : oracle::color(in.kind, in.L1, in.L2);
}

const std::vector<Instance> kInstances{
    {CodeFamily::color, LatticeKind::honeycomb, 3, 3},      {CodeFamily::color, LatticeKind::honeycomb, 6, 6},
    {CodeFamily::color, LatticeKind::square_octagonal, 2, 2}, {CodeFamily::color, LatticeKind::square_octagonal, 4, 4},
    {CodeFamily::toric, LatticeKind::honeycomb, 3, 3},      {CodeFamily::toric, LatticeKind::honeycomb, 4, 4},
    {CodeFamily::toric, LatticeKind::triangular, 3, 3},     {CodeFamily::toric, LatticeKind::triangular, 4, 4},
};

// Indices of X-type generators that anticommute with Z_i Z_j.
std::vector<std::size_t> flipped_generators(const StabilizerCode &code, const Bond &b) {
    std::vector<std::size_t> out;
    auto op = zz(code.n, b.i, b.j);
    for (std::size_t p = 0; p < code.x_generators.size(); ++p) {
        if (anticommutes(code.x_generators[p], op)) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

TEST(DeriveVirtualModel, EveryBondFlipsExactlyTwoSpins) {
    for (const auto &in : kInstances) {
        auto code = make(in);
        auto bonds = ising_bonds(code);
        auto vm = derive_virtual_model(code, bonds);
        ASSERT_EQ(vm.bond_image.size(), bonds.size());
        for (std::size_t b = 0; b < bonds.size(); ++b) {
            auto flipped = flipped_generators(code, bonds.bonds[b]);
            ASSERT_EQ(flipped.size(), 2U);
            const auto &vb = vm.bonds[vm.bond_image[b]];
            EXPECT_EQ(vb.p, flipped[0]);
            EXPECT_EQ(vb.q, flipped[1]);
        }
        EXPECT_EQ(vm.total_multiplicity(), bonds.size());
        EXPECT_EQ(vm.num_spins(), code.x_generators.size());
    }
}

TEST(DeriveVirtualModel, ColorAndSublatticePurity) {
    for (const auto &in : kInstances) {
        auto code = make(in);
        auto vm = derive_virtual_model(code, ising_bonds(code));
        for (const auto &b : vm.bonds) {
            if (in.family == CodeFamily::color) {
                ASSERT_TRUE(vm.spins[b.p].color && vm.spins[b.q].color);
                EXPECT_EQ(*vm.spins[b.p].color, *vm.spins[b.q].color);
            } else {
                ASSERT_TRUE(vm.spins[b.p].sublattice && vm.spins[b.q].sublattice);
                EXPECT_EQ(*vm.spins[b.p].sublattice, *vm.spins[b.q].sublattice);
            }
        }
    }
}

TEST(DeriveVirtualModel, ConstraintsMeetBondsEvenly) {
    for (const auto &in : kInstances) {
        auto code = make(in);
        auto vm = derive_virtual_model(code, ising_bonds(code));
        EXPECT_EQ(vm.parity_constraints.size(), in.family == CodeFamily::toric ? 1U : 2U);
        for (const auto &c : vm.parity_constraints) {
            std::set<std::size_t> s(c.begin(), c.end());
            // The product of the constrained generators is the identity.
            PauliString prod(code.n);
            for (auto p : c) {
                prod = multiply(prod, code.x_generators[p]);
            }
            EXPECT_TRUE(prod.is_identity());
            for (const auto &b : vm.bonds) {
                EXPECT_EQ(s.contains(b.p), s.contains(b.q)) << "bond flips an odd number of constrained spins";
            }
        }
    }
}

TEST(DeriveVirtualModel, ComponentsAndLabels) {
    struct Expect {
        Instance in;
        std::vector<std::size_t> sizes;
        ComponentLabel label;
        std::size_t multiplicity;
    };
    const std::vector<Expect> cases{
        {{CodeFamily::color, LatticeKind::honeycomb, 3, 3}, {3, 3, 3}, ComponentLabel::triangular, 1},
        {{CodeFamily::color, LatticeKind::honeycomb, 6, 6}, {12, 12, 12}, ComponentLabel::triangular, 1},
        {{CodeFamily::toric, LatticeKind::honeycomb, 3, 3}, {9, 9}, ComponentLabel::triangular, 1},
        {{CodeFamily::toric, LatticeKind::honeycomb, 4, 4}, {16, 16}, ComponentLabel::triangular, 1},
        {{CodeFamily::toric, LatticeKind::triangular, 3, 3}, {9}, ComponentLabel::triangular, 2},
        {{CodeFamily::toric, LatticeKind::triangular, 4, 4}, {16}, ComponentLabel::triangular, 2},
    };
    for (const auto &c : cases) {
        auto code = make(c.in);
        auto vm = derive_virtual_model(code, ising_bonds(code));
        ASSERT_EQ(vm.components.size(), c.sizes.size()) << to_string(c.in.kind);
        for (std::size_t k = 0; k < vm.components.size(); ++k) {
            EXPECT_EQ(vm.components[k].spins.size(), c.sizes[k]);
            EXPECT_EQ(vm.components[k].classification.label, c.label) << to_string(c.in.kind) << " " << k;
            EXPECT_EQ(vm.components[k].classification.small_size_caveat, c.sizes[k] < 9);
        }
        for (const auto &b : vm.bonds) {
            EXPECT_EQ(b.multiplicity, c.multiplicity);
        }
    }
}

TEST(DeriveVirtualModel, SquareOctagonalComponents) {
    auto code = oracle::color(LatticeKind::square_octagonal, 4, 4);
    auto vm = derive_virtual_model(code, ising_bonds(code));
    ASSERT_EQ(vm.components.size(), 3U);
    std::multiset<std::size_t> sizes;
    for (const auto &c : vm.components) {
        sizes.insert(c.spins.size());
        EXPECT_EQ(c.classification.label, ComponentLabel::square);
        auto color = *vm.spins[c.spins.front()].color;
        for (auto s : c.spins) {
            EXPECT_EQ(*vm.spins[s].color, color);
        }
    }
    EXPECT_EQ(sizes, (std::multiset<std::size_t>{8, 8, 16}));
}

TEST(DeriveVirtualModel, PlainTfimOnLatticeIsRecognised) {
    for (auto [kind, label] : {std::pair{LatticeKind::triangular, ComponentLabel::triangular},
                               {LatticeKind::square, ComponentLabel::square}}) {
        auto vm = tfim_on_lattice(build_lattice(kind, 4, 4));
        ASSERT_EQ(vm.components.size(), 1U);
        EXPECT_EQ(vm.components[0].classification.label, label);
        EXPECT_TRUE(component_isomorphic_to(vm, 0, kind));
    }
    auto hc = tfim_on_lattice(build_lattice(LatticeKind::honeycomb, 3, 3));
    EXPECT_EQ(hc.components[0].classification.label, ComponentLabel::other);
}

TEST(DeriveVirtualModel, ObstructionOnForeignBond) {
    // Two qubits on the same color-code face and its two neighbours along one
    // edge each: Z_i Z_j with i, j far apart flips more than two plaquettes.
    auto code = oracle::color(LatticeKind::honeycomb, 3, 3);
    const auto &lat = *code.lattice;
    std::size_t i = 0;
    std::size_t j = 0;
    for (std::size_t v = 1; v < lat.num_vertices(); ++v) {
        std::set<std::size_t> fi(lat.vertex_faces(0).begin(), lat.vertex_faces(0).end());
        std::size_t shared = 0;
        for (auto f : lat.vertex_faces(v)) {
            shared += fi.contains(f) ? 1 : 0;
        }
        if (shared == 0) {
            j = v;
            break;
        }
    }
    ASSERT_NE(i, j);
    BondSet bonds;
    bonds.bonds.push_back({i, j, {BondOrigin::Kind::lattice_edge, 0}});
    EXPECT_THROW(derive_virtual_model(code, bonds), MappingObstruction);
}

TEST(SpectralDictionary, TermByTerm) {
    auto code = oracle::toric(LatticeKind::triangular, 3, 3);
    auto bonds = ising_bonds(code);
    CouplingParams cp{1.0, 0.1};
    auto dict = spectral_dictionary(code, bonds, cp);
    ASSERT_EQ(dict.size(), code.num_generators() + bonds.size());
    for (const auto &e : dict) {
        switch (e.source) {
            case DictionaryEntry::Source::x_generator:
                ASSERT_TRUE(e.virtual_op);
                EXPECT_EQ(e.virtual_op->weight(), 1U);
                EXPECT_TRUE(e.virtual_op->x().none());
                EXPECT_TRUE(e.virtual_op->z().get(e.source_index));
                EXPECT_DOUBLE_EQ(e.coefficient, -cp.J);
                break;
            case DictionaryEntry::Source::z_generator:
                EXPECT_FALSE(e.virtual_op);
                EXPECT_DOUBLE_EQ(e.aggregated_coefficient, -cp.J * static_cast<double>(code.z_generators.size()));
                break;
            case DictionaryEntry::Source::bond: {
                ASSERT_TRUE(e.virtual_op);
                auto flipped = flipped_generators(code, bonds.bonds[e.source_index]);
                EXPECT_EQ(e.virtual_op->x().indices(), flipped);
                EXPECT_TRUE(e.virtual_op->z().none());
                EXPECT_DOUBLE_EQ(e.coefficient, -cp.K);
                EXPECT_DOUBLE_EQ(e.aggregated_coefficient, -2.0 * cp.K);
                break;
            }
        }
    }
}
