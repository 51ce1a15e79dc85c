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

#include "oracles.hpp"
#include "topoising/codes.hpp"

using namespace topoising;

namespace {

void expect_pairwise_commuting(const StabilizerCode &code) {
    auto all = code.all_generators();
    for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            ASSERT_TRUE(commutes(all[a], all[b])) << a << " " << b;
        }
    }
}

PauliString product_of(const StabilizerCode &code, const std::vector<std::size_t> &rel) {
    auto order = code.canonical_order();
    PauliString p(code.n);
    for (auto k : rel) {
        p = multiply(p, code.generator(order[k]));
    }
    return p;
}

}  // namespace

TEST(ToricCode, HoneycombWeightsAndCounts) {
    auto code = oracle::toric(LatticeKind::honeycomb, 2, 3);
    EXPECT_EQ(code.placement, QubitPlacement::on_edges);
    EXPECT_EQ(code.n, 18U);
    EXPECT_EQ(code.x_generators.size(), 12U);
    EXPECT_EQ(code.z_generators.size(), 6U);
    for (const auto &g : code.x_generators) {
        EXPECT_EQ(g.weight(), 3U);
        EXPECT_TRUE(g.z().none());
    }
    for (const auto &g : code.z_generators) {
        EXPECT_EQ(g.weight(), 6U);
        EXPECT_TRUE(g.x().none());
    }
    expect_pairwise_commuting(code);
}

TEST(ColorCode, HoneycombWeightsAndCounts) {
    auto code = oracle::color(LatticeKind::honeycomb, 3, 3);
    EXPECT_EQ(code.placement, QubitPlacement::on_vertices);
    EXPECT_EQ(code.n, 18U);
    EXPECT_EQ(code.x_generators.size(), 9U);
    EXPECT_EQ(code.z_generators.size(), 9U);
    for (std::size_t f = 0; f < code.x_generators.size(); ++f) {
        EXPECT_EQ(code.x_generators[f].weight(), 6U);
        EXPECT_EQ(code.x_generators[f].x(), code.z_generators[f].z());
    }
    expect_pairwise_commuting(code);
}

TEST(Codes, PairwiseCommutationAllKinds) {
    for (auto kind : {LatticeKind::honeycomb, LatticeKind::square, LatticeKind::triangular,
                      LatticeKind::square_octagonal}) {
        expect_pairwise_commuting(oracle::toric(kind, 3, 3));
    }
    expect_pairwise_commuting(oracle::color(LatticeKind::square_octagonal, 2, 2));
    expect_pairwise_commuting(oracle::color(LatticeKind::honeycomb, 6, 6));
}

TEST(Codes, Degeneracy) {
    for (auto [kind, L1, L2] : {std::tuple{LatticeKind::honeycomb, 2, 3}, {LatticeKind::honeycomb, 3, 3},
                                {LatticeKind::honeycomb, 4, 4}, {LatticeKind::square, 3, 3},
                                {LatticeKind::triangular, 3, 3}, {LatticeKind::triangular, 4, 5},
                                {LatticeKind::square_octagonal, 2, 2}}) {
        EXPECT_EQ(degeneracy(oracle::toric(kind, L1, L2)), 4U) << to_string(kind) << " " << L1 << "x" << L2;
    }
    for (auto [kind, L] : {std::pair{LatticeKind::honeycomb, 3}, {LatticeKind::honeycomb, 6},
                           {LatticeKind::honeycomb, 9}, {LatticeKind::square_octagonal, 2},
                           {LatticeKind::square_octagonal, 4}}) {
        EXPECT_EQ(degeneracy(oracle::color(kind, L, L)), 16U) << to_string(kind) << " " << L;
    }
}

TEST(Codes, ConstraintRelationsMultiplyToIdentity) {
    auto toric = oracle::toric(LatticeKind::honeycomb, 3, 3);
    auto rt = constraint_relations(toric);
    EXPECT_EQ(rt.size(), 2U);
    auto color = oracle::color(LatticeKind::honeycomb, 3, 3);
    auto rc = constraint_relations(color);
    EXPECT_EQ(rc.size(), 4U);
    for (const auto *code : {&toric, &color}) {
        for (const auto &rel : constraint_relations(*code)) {
            auto p = product_of(*code, rel);
            EXPECT_TRUE(p.is_identity());
            EXPECT_EQ(p.sign(), 1);
        }
    }
}

TEST(Codes, RelationCountMatchesRankDeficit) {
    for (auto kind : {LatticeKind::square, LatticeKind::triangular}) {
        auto code = oracle::toric(kind, 3, 4);
        EXPECT_EQ(constraint_relations(code).size(), code.num_generators() - gf2_rank(code.generator_matrix()));
        EXPECT_EQ(logical_qubits(code), 2U);
    }
}

TEST(Logicals, ToricPairing) {
    auto code = oracle::toric(LatticeKind::honeycomb, 3, 3);
    auto set = logical_operators(code, nontrivial_loops(*code.lattice));
    ASSERT_EQ(set.operators.size(), 4U);
    for (const auto &l : set.operators) {
        EXPECT_TRUE(commutes_with_all_generators(code, l.op));
        EXPECT_FALSE(in_stabilizer_group(code, l.op));
    }
    std::set<std::pair<int, int>> dirs;
    for (auto [a, b] : set.pairing) {
        dirs.insert({set.operators[a].direction, set.operators[b].direction});
    }
    EXPECT_EQ(dirs, (std::set<std::pair<int, int>>{{0, 1}, {1, 0}}));
}

TEST(Logicals, ColorCodeEightOperatorsFourPairs) {
    auto code = oracle::color(LatticeKind::honeycomb, 3, 3);
    auto set = logical_operators(code, nontrivial_loops(*code.lattice, *code.coloring));
    EXPECT_EQ(set.operators.size(), 8U);
    EXPECT_EQ(set.pairing.size(), 4U);
    // Independence: the eight operators plus the generators span 2k more dimensions.
    std::vector<BitVector> rows;
    auto g = code.generator_matrix();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        rows.push_back(g.row(r));
    }
    for (const auto &l : set.operators) {
        rows.push_back(l.op.symplectic());
    }
    EXPECT_EQ(gf2_rank(Gf2Matrix::from_rows(2 * code.n, rows)), gf2_rank(g) + 8);
}

TEST(Logicals, ThirdColorIsDependent) {
    auto code = oracle::color(LatticeKind::honeycomb, 3, 3);
    auto loops = nontrivial_loops(*code.lattice, *code.coloring, {Color::red, Color::green, Color::blue});
    auto set = logical_operators(code, loops);
    for (int d : {0, 1}) {
        auto r = set.find(PauliType::x_type, d, Color::red);
        auto gr = set.find(PauliType::x_type, d, Color::green);
        auto b = set.find(PauliType::x_type, d, Color::blue);
        ASSERT_TRUE(r && gr && b);
        auto rg = multiply(set.operators[*r].op, set.operators[*gr].op);
        auto diff = multiply(rg, set.operators[*b].op);
        EXPECT_TRUE(in_stabilizer_group(code, diff)) << d;
    }
}

TEST(Logicals, RejectsStabilizerLoop) {
    auto code = oracle::toric(LatticeKind::square, 3, 3);
    LoopPath fake{LoopCarrier::primal_edges, 0, std::nullopt, {}, {}, {}, {1, 0}};
    fake.sites = code.z_generators[0].z().indices();
    EXPECT_THROW(logical_operators(code, {fake}), InvalidLogicalOperator);
}
