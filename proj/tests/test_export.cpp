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

#include <sstream>

#include "oracles.hpp"
#include "topoising/export.hpp"

using namespace topoising;

TEST(Export, LatticeDocument) {
    auto lat = build_lattice(LatticeKind::honeycomb, 3, 3);
    auto fc = three_color_faces(lat);
    auto ec = color_edges(lat, fc);
    auto j = lattice_json(lat, &fc, &ec);
    EXPECT_EQ(j["schema"], kSchema);
    EXPECT_EQ(j["vertices"].size(), 18U);
    EXPECT_EQ(j["edges"].size(), 27U);
    EXPECT_EQ(j["faces"].size(), 9U);
    EXPECT_TRUE(j["faces"][0].contains("color"));
    EXPECT_EQ(j.dump(), lattice_json(lat, &fc, &ec).dump());
}

TEST(Export, CodeAndVirtualModelDocuments) {
    auto code = oracle::color(LatticeKind::honeycomb, 3, 3);
    auto j = code_json(code);
    EXPECT_EQ(j["schema"], kSchema);
    EXPECT_EQ(j["degeneracy"], 16);
    auto vm = derive_virtual_model(code, ising_bonds(code));
    auto v = virtual_model_json(vm, transition_ratio(vm));
    EXPECT_EQ(v["schema"], kSchema);
    ASSERT_FALSE(v["bonds"].empty());
    EXPECT_TRUE(v["bonds"][0].contains("p"));
    EXPECT_TRUE(v["bonds"][0].contains("p_prime"));
    EXPECT_TRUE(v["bonds"][0].contains("multiplicity"));
    EXPECT_EQ(v.dump(), virtual_model_json(vm, transition_ratio(vm)).dump());
}

TEST(Export, HamiltonianLinesRoundTrip) {
    auto code = oracle::toric(LatticeKind::honeycomb, 2, 3);
    auto h = build_perturbed_hamiltonian(code, ising_bonds(code), {1.0, 0.1});
    std::istringstream in(hamiltonian_jsonl(h));
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        auto j = Json::parse(line);
        const auto &t = h.terms()[count];
        EXPECT_DOUBLE_EQ(j["coeff"].get<double>(), t.coeff);
        EXPECT_EQ(j["x_support"].get<std::vector<std::size_t>>(), t.op.x().indices());
        EXPECT_EQ(j["z_support"].get<std::vector<std::size_t>>(), t.op.z().indices());
        ++count;
    }
    EXPECT_EQ(count, h.size());
}

TEST(Export, TableFormats) {
    auto rows = emit_table();
    auto csv = table_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "code,lattice,mapped_lattice,K_over_J");
    EXPECT_NE(csv.find("color,honeycomb,triangular,0.209"), std::string::npos);
    EXPECT_NE(csv.find("toric,triangular,triangular,0.104"), std::string::npos);
    auto j = table_json(rows);
    EXPECT_EQ(j["schema"], kSchema);
    EXPECT_EQ(j["rows"].size(), 5U);
    EXPECT_EQ(j["rows"][2]["display"], "0.166");
    EXPECT_EQ(fixed3(0.3339), "0.333");
}
