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


// Derives the virtual Ising model for each code/lattice pair and prints the
// transition ratios with their per-component breakdown.

#include <cstdio>

#include "topoising/critical.hpp"

using namespace topoising;

int main() {
    for (const auto &row : emit_table()) {
        std::printf("%-6s %-17s -> %-11s K/J = %.4f (%s)\n", std::string(to_string(row.code)).c_str(),
                    std::string(to_string(row.lattice)).c_str(), row.mapped_lattice.c_str(), row.ratio,
                    row.source.c_str());
        if (row.source != "derived") {
            continue;
        }
        auto rep = transition_ratio(derive_for(row.code, row.lattice, row.L1, row.L2));
        for (const auto &c : rep.components) {
            std::printf("         component %-11s m=%zu  K/J = %.4f\n", std::string(to_string(c.label)).c_str(),
                        c.multiplicity, c.ratio);
        }
    }
    return 0;
}
