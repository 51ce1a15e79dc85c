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

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "topoising/codes.hpp"
#include "topoising/lattice.hpp"
#include "topoising/pauli_gf2.hpp"
#include "topoising/virtual_model.hpp"

namespace topoising {

/// J couples the code terms, K the Ising perturbation.
struct CouplingParams {
    double J = 1.0;
    double K = 0.0;

    void validate() const {
        if (!std::isfinite(J) || !std::isfinite(K)) {
            throw std::invalid_argument("couplings must be finite");
        }
        if (J < 0.0 || K < 0.0) {
            throw std::invalid_argument("couplings must be non-negative");
        }
        if (J == 0.0 && K == 0.0) {
            throw std::invalid_argument("J and K cannot both be zero");
        }
    }
};

struct HamiltonianTerm {
    double coeff;
    PauliString op;  // sign always +1; any sign is folded into coeff
};

/// Real-coefficient Pauli sum with duplicate operators merged on insertion.
class HamiltonianTerms {
   public:
    HamiltonianTerms() = default;
    explicit HamiltonianTerms(std::size_t n) : n_(n) {}

    std::size_t num_qubits() const { return n_; }
    const std::vector<HamiltonianTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    void add(double coeff, const PauliString &op) {
        if (op.num_qubits() != n_) {
            throw std::invalid_argument("term acts on " + std::to_string(op.num_qubits()) + " qubits, expected " +
                                        std::to_string(n_));
        }
        auto key = std::make_pair(op.x(), op.z());
        double signed_coeff = coeff * op.sign();
        auto it = index_.find(key);
        if (it != index_.end()) {
            terms_[it->second].coeff += signed_coeff;
            return;
        }
        index_.emplace(std::move(key), terms_.size());
        terms_.push_back({signed_coeff, op.unsigned_copy()});
    }

    /// Drops terms whose merged coefficient is exactly zero.
    void remove_zero_terms() {
        std::vector<HamiltonianTerm> kept;
        for (auto &t : terms_) {
            if (t.coeff != 0.0) {
                kept.push_back(std::move(t));
            }
        }
        terms_ = std::move(kept);
        index_.clear();
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            index_.emplace(std::make_pair(terms_[k].op.x(), terms_[k].op.z()), k);
        }
    }

    /// Coefficient of the identity term, 0 if absent.
    double constant() const {
        for (const auto &t : terms_) {
            if (t.op.is_identity()) {
                return t.coeff;
            }
        }
        return 0.0;
    }

   private:
    std::size_t n_ = 0;
    std::vector<HamiltonianTerm> terms_;
    std::map<std::pair<BitVector, BitVector>, std::size_t> index_;
};

struct BondOrigin {
    enum class Kind { lattice_edge, shared_vertex } kind;
    std::size_t id;
};

struct Bond {
    std::size_t i;
    std::size_t j;
    BondOrigin origin;
};

struct BondSet {
    std::vector<Bond> bonds;

    std::size_t size() const { return bonds.size(); }

    void validate(std::size_t n) const {
        for (std::size_t b = 0; b < bonds.size(); ++b) {
            const auto &bond = bonds[b];
            if (bond.i == bond.j || bond.i >= n || bond.j >= n) {
                throw std::invalid_argument("bond " + std::to_string(b) + " is invalid for " + std::to_string(n) +
                                            " qubits");
            }
        }
    }
};

/// How edge-dwelling spins are paired up by the Ising term.
enum class BondPattern {
    /// Color code: lattice edges. Toric code: edges consecutive around a face
    /// corner (the triangle-hexagonal pattern).
    nearest_neighbor,
    /// Toric code only: every pair of edges sharing a vertex.
    all_vertex_pairs,
};

inline BondSet ising_bonds(const StabilizerCode &code, BondPattern pattern = BondPattern::nearest_neighbor) {
    BondSet set;
    const TorusLattice &lat = *code.lattice;
    if (code.placement == QubitPlacement::on_vertices) {
        for (const auto &e : lat.edges()) {
            set.bonds.push_back({e.u, e.v, {BondOrigin::Kind::lattice_edge, e.id}});
        }
        return set;
    }
    auto pairs = pattern == BondPattern::all_vertex_pairs ? adjacent_edge_pairs(lat) : face_corner_edge_pairs(lat);
    for (const auto &p : pairs) {
        set.bonds.push_back({p.first, p.second, {BondOrigin::Kind::shared_vertex, p.vertex}});
    }
    return set;
}

inline PauliString zz(std::size_t n, std::size_t i, std::size_t j) {
    std::array<std::size_t, 2> sites{i, j};
    return z_type(n, sites);
}

/// -J * (sum of all generators) - K * sum over bonds of Z_i Z_j.
inline HamiltonianTerms build_perturbed_hamiltonian(const StabilizerCode &code, const BondSet &bonds,
                                                    const CouplingParams &cp) {
    cp.validate();
    bonds.validate(code.n);
    HamiltonianTerms h(code.n);
    for (auto ref : code.canonical_order()) {
        h.add(-cp.J, code.generator(ref));
    }
    for (const auto &b : bonds.bonds) {
        h.add(-cp.K, zz(code.n, b.i, b.j));
    }
    h.remove_zero_terms();
    return h;
}

/// Virtual-spin side: scalar offset -J * (#Z-type generators), -J Z_p per
/// spin and -m K X_p X_q per virtual bond of multiplicity m.
inline HamiltonianTerms build_tfim_hamiltonian(const VirtualIsingModel &vm, const CouplingParams &cp) {
    cp.validate();
    const std::size_t n = vm.num_spins();
    HamiltonianTerms h(n);
    h.add(-cp.J * static_cast<double>(vm.num_z_generators), PauliString(n));
    for (std::size_t p = 0; p < n; ++p) {
        std::array<std::size_t, 1> site{p};
        h.add(-cp.J, z_type(n, site));
    }
    for (const auto &b : vm.bonds) {
        std::array<std::size_t, 2> sites{b.p, b.q};
        h.add(-cp.K * static_cast<double>(b.multiplicity), x_type(n, sites));
    }
    h.remove_zero_terms();
    return h;
}

}  // namespace topoising
