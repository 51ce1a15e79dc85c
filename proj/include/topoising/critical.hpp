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

// Transition points of perturbed codes from the virtual TFIM structure, plus
// finite-size estimators on the virtual side.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "topoising/codes.hpp"
#include "topoising/errors.hpp"
#include "topoising/hamiltonians.hpp"
#include "topoising/lattice.hpp"
#include "topoising/mapping.hpp"
#include "topoising/spectra.hpp"
#include "topoising/virtual_model.hpp"

namespace topoising {

struct CriticalRegistryEntry {
    std::string label;
    double x_c;  // critical J/K of the uniform TFIM
    std::string source;
};

inline const std::vector<CriticalRegistryEntry> &registry() {
    static const std::vector<CriticalRegistryEntry> entries{
        {"triangular", 4.77, "TFIM on the triangular lattice, literature value"},
        {"square", 3.0, "TFIM on the square lattice, literature value"},
        {"toric-square", 6.0, "toric code on the square lattice with Ising perturbation, literature value"},
    };
    return entries;
}

inline const CriticalRegistryEntry &lookup(std::string_view label) {
    for (const auto &e : registry()) {
        if (e.label == label) {
            return e;
        }
    }
    throw std::invalid_argument("no registry entry for '" + std::string(label) + "'");
}

/// Table values are quoted by cutting after the third decimal.
inline double truncate3(double x) { return std::floor(x * 1000.0 + 1e-9) / 1000.0; }

struct ComponentTransition {
    ComponentLabel label;
    std::size_t multiplicity;
    double ratio;  // (K/J)_c = 1 / (m x_c)
};

struct TransitionReport {
    std::vector<ComponentTransition> components;
    double first_transition = 0.0;  // first component to order
    double full_transition = 0.0;   // last one; topological order fully gone
};

inline TransitionReport transition_ratio(const VirtualIsingModel &vm) {
    if (vm.components.empty()) {
        throw std::invalid_argument("virtual model has no components");
    }
    TransitionReport rep;
    std::vector<std::size_t> component_of(vm.num_spins());
    for (std::size_t c = 0; c < vm.components.size(); ++c) {
        for (auto s : vm.components[c].spins) {
            component_of[s] = c;
        }
    }
    std::vector<std::optional<std::size_t>> mult(vm.components.size());
    for (const auto &b : vm.bonds) {
        auto c = component_of[b.p];
        if (mult[c] && *mult[c] != b.multiplicity) {
            throw UnsupportedModel("component " + std::to_string(c) + " has non-uniform bond multiplicity");
        }
        mult[c] = b.multiplicity;
    }
    for (std::size_t c = 0; c < vm.components.size(); ++c) {
        const auto &cls = vm.components[c].classification;
        if (cls.label == ComponentLabel::other) {
            throw UnsupportedModel("component " + std::to_string(c) + " is neither triangular nor square");
        }
        if (!mult[c]) {
            throw UnsupportedModel("component " + std::to_string(c) + " has no bonds");
        }
        double xc = lookup(to_string(cls.label)).x_c;
        rep.components.push_back({cls.label, *mult[c], 1.0 / (static_cast<double>(*mult[c]) * xc)});
    }
    auto [lo, hi] = std::minmax_element(rep.components.begin(), rep.components.end(),
                                        [](const auto &a, const auto &b) { return a.ratio < b.ratio; });
    rep.first_transition = lo->ratio;
    rep.full_transition = hi->ratio;
    return rep;
}

struct TableRow {
    CodeFamily code;
    LatticeKind lattice;
    std::string mapped_lattice;
    double ratio;  // full transition K/J
    int L1 = 0;    // size used for the derivation, 0 for registry rows
    int L2 = 0;
    std::string source;  // "derived" or "registry"
};

/// Virtual model for a (code, lattice) pair at the given size.
inline VirtualIsingModel derive_for(CodeFamily family, LatticeKind kind, int L1, int L2) {
    auto lat = std::make_shared<const TorusLattice>(build_lattice(kind, L1, L2));
    StabilizerCode code = family == CodeFamily::color ? build_color_code(lat, three_color_faces(*lat))
                                                      : build_toric_code(lat);
    return derive_virtual_model(code, ising_bonds(code));
}

inline std::string mapped_label(const TransitionReport &rep) {
    std::string out;
    for (const auto &c : rep.components) {
        std::string l(to_string(c.label));
        if (out.find(l) == std::string::npos) {
            out += (out.empty() ? "" : "+") + l;
        }
    }
    return out;
}

inline std::vector<TableRow> emit_table() {
    struct Spec {
        CodeFamily code;
        LatticeKind lattice;
        int L;
    };
    const Spec derived[] = {
        {CodeFamily::color, LatticeKind::honeycomb, 6},
        {CodeFamily::color, LatticeKind::square_octagonal, 6},
        {CodeFamily::toric, LatticeKind::square, 0},
        {CodeFamily::toric, LatticeKind::honeycomb, 4},
        {CodeFamily::toric, LatticeKind::triangular, 4},
    };
    std::vector<TableRow> rows;
    for (const auto &s : derived) {
        if (s.L == 0) {
            rows.push_back({s.code, s.lattice, "square", 1.0 / lookup("toric-square").x_c, 0, 0, "registry"});
            continue;
        }
        auto rep = transition_ratio(derive_for(s.code, s.lattice, s.L, s.L));
        rows.push_back({s.code, s.lattice, mapped_label(rep), rep.full_transition, s.L, s.L, "derived"});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Finite-size scans on the virtual model

enum class ScanAxis { j_over_k, k_over_j };

inline std::string_view to_string(ScanAxis a) { return a == ScanAxis::j_over_k ? "J/K" : "K/J"; }

struct ScanOptions {
    ScanAxis axis = ScanAxis::j_over_k;
    bool z2_even = true;      // restrict to prod Z = +1
    bool constrained = true;  // impose the parity constraints
    double degeneracy_tol = 1e-8;
};

struct ScanPoint {
    double ratio;
    double value;
    bool valid = true;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    double extremum = 0.0;  // refined peak (fidelity) or minimum (gap) location
    bool at_boundary = false;
    std::vector<double> flagged;  // grid ratios with a degenerate ground state
};

namespace detail {

inline CouplingParams couplings_at(double ratio, ScanAxis axis) {
    return axis == ScanAxis::j_over_k ? CouplingParams{ratio, 1.0} : CouplingParams{1.0, ratio};
}

inline SpectrumRequest scan_request(const VirtualIsingModel &vm, double ratio, const ScanOptions &opt, bool vectors) {
    const std::size_t n = vm.num_spins();
    SpectrumRequest req{.hamiltonian = build_tfim_hamiltonian(vm, couplings_at(ratio, opt.axis))};
    req.num_eigenvalues = 2;
    req.compute_vectors = vectors;
    req.precondition = true;
    if (opt.constrained) {
        for (const auto &c : vm.parity_constraints) {
            req.sector.push_back({z_type(n, c), 1});
        }
    }
    if (opt.z2_even) {
        std::vector<std::size_t> all(n);
        for (std::size_t p = 0; p < n; ++p) {
            all[p] = p;
        }
        req.sector.push_back({z_type(n, all), 1});
    }
    return req;
}

inline void check_grid(const std::vector<double> &grid) {
    if (grid.size() < 3) {
        throw std::invalid_argument("scan grid needs at least three points");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("scan grid must be strictly increasing");
        }
    }
    if (grid.front() < 0.0) {
        throw std::invalid_argument("scan grid must be non-negative");
    }
}

// Vertex of the parabola through three points.
inline double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    double d0 = (y1 - y0) / (x1 - x0);
    double d1 = (y2 - y1) / (x2 - x1);
    double a = (d1 - d0) / (x2 - x0);
    if (a == 0.0) {
        return x1;
    }
    return 0.5 * (x0 + x1) - d0 / (2.0 * a);
}

// Locates the extremum among valid points; ties go to the smaller ratio.
inline void refine(ScanResult &res, bool maximum) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        if (res.points[i].valid) {
            idx.push_back(i);
        }
    }
    if (idx.empty()) {
        throw std::invalid_argument("no valid scan points");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        double v = res.points[idx[k]].value;
        double b = res.points[idx[best]].value;
        if (maximum ? v > b : v < b) {
            best = k;
        }
    }
    if (best == 0 || best + 1 == idx.size()) {
        res.at_boundary = true;
        res.extremum = res.points[idx[best]].ratio;
        return;
    }
    const auto &p0 = res.points[idx[best - 1]];
    const auto &p1 = res.points[idx[best]];
    const auto &p2 = res.points[idx[best + 1]];
    res.extremum = parabola_vertex(p0.ratio, p0.value, p1.ratio, p1.value, p2.ratio, p2.value);
}

}  // namespace detail

/// chi_F = 2 (1 - |<psi0(l)|psi0(l + d)>|) / d^2 between neighbouring grid
/// points, reported at the midpoint.
inline ScanResult fidelity_susceptibility_scan(const VirtualIsingModel &vm, const std::vector<double> &grid,
                                               const ScanOptions &opt = {}) {
    detail::check_grid(grid);
    std::vector<std::vector<double>> ground(grid.size());
    std::vector<bool> degenerate(grid.size(), false);
    ScanResult res;
    std::vector<std::vector<double>> warm;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SpectrumRequest req = detail::scan_request(vm, grid[i], opt, true);
        req.initial_vectors = std::move(warm);
        SpectrumResult s = eigenvalues(req);
        warm = s.vectors;
        ground[i] = std::move(s.vectors.front());
        if (s.eigenvalues.size() > 1 &&
            s.eigenvalues[1] - s.eigenvalues[0] < opt.degeneracy_tol * std::max(1.0, std::abs(s.eigenvalues[0]))) {
            degenerate[i] = true;
            res.flagged.push_back(grid[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double delta = grid[i + 1] - grid[i];
        double overlap = std::min(1.0, std::abs(dot(ground[i], ground[i + 1])));
        double chi = 2.0 * (1.0 - overlap) / (delta * delta);
        res.points.push_back({0.5 * (grid[i] + grid[i + 1]), chi, !degenerate[i] && !degenerate[i + 1]});
    }
    detail::refine(res, true);
    return res;
}

/// E1 - E0 at each grid point; extremum is the refined minimum.
inline ScanResult gap_scan(const VirtualIsingModel &vm, const std::vector<double> &grid,
                           const ScanOptions &opt = {}) {
    detail::check_grid(grid);
    ScanResult res;
    std::vector<std::vector<double>> warm;
    for (double r : grid) {
        SpectrumRequest req = detail::scan_request(vm, r, opt, true);
        req.initial_vectors = std::move(warm);
        SpectrumResult s = eigenvalues(req);
        warm = std::move(s.vectors);
        double gap = s.eigenvalues.size() > 1 ? s.eigenvalues[1] - s.eigenvalues[0] : 0.0;
        res.points.push_back({r, gap, true});
    }
    detail::refine(res, false);
    return res;
}

/// Evenly spaced grid from lo to hi inclusive.
inline std::vector<double> linear_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) {
        throw std::invalid_argument("invalid grid range");
    }
    std::vector<double> g;
    auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
        g.push_back(lo + static_cast<double>(i) * step);
    }
    return g;
}

}  // namespace topoising
