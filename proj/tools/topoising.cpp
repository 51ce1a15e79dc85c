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

// topoising command-line tool.
//
// Exit codes: 0 ok, 1 internal error, 2 invalid arguments, 3 no 3-coloring or
// mapping obstruction, 4 unsupported model, 5 eigensolver did not converge,
// 6 size guard (real-spin dimension above 2^20 without --force, or beyond the
//   exact-diagonalization limit).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "topoising/codes.hpp"
#include "topoising/critical.hpp"
#include "topoising/errors.hpp"
#include "topoising/export.hpp"
#include "topoising/hamiltonians.hpp"
#include "topoising/lattice.hpp"
#include "topoising/mapping.hpp"
#include "topoising/spectra.hpp"

namespace {

using namespace topoising;

enum Exit { kOk = 0, kInternal = 1, kBadArgs = 2, kObstruction = 3, kUnsupported = 4, kNoConvergence = 5, kGuard = 6 };

class GuardError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    unsigned threads = 0;
    std::string format;  // json | csv | text; empty picks the command default
    std::string output;
    bool force = false;
    std::uint64_t seed = 0;  // reserved; every computation is deterministic

    // model selection
    std::string code = "toric";
    std::string lattice = "honeycomb";
    int L1 = 3;
    int L2 = 3;
    std::string bonds = "nearest";
    double J = 1.0;
    double K = 0.0;

    // lattice command
    bool color = false;

    // spectrum / equiv
    std::size_t num_eigs = 6;
    std::string method = "auto";
    std::string sector = "none";
    bool virtual_side = false;
    double tol = 1e-7;

    // scan
    std::string model = "tfim";
    std::string observable = "fidelity";
    std::string axis = "J/K";
    double from = 1.0;
    double to = 9.0;
    double step = 0.1;
    bool no_z2 = false;
};

void emit(const RunConfig &cfg, const std::string &text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open output file '" + cfg.output + "'");
    }
    out << text;
}

std::string json_text(const Json &j) { return j.dump(2) + "\n"; }

std::string format_or(const RunConfig &cfg, const char *fallback) {
    std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "json" && f != "csv" && f != "text") {
        throw std::invalid_argument("unknown format '" + f + "'");
    }
    return f;
}

StabilizerCode make_code(const RunConfig &cfg) {
    CodeFamily family = parse_code_family(cfg.code);
    LatticeKind kind = parse_lattice_kind(cfg.lattice);
    auto lat = std::make_shared<const TorusLattice>(build_lattice(kind, cfg.L1, cfg.L2));
    if (family == CodeFamily::color) {
        return build_color_code(lat, three_color_faces(*lat));
    }
    return build_toric_code(lat);
}

BondSet make_bonds(const RunConfig &cfg, const StabilizerCode &code) {
    if (cfg.bonds == "nearest") {
        return ising_bonds(code, BondPattern::nearest_neighbor);
    }
    if (cfg.bonds == "all-pairs") {
        return ising_bonds(code, BondPattern::all_vertex_pairs);
    }
    throw std::invalid_argument("unknown bond pattern '" + cfg.bonds + "'");
}

void refuse_toric_square(const RunConfig &cfg) {
    if (parse_code_family(cfg.code) == CodeFamily::toric && parse_lattice_kind(cfg.lattice) == LatticeKind::square) {
        throw UnsupportedModel("toric code on the square lattice is not mapped; see registry entry 'toric-square' (K/J = " +
                               fixed3(1.0 / lookup("toric-square").x_c) + ")");
    }
}

void guard_size(const RunConfig &cfg, std::size_t qubits) {
    if (qubits > kMaxQubits) {
        throw GuardError(std::to_string(qubits) + " qubits exceed the exact-diagonalization limit of " +
                         std::to_string(kMaxQubits));
    }
    if (qubits > 20 && !cfg.force) {
        throw GuardError("real-spin dimension 2^" + std::to_string(qubits) + " exceeds 2^20; pass --force to run");
    }
}

EigenMethod parse_method(const std::string &m) {
    if (m == "auto") {
        return EigenMethod::automatic;
    }
    if (m == "dense") {
        return EigenMethod::dense;
    }
    if (m == "iterative") {
        return EigenMethod::iterative;
    }
    throw std::invalid_argument("unknown method '" + m + "'");
}

int cmd_lattice(const RunConfig &cfg) {
    TorusLattice lat = build_lattice(parse_lattice_kind(cfg.lattice), cfg.L1, cfg.L2);
    std::optional<FaceColoring> fc;
    std::optional<EdgeColoring> ec;
    if (cfg.color) {
        fc = three_color_faces(lat);
        ec = color_edges(lat, *fc);
    }
    std::string f = format_or(cfg, "json");
    if (f == "json") {
        emit(cfg, json_text(lattice_json(lat, fc ? &*fc : nullptr, ec ? &*ec : nullptr)));
        return kOk;
    }
    std::ostringstream out;
    out << to_string(lat.kind()) << ' ' << lat.L1() << 'x' << lat.L2() << ": V=" << lat.num_vertices()
        << " E=" << lat.num_edges() << " F=" << lat.num_faces() << '\n';
    if (fc) {
        std::size_t counts[3] = {0, 0, 0};
        for (auto c : *fc) {
            ++counts[static_cast<int>(c)];
        }
        out << "faces per color: red=" << counts[0] << " green=" << counts[1] << " blue=" << counts[2] << '\n';
    }
    emit(cfg, out.str());
    return kOk;
}

int cmd_map(const RunConfig &cfg) {
    refuse_toric_square(cfg);
    StabilizerCode code = make_code(cfg);
    VirtualIsingModel vm = derive_virtual_model(code, make_bonds(cfg, code));
    std::optional<TransitionReport> rep;
    std::string transition_error;
    try {
        rep = transition_ratio(vm);
    } catch (const UnsupportedModel &e) {
        transition_error = e.what();
    }
    std::string f = format_or(cfg, "json");
    if (f == "json") {
        Json j = virtual_model_json(vm, rep);
        j["model"] = code_id(code);
        if (!rep) {
            j["transition_error"] = transition_error;
        }
        emit(cfg, json_text(j));
        return kOk;
    }
    std::ostringstream out;
    out << code_id(code) << ": " << vm.num_spins() << " virtual spins, " << vm.bonds.size() << " bonds, "
        << vm.components.size() << " components\n";
    for (std::size_t c = 0; c < vm.components.size(); ++c) {
        const auto &comp = vm.components[c];
        out << "  component " << c << ": " << comp.spins.size() << " spins, " << to_string(comp.classification.label)
            << (comp.classification.small_size_caveat ? " (small)" : "");
        if (rep) {
            out << ", m=" << rep->components[c].multiplicity << ", K/J=" << fixed3(rep->components[c].ratio);
        }
        out << '\n';
    }
    if (rep) {
        out << "first transition K/J=" << fixed3(rep->first_transition) << ", full transition K/J="
            << fixed3(rep->full_transition) << '\n';
    } else {
        out << "no transition estimate: " << transition_error << '\n';
    }
    emit(cfg, out.str());
    return kOk;
}

int cmd_spectrum(const RunConfig &cfg) {
    CouplingParams cp{cfg.J, cfg.K};
    cp.validate();
    StabilizerCode code = make_code(cfg);
    BondSet bonds = make_bonds(cfg, code);
    SpectrumRequest req;
    std::string model = code_id(code);
    if (cfg.virtual_side) {
        refuse_toric_square(cfg);
        VirtualIsingModel vm = derive_virtual_model(code, bonds);
        req = virtual_request(vm, cp, cfg.num_eigs);
        model += "/virtual";
    } else {
        guard_size(cfg, code.n);
        req.hamiltonian = build_perturbed_hamiltonian(code, bonds, cp);
        req.num_eigenvalues = cfg.num_eigs;
        if (cfg.sector == "stabilized") {
            for (const auto &g : code.z_generators) {
                req.sector.push_back({g, 1});
            }
        } else if (cfg.sector == "ferromagnetic") {
            for (const auto &g : code.z_generators) {
                req.sector.push_back({g, 1});
            }
            for (const auto &l : z_logicals(code)) {
                req.sector.push_back({l, 1});
            }
        } else if (cfg.sector != "none") {
            throw std::invalid_argument("unknown sector '" + cfg.sector + "'");
        }
    }
    req.method = parse_method(cfg.method);
    SpectrumResult res = eigenvalues(req);
    std::string sector = cfg.virtual_side ? "parity-constrained" : cfg.sector;
    std::string f = format_or(cfg, "json");
    if (f == "json") {
        emit(cfg, json_text(spectrum_json(model, cp, sector, res)));
        return kOk;
    }
    std::ostringstream out;
    out.precision(12);
    if (f == "csv") {
        out << "index,eigenvalue\n";
        for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
            out << i << ',' << res.eigenvalues[i] << '\n';
        }
    } else {
        out << model << " J=" << cp.J << " K=" << cp.K << " sector=" << sector << " dim=" << res.dimension << '\n';
        for (double e : res.eigenvalues) {
            out << e << '\n';
        }
    }
    emit(cfg, out.str());
    return kOk;
}

int cmd_equiv(const RunConfig &cfg) {
    refuse_toric_square(cfg);
    CouplingParams cp{cfg.J, cfg.K};
    cp.validate();
    StabilizerCode code = make_code(cfg);
    guard_size(cfg, code.n);
    EquivalenceReport rep = verify_equivalence(code, make_bonds(cfg, code), cp, cfg.num_eigs, cfg.tol);
    std::string f = format_or(cfg, "json");
    if (f == "json") {
        emit(cfg, json_text(equivalence_json(rep)));
        return kOk;
    }
    std::ostringstream out;
    out.precision(12);
    out << rep.code_id << " J=" << cp.J << " K=" << cp.K << '\n'
        << "E0 real             " << rep.E0_real << '\n'
        << "E0 virtual + offset " << rep.E0_virtual_plus_offset << '\n'
        << "matched levels      " << rep.low_spectrum_match.size() << '/'
        << rep.low_spectrum_match.size() + rep.unmatched_virtual.size() << '\n'
        << "verdict             " << (rep.verdict ? "true" : "false") << '\n';
    emit(cfg, out.str());
    return kOk;
}

int cmd_table(const RunConfig &cfg) {
    auto rows = emit_table();
    std::string f = format_or(cfg, "text");
    if (f == "json") {
        emit(cfg, json_text(table_json(rows)));
    } else if (f == "csv") {
        emit(cfg, table_csv(rows));
    } else {
        emit(cfg, table_text(rows));
    }
    return kOk;
}

int cmd_scan(const RunConfig &cfg) {
    VirtualIsingModel vm;
    std::string model;
    if (cfg.model == "tfim") {
        vm = tfim_on_lattice(build_lattice(parse_lattice_kind(cfg.lattice), cfg.L1, cfg.L2));
        model = "tfim/" + cfg.lattice;
    } else if (cfg.model == "code") {
        refuse_toric_square(cfg);
        StabilizerCode code = make_code(cfg);
        vm = derive_virtual_model(code, make_bonds(cfg, code));
        model = code_id(code) + "/virtual";
    } else {
        throw std::invalid_argument("unknown scan model '" + cfg.model + "'");
    }
    ScanOptions opt;
    if (cfg.axis == "J/K") {
        opt.axis = ScanAxis::j_over_k;
    } else if (cfg.axis == "K/J") {
        opt.axis = ScanAxis::k_over_j;
    } else {
        throw std::invalid_argument("axis must be J/K or K/J");
    }
    opt.z2_even = !cfg.no_z2;
    auto grid = linear_grid(cfg.from, cfg.to, cfg.step);
    ScanResult res;
    if (cfg.observable == "fidelity") {
        res = fidelity_susceptibility_scan(vm, grid, opt);
    } else if (cfg.observable == "gap") {
        res = gap_scan(vm, grid, opt);
    } else {
        throw std::invalid_argument("observable must be fidelity or gap");
    }
    if (res.at_boundary) {
        std::cerr << "warning: extremum at the grid boundary; widen the grid\n";
    }
    if (!res.flagged.empty()) {
        std::cerr << "warning: " << res.flagged.size() << " grid points have a degenerate ground state\n";
    }
    std::string f = format_or(cfg, "csv");
    if (f == "json") {
        Json j = scan_json(res, opt.axis, cfg.observable);
        j["model"] = model;
        emit(cfg, json_text(j));
    } else if (f == "csv") {
        emit(cfg, scan_csv(res, cfg.observable));
    } else {
        std::ostringstream out;
        out.precision(6);
        out << model << ' ' << cfg.observable << " extremum at " << to_string(opt.axis) << " = " << res.extremum
            << (res.at_boundary ? " (boundary)" : "") << '\n';
        emit(cfg, out.str());
    }
    return kOk;
}

void model_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--code", cfg.code, "toric or color")->capture_default_str();
    sub->add_option("--lattice", cfg.lattice, "honeycomb, square, triangular, square_octagonal")
        ->capture_default_str();
    sub->add_option("--L1", cfg.L1, "cells along a1")->capture_default_str();
    sub->add_option("--L2", cfg.L2, "cells along a2")->capture_default_str();
    sub->add_option("--bonds", cfg.bonds, "nearest or all-pairs")->capture_default_str();
}

void coupling_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--J", cfg.J, "code coupling")->capture_default_str();
    sub->add_option("--K", cfg.K, "Ising coupling")->capture_default_str();
}

int diagnose(const char *code, const std::string &what, int status) {
    std::string line = what;
    for (auto &c : line) {
        if (c == '\n') {
            c = ' ';
        }
    }
    std::cerr << "error: " << code << ": " << line << '\n';
    return status;
}

}  // namespace

int main(int argc, char **argv) {
    RunConfig cfg;
    CLI::App app{"Perturbed topological codes and their transverse-field Ising duals"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--threads", cfg.threads, "worker threads for matvec (default: TOPOISING_THREADS or 1)");
    app.add_option("--format", cfg.format, "json, csv or text");
    app.add_option("--output", cfg.output, "write to this file instead of stdout");
    app.add_flag("--force", cfg.force, "allow real-spin dimensions above 2^20");
    app.add_option("--seed", cfg.seed, "reserved; all computations are deterministic");

    auto *lattice = app.add_subcommand("lattice", "build a torus lattice");
    lattice->add_option("kind", cfg.lattice, "lattice kind")->required();
    lattice->add_option("L1", cfg.L1, "cells along a1")->required();
    lattice->add_option("L2", cfg.L2, "cells along a2")->required();
    lattice->add_flag("--color", cfg.color, "include face and edge 3-colorings");

    auto *map = app.add_subcommand("map", "derive the virtual Ising model and transition point");
    model_options(map, cfg);

    auto *spectrum = app.add_subcommand("spectrum", "lowest eigenvalues of the perturbed code Hamiltonian");
    model_options(spectrum, cfg);
    coupling_options(spectrum, cfg);
    spectrum->add_option("--num-eigs", cfg.num_eigs, "number of eigenvalues")->capture_default_str();
    spectrum->add_option("--method", cfg.method, "auto, dense or iterative")->capture_default_str();
    spectrum->add_option("--sector", cfg.sector, "none, stabilized or ferromagnetic")->capture_default_str();
    spectrum->add_flag("--virtual", cfg.virtual_side, "diagonalize the constrained virtual TFIM instead");

    auto *equiv = app.add_subcommand("equiv", "compare real and virtual spectra");
    model_options(equiv, cfg);
    coupling_options(equiv, cfg);
    equiv->add_option("--levels", cfg.num_eigs, "virtual levels to match")->capture_default_str();
    equiv->add_option("--tol", cfg.tol, "absolute tolerance")->capture_default_str();

    app.add_subcommand("table", "transition table for the five code/lattice pairs");

    auto *scan = app.add_subcommand("scan", "finite-size scan on a virtual TFIM");
    model_options(scan, cfg);
    scan->add_option("--model", cfg.model, "tfim (plain lattice TFIM) or code (derived virtual model)")
        ->capture_default_str();
    scan->add_option("--observable", cfg.observable, "fidelity or gap")->capture_default_str();
    scan->add_option("--axis", cfg.axis, "J/K or K/J")->capture_default_str();
    scan->add_option("--from", cfg.from, "first grid value")->capture_default_str();
    scan->add_option("--to", cfg.to, "last grid value")->capture_default_str();
    scan->add_option("--step", cfg.step, "grid spacing")->capture_default_str();
    scan->add_flag("--no-z2", cfg.no_z2, "do not restrict to the even Z2 sector");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return diagnose("invalid_arguments", e.what(), kBadArgs);
    }

    if (cfg.threads > 0) {
        set_max_threads(cfg.threads);
    }

    try {
        if (lattice->parsed()) {
            return cmd_lattice(cfg);
        }
        if (map->parsed()) {
            return cmd_map(cfg);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(cfg);
        }
        if (equiv->parsed()) {
            return cmd_equiv(cfg);
        }
        if (scan->parsed()) {
            return cmd_scan(cfg);
        }
        return cmd_table(cfg);
    } catch (const NotThreeColorable &e) {
        return diagnose(e.code(), e.what(), kObstruction);
    } catch (const MappingObstruction &e) {
        return diagnose(e.code(), e.what(), kObstruction);
    } catch (const UnsupportedModel &e) {
        return diagnose(e.code(), e.what(), kUnsupported);
    } catch (const ConvergenceError &e) {
        return diagnose(e.code(), e.what(), kNoConvergence);
    } catch (const GuardError &e) {
        return diagnose("size_guard", e.what(), kGuard);
    } catch (const InvalidLogicalOperator &e) {
        return diagnose(e.code(), e.what(), kInternal);
    } catch (const std::invalid_argument &e) {
        return diagnose("invalid_arguments", e.what(), kBadArgs);
    } catch (const std::exception &e) {
        return diagnose("internal", e.what(), kInternal);
    }
}
