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

// JSON / CSV documents. Every JSON document carries "schema": "topoising/v1".

#include <nlohmann/json.hpp>

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "topoising/codes.hpp"
#include "topoising/critical.hpp"
#include "topoising/hamiltonians.hpp"
#include "topoising/lattice.hpp"
#include "topoising/spectra.hpp"
#include "topoising/virtual_model.hpp"

namespace topoising {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchema = "topoising/v1";

inline Json document() {
    Json j;
    j["schema"] = kSchema;
    return j;
}

inline std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", truncate3(x));
    return buf;
}

inline Json lattice_json(const TorusLattice &lat, const FaceColoring *fc = nullptr, const EdgeColoring *ec = nullptr) {
    Json j = document();
    j["kind"] = to_string(lat.kind());
    j["L1"] = lat.L1();
    j["L2"] = lat.L2();
    Json vs = Json::array();
    for (const auto &v : lat.vertices()) {
        vs.push_back({{"id", v.id}, {"cell", {v.i, v.j}}, {"role", v.role}});
    }
    Json es = Json::array();
    for (const auto &e : lat.edges()) {
        Json je{{"id", e.id}, {"u", e.u}, {"v", e.v}};
        if (ec != nullptr) {
            je["color"] = to_string((*ec)[e.id]);
        }
        es.push_back(je);
    }
    Json fs = Json::array();
    for (const auto &f : lat.faces()) {
        Json jf{{"id", f.id}, {"edge_ids", f.edges}, {"vertex_ids", f.vertices}};
        if (fc != nullptr) {
            jf["color"] = to_string((*fc)[f.id]);
        }
        fs.push_back(jf);
    }
    j["vertices"] = vs;
    j["edges"] = es;
    j["faces"] = fs;
    return j;
}

inline Json origin_json(const GeneratorOrigin &o) {
    return {{"kind", o.kind == GeneratorOrigin::Kind::face ? "face" : "vertex"}, {"id", o.id}};
}

inline Json code_json(const StabilizerCode &code, const std::optional<LogicalOperatorSet> &logicals = std::nullopt) {
    Json j = document();
    j["family"] = to_string(code.family);
    j["n"] = code.n;
    j["placement"] = to_string(code.placement);
    j["degeneracy"] = degeneracy(code);
    Json gens = Json::array();
    for (auto ref : code.canonical_order()) {
        const auto &g = code.generator(ref);
        gens.push_back({{"type", to_string(ref.type)},
                        {"origin", origin_json(code.origin(ref))},
                        {"x_support", g.x().indices()},
                        {"z_support", g.z().indices()}});
    }
    j["generators"] = gens;
    j["constraints"] = constraint_relations(code);
    Json ls = Json::array();
    if (logicals) {
        for (const auto &l : logicals->operators) {
            Json jl{{"type", to_string(l.type)},
                    {"direction", l.direction},
                    {"x_support", l.op.x().indices()},
                    {"z_support", l.op.z().indices()}};
            if (l.color) {
                jl["color"] = to_string(*l.color);
            }
            ls.push_back(jl);
        }
    }
    j["logicals"] = ls;
    return j;
}

/// One JSON object per line.
inline std::string hamiltonian_jsonl(const HamiltonianTerms &h) {
    std::ostringstream out;
    for (const auto &t : h.terms()) {
        Json j{{"coeff", t.coeff}, {"x_support", t.op.x().indices()}, {"z_support", t.op.z().indices()}};
        out << j.dump() << '\n';
    }
    return out.str();
}

inline Json transition_json(const TransitionReport &rep) {
    Json comps = Json::array();
    for (const auto &c : rep.components) {
        comps.push_back({{"label", to_string(c.label)}, {"multiplicity", c.multiplicity}, {"ratio", c.ratio}});
    }
    return {{"components", comps},
            {"first_transition", rep.first_transition},
            {"full_transition", rep.full_transition},
            {"full_transition_display", fixed3(rep.full_transition)}};
}

inline Json virtual_model_json(const VirtualIsingModel &vm, const std::optional<TransitionReport> &rep = std::nullopt) {
    Json j = document();
    Json spins = Json::array();
    for (const auto &s : vm.spins) {
        Json js{{"id", s.id}, {"origin", origin_json(s.origin)}};
        if (s.color) {
            js["color"] = to_string(*s.color);
        }
        if (s.sublattice) {
            js["sublattice"] = *s.sublattice;
        }
        spins.push_back(js);
    }
    Json bonds = Json::array();
    for (const auto &b : vm.bonds) {
        bonds.push_back({{"p", b.p}, {"p_prime", b.q}, {"multiplicity", b.multiplicity}});
    }
    Json comps = Json::array();
    for (const auto &c : vm.components) {
        Json jc{{"spins", c.spins}, {"label", to_string(c.classification.label)}};
        if (c.classification.small_size_caveat) {
            jc["caveat"] = "fewer than 9 spins; local invariants may not identify the lattice";
        }
        comps.push_back(jc);
    }
    j["spins"] = spins;
    j["bonds"] = bonds;
    j["parity_constraints"] = vm.parity_constraints;
    j["components"] = comps;
    j["offset"] = {{"num_z_generators", vm.num_z_generators}};
    if (rep) {
        j["transition"] = transition_json(*rep);
    }
    return j;
}

inline Json couplings_json(const CouplingParams &cp) { return {{"J", cp.J}, {"K", cp.K}}; }

inline Json spectrum_json(const std::string &model, const CouplingParams &cp, const std::string &sector,
                          const SpectrumResult &res) {
    Json j = document();
    j["model"] = model;
    j["couplings"] = couplings_json(cp);
    j["sector"] = sector;
    j["method"] = to_string(res.method_used);
    j["dimension"] = res.dimension;
    j["eigenvalues"] = res.eigenvalues;
    if (!res.residuals.empty()) {
        j["residuals"] = res.residuals;
    }
    return j;
}

inline Json equivalence_json(const EquivalenceReport &rep) {
    Json j = document();
    j["model"] = rep.code_id;
    j["couplings"] = couplings_json(rep.couplings);
    j["E0_real"] = rep.E0_real;
    j["E0_virtual_plus_offset"] = rep.E0_virtual_plus_offset;
    Json m = Json::array();
    for (const auto &x : rep.low_spectrum_match) {
        m.push_back({{"virtual", x.virtual_level}, {"real", x.real_level}, {"delta", x.delta}});
    }
    j["low_spectrum_match"] = m;
    j["unmatched_virtual"] = rep.unmatched_virtual;
    j["real_sector_levels"] = rep.real_sector_levels;
    j["real_dimension"] = rep.real_dimension;
    j["virtual_sector_dimension"] = rep.virtual_sector_dimension;
    j["tolerance"] = rep.tolerance;
    j["verdict"] = rep.verdict;
    return j;
}

inline Json table_json(const std::vector<TableRow> &rows) {
    Json j = document();
    Json rs = Json::array();
    for (const auto &r : rows) {
        Json jr{{"code", to_string(r.code)},
                {"lattice", to_string(r.lattice)},
                {"mapped_lattice", r.mapped_lattice},
                {"K_over_J", r.ratio},
                {"display", fixed3(r.ratio)},
                {"source", r.source}};
        if (r.L1 > 0) {
            jr["size"] = {r.L1, r.L2};
        }
        rs.push_back(jr);
    }
    j["rows"] = rs;
    return j;
}

inline std::string table_csv(const std::vector<TableRow> &rows) {
    std::ostringstream out;
    out << "code,lattice,mapped_lattice,K_over_J\n";
    for (const auto &r : rows) {
        out << to_string(r.code) << ',' << to_string(r.lattice) << ',' << r.mapped_lattice << ',' << fixed3(r.ratio)
            << '\n';
    }
    return out.str();
}

inline std::string table_text(const std::vector<TableRow> &rows) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %-17s %-11s %s\n", "code", "lattice", "mapped", "K/J");
    out << line;
    for (const auto &r : rows) {
        std::snprintf(line, sizeof line, "%-6s %-17s %-11s %s\n", std::string(to_string(r.code)).c_str(),
                      std::string(to_string(r.lattice)).c_str(), r.mapped_lattice.c_str(), fixed3(r.ratio).c_str());
        out << line;
    }
    return out.str();
}

inline std::string scan_csv(const ScanResult &res, const std::string &observable) {
    std::ostringstream out;
    out.precision(17);
    out << "ratio," << observable << ",valid\n";
    for (const auto &p : res.points) {
        out << p.ratio << ',' << p.value << ',' << (p.valid ? 1 : 0) << '\n';
    }
    return out.str();
}

inline Json scan_json(const ScanResult &res, ScanAxis axis, const std::string &observable) {
    Json j = document();
    j["axis"] = to_string(axis);
    j["observable"] = observable;
    Json pts = Json::array();
    for (const auto &p : res.points) {
        pts.push_back({{"ratio", p.ratio}, {"value", p.value}, {"valid", p.valid}});
    }
    j["points"] = pts;
    j["extremum"] = res.extremum;
    j["at_boundary"] = res.at_boundary;
    j["flagged"] = res.flagged;
    j["note"] = "finite-size estimate on the virtual model only";
    return j;
}

}  // namespace topoising
