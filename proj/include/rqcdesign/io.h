// Copyright 2026 The rqcdesign Authors
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

// JSON documents shared by the command line and the HTTP service, and the
// request -> document functions both of them call.

#ifndef RQCDESIGN_IO_H
#define RQCDESIGN_IO_H

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rqcdesign/fidelity.h"
#include "rqcdesign/lattice.h"
#include "rqcdesign/pattern.h"
#include "rqcdesign/search.h"
#include "rqcdesign/sfa.h"
#include "rqcdesign/verify.h"

namespace rqcdesign {

using Json = nlohmann::ordered_json;

/// "(2,2),(3,1)" or "2,2;3,1". Empty text gives an empty list.
std::vector<Coord> parse_coords(const std::string &text);
std::string format_coords(const std::vector<Coord> &coords);

// ---- Requests --------------------------------------------------------------

/// {"mode": "grid", "width": 5, "height": 5, "defects": [[2, 2]]}. Defects may
/// also be a coordinate string; mask lattices list "sites" the same way.
LatticeSpec lattice_spec_from_json(const Json &j);
Json lattice_spec_json(const LatticeSpec &spec);

/// {"a": "111", "c": "000", "swap": 0} or the text form "A=111 C=000 swap=0".
PatternCode pattern_from_json(const Json &j);
/// {"e_star", "e_star_slack", "n_star", "max_side"}; missing fields keep defaults.
PathSearchConfig thresholds_from_json(const Json &j);
/// {"e1", "e2", "er"} plus optional "e1_by_qubit"/"er_by_qubit"/"e2_by_bond" maps.
NoiseModel noise_from_json(const Json &j);

struct EvaluateRequest {
    LatticeSpec lattice;
    std::optional<PatternCode> pattern;  // baseline when absent
    int depth = 20;
    std::optional<std::string> sequence;  // explicit letters; otherwise derived from depth
    bool forbid_junction_repeat = true;
    PathSearchConfig thresholds;
    std::optional<NoiseModel> noise;
};

EvaluateRequest evaluate_request_from_json(const Json &j);
Json evaluate_request_json(const EvaluateRequest &r);

struct SearchRequest {
    LatticeSpec lattice;
    SearchConfig config;
};

SearchRequest search_request_from_json(const Json &j);
Json search_request_json(const SearchRequest &r);

// ---- Documents -------------------------------------------------------------

/// Qubits, bonds, row counts and dual summary.
Json lattice_json(const Lattice &lattice, const DualGraph &dual);
Json breakdown_json(const SfaBreakdown &b);
/// Dual sites (plaquette corners), E, E_eff and crossed bonds.
Json cut_json(const DualGraph &dual, const CutPath &path);
Json fidelity_json(const FidelityEstimate &f);
Json circuit_json(const CircuitLayout &circuit);
Json candidate_json(const DualGraph &dual, const RankedCandidate &c);
Json search_report_json(const Lattice &lattice, const SearchReport &report);
Json entropy_json(const EntropyProfile &p);

/// Full evaluation: minimum-cost cut over the enumerated path set, with tail-word
/// selection (highest cost) for depths not divisible by 4 when no sequence is given.
Json evaluate_document(const EvaluateRequest &request);

}  // namespace rqcdesign

#endif
