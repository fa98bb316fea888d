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

#ifndef RQCDESIGN_SEARCH_H
#define RQCDESIGN_SEARCH_H

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rqcdesign/lattice.h"
#include "rqcdesign/pattern.h"
#include "rqcdesign/sfa.h"

namespace rqcdesign {

struct SearchConfig {
    int depth = 20;
    PathSearchConfig paths;
    int top_k = 10;
    int threads = 1;
    bool include_baseline = true;
    int enumeration_cap = CodeSpace::kDefaultCap;
    bool forbid_junction_repeat = true;
};

/// Called with the fraction of the candidate space finished, in 1/256 steps.
using ProgressFn = std::function<void(double)>;

struct RankedCandidate {
    uint64_t index = 0;  // code index, or tail word index for tail candidates
    PatternCode code;
    CycleSequence sequence;
    SfaBreakdown breakdown;
    int cut_index = -1;
    CutPath cut;
    int symmetry = 0;
};

/// a ranks ahead of b: higher cost, then higher symmetry score, then lower index.
bool ranks_ahead(const RankedCandidate &a, const RankedCandidate &b);

struct SearchReport {
    LatticeSpec lattice;
    int num_qubits = 0;
    int num_bonds = 0;
    int m = 0;
    int n = 0;
    SearchConfig config;
    int e_star = 0;
    int num_paths = 0;

    uint64_t candidates = 0;
    std::vector<RankedCandidate> top;
    /// Candidates whose cost equals the optimum's.
    uint64_t optimum_ties = 0;

    std::optional<RankedCandidate> baseline;
    uint64_t baseline_rank = 0;

    /// For depths not divisible by 4: the divisible-depth optimum whose code is kept
    /// while the tail words are searched.
    std::optional<RankedCandidate> prefix_optimum;

    double wall_seconds = 0.0;
};

/// Exhaustive search over every pattern code (and tail word when depth mod 4 != 0).
/// The report does not depend on the thread count.
SearchReport search(const Lattice &lattice, const SearchConfig &cfg, const ProgressFn &progress = {});

/// Number of lattice symmetries among {mirror, mirror, 180-degree rotation} that map
/// the candidate's layer set {A, B, C, D} onto itself. Window lattices use the axes
/// of the drawing, other lattices the canonical axes.
int symmetry_score(const Lattice &lattice, const PatternCode &code);

}  // namespace rqcdesign

#endif
