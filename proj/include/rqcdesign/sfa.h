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

#ifndef RQCDESIGN_SFA_H
#define RQCDESIGN_SFA_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rqcdesign/lattice.h"
#include "rqcdesign/pattern.h"

namespace rqcdesign {

/// Schmidt rank of an fsim gate across its two qubits.
inline constexpr int kChiFsim = 4;
/// Schmidt rank of the cphase that an fsim reduces to in the first and last cycle.
inline constexpr int kChiCphase = 2;

/// Cut path thresholds. e_star <= 0 selects the default: the smallest edge count of
/// a straight crossing that passes the side filters, plus e_star_slack.
struct PathSearchConfig {
    int e_star = 0;
    int e_star_slack = 0;
    int n_star = 8;     // max |n1 - n2|
    int max_side = 33;  // max(n1, n2)
};

/// A cut path together with the bipartition it induces.
struct Cut {
    CutPath path;
    Bipartition bip;
};

struct PathSet {
    int e_star = 0;
    /// Sorted by (edge count, site sequence).
    std::vector<Cut> cuts;
};

/// Whether a bipartition passes the side-size filters of cfg.
bool passes_side_filters(const Bipartition &bip, const PathSearchConfig &cfg);

/// Straight boundary-to-boundary runs along dual rows and columns.
std::vector<CutPath> straight_crossings(const DualGraph &dual);

/// Resolves cfg.e_star. Throws NoFeasibleCut if no straight crossing passes the filters.
int default_e_star(const Lattice &lattice, const DualGraph &dual, const PathSearchConfig &cfg);

/// Depth-first collection of every simple open path between boundary dual sites
/// with at most e_star edges and strictly interior middle sites, deduplicated as
/// undirected paths and filtered by the side constraints. Throws NoFeasibleCut
/// when nothing survives.
PathSet enumerate_cut_paths(const Lattice &lattice, const DualGraph &dual, const PathSearchConfig &cfg);

struct CrossGate {
    int cycle = 0;
    int bond = 0;
    int q0 = 0;
    int q1 = 0;
    uint8_t side0 = 0;
    uint8_t side1 = 1;
    bool first_cycle = false;
    bool final_cycle = false;
};

/// Gates straddling the cut, ordered by cycle then bond id.
std::vector<CrossGate> cross_gates(const CircuitLayout &circuit, const Bipartition &bip);

struct DcdMatch {
    int count = 0;
    std::vector<std::array<int, 3>> triples;  // indices into the gate list
};

struct WedgeMatch {
    int count = 0;
    std::vector<std::array<int, 2>> pairs;
};

/// Greedy chronological matching of (a,b), (b,c), (a,b) cross gates in three
/// consecutive cycles. The outer qubit a may carry no other cross gate in the
/// middle cycle. Each gate joins at most one triple.
DcdMatch detect_dcd(std::span<const CrossGate> gates);

/// Greedy chronological pairing of cross gates in consecutive cycles sharing one
/// qubit. Gates flagged in excluded (if given) are skipped; pairs do not chain.
WedgeMatch detect_wedges(std::span<const CrossGate> gates, std::span<const uint8_t> excluded = {});

struct SfaBreakdown {
    int n_c = 0;
    int n_wedge = 0;
    int n_dcd = 0;
    int n_st = 0;
    int n_end = 0;
    int n1 = 0;
    int n2 = 0;
    double log2_cost = 0.0;

    /// log2 of the branching factor: max(0, 2 (n_c - n_wedge - n_dcd) - (n_st + n_end)).
    int branch_exponent() const;

    bool operator==(const SfaBreakdown &) const = default;
};

/// log2(2^a + 2^b) evaluated without overflow.
double log2_sum_pow2(int a, int b);
/// log2 of the cost formula for the given counters.
double log2_cost(int n_c, int n_wedge, int n_dcd, int n_st, int n_end, int n1, int n2);

/// Discounts are exclusive: DCD triples first, wedges among the remaining gates,
/// then first/final-cycle halving for gates not yet discounted.
SfaBreakdown breakdown_from_gates(std::span<const CrossGate> gates, int n1, int n2);

SfaBreakdown evaluate_path(const CircuitLayout &circuit, const Bipartition &bip);

/// Bond activity per cycle, for repeated evaluation of one circuit against many cuts.
class CircuitIndex {
   public:
    explicit CircuitIndex(const CircuitLayout &circuit);
    bool active(int cycle, int bond) const { return active_[static_cast<size_t>(cycle) * bonds_ + bond] != 0; }
    int depth() const { return depth_; }

   private:
    int depth_ = 0;
    size_t bonds_ = 0;
    std::vector<uint8_t> active_;
};

/// Same result as evaluate_path for cut.bip, using the cut's crossed-bond list.
SfaBreakdown evaluate_cut(const Lattice &lattice, const CircuitIndex &index, const Cut &cut);

struct SfaResult {
    SfaBreakdown breakdown;
    int cut_index = -1;
};

/// Minimum-cost cut; ties go to the earlier cut of the (E, path)-sorted set.
SfaResult sfa_cost(const CircuitLayout &circuit, const PathSet &paths);

}  // namespace rqcdesign

#endif
