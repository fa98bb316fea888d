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

#include "rqcdesign/sfa.h"

#include <algorithm>
#include <cmath>

#include "rqcdesign/error.h"

namespace rqcdesign {

namespace {

bool touches(const CrossGate &g, int q) { return g.q0 == q || g.q1 == q; }

// Shared qubit of two gates when they overlap in exactly one qubit, else -1.
int shared_qubit(const CrossGate &a, const CrossGate &b) {
    bool s0 = touches(b, a.q0);
    bool s1 = touches(b, a.q1);
    if (s0 == s1) return -1;
    return s0 ? a.q0 : a.q1;
}

// [begin, end) of the gates in each cycle; gates are sorted by cycle.
std::vector<std::pair<int, int>> cycle_ranges(std::span<const CrossGate> gates) {
    int depth = gates.empty() ? 0 : gates.back().cycle + 1;
    std::vector<std::pair<int, int>> ranges(depth + 3, {0, 0});
    int i = 0;
    const int n = static_cast<int>(gates.size());
    for (int t = 0; t < depth + 3; t++) {
        int b = i;
        while (i < n && gates[i].cycle == t) i++;
        ranges[t] = {b, i};
    }
    return ranges;
}

}  // namespace

std::vector<CrossGate> cross_gates(const CircuitLayout &circuit, const Bipartition &bip) {
    const Lattice &lat = *circuit.lattice;
    std::vector<CrossGate> out;
    const int d = circuit.depth();
    for (int t = 0; t < d; t++) {
        for (int id : circuit.cycles[t]) {
            const Bond &b = lat.bond(id);
            if (bip.side[b.q0] == bip.side[b.q1]) continue;
            out.push_back({t, id, b.q0, b.q1, bip.side[b.q0], bip.side[b.q1], t == 0, t == d - 1});
        }
    }
    return out;
}

DcdMatch detect_dcd(std::span<const CrossGate> gates) {
    DcdMatch match;
    auto ranges = cycle_ranges(gates);
    std::vector<uint8_t> used(gates.size(), 0);
    const int n = static_cast<int>(gates.size());
    for (int i = 0; i < n; i++) {
        if (used[i]) continue;
        const CrossGate &g1 = gates[i];
        const int t = g1.cycle;
        if (t + 2 >= static_cast<int>(ranges.size())) continue;
        bool done = false;
        for (int j = ranges[t + 1].first; j < ranges[t + 1].second && !done; j++) {
            if (used[j]) continue;
            int b = shared_qubit(g1, gates[j]);
            if (b < 0) continue;
            int a = g1.q0 == b ? g1.q1 : g1.q0;
            bool a_busy = false;
            for (int x = ranges[t + 1].first; x < ranges[t + 1].second; x++) {
                if (x != j && touches(gates[x], a)) a_busy = true;
            }
            if (a_busy) continue;
            for (int k = ranges[t + 2].first; k < ranges[t + 2].second; k++) {
                if (used[k] || gates[k].bond != g1.bond) continue;
                used[i] = used[j] = used[k] = 1;
                match.triples.push_back({i, j, k});
                match.count++;
                done = true;
                break;
            }
        }
    }
    return match;
}

WedgeMatch detect_wedges(std::span<const CrossGate> gates, std::span<const uint8_t> excluded) {
    WedgeMatch match;
    auto ranges = cycle_ranges(gates);
    std::vector<uint8_t> used(gates.size(), 0);
    if (!excluded.empty()) std::copy(excluded.begin(), excluded.end(), used.begin());
    const int n = static_cast<int>(gates.size());
    for (int i = 0; i < n; i++) {
        if (used[i]) continue;
        const int t = gates[i].cycle;
        if (t + 1 >= static_cast<int>(ranges.size())) continue;
        for (int j = ranges[t + 1].first; j < ranges[t + 1].second; j++) {
            if (used[j] || shared_qubit(gates[i], gates[j]) < 0) continue;
            used[i] = used[j] = 1;
            match.pairs.push_back({i, j});
            match.count++;
            break;
        }
    }
    return match;
}

int SfaBreakdown::branch_exponent() const {
    return std::max(0, 2 * (n_c - n_wedge - n_dcd) - (n_st + n_end));
}

double log2_sum_pow2(int a, int b) {
    int hi = std::max(a, b);
    int gap = std::abs(a - b);
    return static_cast<double>(hi) + std::log2(1.0 + std::exp2(-static_cast<double>(gap)));
}

double log2_cost(int n_c, int n_wedge, int n_dcd, int n_st, int n_end, int n1, int n2) {
    int exponent = std::max(0, 2 * (n_c - n_wedge - n_dcd) - (n_st + n_end));
    // Integer part first so equal costs compare equal bit for bit.
    int hi = std::max(n1, n2);
    int gap = std::abs(n1 - n2);
    return static_cast<double>(exponent + hi) + std::log2(1.0 + std::exp2(-static_cast<double>(gap)));
}

SfaBreakdown breakdown_from_gates(std::span<const CrossGate> gates, int n1, int n2) {
    SfaBreakdown out;
    out.n_c = static_cast<int>(gates.size());
    out.n1 = n1;
    out.n2 = n2;

    DcdMatch dcd = detect_dcd(gates);
    std::vector<uint8_t> used(gates.size(), 0);
    for (const auto &tr : dcd.triples) {
        for (int i : tr) used[i] = 1;
    }
    WedgeMatch wedges = detect_wedges(gates, used);
    for (const auto &pr : wedges.pairs) {
        for (int i : pr) used[i] = 1;
    }
    out.n_dcd = dcd.count;
    out.n_wedge = wedges.count;
    for (size_t i = 0; i < gates.size(); i++) {
        if (used[i]) continue;
        if (gates[i].first_cycle) out.n_st++;
        if (gates[i].final_cycle) out.n_end++;
    }
    out.log2_cost = log2_cost(out.n_c, out.n_wedge, out.n_dcd, out.n_st, out.n_end, n1, n2);
    return out;
}

SfaBreakdown evaluate_path(const CircuitLayout &circuit, const Bipartition &bip) {
    if (bip.n1 <= 0 || bip.n2 <= 0) throw DegenerateBipartition("bipartition has an empty side");
    if (static_cast<int>(bip.side.size()) != circuit.lattice->num_qubits()) {
        throw ValidationError("bipartition and circuit belong to different lattices");
    }
    auto gates = cross_gates(circuit, bip);
    return breakdown_from_gates(gates, bip.n1, bip.n2);
}

CircuitIndex::CircuitIndex(const CircuitLayout &circuit)
    : depth_(circuit.depth()), bonds_(static_cast<size_t>(circuit.lattice->num_bonds())) {
    active_.assign(bonds_ * depth_, 0);
    for (int t = 0; t < depth_; t++) {
        for (int id : circuit.cycles[t]) active_[t * bonds_ + id] = 1;
    }
}

SfaBreakdown evaluate_cut(const Lattice &lattice, const CircuitIndex &index, const Cut &cut) {
    // crossed_bonds is in path order; cross gates are reported in bond order.
    std::vector<int> crossed = cut.path.crossed_bonds;
    std::sort(crossed.begin(), crossed.end());
    std::vector<CrossGate> gates;
    const int d = index.depth();
    for (int t = 0; t < d; t++) {
        for (int id : crossed) {
            if (!index.active(t, id)) continue;
            const Bond &b = lattice.bond(id);
            gates.push_back({t, id, b.q0, b.q1, cut.bip.side[b.q0], cut.bip.side[b.q1], t == 0, t == d - 1});
        }
    }
    return breakdown_from_gates(gates, cut.bip.n1, cut.bip.n2);
}

SfaResult sfa_cost(const CircuitLayout &circuit, const PathSet &paths) {
    if (paths.cuts.empty()) throw NoFeasibleCut("empty cut path set");
    CircuitIndex index(circuit);
    SfaResult best;
    for (int i = 0; i < static_cast<int>(paths.cuts.size()); i++) {
        SfaBreakdown b = evaluate_cut(*circuit.lattice, index, paths.cuts[i]);
        if (best.cut_index < 0 || b.log2_cost < best.breakdown.log2_cost) {
            best.breakdown = b;
            best.cut_index = i;
        }
    }
    return best;
}

}  // namespace rqcdesign
