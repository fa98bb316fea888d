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

#include "rqcdesign/search.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <mutex>

#include "rqcdesign/error.h"

using namespace rqcdesign;

namespace {

void expect_same(const SearchReport &a, const SearchReport &b) {
    ASSERT_EQ(a.top.size(), b.top.size());
    for (size_t i = 0; i < a.top.size(); i++) {
        EXPECT_EQ(a.top[i].index, b.top[i].index);
        EXPECT_EQ(a.top[i].breakdown, b.top[i].breakdown);
        EXPECT_EQ(a.top[i].cut, b.top[i].cut);
    }
    EXPECT_EQ(a.optimum_ties, b.optimum_ties);
    EXPECT_EQ(a.baseline_rank, b.baseline_rank);
    EXPECT_EQ(a.candidates, b.candidates);
}

}  // namespace

TEST(search, grid5_exhaustive) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 5));
    SearchConfig cfg;
    cfg.top_k = 2048;
    SearchReport r = search(lat, cfg);
    EXPECT_EQ(r.candidates, 2048u);
    ASSERT_EQ(r.top.size(), 2048u);
    for (size_t i = 1; i < r.top.size(); i++) EXPECT_TRUE(ranks_ahead(r.top[i - 1], r.top[i]));

    // Every code evaluated directly: the optimum and the tie count agree.
    DualGraph dual = build_dual(lat);
    PathSet paths = enumerate_cut_paths(lat, dual, {});
    CodeSpace space(lat);
    double best = -1;
    uint64_t ties = 0;
    uint64_t ahead = 0;
    double base = sfa_cost(assemble_circuit(lat, baseline_code(lat), cycle_sequence(20)), paths).breakdown.log2_cost;
    int base_sym = symmetry_score(lat, baseline_code(lat));
    for (uint64_t i = 0; i < space.size(); i++) {
        double c = sfa_cost(assemble_circuit(lat, space.at(i), cycle_sequence(20)), paths).breakdown.log2_cost;
        if (c > best) {
            best = c;
            ties = 0;
        }
        ties += c == best;
        int sym = symmetry_score(lat, space.at(i));
        ahead += c > base || (c == base && (sym > base_sym || (sym == base_sym && i < space.index_of(baseline_code(lat)))));
    }
    EXPECT_EQ(r.top.front().breakdown.log2_cost, best);
    EXPECT_EQ(r.optimum_ties, ties);
    ASSERT_TRUE(r.baseline.has_value());
    EXPECT_EQ(r.baseline->breakdown.log2_cost, base);
    EXPECT_EQ(r.baseline_rank, ahead + 1);
    EXPECT_GE(r.top.front().breakdown.log2_cost, r.baseline->breakdown.log2_cost);
}

TEST(search, thread_count_invariant) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 4, {{1, 2}}));
    SearchConfig cfg;
    cfg.depth = 12;
    cfg.top_k = 7;
    SearchReport one = search(lat, cfg);
    cfg.threads = 3;
    SearchReport three = search(lat, cfg);
    cfg.threads = 8;
    SearchReport eight = search(lat, cfg);
    expect_same(one, three);
    expect_same(one, eight);
}

TEST(search, tail_depth) {
    Lattice lat = build_lattice(LatticeSpec::grid(4, 4));
    SearchConfig cfg;
    cfg.depth = 18;
    cfg.top_k = 20;
    SearchReport r = search(lat, cfg);
    ASSERT_TRUE(r.prefix_optimum.has_value());
    EXPECT_EQ(r.candidates, 512u + 9u);
    EXPECT_EQ(r.top.size(), 9u);
    for (const auto &c : r.top) {
        EXPECT_EQ(c.code, r.prefix_optimum->code);
        EXPECT_EQ(c.sequence.depth(), 18);
        EXPECT_EQ(c.sequence.tail_length, 2);
    }
    EXPECT_EQ(r.baseline->sequence.str(), truncated_sequence(18).str());
}

TEST(search, progress_monotone) {
    Lattice lat = build_lattice(LatticeSpec::grid(4, 4));
    SearchConfig cfg;
    cfg.threads = 2;
    std::vector<double> seen;
    std::mutex mu;
    search(lat, cfg, [&](double f) {
        std::lock_guard<std::mutex> lock(mu);
        seen.push_back(f);
    });
    ASSERT_FALSE(seen.empty());
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_DOUBLE_EQ(seen.back(), 1.0);
}

TEST(search, rejects_bad_config) {
    Lattice lat = build_lattice(LatticeSpec::grid(4, 4));
    SearchConfig cfg;
    cfg.top_k = 0;
    EXPECT_THROW(search(lat, cfg), ValidationError);
    cfg.top_k = 3;
    cfg.enumeration_cap = 5;
    EXPECT_THROW(search(lat, cfg), CapExceeded);
}

TEST(symmetry, grid_transforms) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 5));
    // All-even A and C: every mirror of an odd-sized grid keeps parity classes.
    EXPECT_EQ(symmetry_score(lat, parse_code("A=00000 C=00000 swap=0")), 3);
    // Mixed rows break the mirror across v (rows are reversed).
    EXPECT_LT(symmetry_score(lat, parse_code("A=10000 C=00000 swap=0")), 3);
    Lattice even = build_lattice(LatticeSpec::grid(4, 4));
    // Mirroring a 4-wide row exchanges even and odd bonds, i.e. A and B.
    EXPECT_EQ(symmetry_score(even, parse_code("A=0000 C=0000 swap=0")), 3);
}
