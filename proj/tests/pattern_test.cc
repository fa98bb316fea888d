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

#include "rqcdesign/pattern.h"

#include <gtest/gtest.h>

#include <set>

#include "rqcdesign/error.h"

using namespace rqcdesign;

TEST(pattern, code_text_round_trip) {
    PatternCode c = parse_code("A=111111111 C=000000000 swap=0");
    EXPECT_EQ(c.a_bits, std::vector<uint8_t>(9, 1));
    EXPECT_EQ(c.c_bits, std::vector<uint8_t>(9, 0));
    EXPECT_FALSE(c.order_swap);
    EXPECT_EQ(format_code(c), "A=111111111 C=000000000 swap=0");
    EXPECT_EQ(parse_code("A=01,C=10,swap=1"), (PatternCode{{0, 1}, {1, 0}, true}));
    EXPECT_THROW(parse_code("A=012 C=0"), ValidationError);
    EXPECT_THROW(parse_bits("1x"), ValidationError);
}

TEST(pattern, bit_length_checked) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 5));
    EXPECT_NO_THROW(check_code(lat, baseline_code(lat)));
    EXPECT_THROW(check_code(lat, parse_code("A=1111 C=00000")), ValidationError);
    EXPECT_THROW(assemble_circuit(lat, parse_code("A=11111 C=000"), cycle_sequence(4)), ValidationError);
}

TEST(pattern, code_space_size) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 5));
    EXPECT_EQ(CodeSpace(lat).size(), 2048u);
    EXPECT_EQ(CodeSpace(9, 9).size(), uint64_t{1} << 19);
    EXPECT_THROW(CodeSpace(30, 30), CapExceeded);
}

TEST(pattern, code_space_distinct) {
    for (auto [m, n] : {std::pair{5, 5}, std::pair{6, 6}, std::pair{3, 7}}) {
        CodeSpace space(m, n);
        std::set<PatternCode> seen;
        uint64_t i = 0;
        for (PatternCode c : space) {
            EXPECT_EQ(space.index_of(c), i++);
            seen.insert(c);
        }
        EXPECT_EQ(seen.size(), uint64_t{1} << (m + n + 1));
    }
}

TEST(pattern, code_index_order) {
    CodeSpace space(2, 2);
    EXPECT_EQ(space.at(0), (PatternCode{{0, 0}, {0, 0}, false}));
    EXPECT_EQ(space.at(1), (PatternCode{{0, 0}, {0, 1}, false}));
    EXPECT_EQ(space.at(4), (PatternCode{{0, 1}, {0, 0}, false}));
    EXPECT_EQ(space.at(16), (PatternCode{{0, 0}, {0, 0}, true}));
}

TEST(pattern, sequences) {
    EXPECT_EQ(cycle_sequence(8).str(), "ABCDCDAB");
    EXPECT_EQ(cycle_sequence(20).str(), "ABCDCDABABCDCDABABCD");
    EXPECT_EQ(truncated_sequence(6).str(), "ABCDCD");
    EXPECT_THROW(cycle_sequence(6), ValidationError);
    EXPECT_EQ(played_letter(cycle_sequence(8), true, 0), Letter::C);
    EXPECT_EQ(played_letter(cycle_sequence(8), true, 2), Letter::A);
    EXPECT_EQ(played_letter(cycle_sequence(8), true, 3), Letter::B);
}

// Independent enumeration of tail words.
std::set<std::string> tail_oracle(int d, bool junction) {
    std::string prefix = truncated_sequence(d - d % 4).str();
    std::set<std::string> out;
    int r = d % 4;
    int total = 1;
    for (int i = 0; i < r; i++) total *= 4;
    for (int w = 0; w < total; w++) {
        std::string tail;
        for (int i = 0, x = w; i < r; i++, x /= 4) tail += static_cast<char>('A' + x % 4);
        bool ok = true;
        for (int i = 1; i < r; i++) ok &= tail[i] != tail[i - 1];
        if (junction) ok &= tail[0] != prefix.back();
        if (ok) out.insert(prefix + tail);
    }
    return out;
}

TEST(pattern, tail_words) {
    for (int d : {5, 6, 7, 17, 18, 19, 22}) {
        for (bool junction : {true, false}) {
            std::set<std::string> got;
            for (const auto &s : tail_sequences(d, junction)) {
                EXPECT_EQ(s.tail_length, d % 4);
                got.insert(s.str());
            }
            EXPECT_EQ(got, tail_oracle(d, junction)) << d;
        }
    }
    EXPECT_EQ(tail_sequences(18).size(), 9u);
    EXPECT_EQ(tail_sequences(17).size(), 3u);
    EXPECT_THROW(tail_sequences(20), ValidationError);
}

TEST(pattern, each_bond_every_four_cycles) {
    Lattice lat = build_lattice(LatticeSpec::grid(4, 5, {{1, 1}}));
    CodeSpace space(lat);
    for (uint64_t i = 0; i < space.size(); i += 37) {
        for (int d = 4; d <= 64; d += 4) {
            CircuitLayout c = assemble_circuit(lat, space.at(i), cycle_sequence(d));
            std::vector<int> uses(lat.num_bonds(), 0);
            for (const auto &cycle : c.cycles) {
                for (int b : cycle) uses[b]++;
            }
            for (int u : uses) ASSERT_EQ(u, d / 4);
        }
    }
}

TEST(pattern, cycles_are_matchings) {
    Lattice lat = build_lattice(LatticeSpec::window(11, 10, {{4, 4}}));
    CodeSpace space(lat);
    for (uint64_t i = 0; i < space.size(); i += 4099) {
        CircuitLayout c = assemble_circuit(lat, space.at(i), cycle_sequence(8));
        for (const auto &cycle : c.cycles) {
            std::set<int> used;
            for (int b : cycle) {
                EXPECT_TRUE(used.insert(lat.bond(b).q0).second);
                EXPECT_TRUE(used.insert(lat.bond(b).q1).second);
            }
        }
    }
}

TEST(pattern, layers) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 5));
    PatternCode base = baseline_code(lat);
    CircuitLayout c = assemble_circuit(lat, base, cycle_sequence(4));
    for (int b : c.cycles[0]) {
        EXPECT_EQ(lat.bond(b).family, Family::F1);
        EXPECT_EQ(lat.bond(b).parity % 2, 1);
    }
    for (int b : c.cycles[2]) {
        EXPECT_EQ(lat.bond(b).family, Family::F2);
        EXPECT_EQ(lat.bond(b).parity % 2, 0);
    }
    EXPECT_EQ(c.cycles[0].size() + c.cycles[1].size(), 20u);
    EXPECT_EQ(assemble_circuit(lat, base, cycle_sequence(4)).cycles, c.cycles);
}
