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

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rqcdesign/error.h"

namespace rqcdesign {

namespace {

constexpr Letter kRepeat[8] = {Letter::A, Letter::B, Letter::C, Letter::D,
                               Letter::C, Letter::D, Letter::A, Letter::B};

}  // namespace

std::vector<uint8_t> parse_bits(const std::string &bits) {
    std::vector<uint8_t> out;
    out.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw ValidationError("pattern bits must be 0 or 1, got '" + bits + "'");
        out.push_back(static_cast<uint8_t>(ch - '0'));
    }
    return out;
}

std::string format_bits(const std::vector<uint8_t> &bits) {
    std::string s;
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::string format_code(const PatternCode &code) {
    return "A=" + format_bits(code.a_bits) + " C=" + format_bits(code.c_bits) +
           " swap=" + (code.order_swap ? "1" : "0");
}

PatternCode parse_code(const std::string &text) {
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream in(norm);
    PatternCode code;
    bool have_a = false;
    bool have_c = false;
    std::string field;
    while (in >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw ValidationError("pattern field '" + field + "' lacks '='");
        std::string key = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        for (auto &ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (key == "a") {
            code.a_bits = parse_bits(value);
            have_a = true;
        } else if (key == "c") {
            code.c_bits = parse_bits(value);
            have_c = true;
        } else if (key == "swap") {
            if (value != "0" && value != "1") throw ValidationError("swap must be 0 or 1");
            code.order_swap = value == "1";
        } else {
            throw ValidationError("unknown pattern field '" + key + "'");
        }
    }
    if (!have_a || !have_c) throw ValidationError("pattern needs both A= and C= fields");
    return code;
}

PatternCode baseline_code(const Lattice &lattice) {
    PatternCode code;
    code.a_bits.assign(lattice.num_rows(Family::F1), 1);
    code.c_bits.assign(lattice.num_rows(Family::F2), 0);
    return code;
}

void check_code(const Lattice &lattice, const PatternCode &code) {
    int m = lattice.num_rows(Family::F1);
    int n = lattice.num_rows(Family::F2);
    if (static_cast<int>(code.a_bits.size()) != m || static_cast<int>(code.c_bits.size()) != n) {
        throw ValidationError("pattern has " + std::to_string(code.a_bits.size()) + "+" +
                              std::to_string(code.c_bits.size()) + " row bits but the lattice has m=" +
                              std::to_string(m) + ", n=" + std::to_string(n));
    }
}

std::vector<int> pattern_layer(const Lattice &lattice, Family family, const std::vector<uint8_t> &bits,
                               bool complement) {
    if (static_cast<int>(bits.size()) != lattice.num_rows(family)) {
        throw ValidationError("layer bits have length " + std::to_string(bits.size()) + ", family has " +
                              std::to_string(lattice.num_rows(family)) + " rows");
    }
    std::vector<int> out;
    for (int id : lattice.family_bonds(family)) {
        const Bond &b = lattice.bond(id);
        int parity = ((b.parity % 2) + 2) % 2;
        int want = complement ? 1 - bits[b.row] : bits[b.row];
        if (parity == want) out.push_back(id);
    }
    return out;
}

CodeSpace::CodeSpace(int m, int n, int cap) : m_(m), n_(n) {
    if (m + n + 1 > cap || m + n + 1 > 63) {
        throw CapExceeded("pattern space 2^" + std::to_string(m + n + 1) + " exceeds the enumeration cap 2^" +
                          std::to_string(std::min(cap, 63)));
    }
}

CodeSpace::CodeSpace(const Lattice &lattice, int cap)
    : CodeSpace(lattice.num_rows(Family::F1), lattice.num_rows(Family::F2), cap) {}

PatternCode CodeSpace::at(uint64_t index) const {
    PatternCode code;
    code.a_bits.resize(m_);
    code.c_bits.resize(n_);
    for (int i = 0; i < n_; i++) code.c_bits[n_ - 1 - i] = (index >> i) & 1;
    for (int i = 0; i < m_; i++) code.a_bits[m_ - 1 - i] = (index >> (n_ + i)) & 1;
    code.order_swap = (index >> (m_ + n_)) & 1;
    return code;
}

uint64_t CodeSpace::index_of(const PatternCode &code) const {
    uint64_t index = code.order_swap ? 1 : 0;
    for (uint8_t b : code.a_bits) index = (index << 1) | b;
    for (uint8_t b : code.c_bits) index = (index << 1) | b;
    return index;
}

CodeSpace enumerate_codes(const Lattice &lattice, int cap) { return CodeSpace(lattice, cap); }

char letter_char(Letter l) { return "ABCD"[static_cast<int>(l)]; }

std::string CycleSequence::str() const {
    std::string s;
    for (Letter l : letters) s.push_back(letter_char(l));
    return s;
}

std::string CycleSequence::tail() const { return str().substr(letters.size() - tail_length); }

CycleSequence parse_sequence(const std::string &text) {
    CycleSequence seq;
    for (char ch : text) {
        char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (up < 'A' || up > 'D') throw ValidationError("cycle letters must be A-D, got '" + text + "'");
        seq.letters.push_back(static_cast<Letter>(up - 'A'));
    }
    return seq;
}

CycleSequence truncated_sequence(int d) {
    if (d < 1) throw ValidationError("circuit depth must be positive");
    CycleSequence seq;
    for (int t = 0; t < d; t++) seq.letters.push_back(kRepeat[t % 8]);
    return seq;
}

CycleSequence cycle_sequence(int d) {
    if (d < 4 || d % 4 != 0) {
        throw ValidationError("depth " + std::to_string(d) + " is not a positive multiple of 4");
    }
    return truncated_sequence(d);
}

std::vector<CycleSequence> tail_sequences(int d, bool forbid_junction_repeat) {
    if (d < 5 || d % 4 == 0) {
        throw ValidationError("tail sequences need depth >= 5 not divisible by 4, got " + std::to_string(d));
    }
    const int r = d % 4;
    const CycleSequence prefix = cycle_sequence(d - r);
    std::vector<CycleSequence> out;
    std::vector<Letter> word(r);
    // Words in lexicographic order.
    int total = 1;
    for (int i = 0; i < r; i++) total *= 4;
    for (int w = 0; w < total; w++) {
        int x = w;
        for (int i = r - 1; i >= 0; i--) {
            word[i] = static_cast<Letter>(x % 4);
            x /= 4;
        }
        bool ok = !forbid_junction_repeat || word[0] != prefix.letters.back();
        for (int i = 1; i < r && ok; i++) ok = word[i] != word[i - 1];
        if (!ok) continue;
        CycleSequence seq = prefix;
        seq.letters.insert(seq.letters.end(), word.begin(), word.end());
        seq.tail_length = r;
        out.push_back(std::move(seq));
    }
    return out;
}

Letter played_letter(const CycleSequence &seq, bool order_swap, int t) {
    Letter l = seq.letters[t];
    return order_swap ? static_cast<Letter>((static_cast<int>(l) + 2) % 4) : l;
}

CircuitLayout assemble_circuit(const Lattice &lattice, const PatternCode &code, const CycleSequence &seq) {
    check_code(lattice, code);
    const std::vector<int> layers[4] = {
        pattern_layer(lattice, Family::F1, code.a_bits, false),
        pattern_layer(lattice, Family::F1, code.a_bits, true),
        pattern_layer(lattice, Family::F2, code.c_bits, false),
        pattern_layer(lattice, Family::F2, code.c_bits, true),
    };
    CircuitLayout layout;
    layout.lattice = &lattice;
    layout.code = code;
    layout.sequence = seq;
    layout.cycles.reserve(seq.letters.size());
    for (int t = 0; t < seq.depth(); t++) {
        layout.cycles.push_back(layers[static_cast<int>(played_letter(seq, code.order_swap, t))]);
    }
    return layout;
}

}  // namespace rqcdesign
