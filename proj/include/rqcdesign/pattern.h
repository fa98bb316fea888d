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

#ifndef RQCDESIGN_PATTERN_H
#define RQCDESIGN_PATTERN_H

#include <cstdint>
#include <string>
#include <vector>

#include "rqcdesign/lattice.h"

namespace rqcdesign {

/// Row choices for the A and C layers plus the order-swap bit. Bit 0 selects the
/// even-parity bonds of a row, bit 1 the odd ones. aBits follows F1 rows by
/// ascending v and cBits F2 rows by ascending u.
struct PatternCode {
    std::vector<uint8_t> a_bits;
    std::vector<uint8_t> c_bits;
    bool order_swap = false;

    auto operator<=>(const PatternCode &) const = default;
};

/// "A=1111 C=0000 swap=0".
std::string format_code(const PatternCode &code);
/// Accepts the format_code form; the swap field is optional. Whitespace or commas
/// may separate fields.
PatternCode parse_code(const std::string &text);
std::vector<uint8_t> parse_bits(const std::string &bits);
std::string format_bits(const std::vector<uint8_t> &bits);

/// All-ones A, all-zeros C, no swap.
PatternCode baseline_code(const Lattice &lattice);

/// Throws ValidationError unless the bit lengths equal the lattice row counts.
void check_code(const Lattice &lattice, const PatternCode &code);

/// Bonds of one family whose parity index matches the row bit (or its complement).
/// Result is sorted by bond id.
std::vector<int> pattern_layer(const Lattice &lattice, Family family, const std::vector<uint8_t> &bits,
                               bool complement);

/// Lexicographic enumeration of the 2^(m+n+1) pattern codes: order swap is the
/// most significant bit, then aBits, then cBits (first row most significant).
class CodeSpace {
   public:
    static constexpr int kDefaultCap = 40;

    /// Throws CapExceeded if m + n + 1 exceeds cap.
    CodeSpace(int m, int n, int cap = kDefaultCap);
    explicit CodeSpace(const Lattice &lattice, int cap = kDefaultCap);

    uint64_t size() const { return uint64_t{1} << bits(); }
    int bits() const { return m_ + n_ + 1; }
    PatternCode at(uint64_t index) const;
    uint64_t index_of(const PatternCode &code) const;

    class iterator {
       public:
        using value_type = PatternCode;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(const CodeSpace *space, uint64_t i) : space_(space), i_(i) {}
        PatternCode operator*() const { return space_->at(i_); }
        iterator &operator++() {
            ++i_;
            return *this;
        }
        iterator operator++(int) {
            auto t = *this;
            ++i_;
            return t;
        }
        bool operator==(const iterator &o) const { return i_ == o.i_; }

       private:
        const CodeSpace *space_ = nullptr;
        uint64_t i_ = 0;
    };
    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size()}; }

   private:
    int m_;
    int n_;
};

CodeSpace enumerate_codes(const Lattice &lattice, int cap = CodeSpace::kDefaultCap);

enum class Letter : uint8_t { A = 0, B = 1, C = 2, D = 3 };

char letter_char(Letter l);

/// Letter string of a circuit. The prefix is the first 4*floor(d/4) letters of the
/// repeating ABCDCDAB; tail holds the free last d mod 4 letters.
struct CycleSequence {
    std::vector<Letter> letters;
    int tail_length = 0;

    int depth() const { return static_cast<int>(letters.size()); }
    std::string str() const;
    std::string tail() const;

    bool operator==(const CycleSequence &) const = default;
};

CycleSequence parse_sequence(const std::string &letters);

/// ABCDCDAB repeated to d letters; d must be a positive multiple of 4.
CycleSequence cycle_sequence(int d);
/// Prefix of the repeating sequence truncated at d (any d >= 1).
CycleSequence truncated_sequence(int d);

/// Every sequence whose last d mod 4 letters vary over words with no two equal
/// neighbours. With forbid_junction_repeat the first tail letter must also differ
/// from the last prefix letter. Requires d >= 5 and d mod 4 != 0.
std::vector<CycleSequence> tail_sequences(int d, bool forbid_junction_repeat = true);

/// Gate layers of a concrete circuit.
struct CircuitLayout {
    const Lattice *lattice = nullptr;
    PatternCode code;
    CycleSequence sequence;
    std::vector<std::vector<int>> cycles;  // bond ids per cycle, ascending

    int depth() const { return static_cast<int>(cycles.size()); }
};

/// Letter actually played at cycle t after the order swap (A<->C, B<->D).
Letter played_letter(const CycleSequence &seq, bool order_swap, int t);

CircuitLayout assemble_circuit(const Lattice &lattice, const PatternCode &code, const CycleSequence &seq);

}  // namespace rqcdesign

#endif
