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

#include "rqcdesign/verify.h"

#include <gtest/gtest.h>

#include <cmath>

#include "rqcdesign/error.h"
#include "rqcdesign/sfa.h"

using namespace rqcdesign;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Entropy from the singular values of the amplitude matrix (rows: side 0 bits).
double svd_entropy(const StateVector &s, const Bipartition &bip) {
    std::vector<int> left, right;
    for (int q = 0; q < s.num_qubits(); q++) (bip.side[q] == 0 ? left : right).push_back(q);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(int64_t{1} << left.size(), int64_t{1} << right.size());
    auto amps = s.amplitudes();
    for (size_t k = 0; k < amps.size(); k++) {
        size_t r = 0, c = 0;
        for (size_t i = 0; i < left.size(); i++) r |= ((k >> left[i]) & 1) << i;
        for (size_t i = 0; i < right.size(); i++) c |= ((k >> right[i]) & 1) << i;
        m(r, c) = amps[k];
    }
    Eigen::VectorXd sv = m.jacobiSvd().singularValues();
    double h = 0;
    for (double x : sv) {
        double p = x * x;
        if (p > 1e-15) h -= p * std::log2(p);
    }
    return h;
}

Bipartition column_split(const Lattice &lat, int u) {
    Bipartition b;
    for (const Qubit &q : lat.qubits()) {
        b.side.push_back(q.pos.u <= u ? 0 : 1);
        (q.pos.u <= u ? b.n1 : b.n2)++;
    }
    return b;
}

}  // namespace

TEST(schmidt, two_qubit_gates) {
    std::vector<int> left{0};
    EXPECT_EQ(operator_schmidt_rank(fsim_matrix(kPi / 2, kPi / 6), left), 4);
    EXPECT_EQ(operator_schmidt_rank(cphase_matrix(kPi / 3), left), 2);
    EXPECT_EQ(operator_schmidt_rank(Matrix::Identity(4, 4), left), 1);
    // phi = 0 is still rank 4.
    EXPECT_EQ(operator_schmidt_rank(fsim_matrix(kPi / 2, 0), left), 4);
    EXPECT_EQ(operator_schmidt_rank(fsim_matrix(0, 0), left), 1);
}

TEST(schmidt, wedge_composite) {
    // Two fsims sharing qubit 0 on the left: 0-1 then 0-2.
    Matrix g = fsim_matrix(kPi / 2, kPi / 6);
    std::vector<int> t1{0, 1}, t2{0, 2};
    Matrix w = embed_operator(g, t2, 3) * embed_operator(g, t1, 3);
    std::vector<int> left{0};
    EXPECT_LE(operator_schmidt_rank(w, left), 4);
    EXPECT_EQ(operator_schmidt_rank(w, left), 4);
    // Two separate crossings give 16.
    std::vector<int> t3{0, 2}, t4{1, 3};
    Matrix two = embed_operator(g, t3, 4) * embed_operator(g, t4, 4);
    std::vector<int> left2{0, 1};
    EXPECT_EQ(operator_schmidt_rank(two, left2), 16);
}

TEST(schmidt, values_normalised) {
    std::vector<int> left{0};
    Eigen::VectorXd s = operator_schmidt_values(fsim_matrix(kPi / 2, kPi / 6), left);
    EXPECT_NEAR(s.squaredNorm(), 4.0, 1e-10);
}

TEST(statevector, bell_and_product) {
    StateVector s(2);
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    s.apply(0, h);
    Bipartition bip{{0, 1}, 1, 1};
    EXPECT_NEAR(entanglement_entropy(s, bip), 0.0, 1e-12);
    Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
    // Control qubit 0 (bit weight 1), target qubit 1 (bit weight 2).
    cnot(0, 0) = cnot(2, 2) = 1;
    cnot(3, 1) = cnot(1, 3) = 1;
    s.apply(0, 1, cnot);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::norm(s.amplitudes()[0]), 0.5, 1e-12);
    EXPECT_NEAR(std::norm(s.amplitudes()[3]), 0.5, 1e-12);
    EXPECT_NEAR(entanglement_entropy(s, bip), 1.0, 1e-12);
}

TEST(statevector, entropy_matches_svd) {
    Lattice lat = build_lattice(LatticeSpec::grid(3, 3));
    CircuitLayout c = assemble_circuit(lat, baseline_code(lat), cycle_sequence(8));
    Bipartition bip = column_split(lat, 0);
    for (auto set : {SingleQubitSet::haar, SingleQubitSet::sqrt_xyw}) {
        GateModel model;
        model.single = set;
        StateVector s = simulate_statevector(c, 7, model);
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
        EXPECT_NEAR(entanglement_entropy(s, bip), svd_entropy(s, bip), 1e-9);
    }
}

TEST(statevector, entropy_profile) {
    Lattice lat = build_lattice(LatticeSpec::grid(3, 4));
    CircuitLayout c = assemble_circuit(lat, baseline_code(lat), cycle_sequence(12));
    Bipartition bip = column_split(lat, 0);
    EntropyProfile p = entropy_profile(c, bip, 3);
    ASSERT_EQ(p.entropy.size(), 13u);
    EXPECT_EQ(p.entropy[0], 0.0);
    std::vector<CrossGate> cross = cross_gates(c, bip);
    EXPECT_EQ(p.cumulative_cross.back(), static_cast<int>(cross.size()));
    for (size_t k = 0; k < p.entropy.size(); k++) {
        EXPECT_GE(p.entropy[k], -1e-12);
        EXPECT_LE(p.entropy[k], std::min(bip.n1, bip.n2) + 1e-9);
        EXPECT_LE(p.entropy[k], 2.0 * p.cumulative_cross[k] + 1e-9);
    }
    StateVector s = simulate_statevector(c, 3);
    EXPECT_NEAR(p.entropy.back(), svd_entropy(s, bip), 1e-9);
}

TEST(statevector, deterministic_seed) {
    Lattice lat = build_lattice(LatticeSpec::grid(2, 3));
    CircuitLayout c = assemble_circuit(lat, baseline_code(lat), cycle_sequence(8));
    StateVector a = simulate_statevector(c, 11);
    StateVector b = simulate_statevector(c, 11);
    StateVector other = simulate_statevector(c, 12);
    ASSERT_EQ(a.amplitudes().size(), b.amplitudes().size());
    bool differ = false;
    for (size_t i = 0; i < a.amplitudes().size(); i++) {
        EXPECT_EQ(a.amplitudes()[i], b.amplitudes()[i]);
        differ |= a.amplitudes()[i] != other.amplitudes()[i];
    }
    EXPECT_TRUE(differ);
}

TEST(statevector, cap) {
    Lattice lat = build_lattice(LatticeSpec::grid(5, 5));
    CircuitLayout c = assemble_circuit(lat, baseline_code(lat), cycle_sequence(4));
    EXPECT_THROW(simulate_statevector(c, 1), CapExceeded);
    GateModel model;
    model.cap = 30;
    EXPECT_THROW(simulate_statevector(c, 1, model), ValidationError);
    model.cap = 16;
    model.theta = NAN;
    Lattice small = build_lattice(LatticeSpec::grid(2, 2));
    EXPECT_THROW(simulate_statevector(assemble_circuit(small, baseline_code(small), cycle_sequence(4)), 1, model),
                 ValidationError);
}

TEST(oracle, bond_components) {
    Lattice lat = build_lattice(LatticeSpec::grid(3, 2));
    std::vector<int> none;
    std::vector<int> label = bond_components(lat, none);
    for (int l : label) EXPECT_EQ(l, 0);
    std::vector<int> cut;
    for (const Bond &b : lat.bonds()) {
        if (b.family == Family::F1 && b.parity == 0) cut.push_back(b.id);
    }
    label = bond_components(lat, cut);
    for (const Qubit &q : lat.qubits()) EXPECT_EQ(label[q.id], q.pos.u == 0 ? 0 : 1);
}
