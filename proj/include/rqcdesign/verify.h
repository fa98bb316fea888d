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

// Desk-scale verification tools: brute-force oracles for the cut-path search,
// operator Schmidt ranks, and a small statevector simulator for entanglement
// entropy across a cut.

#ifndef RQCDESIGN_VERIFY_H
#define RQCDESIGN_VERIFY_H

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rqcdesign/lattice.h"
#include "rqcdesign/pattern.h"
#include "rqcdesign/sfa.h"

namespace rqcdesign {

// ---- Path oracles ----------------------------------------------------------

inline constexpr int kBruteForceMaxDualSites = 40;

/// Connected components of the present-qubit graph with `removed` bonds deleted.
/// Returns the component label per qubit id; labels are numbered in qubit order.
std::vector<int> bond_components(const Lattice &lattice, std::span<const int> removed);

/// Every simple dual path of at most e_star edges, found by unpruned recursion from
/// every dual site, kept when both ends are boundary sites, all middle sites are
/// interior, and flood fill over the remaining bonds yields exactly two components
/// passing cfg's side filters. Site sequences are oriented first < last and sorted.
std::vector<std::vector<int>> brute_force_paths(const Lattice &lattice, const DualGraph &dual, int e_star,
                                                const PathSearchConfig &cfg);

// ---- Operators -------------------------------------------------------------

using Matrix = Eigen::MatrixXcd;

/// fsim(theta, phi) in the basis index b0 + 2 b1.
Matrix fsim_matrix(double theta, double phi);
Matrix cphase_matrix(double phi);

/// Lifts a k-qubit operator acting on `targets` (local bit j = targets[j]) to n qubits.
Matrix embed_operator(const Matrix &op, std::span<const int> targets, int n);

/// Singular values of the operator reshuffled across the split; qubit j of the
/// operator is bit j of its row/column index, `left` lists the left-side qubits.
Eigen::VectorXd operator_schmidt_values(const Matrix &op, std::span<const int> left);

/// Number of operator Schmidt values above 1e-10 relative to the largest.
int operator_schmidt_rank(const Matrix &op, std::span<const int> left);

// ---- Statevector -----------------------------------------------------------

inline constexpr int kDefaultStateCap = 20;
inline constexpr int kHardStateCap = 24;

class StateVector {
   public:
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }

    void apply(int q, const Eigen::Matrix2cd &gate);
    /// Two-qubit gate in the basis index b(q0) + 2 b(q1).
    void apply(int q0, int q1, const Eigen::Matrix4cd &gate);

    double norm() const;

   private:
    int num_qubits_;
    std::vector<std::complex<double>> amps_;
};

enum class SingleQubitSet : uint8_t { haar, sqrt_xyw };

struct GateModel {
    SingleQubitSet single = SingleQubitSet::haar;
    double theta = 1.5707963267948966;  // pi / 2
    double phi = 0.5235987755982988;    // pi / 6
    int cap = kDefaultStateCap;
};

/// d + 1 random single-qubit layers interleaved with fsim gates on every cycle's bonds.
StateVector simulate_statevector(const CircuitLayout &circuit, uint64_t seed, const GateModel &model = {});

/// Von Neumann entropy in bits of side 0 of the bipartition.
double entanglement_entropy(const StateVector &state, const Bipartition &bip);

struct EntropyProfile {
    std::vector<double> entropy;         // index k: after k cycles (k = 0..d)
    std::vector<int> cumulative_cross;   // cross gates applied in the first k cycles
    int n1 = 0;
    int n2 = 0;
    uint64_t seed = 0;
};

EntropyProfile entropy_profile(const CircuitLayout &circuit, const Bipartition &bip, uint64_t seed,
                               const GateModel &model = {});

}  // namespace rqcdesign

#endif
