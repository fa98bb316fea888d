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

#ifndef RQCDESIGN_FIDELITY_H
#define RQCDESIGN_FIDELITY_H

#include <cstdint>
#include <map>
#include <string>

#include "rqcdesign/pattern.h"

namespace rqcdesign {

/// Pauli error rates: e1 per single-qubit gate, e2 per two-qubit gate, er per qubit
/// for state preparation and measurement. The override maps replace the uniform
/// rate for individual qubit ids (e1, er) or bond ids (e2).
struct NoiseModel {
    double e1 = 0.0;
    double e2 = 0.0;
    double er = 0.0;
    std::map<int, double> e1_by_qubit;
    std::map<int, double> e2_by_bond;
    std::map<int, double> er_by_qubit;
};

/// Throws ValidationError unless every rate lies in [0, 1).
void check_noise(const NoiseModel &noise);
/// "e1 e2 er" as three decimals separated by spaces or commas.
NoiseModel parse_noise(const std::string &text);

struct GateCounts {
    int64_t g1 = 0;  // single-qubit gates, N (d + 1)
    int64_t g2 = 0;  // two-qubit gates
    int64_t q = 0;   // measured qubits
};

GateCounts gate_counts(const CircuitLayout &circuit);

struct FidelityEstimate {
    double fidelity = 1.0;
    double log_fidelity = 0.0;  // natural log, finite even when fidelity underflows
    double samples = 3.0;       // ceil(sqrt(9 / F))
    bool underflow = false;
    GateCounts counts;
};

/// ceil(sqrt(9 / F)), the sample count for a 3-sigma XEB signal.
double required_samples(double fidelity);

/// Uniform-rate prediction from gate counts.
FidelityEstimate predict_fidelity(const GateCounts &counts, const NoiseModel &noise);
/// Per-gate prediction; honours the override maps.
FidelityEstimate predict_fidelity(const CircuitLayout &circuit, const NoiseModel &noise);

}  // namespace rqcdesign

#endif
