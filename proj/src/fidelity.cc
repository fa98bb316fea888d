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

#include "rqcdesign/fidelity.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rqcdesign/error.h"

namespace rqcdesign {

namespace {

void check_rate(double e, const char *what) {
    if (!(e >= 0.0 && e < 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0, 1), got " + std::to_string(e));
    }
}

double lookup(const std::map<int, double> &m, int key, double fallback) {
    auto it = m.find(key);
    return it == m.end() ? fallback : it->second;
}

FidelityEstimate finish(double log_f, const GateCounts &counts) {
    FidelityEstimate est;
    est.counts = counts;
    est.log_fidelity = log_f;
    est.fidelity = std::exp(log_f);
    est.underflow = !(est.fidelity > 0.0) || !std::isnormal(est.fidelity);
    if (!est.underflow) {
        est.samples = std::ceil(std::sqrt(9.0 / est.fidelity));
    } else {
        est.samples = std::ceil(std::exp(0.5 * (std::log(9.0) - log_f)));
    }
    return est;
}

}  // namespace

double required_samples(double fidelity) {
    if (!(fidelity > 0.0 && fidelity <= 1.0)) throw ValidationError("fidelity must lie in (0, 1]");
    return std::ceil(std::sqrt(9.0 / fidelity));
}

void check_noise(const NoiseModel &noise) {
    check_rate(noise.e1, "e1");
    check_rate(noise.e2, "e2");
    check_rate(noise.er, "er");
    for (const auto &[k, e] : noise.e1_by_qubit) check_rate(e, "e1 override");
    for (const auto &[k, e] : noise.e2_by_bond) check_rate(e, "e2 override");
    for (const auto &[k, e] : noise.er_by_qubit) check_rate(e, "er override");
}

NoiseModel parse_noise(const std::string &text) {
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream in(norm);
    NoiseModel noise;
    std::string extra;
    if (!(in >> noise.e1 >> noise.e2 >> noise.er) || (in >> extra)) {
        throw ValidationError("error rates must be three numbers \"e1 e2 er\", got '" + text + "'");
    }
    check_noise(noise);
    return noise;
}

GateCounts gate_counts(const CircuitLayout &circuit) {
    GateCounts c;
    const int64_t n = circuit.lattice->num_qubits();
    c.q = n;
    c.g1 = n * (circuit.depth() + 1);
    for (const auto &cycle : circuit.cycles) c.g2 += static_cast<int64_t>(cycle.size());
    return c;
}

FidelityEstimate predict_fidelity(const GateCounts &counts, const NoiseModel &noise) {
    check_noise(noise);
    double log_f = static_cast<double>(counts.g1) * std::log1p(-noise.e1) +
                   static_cast<double>(counts.g2) * std::log1p(-noise.e2) +
                   static_cast<double>(counts.q) * std::log1p(-noise.er);
    return finish(log_f, counts);
}

FidelityEstimate predict_fidelity(const CircuitLayout &circuit, const NoiseModel &noise) {
    check_noise(noise);
    const Lattice &lat = *circuit.lattice;
    const int layers = circuit.depth() + 1;
    double log_f = 0.0;
    for (const Qubit &q : lat.qubits()) {
        log_f += layers * std::log1p(-lookup(noise.e1_by_qubit, q.id, noise.e1));
        log_f += std::log1p(-lookup(noise.er_by_qubit, q.id, noise.er));
    }
    for (const auto &cycle : circuit.cycles) {
        for (int b : cycle) log_f += std::log1p(-lookup(noise.e2_by_bond, b, noise.e2));
    }
    return finish(log_f, gate_counts(circuit));
}

}  // namespace rqcdesign
