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

#include <gtest/gtest.h>

#include <cmath>

#include "rqcdesign/error.h"

using namespace rqcdesign;

TEST(fidelity, zero_noise) {
    FidelityEstimate f = predict_fidelity(GateCounts{1000, 500, 56}, NoiseModel{});
    EXPECT_EQ(f.fidelity, 1.0);
    EXPECT_EQ(f.samples, 3.0);
}

TEST(fidelity, closed_form) {
    GateCounts c{56 * 21, 1100, 56};
    NoiseModel n{0.0016, 0.006, 0.038, {}, {}, {}};
    double direct = std::pow(1 - n.e1, c.g1) * std::pow(1 - n.e2, c.g2) * std::pow(1 - n.er, c.q);
    FidelityEstimate f = predict_fidelity(c, n);
    EXPECT_NEAR(f.fidelity / direct, 1.0, 1e-12);
    EXPECT_EQ(f.samples, std::ceil(std::sqrt(9.0 / f.fidelity)));
}

TEST(fidelity, sample_count) {
    EXPECT_EQ(required_samples(0.000662), 117.0);
    EXPECT_EQ(required_samples(1.0), 3.0);
    EXPECT_THROW(required_samples(0.0), ValidationError);
}

TEST(fidelity, underflow_keeps_log) {
    FidelityEstimate f = predict_fidelity(GateCounts{2000000, 1000000, 1000}, NoiseModel{0.01, 0.01, 0.01, {}, {}, {}});
    EXPECT_TRUE(f.underflow);
    EXPECT_TRUE(std::isfinite(f.log_fidelity));
    double expect = 3001000 * std::log1p(-0.01);
    EXPECT_NEAR(f.log_fidelity / expect, 1.0, 1e-12);
    EXPECT_TRUE(std::isfinite(f.samples) || f.samples == INFINITY);
}

TEST(fidelity, circuit_counts_and_overrides) {
    Lattice lat = build_lattice(LatticeSpec::grid(3, 3, {{1, 1}}));
    CircuitLayout c = assemble_circuit(lat, baseline_code(lat), cycle_sequence(8));
    GateCounts counts = gate_counts(c);
    EXPECT_EQ(counts.q, 8);
    EXPECT_EQ(counts.g1, 8 * 9);
    EXPECT_EQ(counts.g2, 2 * lat.num_bonds());

    NoiseModel uniform{0.001, 0.01, 0.02, {}, {}, {}};
    EXPECT_NEAR(predict_fidelity(c, uniform).fidelity, predict_fidelity(counts, uniform).fidelity, 1e-15);

    NoiseModel over = uniform;
    over.e2_by_bond[0] = 0.5;
    over.er_by_qubit[0] = 0.1;
    double ratio = predict_fidelity(c, over).fidelity / predict_fidelity(c, uniform).fidelity;
    EXPECT_NEAR(ratio, std::pow(0.5 / 0.99, 2) * (0.9 / 0.98), 1e-12);
}

TEST(fidelity, invalid_rates) {
    EXPECT_THROW(check_noise(NoiseModel{-0.1, 0, 0, {}, {}, {}}), ValidationError);
    EXPECT_THROW(check_noise(NoiseModel{0, 1.0, 0, {}, {}, {}}), ValidationError);
    EXPECT_THROW(check_noise(NoiseModel{0, 0, NAN, {}, {}, {}}), ValidationError);
    EXPECT_THROW(parse_noise("0.1 0.2"), ValidationError);
    NoiseModel n = parse_noise("0.001, 0.006 0.04");
    EXPECT_EQ(n.e2, 0.006);
}
