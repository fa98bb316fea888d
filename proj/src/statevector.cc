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

#include <array>
#include <cmath>
#include <random>

#include "rqcdesign/error.h"
#include "rqcdesign/verify.h"

namespace rqcdesign {

using cd = std::complex<double>;

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kHardStateCap) {
        throw CapExceeded("statevector size must be 1.." + std::to_string(kHardStateCap) + " qubits");
    }
    amps_.assign(size_t{1} << num_qubits, cd(0.0, 0.0));
    amps_[0] = 1.0;
}

void StateVector::apply(int q, const Eigen::Matrix2cd &g) {
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) continue;
        cd a0 = amps_[i];
        cd a1 = amps_[i | bit];
        amps_[i] = g(0, 0) * a0 + g(0, 1) * a1;
        amps_[i | bit] = g(1, 0) * a0 + g(1, 1) * a1;
    }
}

void StateVector::apply(int q0, int q1, const Eigen::Matrix4cd &g) {
    const size_t b0 = size_t{1} << q0;
    const size_t b1 = size_t{1} << q1;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & (b0 | b1)) continue;
        const size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
        cd in[4];
        for (int k = 0; k < 4; k++) in[k] = amps_[idx[k]];
        for (int r = 0; r < 4; r++) {
            amps_[idx[r]] = g(r, 0) * in[0] + g(r, 1) * in[1] + g(r, 2) * in[2] + g(r, 3) * in[3];
        }
    }
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cd &a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

Eigen::Matrix2cd haar_su2(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    double x[4];
    double len = 0.0;
    do {
        len = 0.0;
        for (double &v : x) {
            v = gauss(rng);
            len += v * v;
        }
    } while (len < 1e-300);
    len = std::sqrt(len);
    cd a(x[0] / len, x[1] / len);
    cd b(x[2] / len, x[3] / len);
    Eigen::Matrix2cd u;
    u << a, -std::conj(b), b, std::conj(a);
    return u;
}

std::array<Eigen::Matrix2cd, 3> sqrt_xyw() {
    const double s = 1.0 / std::sqrt(2.0);
    std::array<Eigen::Matrix2cd, 3> g;
    g[0] << s, cd(0, -s), cd(0, -s), s;
    g[1] << s, -s, s, s;
    g[2] << s, -std::polar(s, M_PI / 4), std::polar(s, -M_PI / 4), s;
    return g;
}

class Runner {
   public:
    Runner(const CircuitLayout &circuit, uint64_t seed, const GateModel &model)
        : circuit_(circuit), model_(model), rng_(seed), state_(check(circuit, model)), last_(state_.num_qubits(), -1) {
        Matrix f = fsim_matrix(model.theta, model.phi);
        fsim_ = f;
    }

    StateVector &state() { return state_; }

    void single_layer() {
        static const auto discrete = sqrt_xyw();
        for (int q = 0; q < state_.num_qubits(); q++) {
            if (model_.single == SingleQubitSet::haar) {
                state_.apply(q, haar_su2(rng_));
            } else {
                // Uniform over the set, never repeating the previous gate on this qubit.
                int choice;
                if (last_[q] < 0) {
                    choice = std::uniform_int_distribution<int>(0, 2)(rng_);
                } else {
                    choice = (last_[q] + 1 + std::uniform_int_distribution<int>(0, 1)(rng_)) % 3;
                }
                last_[q] = choice;
                state_.apply(q, discrete[choice]);
            }
        }
    }

    void two_qubit_layer(int t) {
        const Lattice &lat = *circuit_.lattice;
        for (int b : circuit_.cycles[t]) state_.apply(lat.bond(b).q0, lat.bond(b).q1, fsim_);
    }

   private:
    static int check(const CircuitLayout &circuit, const GateModel &model) {
        if (!std::isfinite(model.theta) || !std::isfinite(model.phi)) {
            throw ValidationError("fsim angles must be finite");
        }
        if (model.cap < 1 || model.cap > kHardStateCap) {
            throw ValidationError("statevector cap must lie in 1.." + std::to_string(kHardStateCap));
        }
        const int n = circuit.lattice->num_qubits();
        if (n > model.cap) {
            throw CapExceeded("statevector simulation of " + std::to_string(n) + " qubits exceeds the cap of " +
                              std::to_string(model.cap));
        }
        return n;
    }

    const CircuitLayout &circuit_;
    GateModel model_;
    std::mt19937_64 rng_;
    StateVector state_;
    std::vector<int> last_;
    Eigen::Matrix4cd fsim_;
};

}  // namespace

StateVector simulate_statevector(const CircuitLayout &circuit, uint64_t seed, const GateModel &model) {
    Runner run(circuit, seed, model);
    run.single_layer();
    for (int t = 0; t < circuit.depth(); t++) {
        run.two_qubit_layer(t);
        run.single_layer();
    }
    return std::move(run.state());
}

double entanglement_entropy(const StateVector &state, const Bipartition &bip) {
    const int n = state.num_qubits();
    if (static_cast<int>(bip.side.size()) != n) throw ValidationError("bipartition does not match the state");
    std::vector<int> pos(n);
    int nl = 0, nr = 0;
    for (int q = 0; q < n; q++) pos[q] = bip.side[q] == 0 ? nl++ : nr++;
    if (nl == 0 || nr == 0) return 0.0;

    Matrix m(int64_t{1} << nl, int64_t{1} << nr);
    auto amps = state.amplitudes();
    for (size_t i = 0; i < amps.size(); i++) {
        int64_t l = 0, r = 0;
        for (int q = 0; q < n; q++) {
            int64_t bit = (i >> q) & 1;
            if (bip.side[q] == 0) {
                l |= bit << pos[q];
            } else {
                r |= bit << pos[q];
            }
        }
        m(l, r) = amps[i];
    }
    // Eigenvalues of the reduced density matrix on the smaller side are the
    // squared singular values of m.
    const int64_t k = int64_t{1} << std::min(nl, nr);
    Matrix rho = Matrix::Zero(k, k);
    if (nl <= nr) {
        rho.selfadjointView<Eigen::Lower>().rankUpdate(m);
    } else {
        rho.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); i++) {
        double lambda = es.eigenvalues()(i);
        if (lambda <= 0.0) continue;
        s -= lambda * std::log2(std::max(lambda, 1e-15));
    }
    return std::max(0.0, s);
}

EntropyProfile entropy_profile(const CircuitLayout &circuit, const Bipartition &bip, uint64_t seed,
                               const GateModel &model) {
    Runner run(circuit, seed, model);
    const Lattice &lat = *circuit.lattice;
    EntropyProfile p;
    p.seed = seed;
    p.n1 = bip.n1;
    p.n2 = bip.n2;
    run.single_layer();
    // Product state.
    p.entropy.push_back(0.0);
    p.cumulative_cross.push_back(0);
    for (int t = 0; t < circuit.depth(); t++) {
        run.two_qubit_layer(t);
        run.single_layer();
        int cross = 0;
        for (int b : circuit.cycles[t]) cross += bip.side[lat.bond(b).q0] != bip.side[lat.bond(b).q1];
        // Without cross gates the cycle is a product of one-side unitaries.
        p.entropy.push_back(cross == 0 ? p.entropy.back() : entanglement_entropy(run.state(), bip));
        p.cumulative_cross.push_back(p.cumulative_cross.back() + cross);
    }
    return p;
}

}  // namespace rqcdesign
