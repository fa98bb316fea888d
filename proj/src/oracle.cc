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

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "rqcdesign/error.h"
#include "rqcdesign/verify.h"

namespace rqcdesign {

std::vector<int> bond_components(const Lattice &lattice, std::span<const int> removed) {
    const int n = lattice.num_qubits();
    std::vector<uint8_t> cut(lattice.num_bonds(), 0);
    for (int b : removed) cut.at(b) = 1;
    std::vector<std::vector<int>> adj(n);
    for (const Bond &b : lattice.bonds()) {
        if (cut[b.id]) continue;
        adj[b.q0].push_back(b.q1);
        adj[b.q1].push_back(b.q0);
    }
    std::vector<int> label(n, -1);
    int next = 0;
    for (int s = 0; s < n; s++) {
        if (label[s] >= 0) continue;
        std::vector<int> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int r : adj[q]) {
                if (label[r] < 0) {
                    label[r] = next;
                    stack.push_back(r);
                }
            }
        }
        next++;
    }
    return label;
}

namespace {

struct BruteForce {
    const Lattice &lat;
    const DualGraph &dual;
    int e_star;
    const PathSearchConfig &cfg;
    std::set<std::vector<int>> found;
    std::vector<int> path;
    std::vector<uint8_t> on_path;

    void consider() {
        if (path.size() < 2) return;
        if (!dual.boundary(path.front()) || !dual.boundary(path.back())) return;
        for (size_t i = 1; i + 1 < path.size(); i++) {
            if (dual.boundary(path[i])) return;
        }
        std::vector<int> removed;
        for (size_t i = 0; i + 1 < path.size(); i++) {
            int b = dual.crossed_bond(path[i], path[i + 1]);
            if (b >= 0) removed.push_back(b);
        }
        std::vector<int> label = bond_components(lat, removed);
        if (label.empty() || *std::max_element(label.begin(), label.end()) != 1) return;
        Bipartition bip;
        bip.side.resize(label.size());
        for (size_t q = 0; q < label.size(); q++) {
            bip.side[q] = static_cast<uint8_t>(label[q]);
            (label[q] == 0 ? bip.n1 : bip.n2)++;
        }
        if (!passes_side_filters(bip, cfg)) return;
        std::vector<int> key = path;
        if (key.front() > key.back()) std::reverse(key.begin(), key.end());
        found.insert(std::move(key));
    }

    void grow() {
        consider();
        if (static_cast<int>(path.size()) - 1 >= e_star) return;
        for (const DualEdge &e : dual.neighbours(path.back())) {
            if (on_path[e.to]) continue;
            on_path[e.to] = 1;
            path.push_back(e.to);
            grow();
            path.pop_back();
            on_path[e.to] = 0;
        }
    }
};

}  // namespace

std::vector<std::vector<int>> brute_force_paths(const Lattice &lattice, const DualGraph &dual, int e_star,
                                                const PathSearchConfig &cfg) {
    if (dual.num_sites() > kBruteForceMaxDualSites) {
        throw CapExceeded("brute-force path oracle is limited to " + std::to_string(kBruteForceMaxDualSites) +
                          " dual sites, got " + std::to_string(dual.num_sites()));
    }
    if (e_star < 1) throw ValidationError("e_star must be positive");
    BruteForce bf{lattice, dual, e_star, cfg, {}, {}, std::vector<uint8_t>(dual.num_sites(), 0)};
    for (int s = 0; s < dual.num_sites(); s++) {
        bf.path = {s};
        bf.on_path[s] = 1;
        bf.grow();
        bf.on_path[s] = 0;
    }
    return {bf.found.begin(), bf.found.end()};
}

Matrix fsim_matrix(double theta, double phi) {
    using C = std::complex<double>;
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = std::cos(theta);
    m(2, 2) = std::cos(theta);
    m(1, 2) = C(0.0, -std::sin(theta));
    m(2, 1) = C(0.0, -std::sin(theta));
    m(3, 3) = std::polar(1.0, -phi);
    return m;
}

Matrix cphase_matrix(double phi) { return fsim_matrix(0.0, phi); }

Matrix embed_operator(const Matrix &op, std::span<const int> targets, int n) {
    const int k = static_cast<int>(targets.size());
    if (op.rows() != (int64_t{1} << k) || op.cols() != op.rows()) throw ValidationError("operator size mismatch");
    if (n > 12) throw CapExceeded("embed_operator is limited to 12 qubits");
    uint64_t mask = 0;
    for (int t : targets) {
        if (t < 0 || t >= n || (mask >> t & 1)) throw ValidationError("bad target qubit");
        mask |= uint64_t{1} << t;
    }
    const int64_t dim = int64_t{1} << n;
    auto local = [&](int64_t i) {
        int64_t l = 0;
        for (int j = 0; j < k; j++) l |= ((i >> targets[j]) & 1) << j;
        return l;
    };
    auto scatter = [&](int64_t base, int64_t l) {
        for (int j = 0; j < k; j++) base |= ((l >> j) & 1) << targets[j];
        return base;
    };
    Matrix full = Matrix::Zero(dim, dim);
    for (int64_t c = 0; c < dim; c++) {
        const int64_t base = c & ~static_cast<int64_t>(mask);
        const int64_t lc = local(c);
        for (int64_t lr = 0; lr < op.rows(); lr++) full(scatter(base, lr), c) = op(lr, lc);
    }
    return full;
}

Eigen::VectorXd operator_schmidt_values(const Matrix &op, std::span<const int> left) {
    int n = 0;
    while ((int64_t{1} << n) < op.rows()) n++;
    if ((int64_t{1} << n) != op.rows() || op.cols() != op.rows()) throw ValidationError("operator must be 2^n square");
    if (n > 10) throw CapExceeded("operator Schmidt decomposition is limited to 10 qubits");
    std::vector<uint8_t> is_left(n, 0);
    for (int q : left) {
        if (q < 0 || q >= n || is_left[q]) throw ValidationError("bad left qubit");
        is_left[q] = 1;
    }
    std::vector<int> lq, rq;
    for (int q = 0; q < n; q++) (is_left[q] ? lq : rq).push_back(q);
    const int nl = static_cast<int>(lq.size());
    const int nr = static_cast<int>(rq.size());
    auto gather = [](int64_t i, const std::vector<int> &qs) {
        int64_t g = 0;
        for (size_t j = 0; j < qs.size(); j++) g |= ((i >> qs[j]) & 1) << j;
        return g;
    };
    Matrix r(int64_t{1} << (2 * nl), int64_t{1} << (2 * nr));
    for (int64_t i = 0; i < op.rows(); i++) {
        for (int64_t j = 0; j < op.cols(); j++) {
            r((gather(i, lq) << nl) | gather(j, lq), (gather(i, rq) << nr) | gather(j, rq)) = op(i, j);
        }
    }
    Eigen::BDCSVD<Matrix> svd(r);
    return svd.singularValues();
}

int operator_schmidt_rank(const Matrix &op, std::span<const int> left) {
    Eigen::VectorXd s = operator_schmidt_values(op, left);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < s.size(); i++) rank += s(i) > 1e-10 * s(0);
    return rank;
}

}  // namespace rqcdesign
