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

#include "rqcdesign/search.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "rqcdesign/error.h"

namespace rqcdesign {

bool ranks_ahead(const RankedCandidate &a, const RankedCandidate &b) {
    if (a.breakdown.log2_cost != b.breakdown.log2_cost) return a.breakdown.log2_cost > b.breakdown.log2_cost;
    if (a.symmetry != b.symmetry) return a.symmetry > b.symmetry;
    return a.index < b.index;
}

namespace {

// Bond permutations of the lattice symmetries that exist for this outline.
class SymmetryTable {
   public:
    explicit SymmetryTable(const Lattice &lat) : lat_(lat) {
        const bool window = lat.spec().mode == LatticeMode::window;
        const int xs = lat.spec().xsize;
        const int ys = lat.spec().ysize;
        const Coord lo = lat.lo();
        const Coord hi = lat.hi();
        for (int k = 0; k < 3; k++) {
            const bool flip_first = k != 1;  // mirror, mirror, rotation = both
            const bool flip_second = k != 0;
            auto transform = [&](Coord c, Coord *out) {
                if (window) {
                    Coord d = lat.to_drawing(c);
                    if (flip_first) d.u = xs - 1 - d.u;
                    if (flip_second) d.v = ys - 1 - d.v;
                    return lat.from_drawing(d, out);
                }
                *out = {flip_first ? lo.u + hi.u - c.u : c.u, flip_second ? lo.v + hi.v - c.v : c.v};
                return true;
            };
            std::vector<int> qmap(lat.num_qubits());
            bool ok = true;
            for (const Qubit &q : lat.qubits()) {
                Coord t;
                if (!transform(q.pos, &t) || lat.qubit_at(t) < 0) {
                    ok = false;
                    break;
                }
                qmap[q.id] = lat.qubit_at(t);
            }
            if (!ok) continue;
            std::vector<int> bmap(lat.num_bonds());
            for (const Bond &b : lat.bonds()) {
                Coord p0 = lat.qubit(qmap[b.q0]).pos;
                Coord p1 = lat.qubit(qmap[b.q1]).pos;
                Family f = p0.v == p1.v ? Family::F1 : Family::F2;
                int id = lat.bond_at(std::min(p0, p1), f);
                if (id < 0) {
                    ok = false;
                    break;
                }
                bmap[b.id] = id;
            }
            if (ok) maps_.push_back(std::move(bmap));
        }
    }

    int score(const PatternCode &code) const {
        std::vector<int> layer(lat_.num_bonds());
        std::array<int, 4> size{};
        for (const Bond &b : lat_.bonds()) {
            int odd = ((b.parity % 2) + 2) % 2;
            if (b.family == Family::F1) {
                layer[b.id] = odd == code.a_bits[b.row] ? 0 : 1;
            } else {
                layer[b.id] = odd == code.c_bits[b.row] ? 2 : 3;
            }
            size[layer[b.id]]++;
        }
        int score = 0;
        for (const auto &bmap : maps_) {
            std::array<int, 4> target = {-1, -1, -1, -1};
            bool ok = true;
            for (int b = 0; b < lat_.num_bonds() && ok; b++) {
                int from = layer[b];
                int to = layer[bmap[b]];
                if (target[from] < 0) target[from] = to;
                ok = target[from] == to;
            }
            for (int l = 0; l < 4 && ok; l++) ok = target[l] < 0 || size[target[l]] == size[l];
            if (ok) score++;
        }
        return score;
    }

   private:
    const Lattice &lat_;
    std::vector<std::vector<int>> maps_;
};

class Evaluator {
   public:
    Evaluator(const Lattice &lat, const PathSet &paths, const SymmetryTable &sym)
        : lat_(lat), paths_(paths), sym_(sym) {}

    RankedCandidate operator()(uint64_t index, PatternCode code, const CycleSequence &seq) const {
        RankedCandidate c;
        c.index = index;
        CircuitLayout layout = assemble_circuit(lat_, code, seq);
        CircuitIndex idx(layout);
        for (int i = 0; i < static_cast<int>(paths_.cuts.size()); i++) {
            SfaBreakdown b = evaluate_cut(lat_, idx, paths_.cuts[i]);
            if (c.cut_index < 0 || b.log2_cost < c.breakdown.log2_cost) {
                c.breakdown = b;
                c.cut_index = i;
            }
        }
        c.symmetry = sym_.score(code);
        c.code = std::move(code);
        c.sequence = seq;
        return c;
    }

   private:
    const Lattice &lat_;
    const PathSet &paths_;
    const SymmetryTable &sym_;
};

struct ChunkResult {
    std::vector<RankedCandidate> top;
    double best = 0.0;
    uint64_t best_ties = 0;
    uint64_t ahead_of_baseline = 0;
};

void push_top(std::vector<RankedCandidate> &top, RankedCandidate c, int k) {
    if (static_cast<int>(top.size()) == k && !ranks_ahead(c, top.back())) return;
    auto at = std::upper_bound(top.begin(), top.end(), c, ranks_ahead);
    top.insert(at, std::move(c));
    if (static_cast<int>(top.size()) > k) top.pop_back();
}

// Runs eval(i) for i in [0, count) over `threads` workers in 256 chunks and merges
// the chunk results in chunk order.
template <typename Eval, typename Ahead>
ChunkResult run_space(uint64_t count, int threads, int top_k, const Eval &eval, const Ahead &ahead,
                      const std::function<void(double)> &progress) {
    const uint64_t chunks = std::min<uint64_t>(256, std::max<uint64_t>(count, 1));
    std::vector<ChunkResult> results(chunks);
    std::atomic<uint64_t> next{0};
    std::mutex progress_mu;
    uint64_t done = 0;

    auto worker = [&]() {
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            uint64_t begin = count * c / chunks;
            uint64_t end = count * (c + 1) / chunks;
            ChunkResult &r = results[c];
            for (uint64_t i = begin; i < end; i++) {
                RankedCandidate cand = eval(i);
                double cost = cand.breakdown.log2_cost;
                if (r.best_ties == 0 || cost > r.best) {
                    r.best = cost;
                    r.best_ties = 1;
                } else if (cost == r.best) {
                    r.best_ties++;
                }
                if (ahead(cand)) r.ahead_of_baseline++;
                push_top(r.top, std::move(cand), top_k);
            }
            std::lock_guard<std::mutex> lock(progress_mu);
            done++;
            if (progress) progress(static_cast<double>(done) / static_cast<double>(chunks));
        }
    };
    const int n = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < n; t++) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();

    ChunkResult merged;
    for (auto &r : results) {
        if (r.best_ties > 0) {
            if (merged.best_ties == 0 || r.best > merged.best) {
                merged.best = r.best;
                merged.best_ties = r.best_ties;
            } else if (r.best == merged.best) {
                merged.best_ties += r.best_ties;
            }
        }
        merged.ahead_of_baseline += r.ahead_of_baseline;
        for (auto &c : r.top) push_top(merged.top, std::move(c), top_k);
    }
    return merged;
}

}  // namespace

int symmetry_score(const Lattice &lattice, const PatternCode &code) {
    check_code(lattice, code);
    return SymmetryTable(lattice).score(code);
}

SearchReport search(const Lattice &lattice, const SearchConfig &cfg, const ProgressFn &progress) {
    if (cfg.top_k < 1) throw ValidationError("top_k must be at least 1");
    if (cfg.depth < 4) throw ValidationError("search depth must be at least 4");
    const auto started = std::chrono::steady_clock::now();

    SearchReport report;
    report.lattice = lattice.spec();
    report.num_qubits = lattice.num_qubits();
    report.num_bonds = lattice.num_bonds();
    report.m = lattice.num_rows(Family::F1);
    report.n = lattice.num_rows(Family::F2);
    report.config = cfg;

    const CodeSpace space(lattice, cfg.enumeration_cap);
    const DualGraph dual = build_dual(lattice);
    const PathSet paths = enumerate_cut_paths(lattice, dual, cfg.paths);
    report.e_star = paths.e_star;
    report.num_paths = static_cast<int>(paths.cuts.size());

    const SymmetryTable sym(lattice);
    const Evaluator eval(lattice, paths, sym);
    const int r = cfg.depth % 4;
    const int prefix_depth = cfg.depth - r;
    const CycleSequence prefix_seq = cycle_sequence(prefix_depth);
    std::vector<CycleSequence> tails;
    if (r != 0) tails = tail_sequences(cfg.depth, cfg.forbid_junction_repeat);

    const double code_share =
        static_cast<double>(space.size()) / static_cast<double>(space.size() + tails.size());
    auto code_progress = [&](double f) {
        if (progress) progress(f * code_share);
    };

    if (cfg.include_baseline) {
        PatternCode base = baseline_code(lattice);
        CycleSequence seq = r == 0 ? prefix_seq : truncated_sequence(cfg.depth);
        report.baseline = eval(space.index_of(base), base, seq);
    }

    // Pattern codes at the divisible depth.
    const bool baseline_in_space = cfg.include_baseline && r == 0;
    auto code_ahead = [&](const RankedCandidate &c) {
        return baseline_in_space && c.index != report.baseline->index && ranks_ahead(c, *report.baseline);
    };
    ChunkResult codes = run_space(
        space.size(), cfg.threads, r == 0 ? cfg.top_k : 1, [&](uint64_t i) { return eval(i, space.at(i), prefix_seq); },
        code_ahead, code_progress);
    report.candidates = space.size();

    auto finish = [&](std::vector<RankedCandidate> &list) {
        for (auto &c : list) c.cut = paths.cuts[c.cut_index].path;
    };

    if (r == 0) {
        report.top = std::move(codes.top);
        report.optimum_ties = codes.best_ties;
        if (baseline_in_space) report.baseline_rank = codes.ahead_of_baseline + 1;
    } else {
        // Keep the divisible-depth optimum and exhaust the tail words.
        report.prefix_optimum = codes.top.front();
        const PatternCode best_code = report.prefix_optimum->code;
        auto tail_ahead = [&](const RankedCandidate &c) {
            if (!cfg.include_baseline) return false;
            const auto &b = *report.baseline;
            if (c.breakdown.log2_cost != b.breakdown.log2_cost) return c.breakdown.log2_cost > b.breakdown.log2_cost;
            return c.symmetry > b.symmetry;
        };
        ChunkResult tail = run_space(
            tails.size(), cfg.threads, cfg.top_k, [&](uint64_t i) { return eval(i, best_code, tails[i]); }, tail_ahead,
            [&](double f) {
                if (progress) progress(code_share + f * (1.0 - code_share));
            });
        report.top = std::move(tail.top);
        report.optimum_ties = tail.best_ties;
        report.candidates += tails.size();
        if (cfg.include_baseline) report.baseline_rank = tail.ahead_of_baseline + 1;
        std::vector<RankedCandidate> one{*report.prefix_optimum};
        finish(one);
        report.prefix_optimum = std::move(one.front());
    }
    finish(report.top);
    if (report.baseline) {
        std::vector<RankedCandidate> one{*report.baseline};
        finish(one);
        report.baseline = std::move(one.front());
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace rqcdesign
