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
#include <cstdlib>
#include <limits>
#include <map>

#include "rqcdesign/error.h"
#include "rqcdesign/sfa.h"

namespace rqcdesign {

bool passes_side_filters(const Bipartition &bip, const PathSearchConfig &cfg) {
    return bip.n1 > 0 && bip.n2 > 0 && std::abs(bip.n1 - bip.n2) <= cfg.n_star &&
           std::max(bip.n1, bip.n2) <= cfg.max_side;
}

std::vector<CutPath> straight_crossings(const DualGraph &dual) {
    std::vector<CutPath> out;
    // Group dual sites into lines: rows keyed by v (walk along u), columns keyed by u.
    for (int axis = 0; axis < 2; axis++) {
        std::map<int, std::vector<int>> lines;
        for (const DualSite &s : dual.sites()) {
            lines[axis == 0 ? s.plaquette.v : s.plaquette.u].push_back(s.id);
        }
        for (auto &[key, ids] : lines) {
            auto along = [&](int id) { return axis == 0 ? dual.site(id).plaquette.u : dual.site(id).plaquette.v; };
            std::sort(ids.begin(), ids.end(), [&](int a, int b) { return along(a) < along(b); });
            // boundary, interior..., boundary with contiguous coordinates
            for (size_t i = 0; i + 1 < ids.size(); i++) {
                if (!dual.boundary(ids[i])) continue;
                size_t j = i + 1;
                while (j < ids.size() && along(ids[j]) == along(ids[j - 1]) + 1 && !dual.boundary(ids[j])) j++;
                if (j >= ids.size() || along(ids[j]) != along(ids[j - 1]) + 1) continue;
                out.push_back(make_cut_path(dual, std::vector<int>(ids.begin() + i, ids.begin() + j + 1)));
            }
        }
    }
    return out;
}

int default_e_star(const Lattice &lattice, const DualGraph &dual, const PathSearchConfig &cfg) {
    if (cfg.e_star > 0) return cfg.e_star;
    int best = std::numeric_limits<int>::max();
    for (const CutPath &p : straight_crossings(dual)) {
        auto bip = try_bipartition_from_path(lattice, dual, p);
        if (bip && passes_side_filters(*bip, cfg)) best = std::min(best, p.edges());
    }
    if (best == std::numeric_limits<int>::max()) {
        throw NoFeasibleCut("no straight crossing satisfies n_star=" + std::to_string(cfg.n_star) +
                            ", max_side=" + std::to_string(cfg.max_side) + "; pass an explicit e_star");
    }
    return best + std::max(0, cfg.e_star_slack);
}

namespace {

class PathCollector {
   public:
    PathCollector(const DualGraph &dual, int e_star) : dual_(dual), e_star_(e_star), on_path_(dual.num_sites(), 0) {}

    void run() {
        for (const DualSite &s : dual_.sites()) {
            if (!s.boundary) continue;
            path_.assign(1, s.id);
            on_path_[s.id] = 1;
            dfs();
            on_path_[s.id] = 0;
        }
    }

    std::vector<std::vector<int>> found;

   private:
    void dfs() {
        if (static_cast<int>(path_.size()) - 1 >= e_star_) return;
        for (const DualEdge &e : dual_.neighbours(path_.back())) {
            if (on_path_[e.to]) continue;
            path_.push_back(e.to);
            if (dual_.boundary(e.to)) {
                // Each undirected path is reached once from either end; keep one.
                if (path_.front() < path_.back()) found.push_back(path_);
            } else {
                on_path_[e.to] = 1;
                dfs();
                on_path_[e.to] = 0;
            }
            path_.pop_back();
        }
    }

    const DualGraph &dual_;
    int e_star_;
    std::vector<uint8_t> on_path_;
    std::vector<int> path_;
};

}  // namespace

PathSet enumerate_cut_paths(const Lattice &lattice, const DualGraph &dual, const PathSearchConfig &cfg) {
    if (cfg.n_star < 0) throw ValidationError("n_star must be non-negative");
    PathSet set;
    set.e_star = default_e_star(lattice, dual, cfg);
    if (set.e_star < 1) throw ValidationError("e_star must be at least 1");

    PathCollector collector(dual, set.e_star);
    collector.run();
    for (auto &sites : collector.found) {
        CutPath path = make_cut_path(dual, std::move(sites));
        auto bip = try_bipartition_from_path(lattice, dual, path);
        if (!bip || !passes_side_filters(*bip, cfg)) continue;
        set.cuts.push_back({std::move(path), std::move(*bip)});
    }
    if (set.cuts.empty()) {
        throw NoFeasibleCut("no cut path with E <= " + std::to_string(set.e_star) + " satisfies the side filters");
    }
    std::sort(set.cuts.begin(), set.cuts.end(), [](const Cut &a, const Cut &b) {
        if (a.path.edges() != b.path.edges()) return a.path.edges() < b.path.edges();
        return a.path.sites < b.path.sites;
    });
    return set;
}

}  // namespace rqcdesign
