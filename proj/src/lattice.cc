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

#include "rqcdesign/lattice.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "rqcdesign/error.h"

namespace rqcdesign {

namespace {

constexpr int kMaxSide = 512;
constexpr int kMaxSites = 1 << 16;

std::string str(Coord c) {
    std::ostringstream ss;
    ss << "(" << c.u << "," << c.v << ")";
    return ss.str();
}

}  // namespace

const char *mode_name(LatticeMode mode) {
    switch (mode) {
        case LatticeMode::grid:
            return "grid";
        case LatticeMode::window:
            return "window";
        case LatticeMode::mask:
            return "mask";
    }
    return "?";
}

LatticeMode parse_mode(const std::string &text) {
    if (text == "grid") return LatticeMode::grid;
    if (text == "window") return LatticeMode::window;
    if (text == "mask") return LatticeMode::mask;
    throw ValidationError("unknown lattice mode '" + text + "' (expected grid, window or mask)");
}

LatticeSpec LatticeSpec::grid(int width, int height, std::vector<Coord> defects) {
    LatticeSpec s;
    s.mode = LatticeMode::grid;
    s.width = width;
    s.height = height;
    s.defects = std::move(defects);
    return s;
}

LatticeSpec LatticeSpec::window(int xsize, int ysize, std::vector<Coord> defects) {
    LatticeSpec s;
    s.mode = LatticeMode::window;
    s.xsize = xsize;
    s.ysize = ysize;
    s.defects = std::move(defects);
    return s;
}

LatticeSpec LatticeSpec::mask(std::vector<Coord> sites, std::vector<Coord> defects) {
    LatticeSpec s;
    s.mode = LatticeMode::mask;
    s.sites = std::move(sites);
    s.defects = std::move(defects);
    return s;
}

int Lattice::cell(Coord c) const {
    if (c.u < lo_.u || c.u > hi_.u || c.v < lo_.v || c.v > hi_.v) return -1;
    return (c.u - lo_.u) * (hi_.v - lo_.v + 1) + (c.v - lo_.v);
}

bool Lattice::in_region(Coord c) const {
    int k = cell(c);
    return k >= 0 && site_grid_[k] != -2;
}

int Lattice::qubit_at(Coord c) const {
    int k = cell(c);
    return k < 0 ? -1 : std::max(site_grid_[k], -1);
}

int Lattice::bond_at(Coord lower, Family f) const {
    int k = cell(lower);
    return k < 0 ? -1 : bond_grid_[index(f)][k];
}

Coord Lattice::to_drawing(Coord c) const {
    int v = c.v - drawing_offset_;
    return {c.u + v, c.u - v};
}

bool Lattice::from_drawing(Coord d, Coord *out) const {
    if (((d.u + d.v) % 2 + 2) % 2 != 0) return false;
    *out = {(d.u + d.v) / 2, (d.u - d.v) / 2 + drawing_offset_};
    return true;
}

Lattice build_lattice(const LatticeSpec &spec) {
    Lattice lat;
    lat.spec_ = spec;

    std::vector<Coord> region;
    switch (spec.mode) {
        case LatticeMode::grid:
            if (spec.width <= 0 || spec.height <= 0) {
                throw ValidationError("grid lattice needs positive width and height");
            }
            if (spec.width > kMaxSide || spec.height > kMaxSide) {
                throw CapExceeded("grid lattice larger than " + std::to_string(kMaxSide) + " per side");
            }
            for (int u = 0; u < spec.width; u++) {
                for (int v = 0; v < spec.height; v++) region.push_back({u, v});
            }
            break;
        case LatticeMode::window: {
            if (spec.xsize <= 0 || spec.ysize <= 0) {
                throw ValidationError("window lattice needs positive xsize and ysize");
            }
            if (spec.xsize > kMaxSide || spec.ysize > kMaxSide) {
                throw CapExceeded("window lattice larger than " + std::to_string(kMaxSide) + " per side");
            }
            // v = (x - y) / 2 is shifted so that the smallest row sits at 0.
            int min_raw = 0;
            bool first = true;
            for (int x = 0; x < spec.xsize; x++) {
                for (int y = 0; y < spec.ysize; y++) {
                    if ((x + y) % 2) continue;
                    int raw = (x - y) / 2;
                    min_raw = first ? raw : std::min(min_raw, raw);
                    first = false;
                }
            }
            lat.drawing_offset_ = -min_raw;
            for (int x = 0; x < spec.xsize; x++) {
                for (int y = 0; y < spec.ysize; y++) {
                    if ((x + y) % 2) continue;
                    region.push_back({(x + y) / 2, (x - y) / 2 + lat.drawing_offset_});
                }
            }
            break;
        }
        case LatticeMode::mask: {
            if (spec.sites.empty()) throw ValidationError("mask lattice has no sites");
            if (spec.sites.size() > static_cast<size_t>(kMaxSites)) {
                throw CapExceeded("mask lattice has too many sites");
            }
            std::set<Coord> seen;
            for (Coord c : spec.sites) {
                if (!seen.insert(c).second) throw ValidationError("duplicate mask site " + str(c));
            }
            region = spec.sites;
            break;
        }
    }
    std::sort(region.begin(), region.end());

    lat.lo_ = region.front();
    lat.hi_ = region.front();
    for (Coord c : region) {
        lat.lo_ = {std::min(lat.lo_.u, c.u), std::min(lat.lo_.v, c.v)};
        lat.hi_ = {std::max(lat.hi_.u, c.u), std::max(lat.hi_.v, c.v)};
    }
    long long box = static_cast<long long>(lat.hi_.u - lat.lo_.u + 1) * (lat.hi_.v - lat.lo_.v + 1);
    if (box > kMaxSites * 4LL) throw CapExceeded("lattice bounding box too large");
    lat.site_grid_.assign(static_cast<size_t>(box), -2);
    for (Coord c : region) lat.site_grid_[lat.cell(c)] = 0;

    // Defects, converted to canonical coordinates.
    std::set<Coord> defects;
    for (Coord d : spec.defects) {
        Coord c = d;
        if (spec.mode == LatticeMode::window) {
            bool inside = d.u >= 0 && d.u < spec.xsize && d.v >= 0 && d.v < spec.ysize;
            if (!inside || !lat.from_drawing(d, &c)) {
                throw ValidationError("defect " + str(d) + " is not a qubit site of the window");
            }
        }
        if (!lat.in_region(c)) throw ValidationError("defect " + str(d) + " lies outside the lattice");
        if (!defects.insert(c).second) throw ValidationError("duplicate defect " + str(d));
    }
    for (Coord c : defects) lat.site_grid_[lat.cell(c)] = -1;
    lat.defects_.assign(defects.begin(), defects.end());
    lat.region_ = region;

    for (Coord c : region) {
        if (defects.count(c)) continue;
        int id = lat.num_qubits();
        lat.site_grid_[lat.cell(c)] = id;
        lat.qubits_.push_back({id, c, lat.to_drawing(c)});
    }
    if (lat.qubits_.empty()) throw ValidationError("lattice has no qubits after removing defects");

    // Bonds, in qubit order with F1 before F2 at each lower endpoint.
    for (auto &g : lat.bond_grid_) g.assign(lat.site_grid_.size(), -1);
    std::array<std::set<int>, 2> keys;
    for (const Qubit &q : lat.qubits_) {
        for (Family f : {Family::F1, Family::F2}) {
            Coord other = f == Family::F1 ? Coord{q.pos.u + 1, q.pos.v} : Coord{q.pos.u, q.pos.v + 1};
            int q1 = lat.qubit_at(other);
            if (q1 < 0) continue;
            Bond b;
            b.id = lat.num_bonds();
            b.q0 = q.id;
            b.q1 = q1;
            b.family = f;
            b.parity = f == Family::F1 ? q.pos.u : q.pos.v;
            b.row = f == Family::F1 ? q.pos.v : q.pos.u;  // key for now, index below
            keys[Lattice::index(f)].insert(b.row);
            lat.bond_grid_[Lattice::index(f)][lat.cell(q.pos)] = b.id;
            lat.bonds_.push_back(b);
        }
    }
    for (int fi = 0; fi < 2; fi++) {
        lat.row_keys_[fi].assign(keys[fi].begin(), keys[fi].end());
        lat.row_bonds_[fi].assign(lat.row_keys_[fi].size(), {});
    }
    for (Bond &b : lat.bonds_) {
        int fi = Lattice::index(b.family);
        const auto &rk = lat.row_keys_[fi];
        b.row = static_cast<int>(std::lower_bound(rk.begin(), rk.end(), b.row) - rk.begin());
        lat.row_bonds_[fi][b.row].push_back(b.id);
        lat.family_bonds_[fi].push_back(b.id);
    }
    return lat;
}

int DualGraph::site_at(Coord p) const {
    int du = p.u - lo_.u;
    int dv = p.v - lo_.v;
    if (du < 0 || dv < 0 || du >= span_u_ || dv >= span_v_) return -1;
    return grid_[du * span_v_ + dv];
}

int DualGraph::num_interior() const {
    return static_cast<int>(std::count_if(sites_.begin(), sites_.end(), [](const DualSite &s) { return !s.boundary; }));
}

int DualGraph::crossed_bond(int a, int b) const {
    for (const DualEdge &e : adjacency_[a]) {
        if (e.to == b) return e.bond;
    }
    throw ValidationError("dual sites " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
}

DualGraph build_dual(const Lattice &lattice) {
    DualGraph dual;
    std::set<Coord> plaquettes;
    for (Coord c : lattice.region()) {
        for (int du = -1; du <= 0; du++) {
            for (int dv = -1; dv <= 0; dv++) plaquettes.insert({c.u + du, c.v + dv});
        }
    }
    dual.lo_ = {lattice.lo().u - 1, lattice.lo().v - 1};
    dual.span_u_ = lattice.hi().u - lattice.lo().u + 2;
    dual.span_v_ = lattice.hi().v - lattice.lo().v + 2;
    dual.grid_.assign(static_cast<size_t>(dual.span_u_) * dual.span_v_, -1);

    for (Coord p : plaquettes) {
        DualSite s;
        s.id = dual.num_sites();
        s.plaquette = p;
        s.boundary = !(lattice.in_region(p) && lattice.in_region({p.u + 1, p.v}) &&
                       lattice.in_region({p.u, p.v + 1}) && lattice.in_region({p.u + 1, p.v + 1}));
        dual.grid_[(p.u - dual.lo_.u) * dual.span_v_ + (p.v - dual.lo_.v)] = s.id;
        dual.sites_.push_back(s);
    }
    dual.adjacency_.resize(dual.sites_.size());
    for (const DualSite &s : dual.sites_) {
        Coord p = s.plaquette;
        // Right/left steps cross the F2 bond on the shared vertical side;
        // up/down steps cross the F1 bond on the shared horizontal side.
        const std::array<std::pair<Coord, int>, 4> steps = {{
            {{p.u + 1, p.v}, lattice.bond_at({p.u + 1, p.v}, Family::F2)},
            {{p.u - 1, p.v}, lattice.bond_at({p.u, p.v}, Family::F2)},
            {{p.u, p.v + 1}, lattice.bond_at({p.u, p.v + 1}, Family::F1)},
            {{p.u, p.v - 1}, lattice.bond_at({p.u, p.v}, Family::F1)},
        }};
        for (const auto &[q, bond] : steps) {
            int t = dual.site_at(q);
            if (t >= 0) dual.adjacency_[s.id].push_back({t, bond});
        }
    }
    return dual;
}

CutPath make_cut_path(const DualGraph &dual, std::vector<int> sites) {
    if (sites.size() < 2) throw ValidationError("cut path needs at least two dual sites");
    std::set<int> seen;
    for (int s : sites) {
        if (s < 0 || s >= dual.num_sites()) throw ValidationError("cut path names an unknown dual site");
        if (!seen.insert(s).second) throw ValidationError("cut path revisits a dual site");
    }
    if (!dual.boundary(sites.front()) || !dual.boundary(sites.back())) {
        throw ValidationError("cut path endpoints must be boundary dual sites");
    }
    for (size_t i = 1; i + 1 < sites.size(); i++) {
        if (dual.boundary(sites[i])) throw ValidationError("cut path passes through a boundary dual site");
    }
    if (sites.front() > sites.back()) std::reverse(sites.begin(), sites.end());

    CutPath path;
    path.sites = std::move(sites);
    for (size_t i = 0; i + 1 < path.sites.size(); i++) {
        int bond = dual.crossed_bond(path.sites[i], path.sites[i + 1]);
        if (bond >= 0) path.crossed_bonds.push_back(bond);
    }
    path.effective_edges = static_cast<int>(path.crossed_bonds.size());
    return path;
}

namespace {

// Geometry is carried in doubled coordinates: qubits at even positions, plaquette
// centres and the closing frame at odd ones, so rays never touch a vertex.
struct Point {
    long x;
    long y;
};

// Whether the axis ray leaving plaquette p in direction (du, dv) crosses no bond of
// the defect-free outline.
bool escapes(const Lattice &lat, Coord p, int du, int dv) {
    if (du != 0) {
        int start = du > 0 ? p.u + 1 : p.u;
        for (int x = start; x >= lat.lo().u && x <= lat.hi().u; x += du) {
            if (lat.in_region({x, p.v}) && lat.in_region({x, p.v + 1})) return false;
        }
    } else {
        int start = dv > 0 ? p.v + 1 : p.v;
        for (int y = start; y >= lat.lo().v && y <= lat.hi().v; y += dv) {
            if (lat.in_region({p.u, y}) && lat.in_region({p.u + 1, y})) return false;
        }
    }
    return true;
}

struct Frame {
    long x_lo, x_hi, y_lo, y_hi;

    // Counter-clockwise perimeter coordinate starting at (x_lo, y_lo).
    long param(Point p) const {
        long w = x_hi - x_lo;
        long h = y_hi - y_lo;
        if (p.y == y_lo) return p.x - x_lo;
        if (p.x == x_hi) return w + (p.y - y_lo);
        if (p.y == y_hi) return w + h + (x_hi - p.x);
        return 2 * w + h + (y_hi - p.y);
    }
};

// Endpoint escape onto the frame; false if every axis ray is blocked.
bool escape_point(const Lattice &lat, Coord end, Coord prev, const Frame &frame, Point *out) {
    std::array<std::pair<int, int>, 5> dirs = {{{end.u - prev.u, end.v - prev.v}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (auto [du, dv] : dirs) {
        if (!escapes(lat, end, du, dv)) continue;
        long cx = 2L * end.u + 1;
        long cy = 2L * end.v + 1;
        if (du > 0) *out = {frame.x_hi, cy};
        if (du < 0) *out = {frame.x_lo, cy};
        if (dv > 0) *out = {cx, frame.y_hi};
        if (dv < 0) *out = {cx, frame.y_lo};
        return true;
    }
    return false;
}

enum class SideResult { ok, degenerate, unclosable };

SideResult assign_sides(const Lattice &lat, const DualGraph &dual, const CutPath &path, Bipartition *bip) {
    Frame frame{2L * lat.lo().u - 3, 2L * lat.hi().u + 3, 2L * lat.lo().v - 3, 2L * lat.hi().v + 3};
    const auto &sites = path.sites;
    Coord first = dual.site(sites.front()).plaquette;
    Coord last = dual.site(sites.back()).plaquette;
    Point start, end;
    if (!escape_point(lat, first, dual.site(sites[1]).plaquette, frame, &start) ||
        !escape_point(lat, last, dual.site(sites[sites.size() - 2]).plaquette, frame, &end)) {
        return SideResult::unclosable;
    }

    std::vector<Point> poly;
    poly.push_back(start);
    for (int s : sites) {
        Coord p = dual.site(s).plaquette;
        poly.push_back({2L * p.u + 1, 2L * p.v + 1});
    }
    poly.push_back(end);
    // Close along the frame, counter-clockwise from the end escape to the start escape.
    const long w = frame.x_hi - frame.x_lo;
    const long h = frame.y_hi - frame.y_lo;
    const long perimeter = 2 * (w + h);
    const std::array<std::pair<long, Point>, 4> corners = {{
        {0, {frame.x_lo, frame.y_lo}},
        {w, {frame.x_hi, frame.y_lo}},
        {w + h, {frame.x_hi, frame.y_hi}},
        {2 * w + h, {frame.x_lo, frame.y_hi}},
    }};
    long t0 = frame.param(end);
    long t1 = frame.param(start);
    long run = ((t1 - t0) % perimeter + perimeter) % perimeter;
    std::vector<std::pair<long, Point>> between;
    for (const auto &[t, c] : corners) {
        long off = ((t - t0) % perimeter + perimeter) % perimeter;
        if (off > 0 && off < run) between.push_back({off, c});
    }
    std::sort(between.begin(), between.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &b : between) poly.push_back(b.second);

    // Only vertical edges can cross a horizontal ray.
    struct Segment {
        long x, y0, y1;
    };
    std::vector<Segment> vertical;
    for (size_t i = 0; i < poly.size(); i++) {
        Point a = poly[i];
        Point b = poly[(i + 1) % poly.size()];
        if (a.x == b.x && a.y != b.y) vertical.push_back({a.x, std::min(a.y, b.y), std::max(a.y, b.y)});
    }

    bip->side.assign(lat.num_qubits(), 0);
    for (const Qubit &q : lat.qubits()) {
        long qx = 2L * q.pos.u;
        long qy = 2L * q.pos.v;
        int parity = 0;
        for (const Segment &s : vertical) {
            if (s.x > qx && s.y0 < qy && qy < s.y1) parity ^= 1;
        }
        bip->side[q.id] = static_cast<uint8_t>(parity);
    }
    if (bip->side[0] == 1) {
        for (auto &s : bip->side) s ^= 1;
    }
    bip->n2 = static_cast<int>(std::count(bip->side.begin(), bip->side.end(), 1));
    bip->n1 = lat.num_qubits() - bip->n2;
    return bip->n2 == 0 ? SideResult::degenerate : SideResult::ok;
}

}  // namespace

Bipartition bipartition_from_path(const Lattice &lattice, const DualGraph &dual, const CutPath &path) {
    Bipartition bip;
    switch (assign_sides(lattice, dual, path, &bip)) {
        case SideResult::ok:
            return bip;
        case SideResult::degenerate:
            throw DegenerateBipartition("cut path leaves one side of the lattice empty");
        case SideResult::unclosable:
            break;
    }
    throw ValidationError("cut path endpoint cannot be joined to the outside of the lattice");
}

std::optional<Bipartition> try_bipartition_from_path(const Lattice &lattice, const DualGraph &dual,
                                                     const CutPath &path) {
    Bipartition bip;
    if (assign_sides(lattice, dual, path, &bip) != SideResult::ok) return std::nullopt;
    return bip;
}

}  // namespace rqcdesign
