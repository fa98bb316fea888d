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

#ifndef RQCDESIGN_LATTICE_H
#define RQCDESIGN_LATTICE_H

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rqcdesign {

/// Integer lattice coordinate. For qubits this is the canonical (u, v) position
/// on the square grid obtained by rotating the diamond drawing by 45 degrees.
/// For dual sites it names the plaquette whose lower-left corner is (u, v).
struct Coord {
    int u = 0;
    int v = 0;
    auto operator<=>(const Coord &) const = default;
};

enum class LatticeMode : uint8_t { grid, window, mask };

const char *mode_name(LatticeMode mode);
LatticeMode parse_mode(const std::string &text);

/// Description of a processor outline.
///
///  - grid:   width x height block of canonical sites.
///  - window: xsize x ysize rectangle of the diamond drawing; qubits sit on the
///            sites with even x + y. Defects are given in drawing (x, y).
///  - mask:   explicit canonical sites.
///
/// Defects of grid and mask lattices are canonical coordinates.
struct LatticeSpec {
    LatticeMode mode = LatticeMode::grid;
    int width = 0;
    int height = 0;
    int xsize = 0;
    int ysize = 0;
    std::vector<Coord> sites;
    std::vector<Coord> defects;

    static LatticeSpec grid(int width, int height, std::vector<Coord> defects = {});
    static LatticeSpec window(int xsize, int ysize, std::vector<Coord> defects = {});
    static LatticeSpec mask(std::vector<Coord> sites, std::vector<Coord> defects = {});

    bool operator==(const LatticeSpec &) const = default;
};

/// Bond families. F1 bonds join (u, v)-(u+1, v) and are the "up-right" rows of the
/// drawing; F2 bonds join (u, v)-(u, v+1), the "down-right" rows.
enum class Family : uint8_t { F1 = 0, F2 = 1 };

struct Qubit {
    int id = 0;
    Coord pos;
    Coord drawing;
};

struct Bond {
    int id = 0;
    int q0 = 0;  // lower endpoint
    int q1 = 0;
    Family family = Family::F1;
    int row = 0;     // index among the family's nonempty rows
    int parity = 0;  // absolute coordinate of the lower endpoint along the row
};

class Lattice;
Lattice build_lattice(const LatticeSpec &spec);

/// Qubits, bonds and row bookkeeping of a planar lattice. Immutable once built.
///
/// The region is every site named by the spec, defective or not. Defective sites
/// carry no qubit id and no bonds, but they still belong to the region: cut paths
/// are laid out on the defect-free outline and only lose the bonds they cross.
class Lattice {
   public:
    const LatticeSpec &spec() const { return spec_; }

    int num_qubits() const { return static_cast<int>(qubits_.size()); }
    int num_bonds() const { return static_cast<int>(bonds_.size()); }
    std::span<const Qubit> qubits() const { return qubits_; }
    std::span<const Bond> bonds() const { return bonds_; }
    const Qubit &qubit(int id) const { return qubits_[id]; }
    const Bond &bond(int id) const { return bonds_[id]; }

    /// Number of rows with at least one bond (m for F1, n for F2).
    int num_rows(Family f) const { return static_cast<int>(row_keys_[index(f)].size()); }
    /// Coordinate shared by the bonds of each row: v for F1 rows, u for F2 rows, ascending.
    std::span<const int> row_keys(Family f) const { return row_keys_[index(f)]; }
    /// Bond ids of one row, ascending.
    std::span<const int> row_bonds(Family f, int row) const { return row_bonds_[index(f)][row]; }
    std::span<const int> family_bonds(Family f) const { return family_bonds_[index(f)]; }

    std::span<const Coord> region() const { return region_; }
    std::span<const Coord> defects() const { return defects_; }

    bool in_region(Coord c) const;
    /// Qubit id at c, or -1 for defects and sites outside the region.
    int qubit_at(Coord c) const;
    /// Bond of family f whose lower endpoint is c, or -1.
    int bond_at(Coord lower, Family f) const;

    Coord lo() const { return lo_; }
    Coord hi() const { return hi_; }

    /// Drawing coordinate of a canonical site.
    Coord to_drawing(Coord c) const;
    /// Canonical coordinate of a drawing site; false when (x + y) is odd.
    bool from_drawing(Coord d, Coord *out) const;

   private:
    friend Lattice build_lattice(const LatticeSpec &spec);
    static int index(Family f) { return static_cast<int>(f); }
    int cell(Coord c) const;

    LatticeSpec spec_;
    std::vector<Qubit> qubits_;
    std::vector<Bond> bonds_;
    std::vector<Coord> region_;
    std::vector<Coord> defects_;
    std::array<std::vector<int>, 2> row_keys_;
    std::array<std::vector<std::vector<int>>, 2> row_bonds_;
    std::array<std::vector<int>, 2> family_bonds_;

    Coord lo_;
    Coord hi_;
    int drawing_offset_ = 0;
    // Dense (hi - lo + 1) boxes: -2 outside region, -1 defect, else qubit id.
    std::vector<int> site_grid_;
    std::array<std::vector<int>, 2> bond_grid_;
};

/// One edge of the dual graph. bond is the crossed bond id, or -1 when the
/// geometric bond is absent (defect or outside the region).
struct DualEdge {
    int to = 0;
    int bond = -1;
};

struct DualSite {
    int id = 0;
    Coord plaquette;
    bool boundary = false;
};

/// Plaquette graph. A horizontal dual step crosses an F2 bond, a vertical one an F1 bond.
class DualGraph {
   public:
    int num_sites() const { return static_cast<int>(sites_.size()); }
    std::span<const DualSite> sites() const { return sites_; }
    const DualSite &site(int id) const { return sites_[id]; }
    std::span<const DualEdge> neighbours(int id) const { return adjacency_[id]; }
    bool boundary(int id) const { return sites_[id].boundary; }
    int site_at(Coord plaquette) const;
    int num_interior() const;
    /// Crossed bond of the step a -> b (-1 if absent); throws if a, b are not adjacent.
    int crossed_bond(int a, int b) const;

   private:
    friend DualGraph build_dual(const Lattice &lattice);
    std::vector<DualSite> sites_;
    std::vector<std::vector<DualEdge>> adjacency_;
    Coord lo_;
    int span_u_ = 0;
    int span_v_ = 0;
    std::vector<int> grid_;
};

DualGraph build_dual(const Lattice &lattice);

/// Open boundary-to-boundary path on the dual graph.
struct CutPath {
    std::vector<int> sites;
    std::vector<int> crossed_bonds;  // existing bonds only, in path order
    int effective_edges = 0;

    int edges() const { return static_cast<int>(sites.size()) - 1; }
    bool operator==(const CutPath &o) const { return sites == o.sites; }
    auto operator<=>(const CutPath &o) const { return sites <=> o.sites; }
};

/// Validates a dual-site sequence (simple, boundary endpoints, interior middle)
/// and fills crossed-bond bookkeeping. Reverses it if needed so that the first
/// site id is smaller than the last.
CutPath make_cut_path(const DualGraph &dual, std::vector<int> sites);

struct Bipartition {
    std::vector<uint8_t> side;  // per qubit id, 0 or 1
    int n1 = 0;
    int n2 = 0;
};

/// Side assignment by crossing parity against the path closed around the outside
/// of the region. Side 0 is the side of qubit 0. Throws DegenerateBipartition when
/// a side is empty and ValidationError when an endpoint cannot reach the outside.
Bipartition bipartition_from_path(const Lattice &lattice, const DualGraph &dual, const CutPath &path);

/// Non-throwing variant: empty when the bipartition is degenerate or not closable.
std::optional<Bipartition> try_bipartition_from_path(const Lattice &lattice, const DualGraph &dual,
                                                     const CutPath &path);

}  // namespace rqcdesign

#endif
