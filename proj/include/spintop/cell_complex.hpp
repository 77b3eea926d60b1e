#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "spintop/bitvec.hpp"

namespace spintop {

enum class Bc { free_, periodic };

// Finite sublattice of Z^d, d = 2 or 3. `extents` counts elementary d-cells
// per axis (unit squares in 2D, unit cubes in 3D); a free axis with extent n
// carries n+1 site coordinates, a periodic one wraps after n.
struct Lattice {
    int d = 2;
    std::array<int, 3> extents{1, 1, 1};
    std::array<Bc, 3> bc{Bc::free_, Bc::free_, Bc::free_};

    void validate() const;  // throws std::invalid_argument
    bool periodic(int axis) const { return bc[std::size_t(axis)] == Bc::periodic; }
};

// A cubical cell: base vertex plus the set of axes it extends along
// (bitmask). Sites have empty mask, bonds one axis, plaquettes two, cubes
// three.
struct Cell {
    std::array<int, 3> pos{0, 0, 0};
    unsigned char mask = 0;
};

// A mod-2 chain (equivalently cochain) of fixed dimension; the support is a
// bit vector over the k-cell indices of the host complex. Chains on the dual
// lattice reuse the same type: a dual (d-k)-chain is stored by the indices of
// the primal k-cells its cells are dual to.
struct Chain2 {
    int dim = 0;
    Bitvec support;
};

// Cubical cell complex with mod-2 incidence. Cell indices are assigned in
// lexicographic (position, orientation) order and are stable across runs.
// Duality: the dual (d-k)-cell of primal k-cell i carries the same index i;
// boundary on the dual complex is coboundary on the primal one, and missing
// cofaces at a free boundary are exactly the dual cells' faces on the dual
// lattice boundary.
class CellComplex {
  public:
    explicit CellComplex(const Lattice& lat);

    const Lattice& lattice() const { return lat_; }
    int dim() const { return lat_.d; }

    int n_cells(int k) const { return int(cells_[std::size_t(k)].size()); }
    const Cell& cell(int k, int i) const { return cells_[std::size_t(k)][std::size_t(i)]; }

    // Index of the cell with the given base/mask, or -1 if absent.
    int index_of(int k, const std::array<int, 3>& pos, unsigned char mask) const;

    const std::vector<int>& faces(int k, int i) const
    {
        return bnd_[std::size_t(k)][std::size_t(i)];
    }
    const std::vector<int>& cofaces(int k, int i) const
    {
        return cob_[std::size_t(k)][std::size_t(i)];
    }

    // Sites on the closure of a cell (2^k of them).
    std::vector<int> vertices_of(int k, int i) const;

    // Dual-index bijection: primal k-cell i <-> dual (d-k)-cell with the same
    // index. Kept explicit so the identification is a named operation.
    int dual_index([[maybe_unused]] int k, int i) const { return i; }
    int dual_dim(int k) const { return lat_.d - k; }

    // True if the primal cell has fewer cofaces than an interior cell would;
    // its dual cell then touches the boundary of the dual lattice.
    bool dual_cell_on_boundary(int k, int i) const;

    Chain2 empty_chain(int k) const { return Chain2{k, Bitvec(std::size_t(n_cells(k)))}; }

  private:
    Lattice lat_;
    std::array<std::vector<Cell>, 4> cells_;
    std::array<std::vector<std::vector<int>>, 4> bnd_;
    std::array<std::vector<std::vector<int>>, 4> cob_;
    std::array<std::unordered_map<std::uint64_t, int>, 4> index_;

    std::uint64_t key(const std::array<int, 3>& pos, unsigned char mask) const;
};

CellComplex build_complex(const Lattice& lat);

// Mod-2 boundary of a k-chain, k >= 1.
Chain2 boundary(const CellComplex& cx, const Chain2& chain);

// Mod-2 coboundary (adjoint of boundary) of a k-chain, k <= d-1.
Chain2 coboundary(const CellComplex& cx, const Chain2& chain);

// JSON round trip for the lattice spec, e.g.
// {"d":2,"extents":[8,8],"bc":["free","free"]}.
std::string lattice_to_json(const Lattice& lat);
Lattice lattice_from_json(const std::string& text);

}  // namespace spintop
