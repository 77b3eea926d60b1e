#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spintop/cell_complex.hpp"

namespace spintop {

// Signs of the couplings J_ij = sign * J0 for every bond; bit set in `neg`
// means J_ij < 0. Only the delta magnitude distribution is carried: all
// topological quantities depend on the signs alone.
struct BondConfig {
    double j0 = 1.0;
    Bitvec neg;

    bool sampled = false;  // provenance, set by sample_couplings
    double x = 0.0;
    std::uint64_t seed = 0;

    int sign(int bond) const { return neg.get(std::size_t(bond)) ? -1 : +1; }
    std::size_t n_bonds() const { return neg.size(); }
};

// One Ising spin per site; bit set means sigma = -1.
struct SpinConfig {
    Bitvec down;

    int spin(int site) const { return down.get(std::size_t(site)) ? -1 : +1; }
    std::size_t n_sites() const { return down.size(); }
};

// Partition of the plaquettes into the frustration network N- and the
// unfrustration network N+, with point-connectivity components and a
// deterministic cover of N- by unfrustrated pairs.
struct NetworkSplit {
    Bitvec frustrated;    // N- membership
    Bitvec unfrustrated;  // N+ membership

    // Component label per plaquette (-1 when the plaquette is in the other
    // network), plus the components as sorted index lists.
    std::vector<int> comp_label_minus;
    std::vector<int> comp_label_plus;
    std::vector<std::vector<int>> components_minus;
    std::vector<std::vector<int>> components_plus;

    // Matching of frustrated plaquettes into unfrustrated pairs; each entry
    // is (p, q, common bond) with p < q. Frustrated plaquettes left over are
    // listed in `unmatched` (an odd region cannot be fully covered).
    std::vector<std::array<int, 3>> pair_cover;
    std::vector<int> unmatched;

    // B+(N-): bonds of N- that are not the common bond of a matched pair.
    Bitvec bplus_bonds;
};

// Bernoulli signs: +1 with probability x per bond, from the counter stream
// (seed, bond index). Identical (seed, complex) give identical output.
BondConfig sample_couplings(const CellComplex& cx, double x, double j0, std::uint64_t seed);

// phi(loop) = product of coupling signs over the loop's bonds. The chain must
// be a 1-cycle.
int frustration_of_loop(const CellComplex& cx, const BondConfig& bonds, const Chain2& loop);

// Bit p set iff plaquette p is frustrated (phi of its boundary is -1).
Bitvec plaquette_frustration(const CellComplex& cx, const BondConfig& bonds);

NetworkSplit split_networks(const CellComplex& cx, const BondConfig& bonds);

// J'_ij = J_ij eps_i eps_j; eps passed as the set of sites with eps = -1.
BondConfig gauge_transform(const CellComplex& cx, const BondConfig& bonds, const Bitvec& eps_down);

struct AllFrustratedConfig {
    BondConfig bonds;
    Bitvec bminus;  // negative bonds (pair common bonds)
    Bitvec bplus;   // all other bonds
};

// 3D construction that frustrates every plaquette: negative couplings exactly
// on the three parity-selected bond families (x-bonds with even y,z; y-bonds
// with odd x,z; z-bonds with even x, odd y). Each plaquette contains exactly
// one negative bond.
AllFrustratedConfig build_all_frustrated_3d(const CellComplex& cx, double j0 = 1.0);

// 2D analogue: negative couplings on the vertical bonds in odd columns, so
// every plaquette is frustrated and pairs share the odd-column bonds.
AllFrustratedConfig build_all_frustrated_2d(const CellComplex& cx, double j0 = 1.0);

}  // namespace spintop
