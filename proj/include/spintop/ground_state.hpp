#pragma once

#include <stdexcept>
#include <vector>

#include "spintop/topology.hpp"

namespace spintop {

// Thrown by propagate_ground_state; carries the frustrated cycle that made
// the propagation inconsistent (tree path plus the violating bond).
class FrustratedLoopError : public std::runtime_error {
  public:
    FrustratedLoopError(std::string what, Chain2 witness)
        : std::runtime_error(std::move(what)), witness(std::move(witness))
    {
    }
    Chain2 witness;
};

// Total energy -sum J_ij sigma_i sigma_j. Every term is ±J0, so the energy
// is carried as an exact integer in units of J0.
long long energy_units(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins);
double energy(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins);

// Fix the root spin and push J sigma sigma = +1 along a spanning tree of the
// region; every non-tree bond is checked and a violation raises
// FrustratedLoopError with the frustrated cycle as witness. Sites outside the
// region are returned as +1.
SpinConfig propagate_ground_state(const CellComplex& cx, const Bitvec& region_bonds,
                                  const BondConfig& bonds, int root, int root_spin);

struct GroundStateResult {
    long long energy_units = 0;  // energy = energy_units * j0
    double j0 = 1.0;
    long long degeneracy = 0;    // total count, both global-flip sectors
    std::vector<SpinConfig> states;  // canonical reps: lowest region site +1,
                                     // sorted lexicographically
    bool states_truncated = false;
};

// Exhaustive minimization over the spins of the region's sites (lowest site
// pinned to +1, the flipped partners counted by symmetry). Gray-code order
// with incremental energy updates.
GroundStateResult brute_force_ground_states(const CellComplex& cx, const BondConfig& bonds,
                                            int site_cap = 24);
GroundStateResult brute_force_ground_states_region(const CellComplex& cx, const BondConfig& bonds,
                                                   const Bitvec& region_bonds, int site_cap = 24,
                                                   std::size_t max_states = 65536);

// Duals of the bonds with unfavorable energy, grouped into connected walls
// with their boundaries (which sit at frustrated plaquettes or on the
// lattice boundary).
DomainWallSet domain_walls(const CellComplex& cx, const BondConfig& bonds,
                           const SpinConfig& spins);

struct WallSplit {
    DomainWallSet on_nplus;   // walls of tau  (unfavorable bonds inside N+)
    DomainWallSet outside;    // walls of tau' (unfavorable bonds outside N+)
};

// Factor J' = tau tau' with tau carried by the bonds of N+ and tau' by the
// rest; the two wall families partition the unfavorable-bond duals.
WallSplit wall_split(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins,
                     const SubComplex& nplus);

struct GroundStateDecomposition {
    GroundStateResult ground;   // exhaustive result on N+
    DomainWallSet walls;        // canonical minimal wall set (lex least)
    SpinConfig state;           // the ground state carrying those walls
    SpinConfig state_flipped;   // its global flip
    VerifyReport checks;        // propagation, transversality, nontriviality
};

// Ground states of N+ as "walls plus propagation": extract the canonical
// ground-state wall set, delete its bonds, and recover the state by
// propagation; each wall is checked to be non-bounding and transverse to a
// frustrated loop class.
GroundStateDecomposition theorem31_decomposition(const CellComplex& cx, const BondConfig& bonds,
                                                 const SubComplex& nplus, int site_cap = 24);

// Symmetric-difference identity on the bonds of N+: walls XOR negative-bond
// duals = duals of bonds with unequal end spins.
VerifyReport interface_check(const CellComplex& cx, const BondConfig& bonds,
                             const SpinConfig& spins, const SubComplex& nplus);

// Energy cost (units of J0) of flipping all spins of `region_sites`.
long long local_flip_stability(const CellComplex& cx, const BondConfig& bonds,
                               const SpinConfig& spins, const Bitvec& region_sites);

}  // namespace spintop
