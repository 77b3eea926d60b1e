#pragma once

#include <map>
#include <string>
#include <vector>

#include "spintop/cell_complex.hpp"
#include "spintop/disorder.hpp"
#include "spintop/gf2.hpp"

namespace spintop {

// A face-closed family of cells of a host complex (a "network": typically
// the plaquettes of N+ or N- together with their bonds and sites, optionally
// the cubes all of whose faces are present).
struct SubComplex {
    const CellComplex* cx = nullptr;
    std::array<Bitvec, 4> cells;

    int dim() const { return cx->dim(); }
    bool has(int k, int i) const { return cells[std::size_t(k)].get(std::size_t(i)); }
    std::size_t n(int k) const { return cells[std::size_t(k)].count(); }
    std::vector<int> cell_list(int k) const { return cells[std::size_t(k)].indices(); }
};

SubComplex full_subcomplex(const CellComplex& cx);
SubComplex subcomplex_from_plaquettes(const CellComplex& cx, const Bitvec& plaqs,
                                      bool include_solids = true);
SubComplex subcomplex_from_bonds(const CellComplex& cx, const Bitvec& bonds);
bool is_face_closed(const SubComplex& sub);

// ker(constraints) / span(boundary generators) with deterministic bases;
// chains are full-length vectors over the host complex's k-cells.
struct QuotientSpace {
    std::size_t ambient = 0;
    int dim_Z = 0;
    int dim_B = 0;
    int dim_H = 0;
    std::vector<Bitvec> class_basis;
    std::vector<Bitvec> boundary_basis;

    // Coordinates of a cycle's class in the class basis; throws if the vector
    // is not in Z (i.e. not expressible as classes + boundaries).
    Bitvec coords(const Bitvec& cycle) const;
    bool is_null_class(const Bitvec& cycle) const;
};

struct HomologySummary {
    int k = 0;
    int dim_Z = 0;
    int dim_B = 0;
    int dim_H = 0;
    std::vector<Chain2> basis;
    QuotientSpace space;
};

// Z2 homology of a network: dim Z_k = nullity of the restricted boundary,
// dim B_k = rank of the restricted boundary one dimension up.
HomologySummary homology(const SubComplex& network, int k);

// Homology of the pair (big, sub): chains of big modulo chains of sub.
HomologySummary relative_homology(const SubComplex& big, const SubComplex& sub, int k);

// True iff l1 + l2 bounds inside the network.
bool loops_homologous(const SubComplex& network, const Chain2& l1, const Chain2& l2);

// Z2 cohomology H^k of a network (cocycles modulo coboundaries), k = 1 or 2.
QuotientSpace cohomology_space(const SubComplex& network, int k);

// Relative cohomology H^2(big, sub): cocycles vanishing on sub's plaquettes
// modulo coboundaries of bond cochains vanishing on sub's bonds.
QuotientSpace relative_cohomology2_space(const SubComplex& big, const SubComplex& sub);

// H_{d-1}(N+*, dN+*): walls stored by the bonds their cells are dual to.
// Built from the dual complex's boundary operator (primal coface incidence).
QuotientSpace wall_class_space(const SubComplex& nplus);

// H_{d-2}(N-*, dN-* ∩ dLambda*): curve chains stored by plaquette index.
// Cycles close around every cube of the host lattice; bounding walls may use
// any bond that is not a bond of N+.
QuotientSpace gamma_class_space(const CellComplex& cx, const Bitvec& nplus_plaqs);

// The frustration homomorphism phi on H_1(N+): the value of phi on each
// basis loop, with the underlying homology summary.
struct FrustrationClass {
    HomologySummary h1;
    std::vector<int> basis_values;  // ±1 per basis loop
};

FrustrationClass frustration_class(const CellComplex& cx, const BondConfig& bonds,
                                   const SubComplex& nplus);

// Multiplicative-to-additive bridge: alpha_ij = 1 iff the sign is -1.
Chain2 kappa(const CellComplex& cx, const BondConfig& bonds);
Chain2 kappa(const CellComplex& cx, const Bitvec& neg_bonds);

// One domain wall: a connected set of dual (d-1)-cells (stored by bond
// index) and its boundary Gamma (stored by plaquette index).
struct DomainWall {
    Chain2 cells;     // dim 1: bonds whose duals form the wall
    Chain2 boundary;  // dim 2: plaquettes whose duals form Gamma
};

struct DomainWallSet {
    std::vector<DomainWall> walls;

    std::size_t total_cells() const
    {
        std::size_t t = 0;
        for (const auto& w : walls)
            t += w.cells.support.count();
        return t;
    }
    Bitvec all_cells(std::size_t n_bonds) const
    {
        Bitvec v(n_bonds);
        for (const auto& w : walls)
            v ^= w.cells.support;
        return v;
    }
};

// Group a set of dual (d-1)-cells (given by their bonds) into connected
// walls with their boundaries; two cells connect iff they share a dual
// (d-2)-face, i.e. their bonds lie in a common plaquette.
DomainWallSet group_walls(const CellComplex& cx, const Bitvec& wall_bonds);

// Poincare-Lefschetz map on representatives: the dual (d-1)-cells of the
// cochain's bonds, grouped into connected components.
// Requires the cocycle condition on every plaquette of nplus.
DomainWallSet vartheta(const SubComplex& nplus, const Chain2& alpha);

// Dual map for two-cochains: the (d-2)-dual cells of the plaquettes where
// eta = -1. Requires even incidence with every cube of the complex.
Chain2 zeta(const CellComplex& cx, const Bitvec& eta_minus);

// Phi(s) = product of plaquette frustrations over s; asserts the identity
// Phi(s) = phi(boundary s) by evaluating both sides.
int two_cochain_phi(const CellComplex& cx, const BondConfig& bonds, const Chain2& surface);

struct LinkResult {
    bool defined = false;
    int parity = 0;
    std::string reason;  // set when undefined
};

// Linking parity of a 1-cycle with a dual (d-2)-chain gamma: parity of the
// loop's crossings with any wall spanning gamma. Undefined when no spanning
// wall exists or when the parity depends on the choice.
LinkResult link_mod2(const CellComplex& cx, const Chain2& loop, const Chain2& gamma);

struct VerifyReport {
    std::string check;
    bool pass = true;
    std::map<std::string, long long> dims;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, std::vector<int>>> witnesses;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
};

// Exactness of H2(X) -> H2(X,A) -> H1(A) -> H1(X) with X = N- ∪ N+ and
// A = N+, checked through explicit matrices for j*, the connecting map and
// i* (image = kernel at both junctions, membership both ways).
VerifyReport verify_homology_exactness(const CellComplex& cx, const Bitvec& nminus_plaqs,
                                       const Bitvec& nplus_plaqs);

// Exactness of H^1(X) -> H^1(A) -> H^2(X,A) -> H^2(X).
VerifyReport verify_cohomology_exactness(const CellComplex& cx, const Bitvec& nminus_plaqs,
                                         const Bitvec& nplus_plaqs);

// Commutativity of the duality square: for every basis class of H^1(N+),
// the connecting cochain route and the wall-boundary route land in the same
// class of H_{d-2}(N-*, dN-* ∩ dLambda*). Each route is evaluated on an
// independently gauge-perturbed representative.
VerifyReport verify_commutative_diagram(const CellComplex& cx, const BondConfig& bonds,
                                        const Bitvec& nminus_plaqs, const Bitvec& nplus_plaqs);

// Instance check of the universal-coefficient isomorphism: builds the
// explicit functional-space maps (projection/inclusion adjoints, the chain
// splitting), verifies both exact sequences and the equality
// dim H^1 = dim Hom(H_1, Z2) = dim ker of the restriction map.
VerifyReport verify_universal_coefficients(const SubComplex& network);

// Duality dimension match dim H^1(N+) = dim H_{d-1}(N+*, dN+*) plus
// independence of the wall classes of an H^1 basis under vartheta ∘ kappa.
VerifyReport verify_duality_dimensions(const SubComplex& nplus);

}  // namespace spintop
