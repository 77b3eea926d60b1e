#pragma once

#include <string>
#include <vector>

#include "spintop/cell_complex.hpp"
#include "spintop/disorder.hpp"

namespace spintop {

// Named instances exercising every construction the verifiers must cover:
// the all-frustrated pair networks, planted annulus/cylinder/torus classes,
// and random disorder at several concentrations in d = 2 and 3.
struct CorpusInstance {
    std::string name;
    Lattice lat;
    BondConfig bonds;
};

std::vector<CorpusInstance> builtin_corpus();
std::vector<std::string> corpus_names();
CorpusInstance corpus_instance(const std::string& name);

// One frustrated plaquette planted at the center of a 3x3 free grid.
BondConfig annulus_bonds(const CellComplex& cx);

// All plaquettes unfrustrated, winding class frustrated: the x-bonds of one
// column carry negative couplings (complex must be periodic along x).
BondConfig winding_frustrated_bonds(const CellComplex& cx);

}  // namespace spintop
