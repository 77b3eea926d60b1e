#include "spintop/corpus.hpp"

#include <stdexcept>

namespace spintop {

BondConfig annulus_bonds(const CellComplex& cx)
{
    const Lattice& lat = cx.lattice();
    if (lat.d != 2 || lat.extents[0] != 3 || lat.extents[1] != 3)
        throw std::invalid_argument("annulus_bonds: expected a free 3x3 lattice");
    BondConfig b;
    b.neg = Bitvec(std::size_t(cx.n_cells(1)));
    // Dirac string from the center plaquette out through the top: the two
    // x-bonds the dual path crosses. Only the center ends up frustrated.
    b.neg.set(std::size_t(cx.index_of(1, {1, 2, 0}, 1)));
    b.neg.set(std::size_t(cx.index_of(1, {1, 3, 0}, 1)));
    return b;
}

BondConfig winding_frustrated_bonds(const CellComplex& cx)
{
    const Lattice& lat = cx.lattice();
    if (!lat.periodic(0))
        throw std::invalid_argument("winding_frustrated_bonds: axis 0 must be periodic");
    BondConfig b;
    b.neg = Bitvec(std::size_t(cx.n_cells(1)));
    for (int i = 0; i < cx.n_cells(1); ++i) {
        const Cell& c = cx.cell(1, i);
        if (c.mask == 1 && c.pos[0] == 0)
            b.neg.set(std::size_t(i));
    }
    return b;
}

std::vector<CorpusInstance> builtin_corpus()
{
    std::vector<CorpusInstance> out;
    auto add = [&](const std::string& name, const Lattice& lat, BondConfig bonds) {
        out.push_back(CorpusInstance{name, lat, std::move(bonds)});
    };

    {
        Lattice lat{2, {6, 5, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("fig1_pair_network_2d", lat, build_all_frustrated_2d(cx).bonds);
    }
    {
        Lattice lat{3, {1, 1, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("fig2_cube", lat, build_all_frustrated_3d(cx).bonds);
    }
    {
        Lattice lat{3, {2, 1, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("fig3_two_cubes", lat, build_all_frustrated_3d(cx).bonds);
    }
    {
        Lattice lat{3, {2, 2, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("fig4_four_cubes", lat, build_all_frustrated_3d(cx).bonds);
    }
    {
        Lattice lat{2, {3, 3, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("annulus_2d", lat, annulus_bonds(cx));
    }
    {
        Lattice lat{2, {1, 1, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        BondConfig b;
        b.neg = Bitvec(std::size_t(cx.n_cells(1)));
        b.neg.set(0);
        add("single_frustrated_plaquette", lat, std::move(b));
    }
    {
        Lattice lat{2, {4, 3, 1}, {Bc::periodic, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("cylinder_2d", lat, winding_frustrated_bonds(cx));
    }
    {
        Lattice lat{2, {3, 3, 1}, {Bc::periodic, Bc::periodic, Bc::free_}};
        CellComplex cx(lat);
        BondConfig b;
        b.neg = Bitvec(std::size_t(cx.n_cells(1)));
        add("torus_2d_ferromagnet", lat, std::move(b));
    }
    {
        Lattice lat{2, {3, 3, 1}, {Bc::periodic, Bc::periodic, Bc::free_}};
        CellComplex cx(lat);
        add("torus_2d_winding_wall", lat, winding_frustrated_bonds(cx));
    }
    {
        Lattice lat{3, {3, 1, 1}, {Bc::periodic, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("tube_3d_winding_wall", lat, winding_frustrated_bonds(cx));
    }

    int seed = 101;
    for (double x : {0.3, 0.5, 0.7}) {
        Lattice lat{2, {4, 4, 1}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("random_2d_x" + std::to_string(int(x * 100)), lat,
            sample_couplings(cx, x, 1.0, std::uint64_t(seed++)));
    }
    for (double x : {0.3, 0.5, 0.7}) {
        Lattice lat{3, {2, 2, 2}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("random_3d_x" + std::to_string(int(x * 100)), lat,
            sample_couplings(cx, x, 1.0, std::uint64_t(seed++)));
    }
    {
        Lattice lat{3, {3, 3, 3}, {Bc::free_, Bc::free_, Bc::free_}};
        CellComplex cx(lat);
        add("random_3d_333_x50", lat, sample_couplings(cx, 0.5, 1.0, 777));
    }
    return out;
}

std::vector<std::string> corpus_names()
{
    std::vector<std::string> names;
    for (const auto& c : builtin_corpus())
        names.push_back(c.name);
    return names;
}

CorpusInstance corpus_instance(const std::string& name)
{
    for (auto& c : builtin_corpus())
        if (c.name == name)
            return c;
    throw std::invalid_argument("unknown corpus instance: " + name);
}

}  // namespace spintop
