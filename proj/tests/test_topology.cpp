#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spintop/corpus.hpp"
#include "spintop/rng.hpp"
#include "spintop/topology.hpp"

using namespace spintop;

namespace {

Lattice free2d(int nx, int ny)
{
    return Lattice{2, {nx, ny, 1}, {Bc::free_, Bc::free_, Bc::free_}};
}

Lattice free3d(int nx, int ny, int nz)
{
    return Lattice{3, {nx, ny, nz}, {Bc::free_, Bc::free_, Bc::free_}};
}

Lattice torus2d(int nx, int ny)
{
    return Lattice{2, {nx, ny, 1}, {Bc::periodic, Bc::periodic, Bc::free_}};
}

// 3x3 grid with the center plaquette removed; all bonds kept.
SubComplex annulus_network(const CellComplex& cx)
{
    Bitvec plaqs(std::size_t(cx.n_cells(2)));
    for (int p = 0; p < cx.n_cells(2); ++p)
        plaqs.set(std::size_t(p));
    plaqs.set(std::size_t(cx.index_of(2, {1, 1, 0}, 3)), false);
    return subcomplex_from_plaquettes(cx, plaqs);
}

Bitvec all_plaquettes(const CellComplex& cx)
{
    Bitvec v(std::size_t(cx.n_cells(2)));
    for (int p = 0; p < cx.n_cells(2); ++p)
        v.set(std::size_t(p));
    return v;
}

Chain2 plaquette_loop(const CellComplex& cx, int p)
{
    Chain2 c = cx.empty_chain(1);
    for (int b : cx.faces(2, p))
        c.support.set(std::size_t(b));
    return c;
}

}  // namespace

TEST_CASE("H1 of the full free grid vanishes")
{
    CellComplex cx(free2d(3, 3));
    HomologySummary h = homology(full_subcomplex(cx), 1);
    CHECK(h.dim_H == 0);
    CHECK(h.dim_Z == h.dim_B);
}

TEST_CASE("H1 of the annulus is one-dimensional")
{
    CellComplex cx(free2d(3, 3));
    HomologySummary h = homology(annulus_network(cx), 1);
    CHECK(h.dim_H == 1);
    REQUIRE(h.basis.size() == 1);
    CHECK(boundary(cx, h.basis[0]).support.none());
}

TEST_CASE("H1 of the torus is two-dimensional, H2 one-dimensional")
{
    CellComplex cx(torus2d(3, 3));
    SubComplex full = full_subcomplex(cx);
    CHECK(homology(full, 1).dim_H == 2);
    CHECK(homology(full, 2).dim_H == 1);
    CHECK(homology(full, 0).dim_H == 1);
}

TEST_CASE("H1 of the cylinder is one-dimensional")
{
    Lattice lat{2, {4, 3, 1}, {Bc::periodic, Bc::free_, Bc::free_}};
    CellComplex cx(lat);
    CHECK(homology(full_subcomplex(cx), 1).dim_H == 1);
}

TEST_CASE("homology rejects non-face-closed input")
{
    CellComplex cx(free2d(2, 2));
    SubComplex bad;
    bad.cx = &cx;
    for (int k = 0; k <= 3; ++k)
        bad.cells[std::size_t(k)] = Bitvec(std::size_t(cx.n_cells(k)));
    bad.cells[2].set(0);  // plaquette without its bonds
    CHECK_THROWS_AS(homology(bad, 1), std::invalid_argument);
}

TEST_CASE("relative homology degenerate cases")
{
    CellComplex cx(free2d(3, 3));
    SubComplex full = full_subcomplex(cx);
    HomologySummary same = relative_homology(full, full, 2);
    CHECK(same.dim_H == 0);
    CHECK(same.dim_Z == 0);

    SubComplex empty;
    empty.cx = &cx;
    for (int k = 0; k <= 3; ++k)
        empty.cells[std::size_t(k)] = Bitvec(std::size_t(cx.n_cells(k)));
    HomologySummary rel = relative_homology(full, empty, 1);
    HomologySummary abs = homology(full, 1);
    CHECK(rel.dim_H == abs.dim_H);
    CHECK(rel.dim_Z == abs.dim_Z);
    CHECK(rel.dim_B == abs.dim_B);

    CHECK_THROWS_AS(relative_homology(empty, full, 1), std::invalid_argument);
}

TEST_CASE("relative H2 of (disc, annulus) is generated by the center plaquette")
{
    CellComplex cx(free2d(3, 3));
    SubComplex X = full_subcomplex(cx);
    SubComplex A = annulus_network(cx);
    HomologySummary h = relative_homology(X, A, 2);
    CHECK(h.dim_H == 1);
    REQUIRE(h.basis.size() == 1);
    CHECK(h.basis[0].support.count() == 1);
    CHECK(h.basis[0].support.get(std::size_t(cx.index_of(2, {1, 1, 0}, 3))));
}

TEST_CASE("loops_homologous distinguishes the annulus classes")
{
    CellComplex cx(free2d(3, 3));
    SubComplex ann = annulus_network(cx);
    int center = cx.index_of(2, {1, 1, 0}, 3);
    Chain2 inner = plaquette_loop(cx, center);

    // Outer boundary of the 3x3 block = boundary of all nine plaquettes.
    Chain2 nine = cx.empty_chain(2);
    for (int p = 0; p < cx.n_cells(2); ++p)
        nine.support.set(std::size_t(p));
    Chain2 outer = boundary(cx, nine);

    Chain2 corner = plaquette_loop(cx, cx.index_of(2, {0, 0, 0}, 3));

    CHECK(loops_homologous(ann, inner, inner));
    CHECK(loops_homologous(ann, inner, outer));
    CHECK(!loops_homologous(ann, inner, corner));
    CHECK(loops_homologous(full_subcomplex(cx), inner, corner));
}

TEST_CASE("frustration class: trivial, planted, and gauge-invariant")
{
    CellComplex cx(free2d(3, 3));
    SubComplex ann = annulus_network(cx);

    BondConfig pos;
    pos.neg = Bitvec(std::size_t(cx.n_cells(1)));
    FrustrationClass fc0 = frustration_class(cx, pos, ann);
    for (int v : fc0.basis_values)
        CHECK(v == +1);

    BondConfig planted = annulus_bonds(cx);
    FrustrationClass fc1 = frustration_class(cx, planted, ann);
    REQUIRE(fc1.basis_values.size() == 1);
    CHECK(fc1.basis_values[0] == -1);

    Bitvec eps(std::size_t(cx.n_cells(0)));
    for (int v = 0; v < cx.n_cells(0); ++v)
        if (rng::at(4, 21, std::uint64_t(v)) & 1)
            eps.set(std::size_t(v));
    FrustrationClass fc2 = frustration_class(cx, gauge_transform(cx, planted, eps), ann);
    CHECK(fc2.basis_values == fc1.basis_values);

    // A frustrated plaquette inside N+ is rejected.
    CHECK_THROWS_AS(frustration_class(cx, planted, full_subcomplex(cx)), std::invalid_argument);
}

TEST_CASE("kappa round trip")
{
    CellComplex cx(free2d(2, 2));
    BondConfig bc = sample_couplings(cx, 0.5, 1.0, 3);
    Chain2 alpha = kappa(cx, bc);
    CHECK(alpha.support == bc.neg);
    CHECK(kappa(cx, Bitvec(std::size_t(cx.n_cells(1)))).support.none());
}

TEST_CASE("vartheta: empty, strip-crossing wall, and coboundary walls bound")
{
    CellComplex cx(free2d(4, 3));
    SubComplex full = full_subcomplex(cx);

    CHECK(vartheta(full, cx.empty_chain(1)).walls.empty());

    // A column of x-bonds forms one wall crossing the strip top to bottom.
    Chain2 alpha = cx.empty_chain(1);
    for (int y = 0; y <= 3; ++y) {
        int b = cx.index_of(1, {1, y, 0}, 1);
        REQUIRE(b >= 0);
        alpha.support.set(std::size_t(b));
    }
    DomainWallSet ws = vartheta(full, alpha);
    CHECK(ws.walls.size() == 1);
    CHECK(ws.walls[0].cells.support.count() == 4);
    CHECK(ws.walls[0].boundary.support.none());  // ends on the dual boundary

    // Cocycle violation: a single interior bond.
    Chain2 bad = cx.empty_chain(1);
    bad.support.set(std::size_t(cx.index_of(1, {1, 1, 0}, 1)));
    CHECK_THROWS_AS(vartheta(full, bad), std::invalid_argument);

    // Coboundary of a site region: null-homologous wall set.
    QuotientSpace wspace = wall_class_space(full);
    Bitvec eps(std::size_t(cx.n_cells(0)));
    eps.set(std::size_t(cx.index_of(0, {1, 1, 0}, 0)));
    eps.set(std::size_t(cx.index_of(0, {2, 1, 0}, 0)));
    Chain2 delta = cx.empty_chain(1);
    for (int b = 0; b < cx.n_cells(1); ++b) {
        const auto& f = cx.faces(1, b);
        if (eps.get(std::size_t(f[0])) != eps.get(std::size_t(f[1])))
            delta.support.set(std::size_t(b));
    }
    DomainWallSet wall0 = vartheta(full, delta);
    CHECK(wspace.is_null_class(wall0.all_cells(std::size_t(cx.n_cells(1)))));
    // On the simply connected strip even the crossing wall bounds half the
    // region rel the dual boundary.
    CHECK(wspace.is_null_class(alpha.support));
    CHECK(wspace.dim_H == 0);
}

TEST_CASE("vartheta well-definedness and injectivity on the cylinder")
{
    Lattice lat{2, {4, 3, 1}, {Bc::periodic, Bc::free_, Bc::free_}};
    CellComplex cx(lat);
    SubComplex full = full_subcomplex(cx);
    QuotientSpace wspace = wall_class_space(full);

    BondConfig bc = winding_frustrated_bonds(cx);
    Chain2 tau = kappa(cx, bc);

    Bitvec eps(std::size_t(cx.n_cells(0)));
    for (int v = 0; v < cx.n_cells(0); ++v)
        if (rng::at(77, 13, std::uint64_t(v)) & 1)
            eps.set(std::size_t(v));
    BondConfig bc2 = gauge_transform(cx, bc, eps);
    Chain2 tau2 = kappa(cx, bc2);

    Bitvec w1 = vartheta(full, tau).all_cells(std::size_t(cx.n_cells(1)));
    Bitvec w2 = vartheta(full, tau2).all_cells(std::size_t(cx.n_cells(1)));
    CHECK(wspace.coords(w1) == wspace.coords(w2));
    CHECK(!wspace.is_null_class(w1));

    // Injectivity: a null wall class comes from a coboundary, and the
    // bounding site region is recoverable by solving.
    Gf2Matrix cob(std::size_t(cx.n_cells(1)), std::size_t(cx.n_cells(0)));
    for (int v = 0; v < cx.n_cells(0); ++v)
        for (int b : cx.cofaces(0, v))
            cob.row_data[std::size_t(b)].flip(std::size_t(v));
    Bitvec delta = cob.multiply(eps);
    CHECK(wspace.is_null_class(delta));
    auto eps_back = solve(cob, delta);
    REQUIRE(eps_back.has_value());
    CHECK(cob.multiply(*eps_back) == delta);
}

TEST_CASE("zeta: trivial input, sampled pattern, planted curve, parity guard")
{
    CellComplex cx(free3d(2, 2, 2));
    CHECK(zeta(cx, Bitvec(std::size_t(cx.n_cells(2)))).support.none());

    // Sampled disorder always satisfies the cube condition.
    BondConfig bc = sample_couplings(cx, 0.5, 1.0, 21);
    Chain2 curve = zeta(cx, plaquette_frustration(cx, bc));
    CHECK(curve.dim == 2);

    // A single frustrated plaquette in the interior violates cube parity.
    Bitvec bad(std::size_t(cx.n_cells(2)));
    int interior_plaq = -1;
    for (int p = 0; p < cx.n_cells(2); ++p)
        if (cx.cofaces(2, p).size() == 2) {
            interior_plaq = p;
            break;
        }
    REQUIRE(interior_plaq >= 0);
    bad.set(std::size_t(interior_plaq));
    CHECK_THROWS_AS(zeta(cx, bad), std::invalid_argument);

    // One negative interior bond: the dual curve runs through its cofaces.
    BondConfig one;
    one.neg = Bitvec(std::size_t(cx.n_cells(1)));
    int b = cx.index_of(1, {1, 1, 1}, 4);  // interior z-bond
    REQUIRE(b >= 0);
    one.neg.set(std::size_t(b));
    Chain2 gamma = zeta(cx, plaquette_frustration(cx, one));
    CHECK(gamma.support.count() == cx.cofaces(1, b).size());
}

TEST_CASE("two-cochain Phi equals phi of the boundary")
{
    CellComplex cx(free2d(3, 3));
    BondConfig bc = sample_couplings(cx, 0.5, 1.0, 8);
    Bitvec frus = plaquette_frustration(cx, bc);

    CHECK(two_cochain_phi(cx, bc, cx.empty_chain(2)) == +1);

    for (int p = 0; p < cx.n_cells(2); ++p) {
        Chain2 s = cx.empty_chain(2);
        s.support.set(std::size_t(p));
        CHECK(two_cochain_phi(cx, bc, s) == (frus.get(std::size_t(p)) ? -1 : +1));
    }

    for (std::uint64_t r = 0; r < 20; ++r) {
        Chain2 s = cx.empty_chain(2);
        for (int p = 0; p < cx.n_cells(2); ++p)
            if (rng::at(r, 31, std::uint64_t(p)) & 1)
                s.support.set(std::size_t(p));
        int lhs = two_cochain_phi(cx, bc, s);
        int rhs = frustration_of_loop(cx, bc, boundary(cx, s));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("linking parity on the punctured disc")
{
    CellComplex cx(free2d(3, 3));
    int center = cx.index_of(2, {1, 1, 0}, 3);
    Chain2 gamma = cx.empty_chain(2);
    gamma.support.set(std::size_t(center));

    // The ring around the puncture links once.
    Chain2 ring = plaquette_loop(cx, center);
    LinkResult around = link_mod2(cx, ring, gamma);
    REQUIRE(around.defined);
    CHECK(around.parity == 1);

    // A far-away loop links zero times.
    Chain2 corner = plaquette_loop(cx, cx.index_of(2, {0, 0, 0}, 3));
    LinkResult far = link_mod2(cx, corner, gamma);
    REQUIRE(far.defined);
    CHECK(far.parity == 0);

    // Entering and leaving: a two-plaquette loop away from the puncture.
    Chain2 two = cx.empty_chain(2);
    two.support.set(std::size_t(cx.index_of(2, {0, 0, 0}, 3)));
    two.support.set(std::size_t(cx.index_of(2, {0, 1, 0}, 3)));
    LinkResult twice = link_mod2(cx, boundary(cx, two), gamma);
    REQUIRE(twice.defined);
    CHECK(twice.parity == 0);
}

TEST_CASE("linking parity is undefined on the torus winding class")
{
    CellComplex cx(torus2d(3, 3));
    Chain2 winding = cx.empty_chain(1);
    for (int x = 0; x < 3; ++x)
        winding.support.set(std::size_t(cx.index_of(1, {x, 0, 0}, 1)));
    REQUIRE(boundary(cx, winding).support.none());

    Chain2 gamma = cx.empty_chain(2);  // empty boundary, as for a winding wall
    LinkResult res = link_mod2(cx, winding, gamma);
    CHECK(!res.defined);
    CHECK(res.reason == "parity depends on the choice of spanning wall");

    // Unsolvable gamma: a single dual point cannot bound on the closed torus.
    Chain2 point = cx.empty_chain(2);
    point.support.set(0);
    LinkResult none = link_mod2(cx, winding, point);
    CHECK(!none.defined);
    CHECK(none.reason == "no spanning wall exists for gamma");
}

TEST_CASE("transversality: frustrated loops cross the unfavorable bonds oddly")
{
    CellComplex cx(free2d(3, 3));
    SubComplex ann = annulus_network(cx);
    BondConfig bc = annulus_bonds(cx);
    FrustrationClass fc = frustration_class(cx, bc, ann);
    REQUIRE(fc.basis_values[0] == -1);

    for (std::uint64_t s = 0; s < 12; ++s) {
        SpinConfig spins;
        spins.down = Bitvec(std::size_t(cx.n_cells(0)));
        for (int v = 0; v < cx.n_cells(0); ++v)
            if (rng::at(s, 41, std::uint64_t(v)) & 1)
                spins.down.set(std::size_t(v));
        Bitvec unfavorable(std::size_t(cx.n_cells(1)));
        for (int b = 0; b < cx.n_cells(1); ++b) {
            const auto& f = cx.faces(1, b);
            int term = bc.sign(b) * spins.spin(f[0]) * spins.spin(f[1]);
            if (term < 0)
                unfavorable.set(std::size_t(b));
        }
        CHECK(fc.h1.basis[0].support.dot(unfavorable));
    }
}

TEST_CASE("duality dimensions and wall-class independence on instances")
{
    {
        CellComplex cx(free2d(3, 3));
        VerifyReport rep = verify_duality_dimensions(annulus_network(cx));
        CHECK(rep.pass);
        CHECK(rep.dims["dim_H^1(N+)"] == 1);
    }
    {
        CellComplex cx(torus2d(3, 3));
        VerifyReport rep = verify_duality_dimensions(full_subcomplex(cx));
        CHECK(rep.pass);
        CHECK(rep.dims["dim_H^1(N+)"] == 2);
    }
    int checked = 0;
    for (std::uint64_t s = 0; s < 8; ++s) {
        CellComplex cx2(free2d(4, 4));
        NetworkSplit ns2 = split_networks(cx2, sample_couplings(cx2, 0.5, 1.0, 300 + s));
        VerifyReport r2 =
            verify_duality_dimensions(subcomplex_from_plaquettes(cx2, ns2.unfrustrated));
        CHECK(r2.pass);
        ++checked;

        CellComplex cx3(free3d(2, 2, 2));
        NetworkSplit ns3 = split_networks(cx3, sample_couplings(cx3, 0.5, 1.0, 400 + s));
        VerifyReport r3 =
            verify_duality_dimensions(subcomplex_from_plaquettes(cx3, ns3.unfrustrated));
        CHECK(r3.pass);
        ++checked;
    }
    CHECK(checked == 16);
}

TEST_CASE("homology exact sequence on trivial, planted, and random instances")
{
    {
        CellComplex cx(free2d(3, 3));
        Bitvec none(std::size_t(cx.n_cells(2)));
        VerifyReport rep = verify_homology_exactness(cx, none, all_plaquettes(cx));
        CHECK(rep.pass);
    }
    {
        CellComplex cx(free2d(3, 3));
        NetworkSplit ns = split_networks(cx, annulus_bonds(cx));
        VerifyReport rep = verify_homology_exactness(cx, ns.frustrated, ns.unfrustrated);
        CHECK(rep.pass);
        CHECK(rep.dims["H2(X,A)"] == 1);
        CHECK(rep.dims["H1(A)"] == 1);
        CHECK(rep.dims["H1(X)"] == 0);
    }
    for (std::uint64_t s = 0; s < 3; ++s) {
        CellComplex cx(free3d(3, 3, 3));
        NetworkSplit ns = split_networks(cx, sample_couplings(cx, 0.5, 1.0, 500 + s));
        VerifyReport rep = verify_homology_exactness(cx, ns.frustrated, ns.unfrustrated);
        CHECK(rep.pass);
    }
}

TEST_CASE("cohomology exact sequence on the same corpus")
{
    {
        CellComplex cx(free2d(3, 3));
        Bitvec none(std::size_t(cx.n_cells(2)));
        VerifyReport rep = verify_cohomology_exactness(cx, none, all_plaquettes(cx));
        CHECK(rep.pass);
    }
    {
        CellComplex cx(free2d(3, 3));
        NetworkSplit ns = split_networks(cx, annulus_bonds(cx));
        VerifyReport rep = verify_cohomology_exactness(cx, ns.frustrated, ns.unfrustrated);
        CHECK(rep.pass);
        CHECK(rep.dims["H^1(A)"] == 1);
        CHECK(rep.dims["H^2(X,A)"] == 1);
    }
    for (std::uint64_t s = 0; s < 3; ++s) {
        CellComplex cx(free3d(3, 3, 3));
        NetworkSplit ns = split_networks(cx, sample_couplings(cx, 0.5, 1.0, 500 + s));
        VerifyReport rep = verify_cohomology_exactness(cx, ns.frustrated, ns.unfrustrated);
        CHECK(rep.pass);
    }
}

TEST_CASE("commutative diagram on planted and random instances")
{
    {
        CellComplex cx(free2d(3, 3));
        BondConfig bc = annulus_bonds(cx);
        NetworkSplit ns = split_networks(cx, bc);
        VerifyReport rep = verify_commutative_diagram(cx, bc, ns.frustrated, ns.unfrustrated);
        CHECK(rep.pass);
        CHECK(rep.dims["H^1(N+)"] == 1);
    }
    for (std::uint64_t s = 0; s < 4; ++s) {
        CellComplex cx(free3d(2, 2, 2));
        BondConfig bc = sample_couplings(cx, 0.5, 1.0, 600 + s);
        NetworkSplit ns = split_networks(cx, bc);
        VerifyReport rep = verify_commutative_diagram(cx, bc, ns.frustrated, ns.unfrustrated);
        CHECK(rep.pass);
    }
}

TEST_CASE("universal coefficients on the single plaquette, annulus, and torus")
{
    {
        CellComplex cx(free2d(1, 1));
        VerifyReport rep = verify_universal_coefficients(full_subcomplex(cx));
        CHECK(rep.pass);
        CHECK(rep.dims["dim_H^1"] == 0);
    }
    {
        CellComplex cx(free2d(3, 3));
        VerifyReport rep = verify_universal_coefficients(annulus_network(cx));
        CHECK(rep.pass);
        CHECK(rep.dims["dim_H^1"] == 1);
        CHECK(rep.dims["dim_Hom(H1,Z2)"] == 1);
    }
    {
        CellComplex cx(torus2d(3, 3));
        VerifyReport rep = verify_universal_coefficients(full_subcomplex(cx));
        CHECK(rep.pass);
        CHECK(rep.dims["dim_H^1"] == 2);
        CHECK(rep.dims["dim_Hom(H1,Z2)"] == 2);
    }
}
