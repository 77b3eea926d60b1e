#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spintop/cell_complex.hpp"
#include "spintop/gf2.hpp"
#include "spintop/rng.hpp"

using namespace spintop;

namespace {

Gf2Matrix boundary1_matrix(const CellComplex& cx)
{
    Gf2Matrix m(std::size_t(cx.n_cells(0)), std::size_t(cx.n_cells(1)));
    for (int b = 0; b < cx.n_cells(1); ++b)
        for (int v : cx.faces(1, b))
            m.row_data[std::size_t(v)].flip(std::size_t(b));
    return m;
}

Gf2Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed)
{
    Gf2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng::at(seed, 99, i * c + j) & 1)
                m.set(i, j);
    return m;
}

}  // namespace

TEST_CASE("rank of identity and zero")
{
    CHECK(rank(Gf2Matrix::identity(4)) == 4);
    CHECK(rank(Gf2Matrix(5, 7)) == 0);
}

TEST_CASE("rank of the site-bond boundary of the free 2x2 grid")
{
    // 9 sites, 12 bonds; rank = sites - components.
    Lattice lat{2, {2, 2, 1}, {Bc::free_, Bc::free_, Bc::free_}};
    CellComplex cx(lat);
    REQUIRE(cx.n_cells(0) == 9);
    REQUIRE(cx.n_cells(1) == 12);
    CHECK(rank(boundary1_matrix(cx)) == 8);
}

TEST_CASE("kernel of identity is empty")
{
    CHECK(kernel_basis(Gf2Matrix::identity(6)).empty());
}

TEST_CASE("kernel of a single square's boundary is the full loop")
{
    Lattice lat{2, {1, 1, 1}, {Bc::free_, Bc::free_, Bc::free_}};
    CellComplex cx(lat);
    auto basis = kernel_basis(boundary1_matrix(cx));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].count() == 4);
}

TEST_CASE("kernel of the 2x2 grid has four independent cycles")
{
    Lattice lat{2, {2, 2, 1}, {Bc::free_, Bc::free_, Bc::free_}};
    CellComplex cx(lat);
    auto m = boundary1_matrix(cx);
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 4);
    for (const auto& v : basis)
        CHECK(m.multiply(v).none());
    CHECK(rank(Gf2Matrix::from_columns(m.cols, basis).transposed()) == 4);
}

TEST_CASE("solve on the identity and on zero rhs")
{
    Gf2Matrix id = Gf2Matrix::identity(4);
    Bitvec e2(4);
    e2.set(2);
    auto x = solve(id, e2);
    REQUIRE(x.has_value());
    CHECK(*x == e2);

    Bitvec zero(4);
    auto x0 = solve(id, zero);
    REQUIRE(x0.has_value());
    CHECK(x0->none());
}

TEST_CASE("solve recovers a surface from its boundary")
{
    Lattice lat{2, {3, 3, 1}, {Bc::free_, Bc::free_, Bc::free_}};
    CellComplex cx(lat);
    Gf2Matrix d2(std::size_t(cx.n_cells(1)), std::size_t(cx.n_cells(2)));
    for (int p = 0; p < cx.n_cells(2); ++p)
        for (int b : cx.faces(2, p))
            d2.row_data[std::size_t(b)].flip(std::size_t(p));

    Bitvec surf(std::size_t(cx.n_cells(2)));
    surf.set(0);
    surf.set(4);
    surf.set(5);
    Bitvec rhs = d2.multiply(surf);
    auto x = solve(d2, rhs);
    REQUIRE(x.has_value());
    CHECK(d2.multiply(*x) == rhs);
}

TEST_CASE("rank(m) equals rank(transpose(m)) on random matrices")
{
    for (std::uint64_t s = 0; s < 12; ++s) {
        Gf2Matrix m = random_matrix(9 + s % 5, 13 - s % 4, s);
        CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("kernel vectors are independent and annihilated")
{
    for (std::uint64_t s = 0; s < 8; ++s) {
        Gf2Matrix m = random_matrix(10, 16, 100 + s);
        auto basis = kernel_basis(m);
        CHECK(basis.size() == 16 - rank(m));
        IncrementalBasis inc(16);
        for (const auto& v : basis) {
            CHECK(m.multiply(v).none());
            CHECK(inc.add(v));
        }
    }
}

TEST_CASE("solve succeeds iff rank([m|rhs]) = rank(m)")
{
    for (std::uint64_t s = 0; s < 16; ++s) {
        Gf2Matrix m = random_matrix(11, 9, 200 + s);
        Bitvec rhs(11);
        for (std::size_t i = 0; i < 11; ++i)
            if (rng::at(300 + s, 7, i) & 1)
                rhs.set(i);

        Gf2Matrix aug(m.rows, m.cols + 1);
        for (std::size_t r = 0; r < m.rows; ++r) {
            aug.row_data[r] = Bitvec(m.cols + 1);
            m.row_data[r].for_each_set([&](std::size_t c) { aug.row_data[r].set(c); });
            if (rhs.get(r))
                aug.row_data[r].set(m.cols);
        }
        bool solvable = solve(m, rhs).has_value();
        CHECK(solvable == (rank(aug) == rank(m)));
        if (solvable)
            CHECK(m.multiply(*solve(m, rhs)) == rhs);
    }
}
