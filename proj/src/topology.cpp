#include "spintop/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include "spintop/rng.hpp"
#include "spintop/union_find.hpp"

namespace spintop {

SubComplex full_subcomplex(const CellComplex& cx)
{
    SubComplex s;
    s.cx = &cx;
    for (int k = 0; k <= 3; ++k) {
        s.cells[std::size_t(k)] = Bitvec(std::size_t(cx.n_cells(k)));
        for (int i = 0; i < cx.n_cells(k); ++i)
            s.cells[std::size_t(k)].set(std::size_t(i));
    }
    return s;
}

SubComplex subcomplex_from_plaquettes(const CellComplex& cx, const Bitvec& plaqs,
                                      bool include_solids)
{
    if (plaqs.size() != std::size_t(cx.n_cells(2)))
        throw std::invalid_argument("subcomplex_from_plaquettes: plaquette mask size mismatch");
    SubComplex s;
    s.cx = &cx;
    for (int k = 0; k <= 3; ++k)
        s.cells[std::size_t(k)] = Bitvec(std::size_t(cx.n_cells(k)));
    s.cells[2] = plaqs;
    plaqs.for_each_set([&](std::size_t p) {
        for (int b : cx.faces(2, int(p))) {
            s.cells[1].set(std::size_t(b));
            for (int v : cx.faces(1, b))
                s.cells[0].set(std::size_t(v));
        }
    });
    if (include_solids && cx.dim() == 3) {
        for (int c = 0; c < cx.n_cells(3); ++c) {
            bool all = true;
            for (int p : cx.faces(3, c))
                if (!plaqs.get(std::size_t(p))) {
                    all = false;
                    break;
                }
            if (all)
                s.cells[3].set(std::size_t(c));
        }
    }
    return s;
}

SubComplex subcomplex_from_bonds(const CellComplex& cx, const Bitvec& bonds)
{
    if (bonds.size() != std::size_t(cx.n_cells(1)))
        throw std::invalid_argument("subcomplex_from_bonds: bond mask size mismatch");
    SubComplex s;
    s.cx = &cx;
    for (int k = 0; k <= 3; ++k)
        s.cells[std::size_t(k)] = Bitvec(std::size_t(cx.n_cells(k)));
    s.cells[1] = bonds;
    bonds.for_each_set([&](std::size_t b) {
        for (int v : cx.faces(1, int(b)))
            s.cells[0].set(std::size_t(v));
    });
    return s;
}

bool is_face_closed(const SubComplex& sub)
{
    for (int k = 1; k <= sub.dim(); ++k) {
        bool ok = true;
        sub.cells[std::size_t(k)].for_each_set([&](std::size_t i) {
            for (int f : sub.cx->faces(k, int(i)))
                if (!sub.has(k - 1, f))
                    ok = false;
        });
        if (!ok)
            return false;
    }
    return true;
}

namespace {

Bitvec scatter(const Bitvec& packed, const std::vector<int>& cols, std::size_t ambient)
{
    Bitvec out(ambient);
    packed.for_each_set([&](std::size_t j) { out.set(std::size_t(cols[j])); });
    return out;
}

Bitvec gather(const Bitvec& full, const std::vector<int>& cols)
{
    Bitvec out(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (full.get(std::size_t(cols[j])))
            out.set(j);
    return out;
}

QuotientSpace make_quotient(std::size_t ambient, const std::vector<int>& cols,
                            const Gf2Matrix& constraints, const std::vector<Bitvec>& gens)
{
    QuotientSpace q;
    q.ambient = ambient;
    auto ker = kernel_basis(constraints);
    q.dim_Z = int(ker.size());

    IncrementalBasis bnd(ambient);
    for (const auto& g : gens)
        bnd.add(g);
    q.boundary_basis = bnd.rows();
    q.dim_B = int(bnd.rank());

    IncrementalBasis span(ambient);
    for (const auto& r : q.boundary_basis)
        span.add(r);
    for (const auto& kv : ker) {
        Bitvec full = scatter(kv, cols, ambient);
        if (span.add(full))
            q.class_basis.push_back(full);
    }
    q.dim_H = q.dim_Z - q.dim_B;
    if (int(q.class_basis.size()) != q.dim_H)
        throw std::logic_error("make_quotient: boundary generators escape the cycle space");
    return q;
}

Bitvec column_of(const Gf2Matrix& m, std::size_t j)
{
    Bitvec c(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        if (m.get(r, j))
            c.set(r);
    return c;
}

Gf2Matrix mat_mul(const Gf2Matrix& a, const Gf2Matrix& b)
{
    Gf2Matrix out(a.rows, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j) {
        Bitvec col = a.multiply(column_of(b, j));
        col.for_each_set([&](std::size_t i) { out.set(i, j); });
    }
    return out;
}

bool is_zero(const Gf2Matrix& m)
{
    for (const auto& r : m.row_data)
        if (r.any())
            return false;
    return true;
}

// Boundary matrix of the k-cells listed in `cols`; rows over all (k-1)-cells
// of the host complex, optionally masked (relative homology drops the
// subnetwork's rows).
Gf2Matrix restricted_boundary(const CellComplex& cx, int k, const std::vector<int>& cols,
                              const Bitvec* row_keep)
{
    if (k == 0)
        return Gf2Matrix(0, cols.size());
    Gf2Matrix m(std::size_t(cx.n_cells(k - 1)), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int f : cx.faces(k, cols[j]))
            if (!row_keep || row_keep->get(std::size_t(f)))
                m.row_data[std::size_t(f)].flip(j);
    return m;
}

}  // namespace

Bitvec QuotientSpace::coords(const Bitvec& cycle) const
{
    std::vector<Bitvec> cols = class_basis;
    cols.insert(cols.end(), boundary_basis.begin(), boundary_basis.end());
    Gf2Matrix m = Gf2Matrix::from_columns(ambient, cols);
    auto x = solve(m, cycle);
    if (!x)
        throw std::invalid_argument("QuotientSpace::coords: vector is not a cycle of this space");
    Bitvec out(class_basis.size());
    for (std::size_t i = 0; i < class_basis.size(); ++i)
        if (x->get(i))
            out.set(i);
    return out;
}

bool QuotientSpace::is_null_class(const Bitvec& cycle) const
{
    return coords(cycle).none();
}

HomologySummary homology(const SubComplex& network, int k)
{
    const CellComplex& cx = *network.cx;
    if (k < 0 || k > cx.dim())
        throw std::invalid_argument("homology: dimension out of range");
    if (!is_face_closed(network))
        throw std::invalid_argument("homology: network is not face-closed");

    auto cols = network.cell_list(k);
    Gf2Matrix constraints = restricted_boundary(cx, k, cols, nullptr);

    std::vector<Bitvec> gens;
    if (k + 1 <= cx.dim()) {
        for (int c : network.cell_list(k + 1)) {
            Bitvec g(std::size_t(cx.n_cells(k)));
            for (int f : cx.faces(k + 1, c))
                g.flip(std::size_t(f));
            gens.push_back(std::move(g));
        }
    }

    HomologySummary h;
    h.k = k;
    h.space = make_quotient(std::size_t(cx.n_cells(k)), cols, constraints, gens);
    h.dim_Z = h.space.dim_Z;
    h.dim_B = h.space.dim_B;
    h.dim_H = h.space.dim_H;
    for (const auto& b : h.space.class_basis)
        h.basis.push_back(Chain2{k, b});
    return h;
}

HomologySummary relative_homology(const SubComplex& big, const SubComplex& sub, int k)
{
    const CellComplex& cx = *big.cx;
    if (sub.cx != big.cx)
        throw std::invalid_argument("relative_homology: pair must share a host complex");
    for (int j = 0; j <= cx.dim(); ++j) {
        Bitvec outside = sub.cells[std::size_t(j)];
        outside &= big.cells[std::size_t(j)];
        if (outside != sub.cells[std::size_t(j)])
            throw std::invalid_argument("relative_homology: sub is not contained in big");
    }
    if (!is_face_closed(big) || !is_face_closed(sub))
        throw std::invalid_argument("relative_homology: networks must be face-closed");

    // Cells of big not in sub, per dimension.
    auto rel_mask = [&](int j) {
        Bitvec m = big.cells[std::size_t(j)];
        Bitvec s = sub.cells[std::size_t(j)];
        Bitvec out(m.size());
        m.for_each_set([&](std::size_t i) {
            if (!s.get(i))
                out.set(i);
        });
        return out;
    };

    Bitvec colmask = rel_mask(k);
    std::vector<int> cols = colmask.indices();
    Bitvec rowmask = (k >= 1) ? rel_mask(k - 1) : Bitvec(0);
    Gf2Matrix constraints = restricted_boundary(cx, k, cols, k >= 1 ? &rowmask : nullptr);

    std::vector<Bitvec> gens;
    if (k + 1 <= cx.dim()) {
        Bitvec up = rel_mask(k + 1);
        up.for_each_set([&](std::size_t c) {
            Bitvec g(std::size_t(cx.n_cells(k)));
            for (int f : cx.faces(k + 1, int(c)))
                if (colmask.get(std::size_t(f)))
                    g.flip(std::size_t(f));
            gens.push_back(std::move(g));
        });
    }

    HomologySummary h;
    h.k = k;
    h.space = make_quotient(std::size_t(cx.n_cells(k)), cols, constraints, gens);
    h.dim_Z = h.space.dim_Z;
    h.dim_B = h.space.dim_B;
    h.dim_H = h.space.dim_H;
    for (const auto& b : h.space.class_basis)
        h.basis.push_back(Chain2{k, b});
    return h;
}

bool loops_homologous(const SubComplex& network, const Chain2& l1, const Chain2& l2)
{
    const CellComplex& cx = *network.cx;
    if (l1.dim != 1 || l2.dim != 1)
        throw std::invalid_argument("loops_homologous: chains must be 1-dimensional");
    for (const Chain2* l : {&l1, &l2}) {
        Bitvec inside = l->support;
        inside &= network.cells[1];
        if (inside != l->support)
            throw std::invalid_argument("loops_homologous: loop leaves the network");
        if (boundary(cx, *l).support.any())
            throw std::invalid_argument("loops_homologous: chain is not a cycle");
    }
    auto cols = network.cell_list(2);
    // Columns are the network's plaquettes, rows the full bond space.
    Gf2Matrix d2(std::size_t(cx.n_cells(1)), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int b : cx.faces(2, cols[j]))
            d2.row_data[std::size_t(b)].flip(j);
    Bitvec target = l1.support;
    target ^= l2.support;
    return solve(d2, target).has_value();
}

QuotientSpace cohomology_space(const SubComplex& network, int k)
{
    const CellComplex& cx = *network.cx;
    if (k != 1 && k != 2)
        throw std::invalid_argument("cohomology_space: only k = 1, 2 supported");
    auto cols = network.cell_list(k);
    std::vector<int> col_of(std::size_t(cx.n_cells(k)), -1);
    for (std::size_t j = 0; j < cols.size(); ++j)
        col_of[std::size_t(cols[j])] = int(j);

    // Cocycle condition: even incidence with the boundary of every
    // (k+1)-cell of the network.
    Gf2Matrix constraints(std::size_t(cx.n_cells(k + 1)), cols.size());
    if (k + 1 <= cx.dim()) {
        network.cells[std::size_t(k + 1)].for_each_set([&](std::size_t c) {
            for (int f : cx.faces(k + 1, int(c)))
                if (col_of[std::size_t(f)] >= 0)
                    constraints.row_data[c].flip(std::size_t(col_of[std::size_t(f)]));
        });
    }

    std::vector<Bitvec> gens;
    network.cells[std::size_t(k - 1)].for_each_set([&](std::size_t low) {
        Bitvec g(std::size_t(cx.n_cells(k)));
        bool nonzero = false;
        for (int up : cx.cofaces(k - 1, int(low)))
            if (network.has(k, up)) {
                g.flip(std::size_t(up));
                nonzero = true;
            }
        if (nonzero)
            gens.push_back(std::move(g));
    });

    return make_quotient(std::size_t(cx.n_cells(k)), cols, constraints, gens);
}

QuotientSpace relative_cohomology2_space(const SubComplex& big, const SubComplex& sub)
{
    const CellComplex& cx = *big.cx;
    Bitvec colmask = big.cells[2];
    sub.cells[2].for_each_set([&](std::size_t p) { colmask.set(p, false); });
    std::vector<int> cols = colmask.indices();
    std::vector<int> col_of(std::size_t(cx.n_cells(2)), -1);
    for (std::size_t j = 0; j < cols.size(); ++j)
        col_of[std::size_t(cols[j])] = int(j);

    Gf2Matrix constraints(std::size_t(cx.n_cells(3)), cols.size());
    if (cx.dim() == 3) {
        big.cells[3].for_each_set([&](std::size_t c) {
            for (int p : cx.faces(3, int(c)))
                if (col_of[std::size_t(p)] >= 0)
                    constraints.row_data[c].flip(std::size_t(col_of[std::size_t(p)]));
        });
    }

    // Coboundaries of bond cochains vanishing on the subnetwork's bonds.
    std::vector<Bitvec> gens;
    big.cells[1].for_each_set([&](std::size_t b) {
        if (sub.has(1, int(b)))
            return;
        Bitvec g(std::size_t(cx.n_cells(2)));
        bool nonzero = false;
        for (int p : cx.cofaces(1, int(b)))
            if (colmask.get(std::size_t(p))) {
                g.flip(std::size_t(p));
                nonzero = true;
            }
        if (nonzero)
            gens.push_back(std::move(g));
    });

    return make_quotient(std::size_t(cx.n_cells(2)), cols, constraints, gens);
}

QuotientSpace wall_class_space(const SubComplex& nplus)
{
    const CellComplex& cx = *nplus.cx;
    auto cols = nplus.cell_list(1);

    // Dual-complex boundary of a wall cell: the dual cells of the plaquettes
    // cofacial to its bond. Cofaces absent from N+ are faces on dN+* and are
    // dropped, which is exactly the relative condition.
    Gf2Matrix constraints(std::size_t(cx.n_cells(2)), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int p : cx.cofaces(1, cols[j]))
            if (nplus.has(2, p))
                constraints.row_data[std::size_t(p)].flip(j);

    // Boundaries of dual d-cells (duals of the network's sites).
    std::vector<Bitvec> gens;
    nplus.cells[0].for_each_set([&](std::size_t v) {
        Bitvec g(std::size_t(cx.n_cells(1)));
        bool nonzero = false;
        for (int b : cx.cofaces(0, int(v)))
            if (nplus.has(1, b)) {
                g.flip(std::size_t(b));
                nonzero = true;
            }
        if (nonzero)
            gens.push_back(std::move(g));
    });

    return make_quotient(std::size_t(cx.n_cells(1)), cols, constraints, gens);
}

QuotientSpace gamma_class_space(const CellComplex& cx, const Bitvec& nplus_plaqs)
{
    // Bonds of N+ (faces of an unfrustrated plaquette) may not carry the
    // bounding walls.
    Bitvec nplus_bonds(std::size_t(cx.n_cells(1)));
    nplus_plaqs.for_each_set([&](std::size_t p) {
        for (int b : cx.faces(2, int(p)))
            nplus_bonds.set(std::size_t(b));
    });

    Bitvec colmask(std::size_t(cx.n_cells(2)));
    for (int p = 0; p < cx.n_cells(2); ++p)
        if (!nplus_plaqs.get(std::size_t(p)))
            colmask.set(std::size_t(p));
    std::vector<int> cols = colmask.indices();

    // Closure rel dLambda*: even incidence with every cube of the lattice.
    Gf2Matrix constraints(std::size_t(cx.n_cells(3)), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int c : cx.cofaces(2, cols[j]))
            constraints.row_data[std::size_t(c)].flip(j);

    std::vector<Bitvec> gens;
    for (int b = 0; b < cx.n_cells(1); ++b) {
        if (nplus_bonds.get(std::size_t(b)))
            continue;
        Bitvec g(std::size_t(cx.n_cells(2)));
        bool nonzero = false;
        for (int p : cx.cofaces(1, b))
            if (colmask.get(std::size_t(p))) {
                g.flip(std::size_t(p));
                nonzero = true;
            }
        if (nonzero)
            gens.push_back(std::move(g));
    }

    return make_quotient(std::size_t(cx.n_cells(2)), cols, constraints, gens);
}

FrustrationClass frustration_class(const CellComplex& cx, const BondConfig& bonds,
                                   const SubComplex& nplus)
{
    Bitvec frus = plaquette_frustration(cx, bonds);
    bool clean = true;
    nplus.cells[2].for_each_set([&](std::size_t p) {
        if (frus.get(p))
            clean = false;
    });
    if (!clean)
        throw std::invalid_argument("frustration_class: frustrated plaquette inside N+");

    FrustrationClass fc;
    fc.h1 = homology(nplus, 1);
    for (std::size_t i = 0; i < fc.h1.basis.size(); ++i) {
        const Chain2& loop = fc.h1.basis[i];
        int value = frustration_of_loop(cx, bonds, loop);

        // Well-definedness: a representative perturbed by plaquette
        // boundaries of N+ must evaluate identically.
        Chain2 perturbed = loop;
        nplus.cells[2].for_each_set([&](std::size_t p) {
            if (rng::at(0xf00dULL, rng::perturbation, p) & 1)
                for (int b : cx.faces(2, int(p)))
                    perturbed.support.flip(std::size_t(b));
        });
        if (frustration_of_loop(cx, bonds, perturbed) != value)
            throw std::logic_error("frustration_class: phi not constant on a homology class");
        fc.basis_values.push_back(value);
    }
    return fc;
}

Chain2 kappa(const CellComplex& cx, const BondConfig& bonds)
{
    return kappa(cx, bonds.neg);
}

Chain2 kappa(const CellComplex& cx, const Bitvec& neg_bonds)
{
    if (neg_bonds.size() != std::size_t(cx.n_cells(1)))
        throw std::invalid_argument("kappa: sign vector size mismatch");
    return Chain2{1, neg_bonds};
}

DomainWallSet group_walls(const CellComplex& cx, const Bitvec& wall_bonds)
{
    if (wall_bonds.size() != std::size_t(cx.n_cells(1)))
        throw std::invalid_argument("group_walls: bond mask size mismatch");

    // Two wall cells are connected iff their bonds lie in a common plaquette
    // (the dual cells then share a (d-2)-face).
    UnionFind uf(std::size_t(cx.n_cells(1)));
    for (int p = 0; p < cx.n_cells(2); ++p) {
        int prev = -1;
        for (int b : cx.faces(2, p)) {
            if (!wall_bonds.get(std::size_t(b)))
                continue;
            if (prev >= 0)
                uf.unite(prev, b);
            prev = b;
        }
    }

    std::map<int, int> root_to_wall;
    DomainWallSet ws;
    wall_bonds.for_each_set([&](std::size_t b) {
        int r = uf.find(int(b));
        auto it = root_to_wall.find(r);
        int w;
        if (it == root_to_wall.end()) {
            w = int(ws.walls.size());
            root_to_wall[r] = w;
            ws.walls.push_back(DomainWall{cx.empty_chain(1), cx.empty_chain(2)});
        } else {
            w = it->second;
        }
        ws.walls[std::size_t(w)].cells.support.set(b);
    });

    for (auto& wall : ws.walls) {
        for (int p = 0; p < cx.n_cells(2); ++p) {
            int cnt = 0;
            for (int b : cx.faces(2, p))
                cnt += wall.cells.support.get(std::size_t(b));
            if (cnt & 1)
                wall.boundary.support.set(std::size_t(p));
        }
    }
    return ws;
}

DomainWallSet vartheta(const SubComplex& nplus, const Chain2& alpha)
{
    const CellComplex& cx = *nplus.cx;
    if (alpha.dim != 1 || alpha.support.size() != std::size_t(cx.n_cells(1)))
        throw std::invalid_argument("vartheta: alpha must be a 1-cochain of the complex");
    bool cocycle = true;
    nplus.cells[2].for_each_set([&](std::size_t p) {
        int cnt = 0;
        for (int b : cx.faces(2, int(p)))
            cnt += alpha.support.get(std::size_t(b));
        if (cnt & 1)
            cocycle = false;
    });
    if (!cocycle)
        throw std::invalid_argument("vartheta: cocycle condition violated on N+");
    return group_walls(cx, alpha.support);
}

Chain2 zeta(const CellComplex& cx, const Bitvec& eta_minus)
{
    if (eta_minus.size() != std::size_t(cx.n_cells(2)))
        throw std::invalid_argument("zeta: eta must cover all plaquettes");
    for (int c = 0; c < cx.n_cells(3); ++c) {
        int cnt = 0;
        for (int p : cx.faces(3, c))
            cnt += eta_minus.get(std::size_t(p));
        if (cnt & 1)
            throw std::invalid_argument("zeta: cube cocycle condition violated");
    }
    return Chain2{2, eta_minus};
}

int two_cochain_phi(const CellComplex& cx, const BondConfig& bonds, const Chain2& surface)
{
    if (surface.dim != 2)
        throw std::invalid_argument("two_cochain_phi: surface must be 2-dimensional");
    Bitvec frus = plaquette_frustration(cx, bonds);
    int via_eta = surface.support.dot(frus) ? -1 : +1;
    int via_boundary = frustration_of_loop(cx, bonds, boundary(cx, surface));
    if (via_eta != via_boundary)
        throw std::logic_error("two_cochain_phi: Phi(s) != phi(boundary s)");
    return via_eta;
}

LinkResult link_mod2(const CellComplex& cx, const Chain2& loop, const Chain2& gamma)
{
    if (loop.dim != 1 || gamma.dim != 2)
        throw std::invalid_argument("link_mod2: expected a 1-chain and a dual (d-2)-chain");
    if (boundary(cx, loop).support.any())
        throw std::invalid_argument("link_mod2: loop is not a cycle");

    // Wall cells are stored by bond; the dual boundary of a candidate wall S
    // is the set of plaquettes with odd incidence, so spanning means
    // (coboundary) S = gamma.
    Gf2Matrix cob(std::size_t(cx.n_cells(2)), std::size_t(cx.n_cells(1)));
    for (int b = 0; b < cx.n_cells(1); ++b)
        for (int p : cx.cofaces(1, b))
            cob.row_data[std::size_t(p)].flip(std::size_t(b));

    LinkResult res;
    auto s = solve(cob, gamma.support);
    if (!s) {
        res.reason = "no spanning wall exists for gamma";
        return res;
    }
    for (const auto& closed : kernel_basis(cob)) {
        if (loop.support.dot(closed)) {
            res.reason = "parity depends on the choice of spanning wall";
            return res;
        }
    }
    res.defined = true;
    res.parity = loop.support.dot(*s) ? 1 : 0;
    return res;
}

namespace {

// Junction Im(f) = Ker(g) for composable class-coordinate matrices.
void check_junction(VerifyReport& rep, const std::string& where, const Gf2Matrix& f,
                    const Gf2Matrix& g)
{
    rep.require(is_zero(mat_mul(g, f)), where + ": composite map vanishes");
    std::size_t rank_f = rank(f);
    std::size_t dim_ker_g = g.cols - rank(g);
    rep.dims[where + ".rank_image"] = long(rank_f);
    rep.dims[where + ".dim_kernel"] = long(dim_ker_g);
    rep.require(rank_f == dim_ker_g, where + ": rank of image equals kernel dimension");
    for (const auto& kv : kernel_basis(g))
        rep.require(solve(f, kv).has_value(), where + ": kernel class lies in the image");
}

Bitvec complement_within(const Bitvec& all, const Bitvec& sub)
{
    Bitvec out(all.size());
    all.for_each_set([&](std::size_t i) {
        if (!sub.get(i))
            out.set(i);
    });
    return out;
}

}  // namespace

VerifyReport verify_homology_exactness(const CellComplex& cx, const Bitvec& nminus_plaqs,
                                       const Bitvec& nplus_plaqs)
{
    VerifyReport rep;
    rep.check = "homology_exactness";

    Bitvec union_plaqs = nminus_plaqs;
    union_plaqs |= nplus_plaqs;
    SubComplex X = subcomplex_from_plaquettes(cx, union_plaqs, true);
    SubComplex A = subcomplex_from_plaquettes(cx, nplus_plaqs, true);

    HomologySummary h2x = homology(X, 2);
    HomologySummary h2xa = relative_homology(X, A, 2);
    HomologySummary h1a = homology(A, 1);
    HomologySummary h1x = homology(X, 1);
    rep.dims["H2(X)"] = h2x.dim_H;
    rep.dims["H2(X,A)"] = h2xa.dim_H;
    rep.dims["H1(A)"] = h1a.dim_H;
    rep.dims["H1(X)"] = h1x.dim_H;

    Bitvec rel_plaqs = complement_within(X.cells[2], A.cells[2]);

    // j*: absolute class -> relative class (drop the A-plaquette bits).
    std::vector<Bitvec> jcols;
    for (const auto& z : h2x.basis) {
        Bitvec rel = z.support;
        rel &= rel_plaqs;
        jcols.push_back(h2xa.space.coords(rel));
    }
    Gf2Matrix J = Gf2Matrix::from_columns(std::size_t(h2xa.dim_H), jcols);

    // Connecting map: boundary of a relative cycle lands in A.
    std::vector<Bitvec> dcols;
    for (const auto& s : h2xa.basis) {
        Chain2 bnd = boundary(cx, s);
        Bitvec outside = bnd.support;
        outside &= complement_within(X.cells[1], A.cells[1]);
        rep.require(outside.none(), "relative cycle boundary stays in A");
        dcols.push_back(h1a.space.coords(bnd.support));
    }
    Gf2Matrix D = Gf2Matrix::from_columns(std::size_t(h1a.dim_H), dcols);

    // i*: inclusion on 1-cycles.
    std::vector<Bitvec> icols;
    for (const auto& l : h1a.basis)
        icols.push_back(h1x.space.coords(l.support));
    Gf2Matrix I = Gf2Matrix::from_columns(std::size_t(h1x.dim_H), icols);

    check_junction(rep, "j*/partial", J, D);
    check_junction(rep, "partial/i*", D, I);
    return rep;
}

VerifyReport verify_cohomology_exactness(const CellComplex& cx, const Bitvec& nminus_plaqs,
                                         const Bitvec& nplus_plaqs)
{
    VerifyReport rep;
    rep.check = "cohomology_exactness";

    Bitvec union_plaqs = nminus_plaqs;
    union_plaqs |= nplus_plaqs;
    SubComplex X = subcomplex_from_plaquettes(cx, union_plaqs, true);
    SubComplex A = subcomplex_from_plaquettes(cx, nplus_plaqs, true);

    QuotientSpace h1x = cohomology_space(X, 1);
    QuotientSpace h1a = cohomology_space(A, 1);
    QuotientSpace h2xa = relative_cohomology2_space(X, A);
    QuotientSpace h2x = cohomology_space(X, 2);
    rep.dims["H^1(X)"] = h1x.dim_H;
    rep.dims["H^1(A)"] = h1a.dim_H;
    rep.dims["H^2(X,A)"] = h2xa.dim_H;
    rep.dims["H^2(X)"] = h2x.dim_H;

    // i*: restriction of cocycles to the bonds of A.
    std::vector<Bitvec> icols;
    for (const auto& tau : h1x.class_basis) {
        Bitvec r = tau;
        r &= A.cells[1];
        icols.push_back(h1a.coords(r));
    }
    Gf2Matrix I = Gf2Matrix::from_columns(std::size_t(h1a.dim_H), icols);

    // Connecting map: extend by one outside A, take the plaquette cochain.
    std::vector<Bitvec> dcols;
    for (const auto& tau : h1a.class_basis) {
        Bitvec eta(std::size_t(cx.n_cells(2)));
        X.cells[2].for_each_set([&](std::size_t p) {
            int cnt = 0;
            for (int b : cx.faces(2, int(p)))
                cnt += tau.get(std::size_t(b));
            if (cnt & 1)
                eta.set(p);
        });
        Bitvec on_a = eta;
        on_a &= A.cells[2];
        rep.require(on_a.none(), "connecting cochain vanishes on A");
        dcols.push_back(h2xa.coords(eta));
    }
    Gf2Matrix D = Gf2Matrix::from_columns(std::size_t(h2xa.dim_H), dcols);

    // j*: a relative cocycle is an absolute one.
    std::vector<Bitvec> jcols;
    for (const auto& eta : h2xa.class_basis)
        jcols.push_back(h2x.coords(eta));
    Gf2Matrix J = Gf2Matrix::from_columns(std::size_t(h2x.dim_H), jcols);

    check_junction(rep, "i*/delta*", I, D);
    check_junction(rep, "delta*/j*", D, J);
    return rep;
}

VerifyReport verify_commutative_diagram(const CellComplex& cx, const BondConfig& bonds,
                                        const Bitvec& nminus_plaqs, const Bitvec& nplus_plaqs)
{
    (void)bonds;
    VerifyReport rep;
    rep.check = "commutative_diagram";

    SubComplex A = subcomplex_from_plaquettes(cx, nplus_plaqs, true);
    QuotientSpace h1a = cohomology_space(A, 1);
    QuotientSpace gspace = gamma_class_space(cx, nplus_plaqs);
    rep.dims["H^1(N+)"] = h1a.dim_H;
    rep.dims["H_{d-2}(N-*)"] = gspace.dim_H;
    (void)nminus_plaqs;

    auto site_coboundary_in_a = [&](const Bitvec& eps_down) {
        Bitvec delta(std::size_t(cx.n_cells(1)));
        A.cells[1].for_each_set([&](std::size_t b) {
            const auto& f = cx.faces(1, int(b));
            if (eps_down.get(std::size_t(f[0])) != eps_down.get(std::size_t(f[1])))
                delta.set(b);
        });
        return delta;
    };
    auto deterministic_sites = [&](std::uint64_t tag) {
        Bitvec eps(std::size_t(cx.n_cells(0)));
        A.cells[0].for_each_set([&](std::size_t v) {
            if (rng::at(tag, rng::perturbation, v) & 1)
                eps.set(v);
        });
        return eps;
    };
    auto eta_of = [&](const Bitvec& tau) {
        Bitvec eta(std::size_t(cx.n_cells(2)));
        for (int p = 0; p < cx.n_cells(2); ++p) {
            int cnt = 0;
            for (int b : cx.faces(2, p))
                cnt += tau.get(std::size_t(b));
            if (cnt & 1)
                eta.set(std::size_t(p));
        }
        return eta;
    };

    if (h1a.dim_H == 0)
        rep.notes.push_back("H^1(N+) trivial; diagram commutes vacuously");

    for (int i = 0; i < h1a.dim_H; ++i) {
        // Two cohomologous representatives, perturbed independently.
        Bitvec tau_a = h1a.class_basis[std::size_t(i)];
        tau_a ^= site_coboundary_in_a(deterministic_sites(1000 + std::uint64_t(i)));
        Bitvec tau_b = h1a.class_basis[std::size_t(i)];
        tau_b ^= site_coboundary_in_a(deterministic_sites(2000 + std::uint64_t(i)));

        // Top-right route: connecting cochain, then the dual (d-2)-complex.
        Chain2 gamma_a = zeta(cx, eta_of(tau_a));
        Bitvec on_nplus = gamma_a.support;
        on_nplus &= nplus_plaqs;
        rep.require(on_nplus.none(), "route A lands outside N+");

        // Left-bottom route: wall set of the cocycle, then its boundary.
        DomainWallSet walls = vartheta(A, Chain2{1, tau_b});
        Bitvec gamma_b(std::size_t(cx.n_cells(2)));
        for (const auto& w : walls.walls)
            gamma_b ^= w.boundary.support;

        try {
            Bitvec ca = gspace.coords(gamma_a.support);
            Bitvec cb = gspace.coords(gamma_b);
            rep.require(ca == cb, "routes agree in H_{d-2}(N-*, dN-* ∩ dLambda*)");
        } catch (const std::invalid_argument&) {
            rep.require(false, "route output is not a relative cycle");
        }
    }
    return rep;
}

VerifyReport verify_universal_coefficients(const SubComplex& network)
{
    VerifyReport rep;
    rep.check = "universal_coefficients";
    const CellComplex& cx = *network.cx;
    if (!is_face_closed(network))
        throw std::invalid_argument("verify_universal_coefficients: network not face-closed");

    auto bonds_list = network.cell_list(1);
    auto sites_list = network.cell_list(0);
    const std::size_t m = bonds_list.size();
    std::vector<int> site_row(std::size_t(cx.n_cells(0)), -1);
    for (std::size_t i = 0; i < sites_list.size(); ++i)
        site_row[std::size_t(sites_list[i])] = int(i);

    // Restricted boundary operator on 1-chains.
    Gf2Matrix d1(sites_list.size(), m);
    for (std::size_t j = 0; j < m; ++j)
        for (int v : cx.faces(1, bonds_list[j]))
            d1.row_data[std::size_t(site_row[std::size_t(v)])].flip(j);

    // Z1 basis.
    std::vector<Bitvec> K = kernel_basis(d1);
    const std::size_t z = K.size();
    Gf2Matrix Kmat = Gf2Matrix::from_columns(m, K);

    // B1 generators (plaquette boundaries) in bond coordinates.
    std::vector<int> bond_col(std::size_t(cx.n_cells(1)), -1);
    for (std::size_t j = 0; j < m; ++j)
        bond_col[std::size_t(bonds_list[j])] = int(j);
    IncrementalBasis b1(m);
    for (int p : network.cell_list(2)) {
        Bitvec g(m);
        for (int b : cx.faces(2, p))
            g.flip(std::size_t(bond_col[std::size_t(b)]));
        b1.add(g);
    }
    const std::size_t dim_b1 = b1.rank();

    // H1 class representatives.
    IncrementalBasis span(m);
    for (const auto& r : b1.rows())
        span.add(r);
    std::vector<Bitvec> Hreps;
    for (const auto& kv : K)
        if (span.add(kv))
            Hreps.push_back(kv);
    const std::size_t h = Hreps.size();

    std::vector<Bitvec> hb_cols = Hreps;
    hb_cols.insert(hb_cols.end(), b1.rows().begin(), b1.rows().end());
    Gf2Matrix HB = Gf2Matrix::from_columns(m, hb_cols);
    auto class_coords = [&](const Bitvec& cycle) {
        auto x = solve(HB, cycle);
        if (!x)
            throw std::logic_error("universal_coefficients: not a cycle");
        Bitvec out(h);
        for (std::size_t i = 0; i < h; ++i)
            if (x->get(i))
                out.set(i);
        return out;
    };

    // Sequence 0 -> H1# -> Z1# -> B1#: p# row i is the class of K[i]; i# row
    // j expresses the j-th boundary basis vector in Z1 coordinates.
    std::vector<Bitvec> prow;
    for (std::size_t i = 0; i < z; ++i)
        prow.push_back(class_coords(K[i]));
    Gf2Matrix Psharp(z, h);
    for (std::size_t i = 0; i < z; ++i)
        Psharp.row_data[i] = prow[i];

    Gf2Matrix Isharp(dim_b1, z);
    {
        std::size_t j = 0;
        for (const auto& w : b1.rows()) {
            auto y = solve(Kmat, w);
            rep.require(y.has_value(), "boundary vector lies in the cycle space");
            if (y)
                Isharp.row_data[j] = *y;
            ++j;
        }
    }

    rep.require(rank(Psharp) == h, "p# is injective");
    rep.require(is_zero(mat_mul(Isharp, Psharp)), "i# ∘ p# = 0");
    const std::size_t dim_ker_isharp = z - rank(Isharp);
    rep.dims["dim_ker_i#"] = long(dim_ker_isharp);
    rep.dims["dim_Hom(H1,Z2)"] = long(h);
    rep.require(h == dim_ker_isharp, "Im p# = Ker i# (rank)");
    for (const auto& kv : kernel_basis(Isharp))
        rep.require(solve(Psharp, kv).has_value(), "Ker i# ⊆ Im p#");

    // Sequence 0 -> B0# -> C1# -> Z1# -> 0 with the explicit splitting.
    std::vector<std::size_t> pivot_bond;
    std::vector<Bitvec> pivot_vec;
    {
        IncrementalBasis img(sites_list.size());
        for (std::size_t c = 0; c < m; ++c) {
            Bitvec col = column_of(d1, c);
            if (img.add(col)) {
                pivot_bond.push_back(c);
                pivot_vec.push_back(col);
            }
        }
    }
    const std::size_t r = pivot_vec.size();
    Gf2Matrix Pv = Gf2Matrix::from_columns(sites_list.size(), pivot_vec);

    Gf2Matrix Dsharp(m, r);
    for (std::size_t c = 0; c < m; ++c) {
        auto y = solve(Pv, column_of(d1, c));
        rep.require(y.has_value(), "boundary of a bond lies in B0");
        if (y)
            Dsharp.row_data[c] = *y;
    }
    Gf2Matrix Jsharp(z, m);
    for (std::size_t i = 0; i < z; ++i)
        Jsharp.row_data[i] = K[i];

    rep.require(rank(Dsharp) == r, "partial# is injective");
    rep.require(is_zero(mat_mul(Jsharp, Dsharp)), "j# ∘ partial# = 0");
    rep.require(rank(Jsharp) == z, "j# is surjective");
    rep.require(r == m - z, "Im partial# = Ker j# (rank)");
    for (const auto& kv : kernel_basis(Jsharp))
        rep.require(solve(Dsharp, kv).has_value(), "Ker j# ⊆ Im partial#");

    // Splitting jbar: c -> c + dbar(boundary c); check j# ∘ jbar# = id.
    Gf2Matrix Jbar(m, z);
    for (std::size_t c = 0; c < m; ++c) {
        Bitvec jb(m);
        jb.set(c);
        Dsharp.row_data[c].for_each_set([&](std::size_t k) { jb.flip(pivot_bond[k]); });
        auto y = solve(Kmat, jb);
        rep.require(y.has_value(), "jbar lands in the cycle space");
        if (y)
            Jbar.row_data[c] = *y;
    }
    Gf2Matrix JJ = mat_mul(Jsharp, Jbar);
    bool ident = JJ.rows == z && JJ.cols == z;
    for (std::size_t i = 0; ident && i < z; ++i)
        for (std::size_t j = 0; ident && j < z; ++j)
            if (JJ.get(i, j) != (i == j))
                ident = false;
    rep.require(ident, "j# ∘ jbar# is the identity");

    // Sequence 0 -> H^1 -> Z1# -> B1# and the dimension equality.
    QuotientSpace h1 = cohomology_space(network, 1);
    Gf2Matrix Jstar(z, std::size_t(h1.dim_H));
    for (std::size_t t = 0; t < std::size_t(h1.dim_H); ++t) {
        Bitvec alpha = gather(h1.class_basis[t], bonds_list);
        for (std::size_t i = 0; i < z; ++i)
            if (alpha.dot(K[i]))
                Jstar.set(i, t);
    }
    rep.require(rank(Jstar) == std::size_t(h1.dim_H), "j* is injective");
    rep.require(is_zero(mat_mul(Isharp, Jstar)), "i# ∘ j* = 0");
    rep.require(std::size_t(h1.dim_H) == dim_ker_isharp, "Im j* = Ker i# (rank)");
    for (const auto& kv : kernel_basis(Isharp))
        rep.require(solve(Jstar, kv).has_value(), "Ker i# ⊆ Im j*");

    rep.dims["dim_H^1"] = h1.dim_H;
    rep.require(std::size_t(h1.dim_H) == h, "dim H^1 = dim Hom(H1, Z2)");
    return rep;
}

VerifyReport verify_duality_dimensions(const SubComplex& nplus)
{
    VerifyReport rep;
    rep.check = "duality_dimensions";
    const CellComplex& cx = *nplus.cx;

    QuotientSpace h1 = cohomology_space(nplus, 1);
    QuotientSpace wd = wall_class_space(nplus);
    rep.dims["dim_H^1(N+)"] = h1.dim_H;
    rep.dims["dim_H_{d-1}(N+*,dN+*)"] = wd.dim_H;
    rep.require(h1.dim_H == wd.dim_H, "duality dimensions match");

    // vartheta ∘ kappa maps an H^1 basis to independent wall classes.
    std::vector<Bitvec> wall_coords;
    for (const auto& tau : h1.class_basis) {
        DomainWallSet ws = vartheta(nplus, Chain2{1, tau});
        wall_coords.push_back(wd.coords(ws.all_cells(std::size_t(cx.n_cells(1)))));
    }
    Gf2Matrix W = Gf2Matrix::from_columns(std::size_t(wd.dim_H), wall_coords);
    rep.dims["rank_wall_classes"] = long(rank(W));
    rep.require(rank(W) == std::size_t(h1.dim_H), "wall classes of the basis are independent");
    return rep;
}

}  // namespace spintop
