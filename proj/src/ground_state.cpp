#include "spintop/ground_state.hpp"

#include <algorithm>
#include <queue>

namespace spintop {

namespace {

// Bit b set iff the end spins of bond b differ.
Bitvec spin_mismatch(const CellComplex& cx, const SpinConfig& spins)
{
    Bitvec out(std::size_t(cx.n_cells(1)));
    for (int b = 0; b < cx.n_cells(1); ++b) {
        const auto& f = cx.faces(1, b);
        if (spins.down.get(std::size_t(f[0])) != spins.down.get(std::size_t(f[1])))
            out.set(std::size_t(b));
    }
    return out;
}

// J sigma sigma = -1 exactly where negativity and spin mismatch disagree.
Bitvec unsatisfied_bonds(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins)
{
    Bitvec u = spin_mismatch(cx, spins);
    u ^= bonds.neg;
    return u;
}

}  // namespace

long long energy_units(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins)
{
    if (bonds.n_bonds() != std::size_t(cx.n_cells(1)))
        throw std::invalid_argument("energy: bond count mismatch");
    if (spins.n_sites() != std::size_t(cx.n_cells(0)))
        throw std::invalid_argument("energy: site count mismatch");
    long long nb = cx.n_cells(1);
    long long unsat = (long long)(unsatisfied_bonds(cx, bonds, spins).count());
    // E = -(satisfied - unsatisfied) J0
    return 2 * unsat - nb;
}

double energy(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins)
{
    return double(energy_units(cx, bonds, spins)) * bonds.j0;
}

SpinConfig propagate_ground_state(const CellComplex& cx, const Bitvec& region_bonds,
                                  const BondConfig& bonds, int root, int root_spin)
{
    int ns = cx.n_cells(0);
    std::vector<std::vector<std::pair<int, int>>> adj{std::size_t(ns)};  // site -> (bond, other)
    region_bonds.for_each_set([&](std::size_t b) {
        const auto& f = cx.faces(1, int(b));
        adj[std::size_t(f[0])].push_back({int(b), f[1]});
        adj[std::size_t(f[1])].push_back({int(b), f[0]});
    });
    if (adj[std::size_t(root)].empty() && region_bonds.any())
        throw std::invalid_argument("propagate_ground_state: root is outside the region");

    std::vector<signed char> spin(std::size_t(ns), 0);
    std::vector<int> parent_bond(std::size_t(ns), -1);
    std::vector<int> parent_site(std::size_t(ns), -1);
    spin[std::size_t(root)] = (signed char)(root_spin >= 0 ? 1 : -1);

    std::queue<int> q;
    q.push(root);
    std::size_t reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [b, v] : adj[std::size_t(u)]) {
            int want = spin[std::size_t(u)] * bonds.sign(b);  // J sigma_u sigma_v = +1
            if (spin[std::size_t(v)] == 0) {
                spin[std::size_t(v)] = (signed char)want;
                parent_bond[std::size_t(v)] = b;
                parent_site[std::size_t(v)] = u;
                ++reached;
                q.push(v);
            } else if (spin[std::size_t(v)] != want) {
                // Frustrated cycle: this bond plus the two tree paths.
                Chain2 witness = cx.empty_chain(1);
                witness.support.set(std::size_t(b));
                for (int w : {u, v})
                    for (int s = w; parent_bond[std::size_t(s)] >= 0; s = parent_site[std::size_t(s)])
                        witness.support.flip(std::size_t(parent_bond[std::size_t(s)]));
                throw FrustratedLoopError("propagate_ground_state: frustrated loop in region",
                                          std::move(witness));
            }
        }
    }

    std::size_t region_sites = 0;
    for (int v = 0; v < ns; ++v)
        if (!adj[std::size_t(v)].empty())
            ++region_sites;
    if (region_bonds.any() && reached != region_sites)
        throw std::invalid_argument("propagate_ground_state: region is not connected");

    SpinConfig out;
    out.down = Bitvec(std::size_t(ns));
    for (int v = 0; v < ns; ++v)
        if (spin[std::size_t(v)] < 0)
            out.down.set(std::size_t(v));
    return out;
}

GroundStateResult brute_force_ground_states_region(const CellComplex& cx, const BondConfig& bonds,
                                                   const Bitvec& region_bonds, int site_cap,
                                                   std::size_t max_states)
{
    std::vector<int> sites;
    {
        Bitvec site_mask(std::size_t(cx.n_cells(0)));
        region_bonds.for_each_set([&](std::size_t b) {
            for (int v : cx.faces(1, int(b)))
                site_mask.set(std::size_t(v));
        });
        sites = site_mask.indices();
    }
    int m = int(sites.size());
    if (m > site_cap)
        throw std::invalid_argument("brute_force_ground_states: site cap exceeded");

    GroundStateResult res;
    res.j0 = bonds.j0;
    if (m == 0) {
        res.degeneracy = 0;
        return res;
    }

    std::vector<int> local(std::size_t(cx.n_cells(0)), -1);
    for (int i = 0; i < m; ++i)
        local[std::size_t(sites[std::size_t(i)])] = i;

    // Per local site: (other local site, sign).
    std::vector<std::vector<std::pair<int, int>>> inc{std::size_t(m)};
    long long nb = 0;
    region_bonds.for_each_set([&](std::size_t b) {
        const auto& f = cx.faces(1, int(b));
        int u = local[std::size_t(f[0])], v = local[std::size_t(f[1])];
        int s = bonds.sign(int(b));
        inc[std::size_t(u)].push_back({v, s});
        inc[std::size_t(v)].push_back({u, s});
        ++nb;
    });

    std::vector<signed char> spin(std::size_t(m), 1);
    long long cur = 0;  // sum of J-hat sigma sigma
    for (int u = 0; u < m; ++u)
        for (auto [v, s] : inc[std::size_t(u)])
            if (u < v)
                cur += s;

    long long best = cur;
    std::vector<Bitvec> found;
    long long count = 1;
    found.push_back(Bitvec(std::size_t(m)));

    std::uint64_t total = std::uint64_t(1) << (m - 1);
    for (std::uint64_t g = 1; g < total; ++g) {
        int s = __builtin_ctzll(g) + 1;  // local site to flip (site 0 pinned)
        long long t = 0;
        for (auto [v, sg] : inc[std::size_t(s)])
            t += sg * spin[std::size_t(s)] * spin[std::size_t(v)];
        cur -= 2 * t;
        spin[std::size_t(s)] = (signed char)(-spin[std::size_t(s)]);

        if (cur > best) {
            best = cur;
            count = 1;
            found.clear();
            res.states_truncated = false;
        } else if (cur != best) {
            continue;
        } else {
            ++count;
        }
        if (found.size() < max_states) {
            Bitvec snap{std::size_t(m)};
            for (int i = 0; i < m; ++i)
                if (spin[std::size_t(i)] < 0)
                    snap.set(std::size_t(i));
            found.push_back(std::move(snap));
        } else {
            res.states_truncated = true;
        }
    }

    res.energy_units = -best;
    res.degeneracy = 2 * count;
    std::sort(found.begin(), found.end(),
              [](const Bitvec& a, const Bitvec& b) { return a.lex_less(b); });
    for (const auto& snap : found) {
        SpinConfig sc;
        sc.down = Bitvec(std::size_t(cx.n_cells(0)));
        snap.for_each_set([&](std::size_t i) { sc.down.set(std::size_t(sites[i])); });
        res.states.push_back(std::move(sc));
    }
    (void)nb;
    return res;
}

GroundStateResult brute_force_ground_states(const CellComplex& cx, const BondConfig& bonds,
                                            int site_cap)
{
    Bitvec all(std::size_t(cx.n_cells(1)));
    for (int b = 0; b < cx.n_cells(1); ++b)
        all.set(std::size_t(b));
    return brute_force_ground_states_region(cx, bonds, all, site_cap);
}

DomainWallSet domain_walls(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins)
{
    return group_walls(cx, unsatisfied_bonds(cx, bonds, spins));
}

WallSplit wall_split(const CellComplex& cx, const BondConfig& bonds, const SpinConfig& spins,
                     const SubComplex& nplus)
{
    Bitvec unsat = unsatisfied_bonds(cx, bonds, spins);
    Bitvec tau = unsat;
    tau &= nplus.cells[1];
    Bitvec tau_prime = unsat;
    tau_prime ^= tau;

    WallSplit ws;
    ws.on_nplus = vartheta(nplus, Chain2{1, tau});
    ws.outside = group_walls(cx, tau_prime);
    return ws;
}

GroundStateDecomposition theorem31_decomposition(const CellComplex& cx, const BondConfig& bonds,
                                                 const SubComplex& nplus, int site_cap)
{
    GroundStateDecomposition out;
    out.checks.check = "theorem31_decomposition";
    const Bitvec& region = nplus.cells[1];

    out.ground = brute_force_ground_states_region(cx, bonds, region, site_cap);
    if (out.ground.states.empty())
        throw std::invalid_argument("theorem31_decomposition: empty network");

    // All ground states carry the same number of unfavorable bonds; pick the
    // lexicographically least wall set as the canonical choice.
    Bitvec best_walls;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < out.ground.states.size(); ++i) {
        Bitvec w = unsatisfied_bonds(cx, bonds, out.ground.states[i]);
        w &= region;
        if (i == 0 || w.lex_less(best_walls)) {
            best_walls = w;
            best_idx = i;
        }
    }
    out.state = out.ground.states[best_idx];
    out.state_flipped = out.state;
    nplus.cells[0].for_each_set([&](std::size_t v) { out.state_flipped.down.flip(v); });
    out.walls = vartheta(nplus, Chain2{1, best_walls});

    // Deleting the wall bonds leaves a frustration-free network whose two
    // propagated states are the chosen ground state and its flip.
    Bitvec remaining = region;
    remaining ^= best_walls;
    long root = nplus.cells[0].first_set();
    try {
        SpinConfig prop = propagate_ground_state(cx, remaining, bonds, int(root), +1);
        bool same = true;
        nplus.cells[0].for_each_set([&](std::size_t v) {
            if (prop.down.get(v) != out.state.down.get(v))
                same = false;
        });
        bool flipped = true;
        nplus.cells[0].for_each_set([&](std::size_t v) {
            if (prop.down.get(v) == out.state.down.get(v))
                flipped = false;
        });
        out.checks.require(same || flipped, "propagation reproduces the ground state");
    } catch (const FrustratedLoopError&) {
        out.checks.require(false, "network minus walls is frustration-free");
    } catch (const std::invalid_argument& e) {
        out.checks.require(false, std::string("propagation on the cut network: ") + e.what());
    }

    // Walls are non-bounding and transverse to a frustrated loop class.
    QuotientSpace wspace = wall_class_space(nplus);
    FrustrationClass fc = frustration_class(cx, bonds, nplus);
    Bitvec fvec(std::size_t(fc.h1.dim_H));
    for (std::size_t i = 0; i < fc.basis_values.size(); ++i)
        if (fc.basis_values[i] < 0)
            fvec.set(i);
    for (const auto& wall : out.walls.walls) {
        out.checks.require(!wspace.is_null_class(wall.cells.support),
                           "ground-state wall is not null-homologous");
        Bitvec pvec(std::size_t(fc.h1.dim_H));
        for (std::size_t i = 0; i < fc.h1.basis.size(); ++i)
            if (wall.cells.support.dot(fc.h1.basis[i].support))
                pvec.set(i);
        // Need a class lambda with <lambda, pvec> = 1 and <lambda, fvec> = 1:
        // a frustrated loop class crossing the wall an odd number of times.
        Gf2Matrix sys(2, std::size_t(fc.h1.dim_H));
        sys.row_data[0] = pvec;
        sys.row_data[1] = fvec;
        Bitvec rhs(2);
        rhs.set(0);
        rhs.set(1);
        out.checks.require(solve(sys, rhs).has_value(),
                           "wall is transverse to a frustrated loop class");
    }
    out.checks.dims["walls"] = long(out.walls.walls.size());
    out.checks.dims["degeneracy"] = out.ground.degeneracy;
    return out;
}

VerifyReport interface_check(const CellComplex& cx, const BondConfig& bonds,
                             const SpinConfig& spins, const SubComplex& nplus)
{
    VerifyReport rep;
    rep.check = "interface_identity";
    Bitvec s0 = unsatisfied_bonds(cx, bonds, spins);
    s0 &= nplus.cells[1];
    Bitvec sm = bonds.neg;
    sm &= nplus.cells[1];
    Bitvec interfaces = spin_mismatch(cx, spins);
    interfaces &= nplus.cells[1];

    Bitvec symdiff = s0;
    symdiff ^= sm;
    rep.dims["wall_cells"] = long(s0.count());
    rep.dims["negative_cells"] = long(sm.count());
    rep.dims["interfaces"] = long(interfaces.count());
    rep.require(symdiff == interfaces,
                "(S0 \\ S-) ∪ (S- \\ S0) equals the up/down interfaces");
    return rep;
}

long long local_flip_stability(const CellComplex& cx, const BondConfig& bonds,
                               const SpinConfig& spins, const Bitvec& region_sites)
{
    if (region_sites.size() != std::size_t(cx.n_cells(0)))
        throw std::invalid_argument("local_flip_stability: region mask size mismatch");
    long long delta = 0;
    for (int b = 0; b < cx.n_cells(1); ++b) {
        const auto& f = cx.faces(1, b);
        bool in0 = region_sites.get(std::size_t(f[0]));
        bool in1 = region_sites.get(std::size_t(f[1]));
        if (in0 == in1)
            continue;
        int term = bonds.sign(b) * spins.spin(f[0]) * spins.spin(f[1]);
        delta += 2 * term;
    }
    return delta;
}

}  // namespace spintop
