#include "spintop/disorder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "spintop/rng.hpp"
#include "spintop/union_find.hpp"

namespace spintop {

BondConfig sample_couplings(const CellComplex& cx, double x, double j0, std::uint64_t seed)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("sample_couplings: x must be in [0,1]");
    if (!(j0 > 0.0))
        throw std::invalid_argument("sample_couplings: j0 must be positive");
    BondConfig b;
    b.j0 = j0;
    b.neg = Bitvec(std::size_t(cx.n_cells(1)));
    for (int i = 0; i < cx.n_cells(1); ++i)
        if (!(rng::uniform01(seed, rng::bond_signs, std::uint64_t(i)) < x))
            b.neg.set(std::size_t(i));
    b.sampled = true;
    b.x = x;
    b.seed = seed;
    return b;
}

int frustration_of_loop(const CellComplex& cx, const BondConfig& bonds, const Chain2& loop)
{
    if (loop.dim != 1)
        throw std::invalid_argument("frustration_of_loop: chain must be 1-dimensional");
    if (boundary(cx, loop).support.any())
        throw std::invalid_argument("frustration_of_loop: chain is not a cycle");
    return loop.support.dot(bonds.neg) ? -1 : +1;
}

Bitvec plaquette_frustration(const CellComplex& cx, const BondConfig& bonds)
{
    Bitvec out(std::size_t(cx.n_cells(2)));
    for (int p = 0; p < cx.n_cells(2); ++p) {
        int negs = 0;
        for (int b : cx.faces(2, p))
            negs += bonds.neg.get(std::size_t(b));
        if (negs & 1)
            out.set(std::size_t(p));
    }
    return out;
}

namespace {

// Components of a plaquette subset under the rule that two plaquettes are
// connected iff they share at least one lattice point.
void point_components(const CellComplex& cx, const Bitvec& members, std::vector<int>& label,
                      std::vector<std::vector<int>>& comps)
{
    int np = cx.n_cells(2);
    UnionFind uf{std::size_t(np)};
    std::vector<int> rep(std::size_t(cx.n_cells(0)), -1);
    for (int p = 0; p < np; ++p) {
        if (!members.get(std::size_t(p)))
            continue;
        for (int v : cx.vertices_of(2, p)) {
            if (rep[std::size_t(v)] < 0)
                rep[std::size_t(v)] = p;
            else
                uf.unite(rep[std::size_t(v)], p);
        }
    }
    label.assign(std::size_t(np), -1);
    std::map<int, int> root_to_comp;
    comps.clear();
    for (int p = 0; p < np; ++p) {
        if (!members.get(std::size_t(p)))
            continue;
        int r = uf.find(p);
        auto it = root_to_comp.find(r);
        int c;
        if (it == root_to_comp.end()) {
            c = int(comps.size());
            root_to_comp[r] = c;
            comps.emplace_back();
        } else {
            c = it->second;
        }
        label[std::size_t(p)] = c;
        comps[std::size_t(c)].push_back(p);
    }
}

// Maximum matching on the adjacency graph of one component's frustrated
// plaquettes. Exact by bitmask DP for components of up to dp_cap nodes,
// greedy (lowest index first) beyond that; both choices are deterministic.
constexpr int kMatchDpCap = 20;

void match_component(const std::vector<int>& nodes,
                     const std::vector<std::vector<std::pair<int, int>>>& adj,
                     std::vector<int>& mate)
{
    int n = int(nodes.size());
    std::unordered_map<int, int> local;
    for (int i = 0; i < n; ++i)
        local[nodes[std::size_t(i)]] = i;

    if (n <= kMatchDpCap) {
        std::vector<std::uint32_t> nbr(std::size_t(n), 0);
        for (int i = 0; i < n; ++i)
            for (auto [q, bond] : adj[std::size_t(nodes[std::size_t(i)])]) {
                auto it = local.find(q);
                if (it != local.end())
                    nbr[std::size_t(i)] |= std::uint32_t(1) << it->second;
            }
        std::vector<int> memo(std::size_t(1) << n, -1);
        auto best = [&](auto&& self, std::uint32_t s) -> int {
            if (s == 0)
                return 0;
            int& m = memo[s];
            if (m >= 0)
                return m;
            int v = __builtin_ctz(s);
            std::uint32_t rest = s & ~(std::uint32_t(1) << v);
            int r = self(self, rest);
            std::uint32_t cand = nbr[std::size_t(v)] & rest;
            while (cand) {
                int u = __builtin_ctz(cand);
                cand &= cand - 1;
                r = std::max(r, 1 + self(self, rest & ~(std::uint32_t(1) << u)));
            }
            return m = r;
        };
        std::uint32_t s = (n == 32) ? ~std::uint32_t(0) : ((std::uint32_t(1) << n) - 1);
        // Reconstruct: lowest node first, matched with lowest partner that
        // preserves optimality, unmatched only if forced.
        while (s) {
            int v = __builtin_ctz(s);
            std::uint32_t rest = s & ~(std::uint32_t(1) << v);
            int target = best(best, s);
            bool matched = false;
            std::uint32_t cand = nbr[std::size_t(v)] & rest;
            while (cand) {
                int u = __builtin_ctz(cand);
                cand &= cand - 1;
                if (1 + best(best, rest & ~(std::uint32_t(1) << u)) == target) {
                    mate[std::size_t(nodes[std::size_t(v)])] = nodes[std::size_t(u)];
                    mate[std::size_t(nodes[std::size_t(u)])] = nodes[std::size_t(v)];
                    s = rest & ~(std::uint32_t(1) << u);
                    matched = true;
                    break;
                }
            }
            if (!matched)
                s = rest;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            int p = nodes[std::size_t(i)];
            if (mate[std::size_t(p)] >= 0)
                continue;
            for (auto [q, bond] : adj[std::size_t(p)]) {
                if (local.count(q) && mate[std::size_t(q)] < 0) {
                    mate[std::size_t(p)] = q;
                    mate[std::size_t(q)] = p;
                    break;
                }
            }
        }
    }
}

}  // namespace

NetworkSplit split_networks(const CellComplex& cx, const BondConfig& bonds)
{
    NetworkSplit ns;
    int np = cx.n_cells(2);
    ns.frustrated = plaquette_frustration(cx, bonds);
    ns.unfrustrated = Bitvec(std::size_t(np));
    for (int p = 0; p < np; ++p)
        if (!ns.frustrated.get(std::size_t(p)))
            ns.unfrustrated.set(std::size_t(p));

    point_components(cx, ns.frustrated, ns.comp_label_minus, ns.components_minus);
    point_components(cx, ns.unfrustrated, ns.comp_label_plus, ns.components_plus);

    // Adjacency of frustrated plaquettes through a single shared bond; sorted
    // by neighbor index so greedy choices are deterministic.
    std::vector<std::vector<std::pair<int, int>>> adj{std::size_t(np)};
    for (int b = 0; b < cx.n_cells(1); ++b) {
        const auto& cof = cx.cofaces(1, b);
        for (std::size_t i = 0; i < cof.size(); ++i)
            for (std::size_t j = i + 1; j < cof.size(); ++j) {
                int p = cof[i], q = cof[j];
                if (ns.frustrated.get(std::size_t(p)) && ns.frustrated.get(std::size_t(q))) {
                    adj[std::size_t(p)].push_back({q, b});
                    adj[std::size_t(q)].push_back({p, b});
                }
            }
    }
    for (auto& v : adj)
        std::sort(v.begin(), v.end());

    std::vector<int> mate(std::size_t(np), -1);
    for (const auto& comp : ns.components_minus)
        match_component(comp, adj, mate);

    for (int p = 0; p < np; ++p) {
        if (!ns.frustrated.get(std::size_t(p)))
            continue;
        int q = mate[std::size_t(p)];
        if (q < 0) {
            ns.unmatched.push_back(p);
        } else if (p < q) {
            int common = -1;
            for (auto [r, b] : adj[std::size_t(p)])
                if (r == q) {
                    common = b;
                    break;
                }
            ns.pair_cover.push_back({p, q, common});
        }
    }

    ns.bplus_bonds = Bitvec(std::size_t(cx.n_cells(1)));
    for (int b = 0; b < cx.n_cells(1); ++b)
        for (int p : cx.cofaces(1, b))
            if (ns.frustrated.get(std::size_t(p))) {
                ns.bplus_bonds.set(std::size_t(b));
                break;
            }
    for (const auto& pr : ns.pair_cover)
        ns.bplus_bonds.set(std::size_t(pr[2]), false);
    return ns;
}

BondConfig gauge_transform(const CellComplex& cx, const BondConfig& bonds, const Bitvec& eps_down)
{
    if (eps_down.size() != std::size_t(cx.n_cells(0)))
        throw std::invalid_argument("gauge_transform: eps must cover all sites");
    BondConfig out = bonds;
    for (int b = 0; b < cx.n_cells(1); ++b) {
        const auto& f = cx.faces(1, b);
        if (eps_down.get(std::size_t(f[0])) != eps_down.get(std::size_t(f[1])))
            out.neg.flip(std::size_t(b));
    }
    out.sampled = false;
    return out;
}

namespace {

AllFrustratedConfig all_frustrated(const CellComplex& cx, double j0,
                                   bool (*in_bminus)(int axis, const std::array<int, 3>& pos))
{
    AllFrustratedConfig out;
    out.bonds.j0 = j0;
    out.bonds.neg = Bitvec(std::size_t(cx.n_cells(1)));
    out.bminus = Bitvec(std::size_t(cx.n_cells(1)));
    out.bplus = Bitvec(std::size_t(cx.n_cells(1)));
    for (int b = 0; b < cx.n_cells(1); ++b) {
        const Cell& c = cx.cell(1, b);
        int axis = __builtin_ctz(c.mask);
        if (in_bminus(axis, c.pos)) {
            out.bonds.neg.set(std::size_t(b));
            out.bminus.set(std::size_t(b));
        } else {
            out.bplus.set(std::size_t(b));
        }
    }
    return out;
}

}  // namespace

AllFrustratedConfig build_all_frustrated_3d(const CellComplex& cx, double j0)
{
    if (cx.dim() != 3)
        throw std::invalid_argument("build_all_frustrated_3d: complex must be 3-dimensional");
    return all_frustrated(cx, j0, [](int axis, const std::array<int, 3>& p) {
        switch (axis) {
            case 0: return p[1] % 2 == 0 && p[2] % 2 == 0;
            case 1: return p[0] % 2 == 1 && p[2] % 2 == 1;
            default: return p[0] % 2 == 0 && p[1] % 2 == 1;
        }
    });
}

AllFrustratedConfig build_all_frustrated_2d(const CellComplex& cx, double j0)
{
    if (cx.dim() != 2)
        throw std::invalid_argument("build_all_frustrated_2d: complex must be 2-dimensional");
    return all_frustrated(cx, j0, [](int axis, const std::array<int, 3>& p) {
        return axis == 1 && p[0] % 2 == 1;
    });
}

}  // namespace spintop
