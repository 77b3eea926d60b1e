#include "spintop/cell_complex.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace spintop {

void Lattice::validate() const
{
    if (d != 2 && d != 3)
        throw std::invalid_argument("lattice dimension must be 2 or 3");
    for (int a = 0; a < d; ++a) {
        int n = extents[std::size_t(a)];
        if (n < 1)
            throw std::invalid_argument("lattice extent must be >= 1");
        if (periodic(a) && n < 3)
            throw std::invalid_argument("periodic axis needs extent >= 3");
    }
}

std::uint64_t CellComplex::key(const std::array<int, 3>& pos, unsigned char mask) const
{
    std::uint64_t k = 0;
    for (int a = 0; a < 3; ++a)
        k = k * 4096 + std::uint64_t(pos[std::size_t(a)] + 1);
    return k * 8 + mask;
}

CellComplex::CellComplex(const Lattice& lat) : lat_(lat)
{
    lat_.validate();
    const int d = lat_.d;

    // Sites along a free axis run 0..n, along a periodic one 0..n-1; a cell
    // extending along an axis has base 0..n-1 either way.
    auto site_hi = [&](int a) {
        return lat_.periodic(a) ? lat_.extents[std::size_t(a)] - 1 : lat_.extents[std::size_t(a)];
    };

    std::array<int, 3> hi{0, 0, 0};
    for (int a = 0; a < d; ++a)
        hi[std::size_t(a)] = site_hi(a);

    for (int k = 0; k <= d; ++k) {
        std::array<int, 3> pos{0, 0, 0};
        for (pos[0] = 0; pos[0] <= hi[0]; ++pos[0]) {
            for (pos[1] = 0; pos[1] <= hi[1]; ++pos[1]) {
                for (pos[2] = 0; pos[2] <= hi[2]; ++pos[2]) {
                    for (unsigned char mask = 0; mask < (1 << d); ++mask) {
                        if (__builtin_popcount(mask) != k)
                            continue;
                        bool ok = true;
                        for (int a = 0; a < d && ok; ++a)
                            if ((mask >> a) & 1)
                                if (!lat_.periodic(a) && pos[std::size_t(a)] >= lat_.extents[std::size_t(a)])
                                    ok = false;
                        if (!ok)
                            continue;
                        int idx = int(cells_[std::size_t(k)].size());
                        cells_[std::size_t(k)].push_back(Cell{pos, mask});
                        index_[std::size_t(k)][key(pos, mask)] = idx;
                    }
                }
            }
        }
    }

    for (int k = 1; k <= d; ++k) {
        auto& lists = bnd_[std::size_t(k)];
        lists.resize(cells_[std::size_t(k)].size());
        for (std::size_t i = 0; i < cells_[std::size_t(k)].size(); ++i) {
            const Cell& c = cells_[std::size_t(k)][i];
            for (int a = 0; a < d; ++a) {
                if (!((c.mask >> a) & 1))
                    continue;
                unsigned char fmask = static_cast<unsigned char>(c.mask & ~(1 << a));
                std::array<int, 3> far = c.pos;
                far[std::size_t(a)] += 1;
                if (lat_.periodic(a))
                    far[std::size_t(a)] %= lat_.extents[std::size_t(a)];
                int f0 = index_of(k - 1, c.pos, fmask);
                int f1 = index_of(k - 1, far, fmask);
                lists[i].push_back(f0);
                lists[i].push_back(f1);
            }
        }
    }
    bnd_[0].resize(cells_[0].size());

    for (int k = 0; k <= d; ++k)
        cob_[std::size_t(k)].resize(cells_[std::size_t(k)].size());
    for (int k = 1; k <= d; ++k)
        for (std::size_t i = 0; i < bnd_[std::size_t(k)].size(); ++i)
            for (int f : bnd_[std::size_t(k)][i])
                cob_[std::size_t(k - 1)][std::size_t(f)].push_back(int(i));
}

int CellComplex::index_of(int k, const std::array<int, 3>& pos, unsigned char mask) const
{
    auto it = index_[std::size_t(k)].find(key(pos, mask));
    return it == index_[std::size_t(k)].end() ? -1 : it->second;
}

std::vector<int> CellComplex::vertices_of(int k, int i) const
{
    const Cell& c = cells_[std::size_t(k)][std::size_t(i)];
    std::vector<int> out;
    int nsub = 1 << __builtin_popcount(c.mask);
    std::vector<int> axes;
    for (int a = 0; a < lat_.d; ++a)
        if ((c.mask >> a) & 1)
            axes.push_back(a);
    for (int s = 0; s < nsub; ++s) {
        std::array<int, 3> p = c.pos;
        for (std::size_t j = 0; j < axes.size(); ++j) {
            if ((s >> j) & 1) {
                int a = axes[j];
                p[std::size_t(a)] += 1;
                if (lat_.periodic(a))
                    p[std::size_t(a)] %= lat_.extents[std::size_t(a)];
            }
        }
        out.push_back(index_of(0, p, 0));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool CellComplex::dual_cell_on_boundary(int k, int i) const
{
    // An interior k-cell of Z^d has 2(d-k) cofaces.
    int expected = 2 * (lat_.d - k);
    return int(cob_[std::size_t(k)][std::size_t(i)].size()) < expected;
}

CellComplex build_complex(const Lattice& lat)
{
    return CellComplex(lat);
}

Chain2 boundary(const CellComplex& cx, const Chain2& chain)
{
    if (chain.dim < 1)
        throw std::invalid_argument("boundary: chain dimension must be >= 1");
    if (chain.support.size() != std::size_t(cx.n_cells(chain.dim)))
        throw std::invalid_argument("boundary: support length mismatch");
    Chain2 out = cx.empty_chain(chain.dim - 1);
    chain.support.for_each_set([&](std::size_t i) {
        for (int f : cx.faces(chain.dim, int(i)))
            out.support.flip(std::size_t(f));
    });
    return out;
}

Chain2 coboundary(const CellComplex& cx, const Chain2& chain)
{
    if (chain.dim > cx.dim() - 1)
        throw std::invalid_argument("coboundary: chain dimension must be <= d-1");
    if (chain.support.size() != std::size_t(cx.n_cells(chain.dim)))
        throw std::invalid_argument("coboundary: support length mismatch");
    Chain2 out = cx.empty_chain(chain.dim + 1);
    chain.support.for_each_set([&](std::size_t i) {
        for (int c : cx.cofaces(chain.dim, int(i)))
            out.support.flip(std::size_t(c));
    });
    return out;
}

std::string lattice_to_json(const Lattice& lat)
{
    nlohmann::json j;
    j["d"] = lat.d;
    std::vector<int> ext(lat.extents.begin(), lat.extents.begin() + lat.d);
    j["extents"] = ext;
    std::vector<std::string> bc;
    for (int a = 0; a < lat.d; ++a)
        bc.push_back(lat.periodic(a) ? "periodic" : "free");
    j["bc"] = bc;
    return j.dump();
}

Lattice lattice_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    Lattice lat;
    lat.d = j.at("d").get<int>();
    auto ext = j.at("extents").get<std::vector<int>>();
    if (int(ext.size()) != lat.d)
        throw std::invalid_argument("lattice json: extents length != d");
    for (int a = 0; a < lat.d; ++a)
        lat.extents[std::size_t(a)] = ext[std::size_t(a)];
    if (j.contains("bc")) {
        auto bc = j.at("bc").get<std::vector<std::string>>();
        if (int(bc.size()) != lat.d)
            throw std::invalid_argument("lattice json: bc length != d");
        for (int a = 0; a < lat.d; ++a) {
            if (bc[std::size_t(a)] == "periodic")
                lat.bc[std::size_t(a)] = Bc::periodic;
            else if (bc[std::size_t(a)] == "free")
                lat.bc[std::size_t(a)] = Bc::free_;
            else
                throw std::invalid_argument("lattice json: bc must be free|periodic");
        }
    }
    lat.validate();
    return lat;
}

}  // namespace spintop
