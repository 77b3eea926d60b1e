#include "spintop/serialize.hpp"

#include <stdexcept>

namespace spintop {

namespace {
const char* kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c)
{
    if (c >= 'A' && c <= 'Z')
        return c - 'A';
    if (c >= 'a' && c <= 'z')
        return c - 'a' + 26;
    if (c >= '0' && c <= '9')
        return c - '0' + 52;
    if (c == '+')
        return 62;
    if (c == '/')
        return 63;
    throw std::invalid_argument("base64: invalid character");
}
}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& data)
{
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < data.size(); i += 3) {
        std::uint32_t chunk = std::uint32_t(data[i]) << 16;
        int have = 1;
        if (i + 1 < data.size()) {
            chunk |= std::uint32_t(data[i + 1]) << 8;
            have = 2;
        }
        if (i + 2 < data.size()) {
            chunk |= std::uint32_t(data[i + 2]);
            have = 3;
        }
        out.push_back(kB64[(chunk >> 18) & 63]);
        out.push_back(kB64[(chunk >> 12) & 63]);
        out.push_back(have >= 2 ? kB64[(chunk >> 6) & 63] : '=');
        out.push_back(have >= 3 ? kB64[chunk & 63] : '=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text)
{
    if (text.size() % 4 != 0)
        throw std::invalid_argument("base64: length must be a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int pad = 0;
        std::uint32_t chunk = 0;
        for (int j = 0; j < 4; ++j) {
            char c = text[i + std::size_t(j)];
            if (c == '=') {
                ++pad;
                chunk <<= 6;
            } else {
                chunk = (chunk << 6) | std::uint32_t(b64_value(c));
            }
        }
        out.push_back(std::uint8_t((chunk >> 16) & 0xff));
        if (pad < 2)
            out.push_back(std::uint8_t((chunk >> 8) & 0xff));
        if (pad < 1)
            out.push_back(std::uint8_t(chunk & 0xff));
    }
    return out;
}

std::vector<std::uint8_t> bitvec_to_bytes(const Bitvec& v)
{
    std::vector<std::uint8_t> bytes((v.size() + 7) / 8, 0);
    v.for_each_set([&](std::size_t i) { bytes[i >> 3] |= std::uint8_t(1) << (i & 7); });
    return bytes;
}

Bitvec bitvec_from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t n_bits)
{
    if (bytes.size() < (n_bits + 7) / 8)
        throw std::invalid_argument("bitvec_from_bytes: too few bytes");
    Bitvec v(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i)
        if ((bytes[i >> 3] >> (i & 7)) & 1)
            v.set(i);
    return v;
}

nlohmann::json bond_config_to_json(const BondConfig& bonds)
{
    nlohmann::json j;
    j["j0"] = bonds.j0;
    if (bonds.sampled) {
        j["x"] = bonds.x;
        j["seed"] = bonds.seed;
    }
    j["n_bonds"] = bonds.n_bonds();
    j["signs"] = base64_encode(bitvec_to_bytes(bonds.neg));
    return j;
}

BondConfig bond_config_from_json(const nlohmann::json& j, std::size_t n_bonds)
{
    BondConfig b;
    b.j0 = j.at("j0").get<double>();
    if (!(b.j0 > 0.0))
        throw std::invalid_argument("bond config: j0 must be positive");
    std::size_t n = j.at("n_bonds").get<std::size_t>();
    if (n != n_bonds)
        throw std::invalid_argument("bond config: bond count does not match the lattice");
    b.neg = bitvec_from_bytes(base64_decode(j.at("signs").get<std::string>()), n_bonds);
    if (j.contains("x")) {
        b.sampled = true;
        b.x = j.at("x").get<double>();
        b.seed = j.value("seed", std::uint64_t(0));
    }
    return b;
}

nlohmann::json chain_to_json(const Chain2& c)
{
    nlohmann::json j;
    j["dim"] = c.dim;
    j["cells"] = c.support.indices();
    return j;
}

Chain2 chain_from_json(const nlohmann::json& j, std::size_t n_cells)
{
    Chain2 c;
    c.dim = j.at("dim").get<int>();
    c.support = Bitvec(n_cells);
    for (int i : j.at("cells").get<std::vector<int>>())
        c.support.set(std::size_t(i));
    return c;
}

nlohmann::json verify_report_to_json(const VerifyReport& rep)
{
    nlohmann::json j;
    j["check"] = rep.check;
    j["pass"] = rep.pass;
    j["dims"] = rep.dims;
    j["notes"] = rep.notes;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [name, cells] : rep.witnesses) {
        nlohmann::json e;
        e["name"] = name;
        e["cells"] = cells;
        w.push_back(e);
    }
    j["witnesses"] = w;
    return j;
}

nlohmann::json percolation_report_to_json(const PercolationReport& rep)
{
    nlohmann::json j;
    j["x"] = rep.x;
    j["trials"] = rep.trials;
    j["estimate"] = rep.estimate;
    j["stderr"] = rep.stderr_;
    j["bound"] = rep.bound;
    j["largest_fraction"] = rep.largest_fraction;
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [sz, n] : rep.cluster_histogram)
        h[std::to_string(sz)] = n;
    j["cluster_histogram"] = h;
    return j;
}

nlohmann::json ground_state_result_to_json(const GroundStateResult& gs)
{
    nlohmann::json j;
    j["energy_j0_units"] = gs.energy_units;
    j["j0"] = gs.j0;
    j["energy"] = double(gs.energy_units) * gs.j0;
    j["degeneracy"] = gs.degeneracy;
    j["states_truncated"] = gs.states_truncated;
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : gs.states) {
        std::string bits(s.n_sites(), '+');
        s.down.for_each_set([&](std::size_t i) { bits[i] = '-'; });
        states.push_back(bits);
    }
    j["states"] = states;
    return j;
}

nlohmann::json wall_set_to_json(const DomainWallSet& ws)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& w : ws.walls) {
        nlohmann::json e;
        e["dual_cells_of_bonds"] = w.cells.support.indices();
        e["boundary_dual_of_plaquettes"] = w.boundary.support.indices();
        j.push_back(e);
    }
    return j;
}

}  // namespace spintop
