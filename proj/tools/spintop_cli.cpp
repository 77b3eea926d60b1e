// Batch front-end: generate disorder instances, analyze their frustration
// networks, compute desk-scale ground states, run the topology verifiers,
// and scan percolation statistics. Every output embeds its manifest and is
// byte-reproducible from the same command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spintop/corpus.hpp"
#include "spintop/rng.hpp"
#include "spintop/ground_state.hpp"
#include "spintop/percolation.hpp"
#include "spintop/serialize.hpp"
#include "spintop/topology.hpp"

using nlohmann::json;
using namespace spintop;

namespace {

constexpr const char* kVersion = "spintop 1.0.0";
constexpr const char* kSchema = "spintop/v1";

int worker_count()
{
    const char* env = std::getenv("SPINTOP_WORKERS");
    if (!env)
        return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

Lattice lattice_from_args(int d, const std::vector<int>& extents, std::vector<std::string> bc)
{
    Lattice lat;
    lat.d = d;
    if (int(extents.size()) != d)
        throw CLI::ValidationError("--extents", "need exactly d entries");
    for (int a = 0; a < d; ++a)
        lat.extents[std::size_t(a)] = extents[std::size_t(a)];
    if (bc.empty())
        bc.assign(std::size_t(d), "free");
    if (int(bc.size()) != d)
        throw CLI::ValidationError("--bc", "need exactly d entries");
    for (int a = 0; a < d; ++a) {
        if (bc[std::size_t(a)] == "periodic")
            lat.bc[std::size_t(a)] = Bc::periodic;
        else if (bc[std::size_t(a)] == "free")
            lat.bc[std::size_t(a)] = Bc::free_;
        else
            throw CLI::ValidationError("--bc", "entries must be free|periodic");
    }
    lat.validate();
    return lat;
}

json lattice_json(const Lattice& lat)
{
    return json::parse(lattice_to_json(lat));
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

void emit(const std::string& path, const json& doc)
{
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text(path, text);
}

struct LoadedInstance {
    Lattice lat;
    BondConfig bonds;
    json manifest;
};

LoadedInstance load_bonds_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    json doc = json::parse(in);
    LoadedInstance li;
    li.manifest = doc.at("manifest");
    li.lat = lattice_from_json(li.manifest.at("lattice").dump());
    CellComplex cx(li.lat);
    li.bonds = bond_config_from_json(doc.at("bonds"), std::size_t(cx.n_cells(1)));
    return li;
}

LoadedInstance load_instance_arg(const std::string& in_path, const std::string& instance)
{
    if (!instance.empty()) {
        CorpusInstance ci = corpus_instance(instance);
        LoadedInstance li;
        li.lat = ci.lat;
        li.bonds = ci.bonds;
        return li;
    }
    if (in_path.empty())
        throw std::invalid_argument("need --in or --instance");
    return load_bonds_file(in_path);
}

// -------------------------------------------------------------- verify ----

json run_all_verifiers(const Lattice& lat, const BondConfig& bonds, int gs_cap, bool& all_pass)
{
    CellComplex cx(lat);
    NetworkSplit ns = split_networks(cx, bonds);
    SubComplex nplus = subcomplex_from_plaquettes(cx, ns.unfrustrated);
    SubComplex full = full_subcomplex(cx);

    std::vector<VerifyReport> reports;

    // Cube parity: every cube has an even number of frustrated faces.
    if (lat.d == 3) {
        VerifyReport rep;
        rep.check = "cube_parity";
        for (int c = 0; c < cx.n_cells(3); ++c) {
            int cnt = 0;
            for (int p : cx.faces(3, c))
                cnt += ns.frustrated.get(std::size_t(p));
            if (cnt % 2 != 0) {
                rep.require(false, "cube " + std::to_string(c) + " has odd frustrated faces");
                break;
            }
        }
        reports.push_back(std::move(rep));
    }

    reports.push_back(verify_homology_exactness(cx, ns.frustrated, ns.unfrustrated));
    reports.push_back(verify_cohomology_exactness(cx, ns.frustrated, ns.unfrustrated));
    reports.push_back(verify_commutative_diagram(cx, bonds, ns.frustrated, ns.unfrustrated));
    reports.push_back(verify_duality_dimensions(nplus));
    reports.push_back(verify_universal_coefficients(nplus));
    reports.push_back(verify_universal_coefficients(full));

    // Two-cochain identity on deterministic pseudo-random surfaces.
    {
        VerifyReport rep;
        rep.check = "two_cochain_identity";
        for (std::uint64_t r = 0; r < 8; ++r) {
            Chain2 s = cx.empty_chain(2);
            for (int p = 0; p < cx.n_cells(2); ++p)
                if (rng::at(r, rng::perturbation, std::uint64_t(p)) & 1)
                    s.support.set(std::size_t(p));
            int lhs = two_cochain_phi(cx, bonds, s);
            int rhs = frustration_of_loop(cx, bonds, boundary(cx, s));
            rep.require(lhs == rhs, "Phi(s) = phi(boundary s)");
        }
        reports.push_back(std::move(rep));
    }

    // Linking with a degenerate (empty) boundary on fully unfrustrated
    // instances with nontrivial classes, e.g. the torus winding wall.
    if (ns.frustrated.none()) {
        QuotientSpace h1 = cohomology_space(nplus, 1);
        if (h1.dim_H > 0) {
            VerifyReport rep;
            rep.check = "linking_degenerate_gamma";
            HomologySummary h = homology(nplus, 1);
            for (const auto& loop : h.basis) {
                LinkResult lr = link_mod2(cx, loop, cx.empty_chain(2));
                rep.notes.push_back(lr.defined ? "defined, parity " + std::to_string(lr.parity)
                                               : "undefined: " + lr.reason);
            }
            reports.push_back(std::move(rep));
        }
    }

    // Interface identity on exhaustive ground states when feasible.
    if (cx.n_cells(0) <= gs_cap) {
        GroundStateResult gs = brute_force_ground_states(cx, bonds, gs_cap);
        VerifyReport rep;
        rep.check = "interface_identity_ground_states";
        for (const auto& st : gs.states) {
            VerifyReport one = interface_check(cx, bonds, st, nplus);
            rep.require(one.pass, "interface identity on a ground state");
        }
        rep.dims["states_checked"] = (long long)(gs.states.size());
        reports.push_back(std::move(rep));
    }

    json out = json::array();
    for (const auto& rep : reports) {
        all_pass = all_pass && rep.pass;
        out.push_back(verify_report_to_json(rep));
    }
    return out;
}

// -------------------------------------------------------------- analyze ---

json analyze_instance(const Lattice& lat, const BondConfig& bonds)
{
    CellComplex cx(lat);
    NetworkSplit ns = split_networks(cx, bonds);
    SubComplex nplus = subcomplex_from_plaquettes(cx, ns.unfrustrated);

    json rep;
    rep["n_plaquettes"] = cx.n_cells(2);
    rep["n_frustrated"] = ns.frustrated.count();
    rep["n_unfrustrated"] = ns.unfrustrated.count();

    auto comp_sizes = [](const std::vector<std::vector<int>>& comps) {
        std::vector<std::size_t> sizes;
        for (const auto& c : comps)
            sizes.push_back(c.size());
        std::sort(sizes.rbegin(), sizes.rend());
        return sizes;
    };
    rep["components_minus"] = comp_sizes(ns.components_minus);
    rep["components_plus"] = comp_sizes(ns.components_plus);

    json pairs = json::array();
    for (const auto& pr : ns.pair_cover)
        pairs.push_back({{"p", pr[0]}, {"q", pr[1]}, {"common_bond", pr[2]}});
    rep["pair_cover"] = pairs;
    rep["n_pairs"] = ns.pair_cover.size();
    rep["unmatched_frustrated"] = ns.unmatched;
    rep["bplus_bond_count"] = ns.bplus_bonds.count();

    FrustrationClass fc = frustration_class(cx, bonds, nplus);
    rep["h1_nplus_dim"] = fc.h1.dim_H;
    rep["phi_on_basis"] = fc.basis_values;
    json basis = json::array();
    for (const auto& loop : fc.h1.basis)
        basis.push_back(chain_to_json(loop));
    rep["h1_basis_loops"] = basis;
    return rep;
}

// ------------------------------------------------------------ percolate ---

std::vector<double> parse_x_range(const std::string& spec)
{
    // A single value, a comma list, or lo:hi:step.
    std::vector<double> xs;
    if (spec.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream ss(spec);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw CLI::ValidationError("--x-range", "expected lo:hi:step");
        for (double x = lo; x <= hi + 1e-12; x += step)
            xs.push_back(x);
    } else {
        std::istringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ','))
            xs.push_back(std::stod(tok));
    }
    if (xs.empty())
        throw CLI::ValidationError("--x-range", "no values");
    for (double x : xs)
        if (x < 0.0 || x > 1.0)
            throw CLI::ValidationError("--x-range", "values must be in [0,1]");
    return xs;
}

std::string format_double(double v)
{
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topology of frustration in Ising spin glasses on cubical lattices"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Sample a disorder instance and write it to a file");
    int gen_d = 2;
    std::vector<int> gen_ext;
    std::vector<std::string> gen_bc;
    double gen_x = 0.5, gen_j0 = 1.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--d", gen_d, "Lattice dimension (2 or 3)")->required();
    gen->add_option("--extents", gen_ext, "Cells per axis")->required()->delimiter(',');
    gen->add_option("--bc", gen_bc, "Boundary per axis: free|periodic")->delimiter(',');
    gen->add_option("--x", gen_x, "Positive-coupling concentration");
    gen->add_option("--j0", gen_j0, "Coupling magnitude");
    gen->add_option("--seed", gen_seed, "Master seed");
    gen->add_option("--out", gen_out, "Output file")->required();

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "Frustration-network report for an instance");
    std::string an_in, an_out, an_instance;
    analyze->add_option("--in", an_in, "Bond-configuration file");
    analyze->add_option("--instance", an_instance, "Named corpus instance instead of a file");
    analyze->add_option("--out", an_out, "Report file (default stdout)");

    // ---- gs ----
    auto* gs = app.add_subcommand("gs", "Exhaustive ground states, walls, interface identity");
    std::string gs_in, gs_out, gs_instance;
    int gs_cap = 24;
    gs->add_option("--in", gs_in, "Bond-configuration file");
    gs->add_option("--instance", gs_instance, "Named corpus instance instead of a file");
    gs->add_option("--cap", gs_cap, "Maximum number of sites for enumeration");
    gs->add_option("--out", gs_out, "Report file (default stdout)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Run the topology verifiers");
    std::string vf_in, vf_out, vf_instance;
    bool vf_suite = false;
    int vf_cap = 20;
    verify->add_option("--in", vf_in, "Bond-configuration file");
    verify->add_flag("--suite", vf_suite, "Run the built-in corpus");
    verify->add_option("--instance", vf_instance, "Run one named corpus instance");
    verify->add_option("--cap", vf_cap, "Site cap for the ground-state checks");
    verify->add_option("--out", vf_out, "Report file (default stdout)");

    // ---- percolate ----
    auto* perc = app.add_subcommand("percolate", "Percolation scans over a concentration range");
    int pc_d = 2;
    std::vector<int> pc_ext;
    std::vector<std::string> pc_bc;
    std::string pc_xrange = "0.5", pc_mode = "strip", pc_out;
    long long pc_trials = 10000;
    std::uint64_t pc_seed = 0;
    int pc_n = 3;
    bool pc_json = false;
    perc->add_option("--d", pc_d, "Lattice dimension (cluster modes)");
    perc->add_option("--extents", pc_ext, "Cells per axis (cluster modes)")->delimiter(',');
    perc->add_option("--bc", pc_bc, "Boundary per axis")->delimiter(',');
    perc->add_option("--x-range", pc_xrange, "Single x, comma list, or lo:hi:step")->required();
    perc->add_option("--trials", pc_trials, "Monte-Carlo trials per x");
    perc->add_option("--seed", pc_seed, "Master seed");
    perc->add_option("--mode", pc_mode, "strip | clusters-unfrustrated | clusters-negative");
    perc->add_option("--n", pc_n, "Strip length for strip mode");
    perc->add_flag("--json", pc_json, "Emit JSON with histograms instead of CSV");
    perc->add_option("--out", pc_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            Lattice lat = lattice_from_args(gen_d, gen_ext, gen_bc);
            CellComplex cx(lat);
            BondConfig bonds = sample_couplings(cx, gen_x, gen_j0, gen_seed);
            json manifest = {{"tool", kVersion},
                             {"command", "gen"},
                             {"lattice", lattice_json(lat)},
                             {"x", gen_x},
                             {"j0", gen_j0},
                             {"seed", gen_seed},
                             {"out", gen_out}};
            json doc = {{"schema", kSchema},
                        {"manifest", manifest},
                        {"bonds", bond_config_to_json(bonds)}};
            emit(gen_out, doc);
            return 0;
        }

        if (analyze->parsed()) {
            LoadedInstance li = load_instance_arg(an_in, an_instance);
            json manifest = {{"tool", kVersion},
                             {"command", "analyze"},
                             {"lattice", lattice_json(li.lat)},
                             {"in", an_in},
                             {"instance", an_instance},
                             {"out", an_out}};
            json doc = {{"schema", kSchema},
                        {"manifest", manifest},
                        {"report", analyze_instance(li.lat, li.bonds)}};
            emit(an_out, doc);
            return 0;
        }

        if (gs->parsed()) {
            LoadedInstance li = load_instance_arg(gs_in, gs_instance);
            CellComplex cx(li.lat);
            GroundStateResult res = brute_force_ground_states(cx, li.bonds, gs_cap);
            NetworkSplit ns = split_networks(cx, li.bonds);
            SubComplex nplus = subcomplex_from_plaquettes(cx, ns.unfrustrated);

            json rep = ground_state_result_to_json(res);
            bool interface_ok = true;
            if (!res.states.empty()) {
                rep["walls_of_first_state"] =
                    wall_set_to_json(domain_walls(cx, li.bonds, res.states[0]));
                for (const auto& st : res.states)
                    interface_ok = interface_ok && interface_check(cx, li.bonds, st, nplus).pass;
            }
            rep["interface_identity_pass"] = interface_ok;

            json manifest = {{"tool", kVersion},
                             {"command", "gs"},
                             {"lattice", lattice_json(li.lat)},
                             {"in", gs_in},
                             {"instance", gs_instance},
                             {"cap", gs_cap},
                             {"out", gs_out}};
            json doc = {{"schema", kSchema}, {"manifest", manifest}, {"report", rep}};
            emit(gs_out, doc);
            return interface_ok ? 0 : 1;
        }

        if (verify->parsed()) {
            std::vector<CorpusInstance> instances;
            if (vf_suite) {
                instances = builtin_corpus();
            } else if (!vf_instance.empty()) {
                instances.push_back(corpus_instance(vf_instance));
            } else if (!vf_in.empty()) {
                LoadedInstance li = load_bonds_file(vf_in);
                instances.push_back(CorpusInstance{vf_in, li.lat, li.bonds});
            } else {
                std::cerr << "verify: need --in, --suite, or --instance\n";
                return 2;
            }

            bool all_pass = true;
            json per_instance = json::array();
            for (const auto& inst : instances) {
                bool pass_here = true;
                json checks = run_all_verifiers(inst.lat, inst.bonds, vf_cap, pass_here);
                per_instance.push_back({{"instance", inst.name},
                                        {"lattice", lattice_json(inst.lat)},
                                        {"pass", pass_here},
                                        {"checks", checks}});
                all_pass = all_pass && pass_here;
            }
            json manifest = {{"tool", kVersion}, {"command", "verify"}, {"suite", vf_suite},
                             {"instance", vf_instance}, {"in", vf_in},  {"cap", vf_cap},
                             {"out", vf_out}};
            json doc = {{"schema", kSchema},
                        {"manifest", manifest},
                        {"pass", all_pass},
                        {"instances", per_instance}};
            emit(vf_out, doc);
            return all_pass ? 0 : 1;
        }

        if (perc->parsed()) {
            std::vector<double> xs = parse_x_range(pc_xrange);
            int workers = worker_count();
            json manifest = {{"tool", kVersion}, {"command", "percolate"},
                             {"mode", pc_mode},  {"x_range", pc_xrange},
                             {"trials", pc_trials}, {"seed", pc_seed},
                             {"out", pc_out}};

            std::vector<PercolationReport> reports;
            std::string geometry;
            if (pc_mode == "strip") {
                Lattice lat{2, {pc_n, 1, 1}, {Bc::free_, Bc::free_, Bc::free_}};
                CellComplex cx(lat);
                std::vector<int> plaqs;
                for (int p = 0; p < cx.n_cells(2); ++p)
                    plaqs.push_back(p);
                for (double x : xs)
                    reports.push_back(mc_prob_unfrustrated(cx, plaqs, x, pc_trials, pc_seed));
                geometry = "strip_n=" + std::to_string(pc_n);
                manifest["n"] = pc_n;
            } else if (pc_mode == "clusters-unfrustrated" || pc_mode == "clusters-negative") {
                Lattice lat = lattice_from_args(pc_d, pc_ext, pc_bc);
                ScanMode mode = pc_mode == "clusters-negative" ? ScanMode::negative_bonds
                                                               : ScanMode::unfrustrated_plaquettes;
                for (double x : xs)
                    reports.push_back(cluster_scan(lat, x, pc_trials, pc_seed, mode, workers));
                std::ostringstream g;
                g << "extents=";
                for (int a = 0; a < pc_d; ++a)
                    g << (a ? "x" : "") << lat.extents[std::size_t(a)];
                geometry = g.str();
                manifest["lattice"] = lattice_json(lat);
            } else {
                std::cerr << "percolate: unknown mode " << pc_mode << "\n";
                return 2;
            }

            if (pc_json) {
                json rows = json::array();
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    json row = percolation_report_to_json(reports[i]);
                    row["geometry"] = geometry;
                    rows.push_back(row);
                }
                emit(pc_out, json{{"schema", kSchema}, {"manifest", manifest}, {"rows", rows}});
            } else {
                std::ostringstream csv;
                csv << "# manifest: " << manifest.dump() << "\n";
                csv << "x,geometry,trials,estimate,stderr,bound,largest_fraction\n";
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const auto& r = reports[i];
                    csv << format_double(r.x) << ',' << geometry << ',' << r.trials << ','
                        << format_double(r.estimate) << ',' << format_double(r.stderr_) << ','
                        << format_double(r.bound) << ',' << format_double(r.largest_fraction)
                        << "\n";
                }
                if (pc_out.empty() || pc_out == "-")
                    std::cout << csv.str();
                else
                    write_text(pc_out, csv.str());
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
