// forge: command-line front end for the forge library.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forge/pipeline.hpp"

namespace fs = std::filesystem;
using namespace forge;

namespace {

enum Exit { kVerified = 0, kRefuted = 1, kInput = 2, kResource = 3 };

void emit(const json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << dump(j);
    } else {
        write_file(out, dump(j));
    }
}

int thread_cap() {
    const char* env = std::getenv("FORGE_THREADS");
    if (!env || !*env) return 1;
    try {
        int n = std::stoi(env);
        if (n < 1) throw InputError("");
        return n;
    } catch (...) {
        throw InputError("FORGE_THREADS must be a positive integer");
    }
}

json with_header(json j, const std::string& command) {
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

std::string labels_path(const std::string& out) {
    fs::path p(out);
    return (p.parent_path() / (p.stem().string() + ".labels.json")).string();
}

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string kind;
    std::vector<int> sizes;
    int rows = 0, cols = 0, n = 0, r = 2, dim = 0;
    std::vector<int> row_caps, col_caps, ground;
    std::string input, input2, out;
    bool klein = false;
};

int run_build(const BuildArgs& a) {
    std::map<std::string, PermAction> actions;
    SimplicialComplex k;
    auto load = [](const std::string& path) {
        if (path.empty()) throw InputError("--input is required for this kind");
        return complex_from_json(read_json(path));
    };
    if (a.kind == "multipartite") {
        k = multipartite_complex(a.sizes);
    } else if (a.kind == "chessboard") {
        k = chessboard_complex(a.rows, a.cols);
    } else if (a.kind == "multichess") {
        ChessboardSpec spec{a.rows, a.cols, a.row_caps, a.col_caps};
        if (spec.row_caps.empty()) spec.row_caps.assign(static_cast<std::size_t>(a.rows), 1);
        if (spec.col_caps.empty()) spec.col_caps.assign(static_cast<std::size_t>(a.cols), 1);
        k = multi_chessboard_complex(spec);
        if (a.klein) {
            if (a.rows != 4) throw InputError("--klein needs 4 rows");
            actions.emplace("klein4", klein_row_action(a.cols));
        }
    } else if (a.kind == "bier") {
        k = bier_sphere(load(a.input));
    } else if (a.kind == "join") {
        k = join(load(a.input), load(a.input2));
    } else if (a.kind == "deleted-join") {
        k = deleted_join(load(a.input), a.r);
    } else if (a.kind == "skeleton") {
        k = skeleton(load(a.input), a.dim);
    } else if (a.kind == "dual") {
        auto base = load(a.input);
        k = alexander_dual(base, a.ground.empty() ? base.ground_set() : a.ground);
    } else if (a.kind == "simplex" || a.kind == "boundary") {
        if (a.n < 1) throw InputError("--n must be >= 1");
        std::vector<Vertex> vs(static_cast<std::size_t>(a.n));
        for (int i = 0; i < a.n; ++i) vs[static_cast<std::size_t>(i)] = i;
        k = a.kind == "simplex" ? SimplicialComplex::simplex(vs) : SimplicialComplex::simplex_boundary(vs);
        if (a.klein) {
            if (a.n != 4) throw InputError("--klein needs n = 4");
            actions.emplace("klein4", PermAction(4, klein_letters(), klein_names()));
        }
    } else if (a.kind == "octahedron") {
        k = octahedron();
        if (a.klein) actions.emplace("klein4", octahedron_rotation_action());
    } else {
        throw InputError("unknown kind '" + a.kind + "'");
    }
    if (k.is_void()) throw InputError("result is the void complex, which has no file representation");
    emit(complex_to_json(k, actions), a.out);
    return kVerified;
}

// ---------------------------------------------------------------- morse / certify

int run_config_space(int r, int d, const std::string& coloring, const std::string& out) {
    auto p = balanced_params(r, d);
    if (config_space_label_bound(p) > 5e6) throw ResourceLimit("configuration space too large for desk scale");
    ConfigSpace cs = coloring.empty() ? build_config_space(p) : ConfigSpace(p, coloring_from_json(read_json(coloring)));
    emit(space_to_json(cs), out);
    if (!out.empty() && out != "-") write_file(labels_path(out), dump(space_labels_to_json(cs)));
    return kVerified;
}

int run_morse(const std::string& space, const std::string& complex, const std::string& out) {
    if (space.empty() == complex.empty()) throw InputError("give exactly one of --space, --complex");
    if (!space.empty()) {
        auto cs = space_from_json(read_json(space));
        auto bm = balanced_matching(cs);
        FaceLattice lat(cs.complex());
        emit(field_to_json(bm.field, critical_cells(bm.field, lat)), out);
    } else {
        auto k = complex_from_json(read_json(complex));
        FaceLattice lat(k);
        auto f = iterated_vertex_matching(lat, k.vertices());
        emit(field_to_json(f, critical_cells(f, lat)), out);
    }
    return kVerified;
}

int run_certify(const std::string& space, const std::string& complex, const std::string& field_path, const std::string& out) {
    if (space.empty() == complex.empty()) throw InputError("give exactly one of --space, --complex");
    const json src = read_json(space.empty() ? complex : space);
    SimplicialComplex k = complex_from_json(src);
    FaceLattice lat(k);
    auto field = field_from_json(read_json(field_path));
    json j;
    j["input_hashes"] = json{{"complex", fnv1a_hex(dump(src))}, {"field", fnv1a_hex(read_file(field_path))}};
    auto violations = check_dvf(field, lat);
    json vj = json::array();
    for (const auto& v : violations) vj.push_back(json{{"condition", std::string(1, v.condition)}, {"detail", v.detail}});
    j["violations"] = vj;
    if (!violations.empty()) {
        emit(with_header(j, "certify"), out);
        return kRefuted;
    }
    auto acyc = acyclicity(field, lat);
    j["acyclic"] = acyc.acyclic;
    if (!acyc.acyclic) {
        j["witness_cycle"] = acyc.witness_cycle->to_string();
        emit(with_header(j, "certify"), out);
        return kRefuted;
    }
    try {
        j["certificate"] = certificate_to_json(connectivity_certificate(field, lat));
    } catch (const MorseError& e) {
        j["error"] = e.what();
        emit(with_header(j, "certify"), out);
        return kRefuted;
    }
    if (src.contains("config_space")) {
        const int target = src["config_space"].at("r").get<int>() * src["config_space"].at("k").get<int>() +
                           src["config_space"].at("s").get<int>() - 2;
        const auto& c = j["certificate"];
        j["target_connectivity"] = target;
        j["target_met"] = c["connectivity"].is_string() || c["connectivity"].get<int>() >= target;
    }
    emit(with_header(j, "certify"), out);
    return j.value("target_met", true) ? kVerified : kRefuted;
}

int run_homology(const std::string& path, bool mod2, bool reduced, bool pm, const std::string& out) {
    auto k = complex_from_json(read_json(path));
    HomologyOptions opt;
    opt.mod2 = mod2;
    opt.reduced = reduced;
    json j = homology_to_json(homology(k, opt));
    if (pm) j["pseudomanifold"] = pseudomanifold_to_json(pseudomanifold_check(k));
    emit(with_header(j, "homology"), out);
    return kVerified;
}

// ---------------------------------------------------------------- equivariant

int run_equivariant_scan(const std::string& kp, const std::string& lp, const std::string& group, int level,
                         std::size_t max_maps, const std::string& out) {
    if (group != "klein4") throw InputError("only --group klein4 is supported");
    const json kj = read_json(kp), lj = read_json(lp);
    auto k = complex_from_json(kj), l = complex_from_json(lj);
    auto ak = action_from_json(kj, group), al = action_from_json(lj, group);
    if (!ak.is_simplicial_on(k) || !al.is_simplicial_on(l)) throw InputError("action is not simplicial");
    if (level < 0 || level > 1) throw InputError("--subdivide must be 0 or 1");
    json levels = json::array();
    bool parity_ok = true, any = false;
    std::optional<long long> first;
    const auto ot = orbit_types(k, ak);
    for (int lvl = 0; lvl <= level; ++lvl) {
        auto scan = enumerate_equivariant_maps(k, l, ak, al, lvl, max_maps);
        json maps = json::array();
        for (const auto& e : scan.maps) {
            json m{{"map", map_to_json(e.map)}, {"degree", e.degree}};
            if (e.collapses) m["tag"] = "undefined-collapse";
            else if (!e.surjective) m["tag"] = "non-surjective";
            maps.push_back(m);
            any = true;
            if (!first) first = e.degree;
            if (ot.gcd > 0 && ((e.degree - *first) % ot.gcd) != 0) parity_ok = false;
        }
        levels.push_back(json{{"level", lvl},
                              {"domain_vertices", scan.domain.vertices().size()},
                              {"maps", maps},
                              {"count", scan.maps.size()},
                              {"unmappable_vertices", scan.unmappable}});
    }
    json j{{"levels", levels},
           {"orbit_index_gcd", ot.gcd},
           {"orbit_indices", ot.indices},
           {"parity_congruent", parity_ok},
           {"vacuous", !any},
           {"input_hashes", json{{"k", fnv1a_hex(dump(kj))}, {"l", fnv1a_hex(dump(lj))}}}};
    if (!any) j["finding"] = "no equivariant simplicial map exists at the scanned subdivision levels";
    emit(with_header(j, "equivariant-scan"), out);
    return parity_ok ? kVerified : kRefuted;
}

// ---------------------------------------------------------------- affine

struct VerifyArgs {
    std::string mode, config, out;
    int r = 2, k = -1, s = -1;
    std::vector<int> caps;
    bool cover = false, reverse = false;
};

int run_verify(const VerifyArgs& a) {
    const json cj = read_json(a.config);
    auto cfg = config_from_json(cj);
    SearchOptions opt;
    opt.reverse = a.reverse;
    json j{{"parameters", json{{"mode", a.mode}, {"r", a.r}}}, {"input_hashes", json{{"config", fnv1a_hex(dump(cj))}}}};
    std::optional<PartitionWitness> w;
    std::uint64_t candidates = 0;
    if (a.mode == "tverberg") {
        auto res = tverberg_search(cfg, a.r, a.caps, opt);
        w = res.witness;
        candidates = res.candidates;
    } else if (a.mode == "rainbow") {
        if (a.k < 0 || a.s < 0) throw InputError("rainbow needs --k and --s");
        j["parameters"]["k"] = a.k;
        j["parameters"]["s"] = a.s;
        j["parameters"]["cover"] = a.cover;
        auto res = rainbow_search(cfg, a.r, a.k, a.s, a.cover, opt);
        w = res.witness;
        candidates = res.candidates;
    } else if (a.mode == "seven-point") {
        auto res = seven_point_search(cfg, opt);
        candidates = res.candidates;
        if (res.witness) {
            w = res.witness->witness;
            j["source_faces"] = simplices_to_json(res.witness->faces);
        }
    } else {
        throw InputError("verify mode must be tverberg, rainbow or seven-point");
    }
    j["candidates"] = candidates;
    j["exhausted"] = !w;
    const bool ok = w && verify_witness(cfg, *w);
    if (w) j["witness"] = witness_to_json(*w);
    j["verified"] = ok;
    emit(with_header(j, "verify " + a.mode), a.out);
    return ok ? kVerified : kRefuted;
}

int run_random_config(std::uint64_t seed, int n, int d, const std::vector<int>& colors, const std::string& out) {
    json j = config_to_json(random_config(seed, n, d, colors));
    j["seed"] = seed;
    emit(j, out);
    return kVerified;
}

// ---------------------------------------------------------------- pipeline / report

int run_pipeline(int r, int d, const std::string& out_dir, const std::string& out) {
    PipelineOutput res;
    try {
        res = pipeline_balanced(r, d);
    } catch (const StageError& e) {
        json j{{"verdicts", json{{"overall", false}}}, {"error", json{{"stage", e.stage}, {"message", e.what()}}},
               {"parameters", json{{"r", r}, {"d", d}}}};
        emit(with_header(j, "pipeline"), out);
        return kRefuted;
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const auto& [name, content] : res.artifacts) write_file((fs::path(out_dir) / name).string(), dump(content));
        write_file((fs::path(out_dir) / "manifest.json").string(), dump(res.manifest));
    }
    emit(res.manifest, out);
    return res.manifest["verdicts"]["overall"].get<bool>() ? kVerified : kRefuted;
}

int run_report(const std::string& path, bool as_json) {
    const json j = read_json(path);
    if (as_json) {
        std::cout << dump(json{{"input_hash", fnv1a_hex(dump(j))}, {"text", render_report(j)}});
    } else {
        std::cout << render_report(j);
    }
    if (j.contains("verdicts") && j["verdicts"].contains("overall")) return j["verdicts"]["overall"].get<bool>() ? kVerified : kRefuted;
    return kVerified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: combinatorial topology workbench for colored Tverberg problems"};
    app.require_subcommand(1);

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "build a simplicial complex");
    build->add_option("kind", ba.kind, "multipartite|chessboard|multichess|bier|join|deleted-join|skeleton|dual|simplex|boundary|octahedron")->required();
    build->add_option("--sizes", ba.sizes, "class sizes (multipartite)")->delimiter(',');
    build->add_option("--rows", ba.rows);
    build->add_option("--cols", ba.cols);
    build->add_option("--row-caps", ba.row_caps)->delimiter(',');
    build->add_option("--col-caps", ba.col_caps)->delimiter(',');
    build->add_option("--n", ba.n, "vertex count (simplex, boundary)");
    build->add_option("--r", ba.r, "number of join factors (deleted-join)");
    build->add_option("--dim", ba.dim, "skeleton dimension");
    build->add_option("--ground", ba.ground, "ground set for the dual")->delimiter(',');
    build->add_option("--input", ba.input);
    build->add_option("--input2", ba.input2);
    build->add_flag("--klein", ba.klein, "attach the Klein four-group action");
    build->add_option("--out", ba.out);

    int cs_r = 2, cs_d = 3;
    std::string cs_coloring, cs_out;
    auto* cspace = app.add_subcommand("config-space", "balanced configuration space");
    cspace->add_option("--r", cs_r)->required();
    cspace->add_option("--d", cs_d)->required();
    cspace->add_option("--coloring", cs_coloring);
    cspace->add_option("--out", cs_out);

    std::string m_space, m_complex, m_out;
    auto* morse = app.add_subcommand("morse", "discrete vector field on a configuration space or complex");
    morse->add_option("--space", m_space);
    morse->add_option("--complex", m_complex);
    morse->add_option("--out", m_out);

    std::string c_space, c_complex, c_field, c_out;
    auto* certify = app.add_subcommand("certify", "check a vector field and certify connectivity");
    certify->add_option("--space", c_space);
    certify->add_option("--complex", c_complex);
    certify->add_option("--field", c_field)->required();
    certify->add_option("--out", c_out);

    std::string h_complex, h_out;
    bool h_mod2 = false, h_reduced = false, h_pm = false;
    auto* hom = app.add_subcommand("homology", "simplicial homology");
    hom->add_option("--complex", h_complex)->required();
    hom->add_flag("--mod2", h_mod2);
    hom->add_flag("--reduced", h_reduced);
    hom->add_flag("--pseudomanifold", h_pm);
    hom->add_option("--out", h_out);

    std::string e_k, e_l, e_group = "klein4", e_out;
    int e_level = 0;
    std::size_t e_max = 1'000'000;
    auto* eq = app.add_subcommand("equivariant-scan", "enumerate equivariant simplicial maps and degrees");
    eq->add_option("--k", e_k)->required();
    eq->add_option("--l", e_l)->required();
    eq->add_option("--group", e_group);
    eq->add_option("--subdivide", e_level);
    eq->add_option("--max-maps", e_max);
    eq->add_option("--out", e_out);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "search for a partition witness");
    verify->add_option("mode", va.mode, "tverberg|rainbow|seven-point")->required();
    verify->add_option("--config", va.config)->required();
    verify->add_option("--r", va.r);
    verify->add_option("--k", va.k);
    verify->add_option("--s", va.s);
    verify->add_option("--caps", va.caps)->delimiter(',');
    verify->add_flag("--cover", va.cover, "every point must be used");
    verify->add_flag("--reverse", va.reverse, "enumerate in reversed order");
    verify->add_option("--out", va.out);

    std::uint64_t rc_seed = 0;
    int rc_n = 0, rc_d = 2;
    std::vector<int> rc_colors;
    std::string rc_out;
    auto* rc = app.add_subcommand("random-config", "seeded general-position rational points");
    rc->add_option("--seed", rc_seed)->required();
    rc->add_option("--n", rc_n)->required();
    rc->add_option("--d", rc_d)->required();
    rc->add_option("--colors", rc_colors, "class sizes, e.g. 2,2,2,1")->delimiter(',');
    rc->add_option("--out", rc_out);

    int p_r = 2, p_d = 3;
    std::string p_dir, p_out;
    auto* pipe = app.add_subcommand("pipeline", "end-to-end connectivity certificate for the configuration space");
    pipe->add_option("--r", p_r)->required();
    pipe->add_option("--d", p_d)->required();
    pipe->add_option("--out-dir", p_dir);
    pipe->add_option("--out", p_out);

    std::string rep_in;
    bool rep_json = false;
    auto* report = app.add_subcommand("report", "render a manifest or witness");
    report->add_option("input", rep_in)->required();
    report->add_flag("--json", rep_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc_code = app.exit(e);
        return rc_code == 0 ? 0 : kInput;
    }

    try {
        thread_cap();
        if (*build) return run_build(ba);
        if (*cspace) return run_config_space(cs_r, cs_d, cs_coloring, cs_out);
        if (*morse) return run_morse(m_space, m_complex, m_out);
        if (*certify) return run_certify(c_space, c_complex, c_field, c_out);
        if (*hom) return run_homology(h_complex, h_mod2, h_reduced, h_pm, h_out);
        if (*eq) return run_equivariant_scan(e_k, e_l, e_group, e_level, e_max, e_out);
        if (*verify) return run_verify(va);
        if (*rc) return run_random_config(rc_seed, rc_n, rc_d, rc_colors, rc_out);
        if (*pipe) return run_pipeline(p_r, p_d, p_dir, p_out);
        if (*report) return run_report(rep_in, rep_json);
    } catch (const InputError& e) {
        std::cerr << "forge: input error: " << e.what() << "\n";
        return kInput;
    } catch (const ResourceLimit& e) {
        std::cerr << "forge: resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "forge: " << e.what() << "\n";
        return kRefuted;
    }
    return kInput;
}
