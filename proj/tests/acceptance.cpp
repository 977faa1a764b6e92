// Acceptance checks: one pass/fail line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "forge/pipeline.hpp"

using namespace forge;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string join_list(const std::vector<long long>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

Outcome balanced_certificate(int r, int d) {
    auto p = balanced_params(r, d);
    auto cs = build_config_space(p);
    FaceLattice lat(cs.complex());
    auto bm = balanced_matching(cs);
    std::ostringstream os;
    os << "(k,s,m)=(" << p.k << "," << p.s << "," << p.m << ") ";
    if (!check_dvf(bm.field, lat).empty()) return {false, os.str() + "matching violates a field condition"};
    if (!acyclicity(bm.field, lat).acyclic) return {false, os.str() + "matching has a closed path"};
    ConnectivityCertificate cert;
    try {
        cert = connectivity_certificate(bm.field, lat);
    } catch (const MorseError& e) {
        return {false, os.str() + e.what()};
    }
    const int top = p.top_dimension();
    bool dims_ok = true;
    for (const auto& c : cert.critical) dims_ok = dims_ok && static_cast<int>(c.size()) - 1 == top;
    const std::size_t top_cells = cert.critical.size();
    HomologyOptions opt;
    opt.reduced = true;
    auto h = homology(cs.complex(), opt);
    bool hom_ok = h.torsion_free() && static_cast<int>(h.betti.size()) == top + 1;
    for (int i = 0; hom_ok && i < top; ++i) hom_ok = h.betti[static_cast<std::size_t>(i)] == 0;
    hom_ok = hom_ok && h.betti[static_cast<std::size_t>(top)] == static_cast<long long>(top_cells);
    const bool conn_ok = cert.min_dimension && *cert.min_dimension - 1 == p.target_connectivity();
    os << "critical: one 0-cell + " << top_cells << " cells of dim " << top << (dims_ok ? "" : " (other dims present)")
       << "; reduced Betti " << join_list(h.betti) << (h.torsion_free() ? " torsion-free" : " with torsion")
       << "; connectivity " << (cert.connectivity() ? std::to_string(*cert.connectivity()) : "inf") << " (target "
       << p.target_connectivity() << ")";
    return {dims_ok && hom_ok && conn_ok, os.str()};
}

Outcome criterion1() { return balanced_certificate(2, 3); }
Outcome criterion2() { return balanced_certificate(2, 2); }

Outcome criterion3() {
    auto ka = klein_actions();
    HomologyOptions opt;
    opt.reduced = true;
    auto h = homology(ka.chessboard, opt);
    const bool betti_ok = h.betti == std::vector<long long>{0, 0, 1} && h.torsion_free();
    const bool pm_ok = pseudomanifold_check(ka.chessboard).closed_orientable();
    auto iso = equivariant_iso_search(ka.chessboard, octahedron(), ka.on_chessboard, octahedron_rotation_action());
    std::ostringstream os;
    os << "reduced Betti " << join_list(h.betti) << (betti_ok ? " ok" : " WRONG") << "; closed orientable pseudomanifold "
       << (pm_ok ? "ok" : "NO") << "; Klein-equivariant isomorphism to the octahedron "
       << (iso ? "found" : "not found (search exhausted: " + std::to_string(ka.chessboard.vertices().size()) +
                               " vertices vs " + std::to_string(octahedron().vertices().size()) + ")");
    return {betti_ok && pm_ok && iso.has_value(), os.str()};
}

Outcome criterion4() {
    auto dj = deleted_join(multipartite_complex({3, 3, 3, 1}), 4);
    auto relabeled = relabel(dj, deleted_join_chessboard_relabeling());
    auto model = chessboard_join_model();
    const bool eq = relabeled.facets() == model.facets() && relabeled.ground_set() == model.ground_set();
    return {eq, std::to_string(relabeled.facets().size()) + " vs " + std::to_string(model.facets().size()) +
                    " facets, lists " + (eq ? "identical" : "differ")};
}

Outcome criterion5() {
    int found = 0, verified = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto cfg = random_config(5000 + seed, 7, 2, {2, 2, 2, 1});
        auto r = seven_point_search(cfg);
        if (r.witness) {
            ++found;
            if (verify_witness(cfg, r.witness->witness)) ++verified;
        }
    }
    return {verified == 100, std::to_string(found) + "/100 witnesses, " + std::to_string(verified) + " re-verified"};
}

Outcome criterion6() {
    struct Case { int r, d, n; };
    std::ostringstream os;
    bool all = true;
    for (auto c : {Case{2, 2, 4}, Case{3, 2, 7}, Case{2, 3, 5}}) {
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto cfg = random_config(6000 + seed, c.n, c.d);
            auto r = tverberg_search(cfg, c.r);
            if (r.witness && verify_witness(cfg, *r.witness)) ++ok;
        }
        all = all && ok == 100;
        os << "(r,d)=(" << c.r << "," << c.d << "): " << ok << "/100  ";
    }
    return {all, os.str()};
}

Outcome criterion7() {
    auto ka = klein_actions();
    std::ostringstream os;
    std::vector<long long> degrees;
    bool any = false;
    for (int level = 0; level <= 1; ++level) {
        auto scan = enumerate_equivariant_maps(ka.chessboard, ka.tetrahedron, ka.on_chessboard, ka.on_tetrahedron, level);
        os << "level " << level << ": " << scan.maps.size() << " maps";
        if (scan.maps.empty()) os << " (" << scan.unmappable.size() << " vertex orbits with no admissible image)";
        os << "; ";
        for (const auto& e : scan.maps) {
            degrees.push_back(e.degree);
            any = true;
        }
    }
    bool parity = true;
    for (auto d : degrees) parity = parity && (d - degrees.front()) % 2 == 0;
    auto ref = reference_equivariant_map();
    const long long ref_deg = degree(ref, ka.chessboard, ka.tetrahedron).degree;
    const bool ref_ok = std::abs(ref_deg) == 1 && is_equivariant(ref, ka.on_chessboard, ka.on_tetrahedron);
    os << "degrees " << join_list(degrees) << (parity ? " pairwise congruent mod 2" : " NOT congruent mod 2")
       << "; reference composite degree " << ref_deg;
    if (!any) os << "; finding: no equivariant simplicial maps at levels 0 and 1";
    return {parity && ref_ok, os.str()};
}

Outcome criterion8() {
    FaceLattice bd(SimplicialComplex::simplex_boundary({0, 1, 2}));
    DiscreteVectorField cyclic{{{{0}, {0, 1}}, {{1}, {1, 2}}, {{2}, {0, 2}}}};
    auto acyc = acyclicity(cyclic, bd);
    FaceLattice full(SimplicialComplex::simplex({0, 1, 2}));
    DiscreteVectorField not_facet{{{{0}, {0, 1, 2}}}};
    auto v = check_dvf(not_facet, full);
    const bool b_ok = !v.empty() && v.front().condition == 'b';
    std::ostringstream os;
    os << "cyclic field " << (acyc.acyclic ? "ACCEPTED" : "rejected, path " + acyc.witness_cycle->to_string())
       << "; codimension-2 pair " << (b_ok ? "rejected by condition (b)" : "NOT rejected");
    return {!acyc.acyclic && acyc.witness_cycle && b_ok, os.str()};
}

Outcome criterion9() {
    std::ostringstream os;
    bool all = true;
    for (auto rd : {std::pair{2, 3}, std::pair{2, 2}}) {
        auto cs = build_config_space(balanced_params(rd.first, rd.second));
        auto rep = pi_monotonicity(balanced_matching(cs), cs);
        all = all && rep.ok() && rep.segments_checked > 0;
        os << "(r,d)=(" << rd.first << "," << rd.second << "): " << rep.segments_checked << " segments, "
           << rep.violations.size() << " violations  ";
    }
    return {all, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"balanced connectivity (r,d)=(2,3)", criterion1},
        {"s=r regression (r,d)=(2,2)", criterion2},
        {"sphere identification", criterion3},
        {"deleted-join identity", criterion4},
        {"seven-point corollary", criterion5},
        {"Tverberg baseline", criterion6},
        {"degree parity", criterion7},
        {"Morse negative controls", criterion8},
        {"lexicographic monotonicity", criterion9},
    };
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::cerr << "criterion must be 1.." << criteria.size() << "\n";
        return 2;
    }
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << i + 1 << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[i].first << ": "
                  << o.detail << " (" << secs << " s)" << std::endl;
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
