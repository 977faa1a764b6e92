#ifndef FORGE_IO_HPP
#define FORGE_IO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/affine.hpp"
#include "forge/balanced_matching.hpp"
#include "forge/config_space.hpp"
#include "forge/equivariant.hpp"
#include "forge/homology.hpp"
#include "forge/morse.hpp"
#include "forge/simplicial_complex.hpp"

namespace forge {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

/// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// 64-bit FNV-1a, hex.
inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

template <class F>
auto with_input_errors(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(what + ": " + e.what());
    }
}

// ---- complexes

inline json simplices_to_json(const std::vector<Simplex>& ss) {
    json a = json::array();
    for (const auto& s : ss) a.push_back(s);
    return a;
}

inline json complex_to_json(const SimplicialComplex& k, const std::map<std::string, PermAction>& actions = {}) {
    if (k.is_void()) throw InputError("the void complex has no file representation");
    json j;
    j["ground_set"] = k.ground_set();
    j["facets"] = simplices_to_json(k.facets());
    if (!actions.empty()) {
        json ga = json::object();
        for (const auto& [name, act] : actions) ga[name] = act.elements();
        j["group_actions"] = ga;
    }
    return j;
}

inline SimplicialComplex complex_from_json(const json& j) {
    return with_input_errors("complex", [&] {
        auto ground = j.at("ground_set").get<std::vector<Vertex>>();
        auto facets = j.at("facets").get<std::vector<std::vector<Vertex>>>();
        return SimplicialComplex::from_generators(std::move(ground), std::move(facets));
    });
}

/// The named action stored with a complex; element names follow klein4 when
/// the group has four elements.
inline PermAction action_from_json(const json& j, const std::string& group) {
    return with_input_errors("group action", [&] {
        if (!j.contains("group_actions") || !j["group_actions"].contains(group))
            throw InputError("complex carries no '" + group + "' action");
        auto els = j["group_actions"][group].get<std::vector<Permutation>>();
        const int n = static_cast<int>(j.at("ground_set").size());
        PermAction a(n, std::move(els), els.size() == 4 ? klein_names() : std::vector<std::string>{});
        if (!a.is_group()) throw InputError("'" + group + "' action is not closed under composition");
        return a;
    });
}

// ---- point configurations

inline json config_to_json(const RationalPointConfig& c) {
    json j;
    j["d"] = c.d;
    json pts = json::array();
    for (const auto& p : c.points) {
        json row = json::array();
        for (const auto& q : p) row.push_back(rational_to_string(q));
        pts.push_back(row);
    }
    j["points"] = pts;
    j["colors"] = c.colors;
    if (!c.multiplicity.empty()) j["multiplicity"] = c.multiplicity;
    return j;
}

inline RationalPointConfig config_from_json(const json& j) {
    return with_input_errors("point configuration", [&] {
        RationalPointConfig c;
        c.d = j.at("d").get<int>();
        for (const auto& row : j.at("points")) {
            Point p;
            for (const auto& x : row) p.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()));
            c.points.push_back(std::move(p));
        }
        if (j.contains("colors")) c.colors = j["colors"].get<std::vector<std::vector<int>>>();
        if (j.contains("multiplicity")) c.multiplicity = j["multiplicity"].get<std::vector<int>>();
        c.validate();
        return c;
    });
}

inline json witness_to_json(const PartitionWitness& w) {
    json j;
    j["parts"] = w.parts;
    json x = json::array();
    for (const auto& q : w.x) x.push_back(rational_to_string(q));
    j["point"] = x;
    json lam = json::array();
    for (const auto& part : w.lambda) {
        json row = json::array();
        for (const auto& q : part) row.push_back(rational_to_string(q));
        lam.push_back(row);
    }
    j["weights"] = lam;
    return j;
}

// ---- fields and certificates

inline json field_to_json(const DiscreteVectorField& f, const std::vector<Simplex>& critical) {
    json pairs = json::array();
    for (const auto& [lo, hi] : f.pairs) pairs.push_back(json::array({lo, hi}));
    return json{{"pairs", pairs}, {"critical", simplices_to_json(critical)}};
}

inline DiscreteVectorField field_from_json(const json& j) {
    return with_input_errors("vector field", [&] {
        DiscreteVectorField f;
        for (const auto& p : j.at("pairs")) {
            if (p.size() != 2) throw InputError("each pair must hold two faces");
            f.pairs.emplace_back(make_simplex(p[0].get<std::vector<Vertex>>()), make_simplex(p[1].get<std::vector<Vertex>>()));
        }
        return f;
    });
}

inline json certificate_to_json(const ConnectivityCertificate& c) {
    json by_dim = json::object();
    for (const auto& [d, n] : c.critical_by_dim) by_dim[std::to_string(d)] = n;
    json j{{"sigma0", c.sigma0},
           {"critical_by_dim", by_dim},
           {"critical_count", c.critical.size()},
           {"wedge_of_spheres", c.wedge_of_spheres}};
    j["min_dimension"] = c.min_dimension ? json(*c.min_dimension) : json(nullptr);
    j["connectivity"] = c.connectivity() ? json(*c.connectivity()) : json("contractible");
    return j;
}

inline json homology_to_json(const HomologyReport& h) {
    json tor = json::array();
    for (const auto& t : h.torsion) {
        json row = json::array();
        for (const auto& x : t) row.push_back(x.str());
        tor.push_back(row);
    }
    return json{{"reduced", h.reduced},
                {"coefficients", h.mod2 ? "Z/2" : "Z"},
                {"betti", h.betti},
                {"torsion", tor},
                {"torsion_free", h.torsion_free()},
                {"euler_characteristic", h.euler_characteristic}};
}

inline json pseudomanifold_to_json(const PseudomanifoldReport& p) {
    return json{{"dimension", p.dimension},
                {"pure", p.pure},
                {"ridge_regular", p.ridge_regular},
                {"strongly_connected", p.strongly_connected},
                {"orientable", p.orientable},
                {"closed_orientable", p.closed_orientable()}};
}

inline json config_label_to_json(const ConfigSimplex& s, int m) {
    json parts = json::array();
    for (auto a : s.parts) parts.push_back(mask_members(a));
    return json{{"A", parts}, {"B", mask_members(s.remainder(m))}};
}

inline json coloring_to_json(const Coloring& c) { return c.classes(); }

inline Coloring coloring_from_json(const json& j) {
    return with_input_errors("coloring", [&] {
        const json& cls = j.is_object() ? j.at("classes") : j;
        return Coloring(cls.get<std::vector<std::vector<Vertex>>>());
    });
}

inline json map_to_json(const SimplicialMap& f) {
    json j = json::array();
    for (const auto& [v, w] : f.vertex_map) j.push_back(json::array({v, w}));
    return j;
}

}  // namespace forge

#endif
