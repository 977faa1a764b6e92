#ifndef FORGE_MORSE_HPP
#define FORGE_MORSE_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "forge/simplicial_complex.hpp"

namespace forge {

/// A matching on the face poset: each pair is (α, β) with α ⊂ β.
struct DiscreteVectorField {
    std::vector<std::pair<Simplex, Simplex>> pairs;
};

inline std::string simplex_to_string(const Simplex& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

struct DvfViolation {
    char condition;  // 'a', 'b', 'c', or 'm' for a pair member outside the complex
    std::string detail;
};

/// Checks conditions (a) one pair per face, (b) α is a facet of β,
/// (c) ∅ never matched. An empty result means the field is valid.
inline std::vector<DvfViolation> check_dvf(const DiscreteVectorField& field, const FaceLattice& lattice) {
    std::vector<DvfViolation> out;
    std::vector<int> uses(lattice.size(), 0);
    for (const auto& [lo, hi] : field.pairs) {
        const int a = lattice.index_of(lo), b = lattice.index_of(hi);
        if (a < 0 || b < 0) {
            out.push_back({'m', "pair " + simplex_to_string(lo) + "," + simplex_to_string(hi) + " not in complex"});
            continue;
        }
        if (lo.empty() || hi.empty())
            out.push_back({'c', "empty face matched with " + simplex_to_string(lo.empty() ? hi : lo)});
        if (!(lo.size() + 1 == hi.size() && is_subset(lo, hi)))
            out.push_back({'b', simplex_to_string(lo) + " is not a facet of " + simplex_to_string(hi)});
        ++uses[static_cast<std::size_t>(a)];
        ++uses[static_cast<std::size_t>(b)];
    }
    for (std::size_t i = 0; i < uses.size(); ++i)
        if (uses[i] > 1)
            out.push_back({'a', simplex_to_string(lattice.face(static_cast<int>(i))) + " appears in " +
                                    std::to_string(uses[i]) + " pairs"});
    return out;
}

/// α₀ ↗ β₀ ↘ α₁ ↗ β₁ ↘ ... ; steps alternate lower and upper faces.
struct GradientPath {
    std::vector<Simplex> steps;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (i) s += (i % 2 == 1) ? " ↗ " : " ↘ ";
            s += simplex_to_string(steps[i]);
        }
        return s;
    }
};

struct AcyclicityResult {
    bool acyclic = true;
    std::optional<GradientPath> witness_cycle;
};

namespace detail {

/// up[i] = partner face index if face i is the lower end of a pair, else -1.
inline std::vector<int> up_partners(const DiscreteVectorField& field, const FaceLattice& lattice) {
    std::vector<int> up(lattice.size(), -1);
    for (const auto& [lo, hi] : field.pairs) {
        int a = lattice.index_of(lo), b = lattice.index_of(hi);
        if (a >= 0 && b >= 0) up[static_cast<std::size_t>(a)] = b;
    }
    return up;
}

}  // namespace detail

/// Searches the modified Hasse diagram for a closed gradient path.
inline AcyclicityResult acyclicity(const DiscreteVectorField& field, const FaceLattice& lattice) {
    const auto up = detail::up_partners(field, lattice);
    const std::size_t n = lattice.size();
    // successors of a matched-up face α: facets of its partner other than α
    std::vector<char> color(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<int> parent(n, -1);
    AcyclicityResult res;
    for (std::size_t start = 0; start < n && res.acyclic; ++start) {
        if (color[start] || up[start] < 0) continue;
        std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(start), 0}};
        color[start] = 1;
        while (!stack.empty() && res.acyclic) {
            auto& [v, next] = stack.back();
            const int beta = up[static_cast<std::size_t>(v)];
            const auto& succ = lattice.facets_of(beta);
            if (next == succ.size()) {
                color[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
                continue;
            }
            const int w = succ[next++];
            if (w == v || up[static_cast<std::size_t>(w)] < 0) continue;
            if (color[static_cast<std::size_t>(w)] == 1) {
                // closed path w -> ... -> v -> w
                std::vector<int> cyc;
                for (int x = v; x != w; x = parent[static_cast<std::size_t>(x)]) cyc.push_back(x);
                cyc.push_back(w);
                std::reverse(cyc.begin(), cyc.end());
                GradientPath path;
                for (int x : cyc) {
                    path.steps.push_back(lattice.face(x));
                    path.steps.push_back(lattice.face(up[static_cast<std::size_t>(x)]));
                }
                path.steps.push_back(lattice.face(w));
                res.acyclic = false;
                res.witness_cycle = std::move(path);
            } else if (color[static_cast<std::size_t>(w)] == 0) {
                color[static_cast<std::size_t>(w)] = 1;
                parent[static_cast<std::size_t>(w)] = v;
                stack.emplace_back(w, 0);
            }
        }
    }
    return res;
}

/// Unmatched non-empty faces, in graded order.
inline std::vector<Simplex> critical_cells(const DiscreteVectorField& field, const FaceLattice& lattice) {
    std::vector<char> matched(lattice.size(), 0);
    for (const auto& [lo, hi] : field.pairs) {
        int a = lattice.index_of(lo), b = lattice.index_of(hi);
        if (a >= 0) matched[static_cast<std::size_t>(a)] = 1;
        if (b >= 0) matched[static_cast<std::size_t>(b)] = 1;
    }
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < lattice.size(); ++i)
        if (!matched[i] && !lattice.face(static_cast<int>(i)).empty()) out.push_back(lattice.face(static_cast<int>(i)));
    return out;
}

struct MorseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConnectivityCertificate {
    Simplex sigma0;                             // the unique critical vertex
    std::vector<Simplex> critical;              // all critical cells except σ⁰
    std::map<int, std::size_t> critical_by_dim; // including σ⁰
    std::optional<int> min_dimension;           // N; empty when σ⁰ is the only critical cell
    bool wedge_of_spheres = false;              // all non-σ⁰ critical cells have dimension N

    /// N − 1, or nullopt when the complex is collapsible (contractible).
    std::optional<int> connectivity() const {
        if (!min_dimension) return std::nullopt;
        return *min_dimension - 1;
    }
};

/// Forman's criterion: with a single critical vertex σ⁰ and all other
/// critical cells of dimension >= N, the complex is (N−1)-connected.
inline ConnectivityCertificate connectivity_certificate(const DiscreteVectorField& field, const FaceLattice& lattice) {
    auto violations = check_dvf(field, lattice);
    if (!violations.empty()) throw MorseError("invalid vector field: " + violations.front().detail);
    auto acyc = acyclicity(field, lattice);
    if (!acyc.acyclic) throw MorseError("vector field has a closed path: " + acyc.witness_cycle->to_string());
    ConnectivityCertificate cert;
    int zero_cells = 0;
    for (auto& c : critical_cells(field, lattice)) {
        const int d = static_cast<int>(c.size()) - 1;
        ++cert.critical_by_dim[d];
        if (d == 0) {
            if (++zero_cells == 1) {
                cert.sigma0 = c;
                continue;
            }
        }
        cert.critical.push_back(c);
    }
    if (zero_cells != 1) throw MorseError("expected exactly one critical 0-cell, found " + std::to_string(zero_cells));
    for (const auto& c : cert.critical) {
        const int d = static_cast<int>(c.size()) - 1;
        if (!cert.min_dimension || d < *cert.min_dimension) cert.min_dimension = d;
    }
    cert.wedge_of_spheres = cert.min_dimension &&
                            std::all_of(cert.critical.begin(), cert.critical.end(), [&](const Simplex& c) {
                                return static_cast<int>(c.size()) - 1 == *cert.min_dimension;
                            });
    return cert;
}

/// Sequence of element matchings: for each vertex v in order, pair every
/// still-unmatched σ ∌ v with σ ∪ {v} when the latter is an unmatched face.
/// Such iterated matchings are acyclic.
inline DiscreteVectorField iterated_vertex_matching(const FaceLattice& lattice, const std::vector<Vertex>& order) {
    DiscreteVectorField field;
    std::vector<char> matched(lattice.size(), 0);
    for (Vertex v : order) {
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            const auto& f = lattice.face(static_cast<int>(i));
            if (matched[i] || std::binary_search(f.begin(), f.end(), v)) continue;
            Simplex g = f;
            g.insert(std::upper_bound(g.begin(), g.end(), v), v);
            const int j = lattice.index_of(g);
            if (j < 0 || matched[static_cast<std::size_t>(j)]) continue;
            if (f.empty()) continue;
            matched[i] = matched[static_cast<std::size_t>(j)] = 1;
            field.pairs.emplace_back(f, g);
        }
    }
    return field;
}

}  // namespace forge

#endif
