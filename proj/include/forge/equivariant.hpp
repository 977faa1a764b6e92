#ifndef FORGE_EQUIVARIANT_HPP
#define FORGE_EQUIVARIANT_HPP

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/constructions.hpp"
#include "forge/homology.hpp"
#include "forge/simplicial_complex.hpp"

namespace forge {

using Permutation = std::vector<Vertex>;

/// A finite group acting by vertex permutations on a complex whose ground
/// set is 0..n-1. Element 0 is the identity. Elements of two actions with the
/// same index are the same abstract group element.
class PermAction {
public:
    PermAction() = default;

    PermAction(int degree, std::vector<Permutation> elements, std::vector<std::string> names = {})
        : degree_(degree), elements_(std::move(elements)), names_(std::move(names)) {
        if (elements_.empty()) throw InputError("group action needs at least the identity");
        for (const auto& g : elements_) {
            if (static_cast<int>(g.size()) != degree_) throw InputError("permutation has wrong length");
            std::vector<char> seen(static_cast<std::size_t>(degree_), 0);
            for (Vertex v : g) {
                if (v < 0 || v >= degree_ || seen[static_cast<std::size_t>(v)]) throw InputError("not a permutation");
                seen[static_cast<std::size_t>(v)] = 1;
            }
        }
        Permutation id(static_cast<std::size_t>(degree_));
        std::iota(id.begin(), id.end(), 0);
        if (elements_.front() != id) throw InputError("element 0 must be the identity");
        if (names_.empty())
            for (std::size_t i = 0; i < elements_.size(); ++i) names_.push_back("g" + std::to_string(i));
        build_table();
    }

    static PermAction trivial(int degree) {
        Permutation id(static_cast<std::size_t>(degree));
        std::iota(id.begin(), id.end(), 0);
        return PermAction(degree, {id}, {"1"});
    }

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elements_.size()); }
    const Permutation& element(int g) const { return elements_[static_cast<std::size_t>(g)]; }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<std::string>& names() const { return names_; }
    bool is_group() const { return closed_; }
    /// multiply(a, b) = index of a∘b (apply b first), -1 if not closed.
    int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inverse(int a) const {
        for (int b = 0; b < order(); ++b)
            if (multiply(a, b) == 0) return b;
        return -1;
    }

    Vertex apply(int g, Vertex v) const { return elements_[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)]; }
    Simplex apply(int g, const Simplex& s) const {
        Simplex out;
        out.reserve(s.size());
        for (Vertex v : s) out.push_back(apply(g, v));
        return make_simplex(std::move(out));
    }

    /// Every element maps facets onto facets.
    bool is_simplicial_on(const SimplicialComplex& k) const {
        if (static_cast<int>(k.ground_set().size()) != degree_) return false;
        std::set<Simplex> facets(k.facets().begin(), k.facets().end());
        for (int g = 0; g < order(); ++g)
            for (const auto& f : k.facets())
                if (!facets.count(apply(g, f))) return false;
        return true;
    }

    std::vector<int> stabilizer(Vertex v) const {
        std::vector<int> out;
        for (int g = 0; g < order(); ++g)
            if (apply(g, v) == v) out.push_back(g);
        return out;
    }

    std::vector<int> setwise_stabilizer(const Simplex& s) const {
        std::vector<int> out;
        for (int g = 0; g < order(); ++g)
            if (apply(g, s) == s) out.push_back(g);
        return out;
    }

private:
    void build_table() {
        const auto n = elements_.size();
        table_.assign(n, std::vector<int>(n, -1));
        closed_ = true;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Permutation c(static_cast<std::size_t>(degree_));
                for (int v = 0; v < degree_; ++v) c[static_cast<std::size_t>(v)] = elements_[a][static_cast<std::size_t>(elements_[b][static_cast<std::size_t>(v)])];
                auto it = std::find(elements_.begin(), elements_.end(), c);
                if (it == elements_.end()) {
                    closed_ = false;
                } else {
                    table_[a][b] = static_cast<int>(it - elements_.begin());
                }
            }
    }

    int degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
    bool closed_ = false;
};

/// The Klein four-group {1, α, β, γ} as double transpositions of 4 letters:
/// α = (01)(23), β = (02)(13), γ = (03)(12).
inline std::vector<Permutation> klein_letters() {
    return {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
}

inline const std::vector<std::string>& klein_names() {
    static const std::vector<std::string> names{"1", "alpha", "beta", "gamma"};
    return names;
}

/// Klein action on a board with 4 rows (cell = row * cols + col) permuting rows.
inline PermAction klein_row_action(int cols) {
    std::vector<Permutation> els;
    for (const auto& letters : klein_letters()) {
        Permutation p(static_cast<std::size_t>(4 * cols));
        for (int row = 0; row < 4; ++row)
            for (int c = 0; c < cols; ++c) p[static_cast<std::size_t>(row * cols + c)] = letters[static_cast<std::size_t>(row)] * cols + c;
        els.push_back(std::move(p));
    }
    return PermAction(4 * cols, std::move(els), klein_names());
}

struct KleinActions {
    SimplicialComplex chessboard;    // Δ_{2,4}^{1;L}
    PermAction on_chessboard;        // permutes the 4 rows
    SimplicialComplex tetrahedron;   // ∂Δ_[4]
    PermAction on_tetrahedron;       // permutes the 4 vertices
};

inline KleinActions klein_actions() {
    return {small_bier_chessboard(), klein_row_action(2), SimplicialComplex::simplex_boundary({0, 1, 2, 3}),
            PermAction(4, klein_letters(), klein_names())};
}

/// S⁰_α * S⁰_β * S⁰_γ: vertices 2a, 2a+1 are the poles on axis a.
inline SimplicialComplex octahedron() {
    SimplicialComplex s0 = SimplicialComplex::from_generators({0, 1}, {{0}, {1}});
    return join(join(s0, s0), s0);
}

/// Rotations by 180° about the three axes: α fixes axis 0 and flips axes 1, 2, etc.
inline PermAction octahedron_rotation_action() {
    std::vector<Permutation> els;
    for (int fixed = -1; fixed < 3; ++fixed) {
        Permutation p(6);
        for (int axis = 0; axis < 3; ++axis) {
            const bool keep = fixed < 0 || axis == fixed;
            p[static_cast<std::size_t>(2 * axis)] = keep ? 2 * axis : 2 * axis + 1;
            p[static_cast<std::size_t>(2 * axis + 1)] = keep ? 2 * axis + 1 : 2 * axis;
        }
        els.push_back(std::move(p));
    }
    return PermAction(6, std::move(els), klein_names());
}

/// Faces pointwise fixed by every element of `subgroup`.
inline SimplicialComplex fixed_subcomplex(const SimplicialComplex& k, const PermAction& action,
                                          const std::vector<int>& subgroup) {
    std::vector<Simplex> gens;
    for (const auto& f : k.faces()) {
        bool fixed = true;
        for (int g : subgroup)
            for (Vertex v : f)
                if (action.apply(g, v) != v) fixed = false;
        if (fixed) gens.push_back(f);
    }
    if (k.is_void()) return k;
    return SimplicialComplex::from_generators(k.ground_set(), std::move(gens));
}

/// Subgroup generated by `gens`, as sorted element indices.
inline std::vector<int> generated_subgroup(const PermAction& action, const std::vector<int>& gens) {
    std::set<int> h{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (int g : gens) {
            int y = action.multiply(g, x);
            if (y >= 0 && h.insert(y).second) frontier.push_back(y);
        }
    }
    return {h.begin(), h.end()};
}

struct OrbitTypeReport {
    std::vector<std::vector<int>> types;  // one representative subgroup per conjugacy class
    std::vector<int> indices;             // |G / H| per type
    int gcd = 0;
};

/// Orbit types of points of |K| outside the invariant subcomplex `excluded`
/// (faces of `excluded` are skipped). A point in the interior of σ has a
/// stabilizer of the form {g ∈ Stab(σ) : g preserves each H-orbit on σ}
/// for some subgroup H ≤ Stab(σ); all such groups are collected.
inline OrbitTypeReport orbit_types(const SimplicialComplex& k, const PermAction& action,
                                   const SimplicialComplex* excluded = nullptr) {
    if (!action.is_group()) throw InputError("orbit_types: action is not closed under composition");
    std::set<std::vector<int>> found;
    for (const auto& f : k.faces()) {
        if (f.empty() || (excluded && excluded->contains(f))) continue;
        auto stab = action.setwise_stabilizer(f);
        std::set<std::vector<int>> subgroups;
        for (int a : stab)
            for (int b : stab) subgroups.insert(generated_subgroup(action, {a, b}));
        for (const auto& h : subgroups) {
            // H-orbits on the vertices of f
            std::vector<Simplex> orbits;
            for (Vertex v : f) {
                Simplex o;
                for (int g : h) o.push_back(action.apply(g, v));
                orbits.push_back(make_simplex(std::move(o)));
            }
            std::vector<int> point_stab;
            for (int g : stab) {
                bool keeps = true;
                for (const auto& o : orbits)
                    if (action.apply(g, o) != o) keeps = false;
                if (keeps) point_stab.push_back(g);
            }
            found.insert(point_stab);
        }
    }
    OrbitTypeReport rep;
    std::vector<std::set<std::vector<int>>> classes;
    for (const auto& h : found) {
        // conjugacy class of h
        std::set<std::vector<int>> cls;
        for (int g = 0; g < action.order(); ++g) {
            std::vector<int> c;
            for (int x : h) c.push_back(action.multiply(action.multiply(g, x), action.inverse(g)));
            std::sort(c.begin(), c.end());
            cls.insert(c);
        }
        bool seen = false;
        for (const auto& known : classes)
            if (known.count(h)) seen = true;
        if (seen) continue;
        classes.push_back(cls);
        rep.types.push_back(h);
        rep.indices.push_back(action.order() / static_cast<int>(h.size()));
    }
    for (int i : rep.indices) rep.gcd = std::gcd(rep.gcd, i);
    return rep;
}

inline bool is_equivariant(const SimplicialMap& f, const PermAction& on_source, const PermAction& on_target) {
    if (on_source.order() != on_target.order()) return false;
    for (int g = 0; g < on_source.order(); ++g)
        for (const auto& [v, w] : f.vertex_map) {
            auto it = f.vertex_map.find(on_source.apply(g, v));
            if (it == f.vertex_map.end() || it->second != on_target.apply(g, w)) return false;
        }
    return true;
}

namespace detail {

struct OrbitPlan {
    std::vector<Vertex> reps;
};

inline OrbitPlan orbit_plan(const std::vector<Vertex>& verts, const PermAction& action) {
    OrbitPlan plan;
    std::set<Vertex> covered;
    for (Vertex v : verts) {
        if (covered.count(v)) continue;
        plan.reps.push_back(v);
        for (int g = 0; g < action.order(); ++g) covered.insert(action.apply(g, v));
    }
    return plan;
}

/// Assign f on the orbit of v with f(v) = w; returns false on inconsistency.
inline bool assign_orbit(std::map<Vertex, Vertex>& f, Vertex v, Vertex w, const PermAction& src, const PermAction& dst,
                         std::vector<Vertex>& assigned) {
    for (int g = 0; g < src.order(); ++g) {
        Vertex gv = src.apply(g, v), gw = dst.apply(g, w);
        auto it = f.find(gv);
        if (it != f.end()) {
            if (it->second != gw) return false;
            continue;
        }
        f.emplace(gv, gw);
        assigned.push_back(gv);
    }
    return true;
}

}  // namespace detail

/// Vertex bijection K -> L, simplicial in both directions, commuting with the
/// actions; nullopt after exhausting the search space.
inline std::optional<SimplicialMap> equivariant_iso_search(const SimplicialComplex& k, const SimplicialComplex& l,
                                                           const PermAction& on_k, const PermAction& on_l) {
    auto vk = k.vertices(), vl = l.vertices();
    if (vk.size() != vl.size() || k.facets().size() != l.facets().size() || on_k.order() != on_l.order()) return std::nullopt;
    SimplexSet l_faces;
    for (auto& f : l.faces()) l_faces.insert(f);
    std::set<Simplex> l_facets(l.facets().begin(), l.facets().end());
    std::map<Vertex, std::size_t> deg_k, deg_l;
    for (const auto& f : k.facets())
        for (Vertex v : f) ++deg_k[v];
    for (const auto& f : l.facets())
        for (Vertex v : f) ++deg_l[v];
    auto plan = detail::orbit_plan(vk, on_k);
    std::map<Vertex, Vertex> f;
    std::optional<SimplicialMap> result;

    auto partial_ok = [&]() {
        std::set<Vertex> used;
        for (auto& [v, w] : f)
            if (!used.insert(w).second) return false;
        for (const auto& facet : k.facets()) {
            Simplex img;
            for (Vertex v : facet) {
                auto it = f.find(v);
                if (it != f.end()) img.push_back(it->second);
            }
            if (!l_faces.count(make_simplex(img))) return false;
        }
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (result) return;
        if (i == plan.reps.size()) {
            std::set<Simplex> img;
            SimplicialMap m{f};
            for (const auto& facet : k.facets()) img.insert(m.image(facet));
            if (img == l_facets) result = m;
            return;
        }
        const Vertex v = plan.reps[i];
        for (Vertex w : vl) {
            if (deg_k[v] != deg_l[w]) continue;
            std::vector<Vertex> assigned;
            if (detail::assign_orbit(f, v, w, on_k, on_l, assigned) && partial_ok()) rec(i + 1);
            for (Vertex x : assigned) f.erase(x);
            if (result) return;
        }
    };
    rec(0);
    return result;
}

struct DegreeResult {
    long long degree = 0;
    std::vector<long long> per_target;  // signed preimage count for each facet of L
    bool collapses = false;             // some facet of K maps non-injectively
    bool surjective = false;            // every facet of L is hit
};

/// Degree of a simplicial map between closed oriented pseudomanifolds of
/// equal dimension: the signed number of facets mapping onto a target facet.
/// The count is computed for every target facet and must agree.
inline DegreeResult degree(const SimplicialMap& f, const SimplicialComplex& k, const SimplicialComplex& l) {
    auto pk = pseudomanifold_check(k);
    auto pl = pseudomanifold_check(l);
    if (!pk.closed_orientable() || !pl.closed_orientable())
        throw InputError("degree: both complexes must be closed orientable pseudomanifolds");
    if (pk.dimension != pl.dimension) throw InputError("degree: dimension mismatch");
    std::map<Simplex, std::size_t> target_index;
    for (std::size_t i = 0; i < l.facets().size(); ++i) target_index.emplace(l.facets()[i], i);
    DegreeResult res;
    res.per_target.assign(l.facets().size(), 0);
    std::vector<char> hit(l.facets().size(), 0);
    for (std::size_t i = 0; i < k.facets().size(); ++i) {
        const auto& facet = k.facets()[i];
        std::vector<Vertex> seq;
        for (Vertex v : facet) seq.push_back(f.vertex_map.at(v));
        Simplex sorted = make_simplex(seq);
        if (sorted.size() != seq.size()) {
            res.collapses = true;
            continue;
        }
        auto it = target_index.find(sorted);
        if (it == target_index.end()) throw InputError("degree: map is not simplicial");
        // sign of the permutation taking seq to sorted order
        int inversions = 0;
        for (std::size_t a = 0; a < seq.size(); ++a)
            for (std::size_t b = a + 1; b < seq.size(); ++b)
                if (seq[a] > seq[b]) ++inversions;
        const int sign = (inversions % 2 == 0) ? 1 : -1;
        res.per_target[it->second] += pk.orientation[i] * sign * pl.orientation[it->second];
        hit[it->second] = 1;
    }
    res.degree = res.per_target.empty() ? 0 : res.per_target.front();
    for (auto d : res.per_target)
        if (d != res.degree) throw std::logic_error("degree depends on the target facet");
    res.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    return res;
}

/// Barycentric subdivision together with the lifted action on its vertices.
struct SubdividedAction {
    SimplicialComplex complex;
    PermAction action;
    std::vector<Simplex> vertex_faces;
};

inline SubdividedAction subdivide_with_action(const SimplicialComplex& k, const PermAction& action) {
    SubdividedAction out;
    out.complex = barycentric_subdivision(k, &out.vertex_faces);
    std::map<Simplex, Vertex> index;
    for (std::size_t i = 0; i < out.vertex_faces.size(); ++i) index.emplace(out.vertex_faces[i], static_cast<Vertex>(i));
    std::vector<Permutation> els;
    for (int g = 0; g < action.order(); ++g) {
        Permutation p(out.vertex_faces.size());
        for (std::size_t i = 0; i < out.vertex_faces.size(); ++i) p[i] = index.at(action.apply(g, out.vertex_faces[i]));
        els.push_back(std::move(p));
    }
    out.action = PermAction(static_cast<int>(out.vertex_faces.size()), std::move(els), action.names());
    return out;
}

struct EquivariantMapEntry {
    SimplicialMap map;
    long long degree = 0;
    bool collapses = false;
    bool surjective = false;
};

struct EquivariantScan {
    int level = 0;
    SimplicialComplex domain;
    PermAction domain_action;
    std::vector<EquivariantMapEntry> maps;
    std::vector<Vertex> unmappable;  // domain vertices whose stabilizer fixes no target vertex
};

/// All equivariant simplicial maps K' -> L, where K' is K (level 0) or its
/// barycentric subdivision with the lifted action (level 1).
inline EquivariantScan enumerate_equivariant_maps(const SimplicialComplex& k, const SimplicialComplex& l,
                                                  const PermAction& on_k, const PermAction& on_l, int level,
                                                  std::size_t max_maps = 1'000'000) {
    if (level != 0 && level != 1) throw InputError("subdivision level must be 0 or 1");
    if (on_k.order() != on_l.order()) throw InputError("actions of different groups");
    EquivariantScan scan;
    scan.level = level;
    if (level == 0) {
        scan.domain = k;
        scan.domain_action = on_k;
    } else {
        auto sd = subdivide_with_action(k, on_k);
        scan.domain = std::move(sd.complex);
        scan.domain_action = std::move(sd.action);
    }
    const auto& dom = scan.domain;
    const auto& act = scan.domain_action;
    SimplexSet l_faces;
    for (auto& f : l.faces()) l_faces.insert(f);
    auto vl = l.vertices();
    auto plan = detail::orbit_plan(dom.vertices(), act);

    std::vector<std::vector<Vertex>> candidates;
    for (Vertex v : plan.reps) {
        std::vector<Vertex> c;
        for (Vertex w : vl) {
            bool ok = true;
            for (int g : act.stabilizer(v))
                if (on_l.apply(g, w) != w) ok = false;
            if (ok) c.push_back(w);
        }
        if (c.empty()) scan.unmappable.push_back(v);
        candidates.push_back(std::move(c));
    }
    if (!scan.unmappable.empty()) return scan;

    std::vector<std::vector<std::size_t>> facets_of_vertex(static_cast<std::size_t>(act.degree()));
    for (std::size_t i = 0; i < dom.facets().size(); ++i)
        for (Vertex v : dom.facets()[i]) facets_of_vertex[static_cast<std::size_t>(v)].push_back(i);

    std::map<Vertex, Vertex> f;
    const bool closed_target = [&] {
        try {
            return pseudomanifold_check(l).closed_orientable() && pseudomanifold_check(dom).closed_orientable() &&
                   l.dimension() == dom.dimension();
        } catch (const InputError&) {
            return false;
        }
    }();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == plan.reps.size()) {
            if (scan.maps.size() >= max_maps)
                throw ResourceLimit("equivariant map enumeration exceeded " + std::to_string(max_maps) + " maps");
            EquivariantMapEntry e{SimplicialMap{f}};
            if (closed_target) {
                auto d = degree(e.map, dom, l);
                e.degree = d.degree;
                e.collapses = d.collapses;
                e.surjective = d.surjective;
            }
            scan.maps.push_back(std::move(e));
            return;
        }
        const Vertex v = plan.reps[i];
        for (Vertex w : candidates[i]) {
            std::vector<Vertex> assigned;
            bool ok = detail::assign_orbit(f, v, w, act, on_l, assigned);
            if (ok)
                for (Vertex x : assigned) {
                    for (auto fi : facets_of_vertex[static_cast<std::size_t>(x)]) {
                        Simplex img;
                        for (Vertex y : dom.facets()[fi]) {
                            auto it = f.find(y);
                            if (it != f.end()) img.push_back(it->second);
                        }
                        if (!l_faces.count(make_simplex(img))) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
            if (ok) rec(i + 1);
            for (Vertex x : assigned) f.erase(x);
        }
    };
    rec(0);
    return scan;
}

/// f * g on join(K1, K2) -> join(L1, L2) with the join labelling of constructions.hpp.
inline SimplicialMap join_of_maps(const SimplicialMap& f, const SimplicialComplex& k1, const SimplicialComplex& l1,
                                  const SimplicialMap& g, const SimplicialComplex& k2, const SimplicialComplex& l2) {
    SimplicialMap out;
    const auto& gk1 = k1.ground_set();
    const auto& gk2 = k2.ground_set();
    const auto& gl1 = l1.ground_set();
    const auto& gl2 = l2.ground_set();
    const int nk1 = static_cast<int>(gk1.size()), nl1 = static_cast<int>(gl1.size());
    for (const auto& [v, w] : f.vertex_map) out.vertex_map[detail::rank_in(gk1, v)] = detail::rank_in(gl1, w);
    for (const auto& [v, w] : g.vertex_map) out.vertex_map[nk1 + detail::rank_in(gk2, v)] = nl1 + detail::rank_in(gl2, w);
    (void)gl2;
    return out;
}

/// The reference equivariant map Δ_{2,4}^{1;L} -> ∂Δ_[4]: the G-isomorphism
/// onto Bier(Δ^{(1)}_[4]) followed by the simplicial approximation of the
/// radial projection of the cube onto the inscribed tetrahedron, which keeps
/// K-slot vertices and sends the dual vertex of row v to α(v).
inline SimplicialMap reference_equivariant_map() {
    auto ka = klein_actions();
    auto bier = bier_sphere(skeleton(SimplicialComplex::simplex({0, 1, 2, 3}), 1));
    auto iso = equivariant_iso_search(ka.chessboard, bier, ka.on_chessboard, klein_row_action(2));
    if (!iso) throw std::logic_error("no G-isomorphism onto the Bier sphere");
    const auto alpha = klein_letters()[1];
    SimplicialMap out;
    for (const auto& [v, b] : iso->vertex_map) {
        const int row = b / 2, slot = b % 2;
        out.vertex_map[v] = slot == 0 ? row : alpha[static_cast<std::size_t>(row)];
    }
    return out;
}

}  // namespace forge

#endif
