#ifndef FORGE_SIMPLICIAL_COMPLEX_HPP
#define FORGE_SIMPLICIAL_COMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace forge {

/// Raised for malformed user input (bad parameters, inconsistent files).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a desk-scale guard refuses an oversized computation.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vertex = int;

/// A face, stored as a strictly increasing vertex list.
using Simplex = std::vector<Vertex>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (Vertex v : s) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h ^ s.size();
    }
};

using SimplexSet = std::unordered_set<Simplex, SimplexHash>;

inline Simplex make_simplex(std::vector<Vertex> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

inline bool is_subset(const Simplex& a, const Simplex& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Faces ordered by dimension first, then lexicographically.
inline bool graded_less(const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

/// Finite abstract simplicial complex on integer vertices.
///
/// The complex is represented by its declared ground set and the list of
/// inclusion-maximal faces. Every non-void complex contains the empty face;
/// the void complex has no faces at all. Instances are immutable.
class SimplicialComplex {
public:
    SimplicialComplex() : void_(true) {}

    /// Builds the downward closure of `generators`; non-maximal generators
    /// are dropped. Every generator vertex must lie in `ground`.
    static SimplicialComplex from_generators(std::vector<Vertex> ground,
                                             std::vector<Simplex> generators) {
        SimplicialComplex k;
        k.void_ = false;
        k.ground_ = make_simplex(std::move(ground));
        for (auto& g : generators) {
            g = make_simplex(std::move(g));
            for (Vertex v : g) {
                if (!std::binary_search(k.ground_.begin(), k.ground_.end(), v)) {
                    throw InputError("face vertex " + std::to_string(v) +
                                     " not in ground set");
                }
            }
        }
        k.facets_ = maximal_sets(std::move(generators));
        if (k.facets_.empty()) k.facets_.push_back({});
        return k;
    }

    static SimplicialComplex void_complex(std::vector<Vertex> ground) {
        SimplicialComplex k;
        k.ground_ = make_simplex(std::move(ground));
        return k;
    }

    /// The full simplex 2^ground.
    static SimplicialComplex simplex(std::vector<Vertex> ground) {
        auto g = make_simplex(std::move(ground));
        return from_generators(g, {g});
    }

    /// The boundary of the full simplex on `ground`.
    static SimplicialComplex simplex_boundary(std::vector<Vertex> ground) {
        auto g = make_simplex(std::move(ground));
        std::vector<Simplex> gens;
        for (std::size_t i = 0; i < g.size(); ++i) {
            Simplex f = g;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            gens.push_back(std::move(f));
        }
        return from_generators(g, std::move(gens));
    }

    bool is_void() const { return void_; }
    const std::vector<Vertex>& ground_set() const { return ground_; }
    const std::vector<Simplex>& facets() const { return facets_; }

    /// Vertices that actually occur in some face.
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> vs;
        for (const auto& f : facets_) vs.insert(vs.end(), f.begin(), f.end());
        return make_simplex(std::move(vs));
    }

    /// -1 for {∅}; -2 for the void complex.
    int dimension() const {
        if (void_) return -2;
        std::size_t best = 0;
        for (const auto& f : facets_) best = std::max(best, f.size());
        return static_cast<int>(best) - 1;
    }

    bool is_pure() const {
        if (void_ || facets_.empty()) return true;
        auto n = facets_.front().size();
        return std::all_of(facets_.begin(), facets_.end(),
                           [n](const Simplex& f) { return f.size() == n; });
    }

    bool contains(const Simplex& s) const {
        if (void_) return false;
        return std::any_of(facets_.begin(), facets_.end(),
                           [&](const Simplex& f) { return is_subset(s, f); });
    }

    /// All faces including ∅, in graded order.
    std::vector<Simplex> faces() const {
        if (void_) return {};
        SimplexSet seen;
        std::vector<Simplex> out;
        for (const auto& f : facets_) {
            if (f.size() > 30) throw ResourceLimit("facet too large to enumerate subsets");
            const std::uint64_t n = std::uint64_t{1} << f.size();
            for (std::uint64_t mask = 0; mask < n; ++mask) {
                Simplex s;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (mask >> i & 1U) s.push_back(f[i]);
                if (seen.insert(s).second) out.push_back(std::move(s));
            }
        }
        std::sort(out.begin(), out.end(), graded_less);
        return out;
    }

    /// f[i] = number of faces of dimension i, for i = 0..dim.
    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f(static_cast<std::size_t>(std::max(dimension() + 1, 0)), 0);
        for (const auto& s : faces())
            if (!s.empty()) ++f[s.size() - 1];
        return f;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        auto f = f_vector();
        for (std::size_t i = 0; i < f.size(); ++i)
            chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(f[i]);
        return chi;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.void_ == b.void_ && a.ground_ == b.ground_ && a.facets_ == b.facets_;
    }

private:
    static std::vector<Simplex> maximal_sets(std::vector<Simplex> sets) {
        std::sort(sets.begin(), sets.end(), [](const Simplex& a, const Simplex& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return a < b;
        });
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        std::vector<Simplex> kept;
        std::size_t larger_end = 0;  // kept[0, larger_end) are strictly larger than current
        for (std::size_t i = 0; i < sets.size(); ++i) {
            // compare against kept.back(): sets[i - 1] may have been moved from
            if (!kept.empty() && sets[i].size() != kept.back().size()) larger_end = kept.size();
            bool dominated = false;
            for (std::size_t j = 0; j < larger_end && !dominated; ++j)
                dominated = is_subset(sets[i], kept[j]);
            if (!dominated) kept.push_back(std::move(sets[i]));
        }
        std::sort(kept.begin(), kept.end());
        return kept;
    }

    std::vector<Vertex> ground_;
    std::vector<Simplex> facets_;
    bool void_ = false;
};

/// Indexed face poset of a complex: every face (∅ first) with facet and
/// cofacet adjacency. Used by the Morse engine and the homology oracle.
class FaceLattice {
public:
    explicit FaceLattice(const SimplicialComplex& k) : faces_(k.faces()) {
        index_.reserve(faces_.size() * 2);
        for (std::size_t i = 0; i < faces_.size(); ++i)
            index_.emplace(faces_[i], static_cast<int>(i));
        facets_of_.resize(faces_.size());
        cofacets_of_.resize(faces_.size());
        for (std::size_t i = 0; i < faces_.size(); ++i) {
            const auto& f = faces_[i];
            for (std::size_t j = 0; j < f.size(); ++j) {
                Simplex g = f;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(j));
                int gi = index_.at(g);
                facets_of_[i].push_back(gi);
                cofacets_of_[static_cast<std::size_t>(gi)].push_back(static_cast<int>(i));
            }
        }
    }

    std::size_t size() const { return faces_.size(); }
    const Simplex& face(int i) const { return faces_[static_cast<std::size_t>(i)]; }
    const std::vector<Simplex>& faces() const { return faces_; }
    int dim(int i) const { return static_cast<int>(face(i).size()) - 1; }

    /// -1 if `s` is not a face.
    int index_of(const Simplex& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

    /// facets_of(i)[j] is the face obtained by deleting the j-th vertex.
    const std::vector<int>& facets_of(int i) const { return facets_of_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& cofacets_of(int i) const { return cofacets_of_[static_cast<std::size_t>(i)]; }

    std::vector<int> faces_of_dim(int d) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < faces_.size(); ++i)
            if (static_cast<int>(faces_[i].size()) - 1 == d) out.push_back(static_cast<int>(i));
        return out;
    }

private:
    std::vector<Simplex> faces_;
    std::unordered_map<Simplex, int, SimplexHash> index_;
    std::vector<std::vector<int>> facets_of_;
    std::vector<std::vector<int>> cofacets_of_;
};

/// Vertex map between complexes, indexed by source vertex id.
struct SimplicialMap {
    std::map<Vertex, Vertex> vertex_map;

    Simplex image(const Simplex& s) const {
        std::vector<Vertex> out;
        out.reserve(s.size());
        for (Vertex v : s) out.push_back(vertex_map.at(v));
        return make_simplex(std::move(out));
    }

    /// True when every face of `source` maps onto a face of `target`.
    bool is_simplicial(const SimplicialComplex& source, const SimplicialComplex& target) const {
        for (const auto& f : source.facets()) {
            for (Vertex v : f)
                if (!vertex_map.count(v)) return false;
            if (!target.contains(image(f))) return false;
        }
        return true;
    }
};

}  // namespace forge

#endif
