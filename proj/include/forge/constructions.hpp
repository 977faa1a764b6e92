#ifndef FORGE_CONSTRUCTIONS_HPP
#define FORGE_CONSTRUCTIONS_HPP

#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "forge/simplicial_complex.hpp"

// Vertex labelling conventions (part of the interchange format):
//   multipartite   class-major, consecutive ids
//   chessboard     cell (row i, col j) -> i * cols + j
//   join(K, L)     rank in K's ground set, then |K| + rank in L's ground set
//   deleted join   (rank v, slot s) -> v * r + s

namespace forge {

namespace detail {

inline std::vector<Vertex> iota_ground(int n) {
    std::vector<Vertex> g(static_cast<std::size_t>(n));
    std::iota(g.begin(), g.end(), 0);
    return g;
}

inline int rank_in(const std::vector<Vertex>& ground, Vertex v) {
    auto it = std::lower_bound(ground.begin(), ground.end(), v);
    return static_cast<int>(it - ground.begin());
}

/// Faces of `k` as bitmasks over ranks in its ground set.
inline std::vector<std::uint64_t> face_masks(const SimplicialComplex& k) {
    const auto& g = k.ground_set();
    if (g.size() > 64) throw ResourceLimit("ground set larger than 64 vertices");
    std::vector<std::uint64_t> out;
    for (const auto& f : k.faces()) {
        std::uint64_t m = 0;
        for (Vertex v : f) m |= std::uint64_t{1} << rank_in(g, v);
        out.push_back(m);
    }
    return out;
}

}  // namespace detail

/// K_{t0,...,tk} = [t0] * ... * [tk]: all rainbow sets of the class-major coloring.
inline SimplicialComplex multipartite_complex(const std::vector<int>& sizes) {
    if (sizes.empty()) throw InputError("multipartite_complex: empty size list");
    int total = 0;
    for (int t : sizes) {
        if (t <= 0) throw InputError("multipartite_complex: sizes must be positive");
        total += t;
    }
    std::vector<Simplex> facets{{}};
    int offset = 0;
    for (int t : sizes) {
        std::vector<Simplex> next;
        next.reserve(facets.size() * static_cast<std::size_t>(t));
        for (const auto& f : facets)
            for (int v = 0; v < t; ++v) {
                Simplex g = f;
                g.push_back(offset + v);
                next.push_back(std::move(g));
            }
        facets = std::move(next);
        offset += t;
    }
    return SimplicialComplex::from_generators(detail::iota_ground(total), std::move(facets));
}

struct ChessboardSpec {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_caps;
    std::vector<int> col_caps;

    static ChessboardSpec uniform(int rows, int cols) {
        return {rows, cols, std::vector<int>(static_cast<std::size_t>(rows), 1),
                std::vector<int>(static_cast<std::size_t>(cols), 1)};
    }

    void validate() const {
        if (rows < 1 || cols < 1) throw InputError("chessboard needs rows, cols >= 1");
        if (row_caps.size() != static_cast<std::size_t>(rows) ||
            col_caps.size() != static_cast<std::size_t>(cols))
            throw InputError("chessboard caps must have one entry per row/column");
        for (int c : row_caps)
            if (c < 1) throw InputError("row caps must be >= 1");
        for (int c : col_caps)
            if (c < 1) throw InputError("column caps must be >= 1");
    }

    Vertex cell(int row, int col) const { return row * cols + col; }
};

/// Rook placements with at most row_caps[i] rooks in row i and col_caps[j] in column j.
inline SimplicialComplex multi_chessboard_complex(const ChessboardSpec& spec) {
    spec.validate();
    const int n = spec.rows * spec.cols;
    std::vector<int> row_used(static_cast<std::size_t>(spec.rows), 0);
    std::vector<int> col_used(static_cast<std::size_t>(spec.cols), 0);
    std::vector<Simplex> maximal;
    Simplex current;
    auto addable = [&](int cell) {
        int r = cell / spec.cols, c = cell % spec.cols;
        return row_used[static_cast<std::size_t>(r)] < spec.row_caps[static_cast<std::size_t>(r)] &&
               col_used[static_cast<std::size_t>(c)] < spec.col_caps[static_cast<std::size_t>(c)];
    };
    auto place = [&](int cell, int delta) {
        row_used[static_cast<std::size_t>(cell / spec.cols)] += delta;
        col_used[static_cast<std::size_t>(cell % spec.cols)] += delta;
    };
    std::function<void(int)> rec = [&](int cell) {
        if (cell == n) {
            for (int c = 0; c < n; ++c)
                if (!std::binary_search(current.begin(), current.end(), c) && addable(c)) return;
            maximal.push_back(current);
            return;
        }
        if (addable(cell)) {
            place(cell, 1);
            current.push_back(cell);
            rec(cell + 1);
            current.pop_back();
            place(cell, -1);
        }
        rec(cell + 1);
    };
    rec(0);
    return SimplicialComplex::from_generators(detail::iota_ground(n), std::move(maximal));
}

inline SimplicialComplex chessboard_complex(int m, int n) {
    if (m < 1 || n < 1) throw InputError("chessboard_complex needs m, n >= 1");
    return multi_chessboard_complex(ChessboardSpec::uniform(m, n));
}

/// Relabels vertices through `map`; the ground set is mapped as well.
inline SimplicialComplex relabel(const SimplicialComplex& k, const std::map<Vertex, Vertex>& map) {
    std::vector<Vertex> ground;
    for (Vertex v : k.ground_set()) ground.push_back(map.at(v));
    if (k.is_void()) return SimplicialComplex::void_complex(ground);
    std::vector<Simplex> gens;
    for (const auto& f : k.facets()) {
        Simplex g;
        for (Vertex v : f) g.push_back(map.at(v));
        gens.push_back(make_simplex(std::move(g)));
    }
    return SimplicialComplex::from_generators(std::move(ground), std::move(gens));
}

inline SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l) {
    const auto& gk = k.ground_set();
    const auto& gl = l.ground_set();
    const int nk = static_cast<int>(gk.size());
    auto ground = detail::iota_ground(nk + static_cast<int>(gl.size()));
    if (k.is_void() || l.is_void()) return SimplicialComplex::void_complex(ground);
    std::vector<Simplex> gens;
    gens.reserve(k.facets().size() * l.facets().size());
    for (const auto& a : k.facets())
        for (const auto& b : l.facets()) {
            Simplex s;
            for (Vertex v : a) s.push_back(detail::rank_in(gk, v));
            for (Vertex v : b) s.push_back(nk + detail::rank_in(gl, v));
            gens.push_back(std::move(s));
        }
    return SimplicialComplex::from_generators(std::move(ground), std::move(gens));
}

/// Deleted join of complexes sharing one ground set: tuples (σ_1,...,σ_r)
/// of pairwise disjoint faces with σ_i ∈ parts[i].
inline SimplicialComplex deleted_join_of(const std::vector<const SimplicialComplex*>& parts,
                                         std::size_t tuple_limit = 50'000'000) {
    if (parts.empty()) throw InputError("deleted join of nothing");
    const auto& ground = parts.front()->ground_set();
    const int r = static_cast<int>(parts.size());
    const int n = static_cast<int>(ground.size());
    for (auto* p : parts)
        if (p->ground_set() != ground) throw InputError("deleted join operands must share a ground set");
    auto flat_ground = detail::iota_ground(n * r);
    for (auto* p : parts)
        if (p->is_void()) return SimplicialComplex::void_complex(flat_ground);

    struct Slot {
        std::vector<std::uint64_t> faces;
        std::unordered_map<std::uint64_t, std::uint64_t> extension;  // face -> addable vertices
    };
    std::vector<Slot> slots(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        auto& sl = slots[static_cast<std::size_t>(i)];
        sl.faces = detail::face_masks(*parts[static_cast<std::size_t>(i)]);
        std::unordered_set<std::uint64_t> set(sl.faces.begin(), sl.faces.end());
        for (auto f : sl.faces) {
            std::uint64_t ext = 0;
            for (int v = 0; v < n; ++v) {
                auto bit = std::uint64_t{1} << v;
                if (!(f & bit) && set.count(f | bit)) ext |= bit;
            }
            sl.extension.emplace(f, ext);
        }
    }

    std::vector<Simplex> facets;
    std::vector<std::uint64_t> chosen(static_cast<std::size_t>(r));
    std::size_t visited = 0;
    std::function<void(int, std::uint64_t)> rec = [&](int slot, std::uint64_t used) {
        if (slot == r) {
            if (++visited > tuple_limit) throw ResourceLimit("deleted join exceeds tuple limit");
            for (int i = 0; i < r; ++i) {
                auto& sl = slots[static_cast<std::size_t>(i)];
                if (sl.extension.at(chosen[static_cast<std::size_t>(i)]) & ~used) return;
            }
            Simplex s;
            for (int v = 0; v < n; ++v)
                for (int i = 0; i < r; ++i)
                    if (chosen[static_cast<std::size_t>(i)] >> v & 1U) s.push_back(v * r + i);
            facets.push_back(std::move(s));
            return;
        }
        for (auto f : slots[static_cast<std::size_t>(slot)].faces) {
            if (f & used) continue;
            chosen[static_cast<std::size_t>(slot)] = f;
            rec(slot + 1, used | f);
        }
    };
    rec(0, 0);
    return SimplicialComplex::from_generators(std::move(flat_ground), std::move(facets));
}

inline SimplicialComplex deleted_join(const SimplicialComplex& k, int r) {
    if (r < 2) throw InputError("deleted_join needs r >= 2");
    std::vector<const SimplicialComplex*> parts(static_cast<std::size_t>(r), &k);
    return deleted_join_of(parts);
}

/// σ ∈ K° iff ground ∖ σ ∉ K. Returns the void complex when K is the full simplex.
inline SimplicialComplex alexander_dual(const SimplicialComplex& k, std::vector<Vertex> ground) {
    ground = make_simplex(std::move(ground));
    for (Vertex v : k.ground_set())
        if (!std::binary_search(ground.begin(), ground.end(), v))
            throw InputError("alexander_dual: complex not inside the given ground set");
    const int n = static_cast<int>(ground.size());
    if (n > 24) throw ResourceLimit("alexander_dual limited to 24 ground vertices");
    std::unordered_set<std::uint64_t> faces;
    if (!k.is_void())
        for (const auto& f : k.faces()) {
            std::uint64_t m = 0;
            for (Vertex v : f) m |= std::uint64_t{1} << detail::rank_in(ground, v);
            faces.insert(m);
        }
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<Simplex> gens;
    for (std::uint64_t m = 0; m <= full; ++m) {
        if (faces.count(full & ~m)) continue;
        Simplex s;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1U) s.push_back(ground[static_cast<std::size_t>(i)]);
        gens.push_back(std::move(s));
    }
    if (gens.empty()) return SimplicialComplex::void_complex(ground);
    return SimplicialComplex::from_generators(ground, std::move(gens));
}

/// Bier(K) = K *_Δ K°: slot 0 holds K, slot 1 holds the Alexander dual.
inline SimplicialComplex bier_sphere(const SimplicialComplex& k) {
    if (k.is_void() || k.dimension() < 0) throw InputError("bier_sphere: K must contain a vertex");
    const auto& g = k.ground_set();
    if (k.facets().size() == 1 && k.facets().front() == g)
        throw InputError("bier_sphere: K must not be the full simplex");
    auto dual = alexander_dual(k, g);
    return deleted_join_of({&k, &dual});
}

inline SimplicialComplex skeleton(const SimplicialComplex& k, int d) {
    if (d < 0) throw InputError("skeleton dimension must be >= 0");
    if (k.is_void()) return k;
    std::vector<Simplex> gens;
    for (const auto& f : k.faces())
        if (static_cast<int>(f.size()) <= d + 1) gens.push_back(f);
    return SimplicialComplex::from_generators(k.ground_set(), std::move(gens));
}

/// Barycentric subdivision: vertex i is the i-th non-empty face of `k`
/// in graded order; facets are maximal chains.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& k,
                                                 std::vector<Simplex>* vertex_faces = nullptr) {
    std::vector<Simplex> faces;
    for (auto& f : k.faces())
        if (!f.empty()) faces.push_back(f);
    std::unordered_map<Simplex, int, SimplexHash> idx;
    for (std::size_t i = 0; i < faces.size(); ++i) idx.emplace(faces[i], static_cast<int>(i));
    std::vector<Simplex> chains;
    for (const auto& top : k.facets()) {
        if (top.empty()) continue;
        Simplex order = top;
        do {
            Simplex chain;
            for (std::size_t len = 1; len <= order.size(); ++len) {
                Simplex prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
                chain.push_back(idx.at(make_simplex(prefix)));
            }
            chains.push_back(make_simplex(std::move(chain)));
        } while (std::next_permutation(order.begin(), order.end()));
    }
    if (vertex_faces) *vertex_faces = faces;
    return SimplicialComplex::from_generators(detail::iota_ground(static_cast<int>(faces.size())),
                                              std::move(chains));
}

struct QuotientMap {
    SimplicialComplex target;
    SimplicialMap alpha;
};

/// K_{3,3,3,1} -> K_{2,2,2,1}: within every 3-element class the third
/// element is identified with the second.
inline QuotientMap quotient_map_3to2(const SimplicialComplex& k) {
    if (!(k == multipartite_complex({3, 3, 3, 1})))
        throw InputError("quotient_map_3to2 expects K_{3,3,3,1}");
    QuotientMap q{multipartite_complex({2, 2, 2, 1}), {}};
    for (int c = 0; c < 3; ++c)
        for (int p = 0; p < 3; ++p) q.alpha.vertex_map[3 * c + p] = 2 * c + std::min(p, 1);
    q.alpha.vertex_map[9] = 6;
    return q;
}

/// The multiple chessboard complex on 4 rows × 2 columns with row caps 1
/// and column caps (2, 1).
inline SimplicialComplex small_bier_chessboard() {
    return multi_chessboard_complex({4, 2, {1, 1, 1, 1}, {2, 1}});
}

/// Identification of (K_{3,3,3,1})^{*4}_Δ with (Δ_{3,4})^{*3} * [4].
/// Deleted-join vertex (class c, copy j, slot i) corresponds to chessboard
/// cell (j, i) of the c-th Δ_{3,4} join factor; the apex d in slot i to
/// vertex i of [4]. Returned as a map between flat labels.
inline std::map<Vertex, Vertex> deleted_join_chessboard_relabeling() {
    std::map<Vertex, Vertex> m;
    const int r = 4;
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < r; ++i) m[(3 * c + j) * r + i] = 12 * c + (j * 4 + i);
    for (int i = 0; i < r; ++i) m[9 * r + i] = 36 + i;
    return m;
}

inline SimplicialComplex chessboard_join_model() {
    auto d34 = chessboard_complex(3, 4);
    SimplicialComplex four = SimplicialComplex::from_generators({0, 1, 2, 3}, {{0}, {1}, {2}, {3}});
    return join(join(join(d34, d34), d34), four);
}

struct ChessboardQuotient {
    SimplicialComplex source;  // (Δ_{3,4})^{*3} * [4]
    SimplicialComplex target;  // (Δ_{2,4}^{1;L})^{*3} * [4]
    SimplicialMap pi;
};

/// The map induced by quotient_map_3to2 on configuration spaces: copy 0 of
/// each class goes to column 1 (cap 1) of the 4×2 board, copies 1 and 2 are
/// merged into column 0 (cap 2). Slots become rows.
inline ChessboardQuotient chessboard_quotient_map() {
    auto m = small_bier_chessboard();
    SimplicialComplex four = SimplicialComplex::from_generators({0, 1, 2, 3}, {{0}, {1}, {2}, {3}});
    ChessboardQuotient q{chessboard_join_model(), join(join(join(m, m), m), four), {}};
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 4; ++i)
                q.pi.vertex_map[12 * c + j * 4 + i] = 8 * c + i * 2 + (j == 0 ? 1 : 0);
    for (int i = 0; i < 4; ++i) q.pi.vertex_map[36 + i] = 24 + i;
    return q;
}

}  // namespace forge

#endif
