#ifndef FORGE_HOMOLOGY_HPP
#define FORGE_HOMOLOGY_HPP

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "forge/simplicial_complex.hpp"

namespace forge {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows = static_cast<int>(init.size());
        cols = rows ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init)
            for (long long v : row) data.emplace_back(v);
    }

    BigInt& at(int r, int c) { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
    const BigInt& at(int r, int c) const { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
};

/// Sparse integer matrix stored by columns.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, BigInt>> columns;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

    IntMatrix to_dense() const {
        IntMatrix m(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (const auto& [r, v] : columns[static_cast<std::size_t>(c)]) m.at(r, c) = v;
        return m;
    }
};

/// Elementary divisors d_1 | d_2 | ... (positive, nonzero only).
inline std::vector<BigInt> smith_normal_form(IntMatrix m) {
    std::vector<BigInt> diag;
    const int rows = m.rows, cols = m.cols;
    for (int t = 0; t < std::min(rows, cols); ++t) {
        // pivot: nonzero entry of least magnitude in the trailing block
        auto find_pivot = [&](int& pr, int& pc) {
            pr = pc = -1;
            BigInt best;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    const auto& v = m.at(i, j);
                    if (v != 0 && (pr < 0 || abs(v) < best)) {
                        best = abs(v);
                        pr = i;
                        pc = j;
                        if (best == 1) return;
                    }
                }
        };
        int pr, pc;
        find_pivot(pr, pc);
        if (pr < 0) break;
        for (;;) {
            if (pr != t)
                for (int j = 0; j < cols; ++j) std::swap(m.at(pr, j), m.at(t, j));
            if (pc != t)
                for (int i = 0; i < rows; ++i) std::swap(m.at(i, pc), m.at(i, t));
            bool dirty = false;
            const BigInt p = m.at(t, t);
            for (int i = t + 1; i < rows; ++i) {
                if (m.at(i, t) == 0) continue;
                BigInt q = m.at(i, t) / p;
                for (int j = t; j < cols; ++j) m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m.at(t, j) == 0) continue;
                BigInt q = m.at(t, j) / p;
                for (int i = t; i < rows; ++i) m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) dirty = true;
            }
            if (!dirty) {
                // divisibility of the trailing block by the pivot
                int bad_row = -1;
                for (int i = t + 1; i < rows && bad_row < 0; ++i)
                    for (int j = t + 1; j < cols; ++j)
                        if (m.at(i, j) % p != 0) {
                            bad_row = i;
                            break;
                        }
                if (bad_row < 0) break;
                for (int j = t; j < cols; ++j) m.at(t, j) += m.at(bad_row, j);
            }
            // re-pivot on the smallest entry of row t / column t
            pr = t;
            pc = t;
            BigInt best = abs(m.at(t, t));
            for (int i = t; i < rows; ++i)
                if (m.at(i, t) != 0 && (best == 0 || abs(m.at(i, t)) < best)) {
                    best = abs(m.at(i, t));
                    pr = i;
                    pc = t;
                }
            for (int j = t; j < cols; ++j)
                if (m.at(t, j) != 0 && (best == 0 || abs(m.at(t, j)) < best)) {
                    best = abs(m.at(t, j));
                    pr = t;
                    pc = j;
                }
        }
        diag.push_back(abs(m.at(t, t)));
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

/// Elementary divisors of a sparse matrix. Unit pivots are eliminated
/// sparsely first; what remains is reduced densely.
inline std::vector<BigInt> smith_normal_form(SparseIntMatrix m, std::size_t dense_limit = 4000) {
    std::vector<std::set<int>> row_cols(static_cast<std::size_t>(m.rows));
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)]) row_cols[static_cast<std::size_t>(r)].insert(c);
    std::vector<char> col_alive(static_cast<std::size_t>(m.cols), 1), row_alive(static_cast<std::size_t>(m.rows), 1);
    std::size_t units = 0;

    bool progress = true;
    while (progress) {
        progress = false;
        for (int c = 0; c < m.cols; ++c) {
            auto& col = m.columns[static_cast<std::size_t>(c)];
            if (!col_alive[static_cast<std::size_t>(c)] || col.empty()) continue;
            int pr = -1;
            std::size_t best = 0;
            for (const auto& [r, v] : col)
                if ((v == 1 || v == -1) && (pr < 0 || row_cols[static_cast<std::size_t>(r)].size() < best)) {
                    pr = r;
                    best = row_cols[static_cast<std::size_t>(r)].size();
                }
            if (pr < 0) continue;
            const BigInt u = col.at(pr);
            std::vector<int> others(row_cols[static_cast<std::size_t>(pr)].begin(), row_cols[static_cast<std::size_t>(pr)].end());
            for (int c2 : others) {
                if (c2 == c) continue;
                auto& col2 = m.columns[static_cast<std::size_t>(c2)];
                const BigInt factor = col2.at(pr) * u;  // u = ±1, so u^{-1} = u
                for (const auto& [r, v] : col) {
                    auto it = col2.find(r);
                    if (it == col2.end()) {
                        col2.emplace(r, -factor * v);
                        row_cols[static_cast<std::size_t>(r)].insert(c2);
                    } else {
                        it->second -= factor * v;
                        if (it->second == 0) {
                            col2.erase(it);
                            row_cols[static_cast<std::size_t>(r)].erase(c2);
                        }
                    }
                }
            }
            for (const auto& [r, v] : col) row_cols[static_cast<std::size_t>(r)].erase(c);
            col.clear();
            col_alive[static_cast<std::size_t>(c)] = 0;
            row_alive[static_cast<std::size_t>(pr)] = 0;
            ++units;
            progress = true;
        }
    }

    std::vector<int> rest_cols, rest_rows;
    for (int c = 0; c < m.cols; ++c)
        if (col_alive[static_cast<std::size_t>(c)] && !m.columns[static_cast<std::size_t>(c)].empty()) rest_cols.push_back(c);
    std::map<int, int> row_pos;
    for (int c : rest_cols)
        for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)]) row_pos.emplace(r, 0);
    int k = 0;
    for (auto& [r, pos] : row_pos) pos = k++;
    if (rest_cols.size() > dense_limit || row_pos.size() > dense_limit)
        throw ResourceLimit("dense Smith normal form remainder too large");
    IntMatrix dense(static_cast<int>(row_pos.size()), static_cast<int>(rest_cols.size()));
    for (std::size_t j = 0; j < rest_cols.size(); ++j)
        for (const auto& [r, v] : m.columns[static_cast<std::size_t>(rest_cols[j])]) dense.at(row_pos.at(r), static_cast<int>(j)) = v;
    auto divisors = smith_normal_form(std::move(dense));
    std::vector<BigInt> out(units, BigInt(1));
    out.insert(out.end(), divisors.begin(), divisors.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Rank over the two-element field.
inline std::size_t rank_mod2(const SparseIntMatrix& m) {
    const std::size_t words = (static_cast<std::size_t>(m.rows) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> cols;
    for (const auto& col : m.columns) {
        std::vector<std::uint64_t> bits(words, 0);
        bool any = false;
        for (const auto& [r, v] : col)
            if (v % 2 != 0) {
                bits[static_cast<std::size_t>(r) / 64] |= std::uint64_t{1} << (r % 64);
                any = true;
            }
        if (any) cols.push_back(std::move(bits));
    }
    // pivot by lowest set bit, one reduced column per pivot row
    std::unordered_map<std::size_t, std::size_t> pivot_of;
    std::vector<std::vector<std::uint64_t>> basis;
    auto low = [&](const std::vector<std::uint64_t>& b) -> long long {
        for (std::size_t w = 0; w < words; ++w)
            if (b[w]) return static_cast<long long>(w * 64 + static_cast<std::size_t>(std::countr_zero(b[w])));
        return -1;
    };
    for (auto& c : cols) {
        for (long long l = low(c); l >= 0; l = low(c)) {
            auto it = pivot_of.find(static_cast<std::size_t>(l));
            if (it == pivot_of.end()) {
                pivot_of.emplace(static_cast<std::size_t>(l), basis.size());
                basis.push_back(c);
                break;
            }
            const auto& b = basis[it->second];
            for (std::size_t w = 0; w < words; ++w) c[w] ^= b[w];
        }
    }
    return basis.size();
}

/// Faces of one dimension in canonical (lexicographic) order.
struct GradedFaces {
    std::vector<std::vector<Simplex>> by_dim;  // by_dim[p + 1] holds p-faces, by_dim[0] = {∅}
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index;

    explicit GradedFaces(const SimplicialComplex& k) {
        int top = k.dimension();
        by_dim.resize(static_cast<std::size_t>(std::max(top + 2, 0)));
        for (auto& f : k.faces()) by_dim[f.size()].push_back(f);
        index.resize(by_dim.size());
        for (std::size_t d = 0; d < by_dim.size(); ++d)
            for (std::size_t i = 0; i < by_dim[d].size(); ++i) index[d].emplace(by_dim[d][i], static_cast<int>(i));
    }
    std::size_t count(int p) const {
        auto i = static_cast<std::size_t>(p + 1);
        return (p >= -1 && i < by_dim.size()) ? by_dim[i].size() : 0;
    }
};

/// ∂_p : C_p -> C_{p-1}, rows are (p-1)-faces and columns p-faces.
/// p = 0 gives the augmentation map onto the empty face.
inline SparseIntMatrix boundary_matrix(const GradedFaces& g, int p) {
    if (p < 0 || static_cast<std::size_t>(p + 1) >= g.by_dim.size())
        throw InputError("boundary_matrix: dimension out of range");
    const auto& cols = g.by_dim[static_cast<std::size_t>(p + 1)];
    const auto& row_index = g.index[static_cast<std::size_t>(p)];
    SparseIntMatrix m(static_cast<int>(g.count(p - 1)), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < cols[c].size(); ++i) {
            Simplex f = cols[c];
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            m.columns[c].emplace(row_index.at(f), BigInt(i % 2 == 0 ? 1 : -1));
        }
    return m;
}

inline SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int p) {
    if (p < 1 || p > k.dimension()) throw InputError("boundary_matrix: need 1 <= p <= dim K");
    return boundary_matrix(GradedFaces(k), p);
}

struct HomologyOptions {
    bool reduced = false;
    bool mod2 = false;
    std::size_t max_faces_per_dim = 100'000;
};

struct HomologyReport {
    bool reduced = false;
    bool mod2 = false;
    std::vector<long long> betti;                 // index p = 0..dim
    std::vector<std::vector<BigInt>> torsion;     // torsion coefficients of H_p
    long long euler_characteristic = 0;           // alternating face count (unreduced)

    bool torsion_free() const {
        return std::all_of(torsion.begin(), torsion.end(), [](const auto& t) { return t.empty(); });
    }
};

inline HomologyReport homology(const SimplicialComplex& k, const HomologyOptions& opt = {}) {
    HomologyReport rep;
    rep.reduced = opt.reduced;
    rep.mod2 = opt.mod2;
    if (k.is_void() || k.dimension() < 0) return rep;
    GradedFaces g(k);
    const int top = k.dimension();
    for (int p = 0; p <= top; ++p) {
        if (!opt.mod2 && g.count(p) > opt.max_faces_per_dim)
            throw ResourceLimit("integer homology refused: " + std::to_string(g.count(p)) + " faces in dimension " +
                                std::to_string(p) + " (use the mod-2 path)");
        rep.euler_characteristic += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(g.count(p));
    }
    // rank[p] and divisors[p] of ∂_p for p = 0..top+1
    std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
    std::vector<std::vector<BigInt>> torsion_of(static_cast<std::size_t>(top + 2));
    for (int p = 0; p <= top; ++p) {
        if (p == 0 && !opt.reduced) continue;
        auto m = boundary_matrix(g, p);
        if (opt.mod2) {
            rank[static_cast<std::size_t>(p)] = rank_mod2(m);
        } else {
            auto d = smith_normal_form(std::move(m));
            rank[static_cast<std::size_t>(p)] = d.size();
            for (auto& x : d)
                if (x > 1) torsion_of[static_cast<std::size_t>(p)].push_back(x);
        }
    }
    for (int p = 0; p <= top; ++p) {
        long long b = static_cast<long long>(g.count(p)) - static_cast<long long>(rank[static_cast<std::size_t>(p)]) -
                      static_cast<long long>(rank[static_cast<std::size_t>(p + 1)]);
        rep.betti.push_back(b);
        rep.torsion.push_back(torsion_of[static_cast<std::size_t>(p + 1)]);
    }
    return rep;
}

struct PseudomanifoldReport {
    int dimension = -1;
    bool pure = false;
    bool ridge_regular = false;       // every ridge in exactly two facets
    bool strongly_connected = false;  // facet graph through ridges is connected
    bool orientable = false;
    std::vector<int> orientation;     // ±1 per facet of K (facets() order), sorted-vertex reference

    bool closed_orientable() const { return pure && ridge_regular && strongly_connected && orientable; }
};

inline PseudomanifoldReport pseudomanifold_check(const SimplicialComplex& k) {
    if (k.is_void() || !k.is_pure()) throw InputError("pseudomanifold_check: complex is not pure");
    PseudomanifoldReport rep;
    rep.pure = true;
    rep.dimension = k.dimension();
    const auto& facets = k.facets();
    std::unordered_map<Simplex, std::vector<std::pair<int, int>>, SimplexHash> ridges;  // ridge -> (facet, sign)
    for (std::size_t f = 0; f < facets.size(); ++f)
        for (std::size_t i = 0; i < facets[f].size(); ++i) {
            Simplex r = facets[f];
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
            ridges[r].emplace_back(static_cast<int>(f), i % 2 == 0 ? 1 : -1);
        }
    rep.ridge_regular = !facets.empty() && std::all_of(ridges.begin(), ridges.end(), [](const auto& kv) { return kv.second.size() == 2; });

    std::vector<std::vector<std::pair<int, int>>> adj(facets.size());  // (neighbour, required relative sign)
    for (const auto& [r, inc] : ridges)
        if (inc.size() == 2) {
            // ε_F s_F + ε_G s_G = 0  =>  ε_G = -ε_F s_F s_G
            int rel = -inc[0].second * inc[1].second;
            adj[static_cast<std::size_t>(inc[0].first)].emplace_back(inc[1].first, rel);
            adj[static_cast<std::size_t>(inc[1].first)].emplace_back(inc[0].first, rel);
        }
    rep.orientation.assign(facets.size(), 0);
    bool consistent = true;
    std::size_t reached = 0;
    if (!facets.empty()) {
        std::queue<int> q;
        rep.orientation[0] = 1;
        q.push(0);
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            ++reached;
            for (auto [g, rel] : adj[static_cast<std::size_t>(f)]) {
                int want = rep.orientation[static_cast<std::size_t>(f)] * rel;
                auto& og = rep.orientation[static_cast<std::size_t>(g)];
                if (og == 0) {
                    og = want;
                    q.push(g);
                } else if (og != want) {
                    consistent = false;
                }
            }
        }
    }
    rep.strongly_connected = reached == facets.size() && !facets.empty();
    rep.orientable = rep.ridge_regular && rep.strongly_connected && consistent;
    if (!rep.orientable) rep.orientation.clear();
    return rep;
}

}  // namespace forge

#endif
