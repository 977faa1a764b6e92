#ifndef FORGE_AFFINE_HPP
#define FORGE_AFFINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "forge/constructions.hpp"
#include "forge/simplicial_complex.hpp"

namespace forge {

using Rational = boost::multiprecision::cpp_rational;
using Point = std::vector<Rational>;

inline Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw InputError("not a rational number: '" + s + "'");
    }
}

inline std::string rational_to_string(const Rational& q) { return q.str(); }

struct RationalPointConfig {
    int d = 0;
    std::vector<Point> points;
    std::vector<std::vector<int>> colors;  // empty when uncolored
    std::vector<int> multiplicity;         // empty means every point once

    void validate() const {
        if (d < 1) throw InputError("dimension must be >= 1");
        for (const auto& p : points)
            if (static_cast<int>(p.size()) != d) throw InputError("point of wrong dimension");
        if (!colors.empty()) {
            std::vector<int> seen(points.size(), 0);
            for (const auto& c : colors)
                for (int i : c) {
                    if (i < 0 || i >= static_cast<int>(points.size())) throw InputError("color index out of range");
                    ++seen[static_cast<std::size_t>(i)];
                }
            for (int s : seen)
                if (s != 1) throw InputError("colors must partition the point indices");
        }
        if (!multiplicity.empty()) {
            if (multiplicity.size() != points.size()) throw InputError("one multiplicity per point");
            for (int m : multiplicity)
                if (m < 1) throw InputError("multiplicities must be positive");
        }
    }

    std::vector<int> color_of() const {
        std::vector<int> out(points.size(), -1);
        for (std::size_t c = 0; c < colors.size(); ++c)
            for (int i : colors[c]) out[static_cast<std::size_t>(i)] = static_cast<int>(c);
        return out;
    }
};

struct LpResult {
    std::optional<std::vector<Rational>> solution;
    Rational phase1_objective;  // > 0 certifies infeasibility
};

/// Feasibility of {A x = b, x >= 0} by phase-1 simplex with Bland's rule.
inline LpResult lp_feasible(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
    const std::size_t m = a.size();
    if (b.size() != m) throw InputError("lp: row count mismatch");
    const std::size_t n = m ? a.front().size() : 0;
    for (const auto& row : a)
        if (row.size() != n) throw InputError("lp: ragged matrix");
    // tableau columns: x (n), artificials (m), rhs
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = flip ? Rational(-b[i]) : b[i];
        basis[i] = n + i;
    }
    // objective row: reduced costs of min Σ artificials, last entry −(objective)
    std::vector<Rational> z(cols);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (j < n || j == cols - 1) z[j] -= t[i][j];

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (z[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur for a phase-1 objective bounded below
        const Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (z[enter] != 0) {
            const Rational f = z[enter];
            for (std::size_t j = 0; j < cols; ++j) z[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    LpResult res;
    res.phase1_objective = -z[cols - 1];
    if (res.phase1_objective == 0) {
        std::vector<Rational> x(n);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = t[i][cols - 1];
        res.solution = std::move(x);
    }
    return res;
}

struct PartitionWitness {
    std::vector<std::vector<int>> parts;          // point indices
    Point x;                                      // common point
    std::vector<std::vector<Rational>> lambda;    // weights, aligned with parts
};

struct HullIntersection {
    Point x;
    std::vector<std::vector<Rational>> lambda;
};

/// Common point of conv(P_1), ..., conv(P_r), or nullopt when the LP is infeasible.
inline std::optional<HullIntersection> hulls_intersect(const std::vector<std::vector<Point>>& sets) {
    if (sets.empty()) throw InputError("no point sets");
    const std::size_t d = sets.front().empty() ? 0 : sets.front().front().size();
    std::size_t nvars = 0;
    for (const auto& s : sets) {
        if (s.empty()) throw InputError("empty part");
        for (const auto& p : s)
            if (p.size() != d) throw InputError("points of mixed dimension");
        nvars += s.size();
    }
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<std::size_t> offset;
    std::size_t off = 0;
    for (const auto& s : sets) {
        offset.push_back(off);
        std::vector<Rational> row(nvars);
        for (std::size_t j = 0; j < s.size(); ++j) row[off + j] = 1;
        a.push_back(std::move(row));
        b.emplace_back(1);
        off += s.size();
    }
    for (std::size_t i = 1; i < sets.size(); ++i)
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<Rational> row(nvars);
            for (std::size_t j = 0; j < sets[0].size(); ++j) row[j] = sets[0][j][c];
            for (std::size_t j = 0; j < sets[i].size(); ++j) row[offset[i] + j] = -sets[i][j][c];
            a.push_back(std::move(row));
            b.emplace_back(0);
        }
    auto lp = lp_feasible(a, b);
    if (!lp.solution) return std::nullopt;
    HullIntersection out;
    out.x.assign(d, Rational(0));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<Rational> lam(sets[i].size());
        for (std::size_t j = 0; j < sets[i].size(); ++j) lam[j] = (*lp.solution)[offset[i] + j];
        out.lambda.push_back(std::move(lam));
    }
    for (std::size_t j = 0; j < sets[0].size(); ++j)
        for (std::size_t c = 0; c < d; ++c) out.x[c] += out.lambda[0][j] * sets[0][j][c];
    return out;
}

/// Independent check of a witness by substitution.
inline bool verify_witness(const RationalPointConfig& cfg, const PartitionWitness& w) {
    if (w.parts.size() != w.lambda.size() || static_cast<int>(w.x.size()) != cfg.d) return false;
    for (std::size_t i = 0; i < w.parts.size(); ++i) {
        if (w.parts[i].empty() || w.parts[i].size() != w.lambda[i].size()) return false;
        Rational sum = 0;
        Point acc(static_cast<std::size_t>(cfg.d), Rational(0));
        for (std::size_t j = 0; j < w.parts[i].size(); ++j) {
            const int idx = w.parts[i][j];
            if (idx < 0 || idx >= static_cast<int>(cfg.points.size())) return false;
            const Rational& l = w.lambda[i][j];
            if (l < 0) return false;
            sum += l;
            for (int c = 0; c < cfg.d; ++c) acc[static_cast<std::size_t>(c)] += l * cfg.points[static_cast<std::size_t>(idx)][static_cast<std::size_t>(c)];
        }
        if (sum != 1 || acc != w.x) return false;
    }
    return true;
}

/// Witness for the parts (point index sets) of cfg, if their hulls meet.
inline std::optional<PartitionWitness> witness_for(const RationalPointConfig& cfg, const std::vector<std::vector<int>>& parts) {
    std::vector<std::vector<Point>> sets;
    for (const auto& part : parts) {
        std::vector<Point> s;
        for (int i : part) s.push_back(cfg.points[static_cast<std::size_t>(i)]);
        sets.push_back(std::move(s));
    }
    auto hi = hulls_intersect(sets);
    if (!hi) return std::nullopt;
    return PartitionWitness{parts, std::move(hi->x), std::move(hi->lambda)};
}

struct SearchOptions {
    bool reverse = false;                     // enumerate in reversed canonical order
    std::uint64_t max_candidates = 1'000'000'000ULL;
};

struct SearchResult {
    std::optional<PartitionWitness> witness;
    std::uint64_t candidates = 0;  // partitions examined (LP calls)
};

namespace detail {

/// Number of set partitions of n items into exactly r blocks (saturating).
inline std::uint64_t stirling2(int n, int r) {
    std::vector<std::vector<long double>> s(static_cast<std::size_t>(n + 1), std::vector<long double>(static_cast<std::size_t>(r + 1), 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= r; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = j * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    const long double v = s[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
    return v > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(v);
}

/// Walks assignments of items to blocks 0..r-1 (or -1 = unused when
/// allow_unused) in restricted-growth form, so blocks are ordered by their
/// least member. `admissible(block, item, sizes, assign)` prunes; `leaf`
/// returns true to stop.
struct BlockWalker {
    int items = 0;
    int blocks = 0;
    bool allow_unused = false;
    bool reverse = false;
    std::function<bool(int, int, const std::vector<int>&)> admissible;
    std::function<bool(const std::vector<int>&)> leaf;

    bool run() {
        std::vector<int> assign(static_cast<std::size_t>(items), -1);
        return rec(0, 0, assign);
    }

private:
    bool rec(int i, int opened, std::vector<int>& assign) {
        if (items - i < blocks - opened) return false;  // cannot open the remaining blocks
        if (i == items) return opened == blocks && leaf(assign);
        std::vector<int> choices;
        if (allow_unused) choices.push_back(-1);
        for (int b = 0; b < std::min(opened + 1, blocks); ++b) choices.push_back(b);
        if (reverse) std::reverse(choices.begin(), choices.end());
        for (int b : choices) {
            if (b >= 0 && admissible && !admissible(b, i, assign)) continue;
            assign[static_cast<std::size_t>(i)] = b;
            if (rec(i + 1, b == opened ? opened + 1 : opened, assign)) return true;
            assign[static_cast<std::size_t>(i)] = -1;
        }
        return false;
    }
};

inline std::vector<std::vector<int>> blocks_of(const std::vector<int>& assign, int r) {
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(r));
    for (std::size_t i = 0; i < assign.size(); ++i)
        if (assign[i] >= 0) parts[static_cast<std::size_t>(assign[i])].push_back(static_cast<int>(i));
    return parts;
}

}  // namespace detail

/// First partition of the points into r nonempty parts whose hulls meet.
/// `size_caps`, when given, is a multiset of per-part size caps.
inline SearchResult tverberg_search(const RationalPointConfig& cfg, int r, const std::vector<int>& size_caps = {},
                                    const SearchOptions& opt = {}) {
    cfg.validate();
    const int n = static_cast<int>(cfg.points.size());
    if (r < 1 || n < r) throw InputError("tverberg_search needs at least r points");
    if (!size_caps.empty() && static_cast<int>(size_caps.size()) != r) throw InputError("one size cap per part");
    const auto bound = detail::stirling2(n, r);
    if (bound > opt.max_candidates)
        throw ResourceLimit("partition count " + std::to_string(bound) + " exceeds bound " + std::to_string(opt.max_candidates));
    std::vector<int> caps = size_caps;
    std::sort(caps.rbegin(), caps.rend());
    const int max_cap = caps.empty() ? n : caps.front();
    SearchResult res;
    detail::BlockWalker w;
    w.items = n;
    w.blocks = r;
    w.reverse = opt.reverse;
    w.admissible = [&](int b, int, const std::vector<int>& assign) {
        return static_cast<int>(std::count(assign.begin(), assign.end(), b)) < max_cap;
    };
    w.leaf = [&](const std::vector<int>& assign) {
        auto parts = detail::blocks_of(assign, r);
        if (!caps.empty()) {
            std::vector<int> sizes;
            for (auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
            std::sort(sizes.rbegin(), sizes.rend());
            for (int i = 0; i < r; ++i)
                if (sizes[static_cast<std::size_t>(i)] > caps[static_cast<std::size_t>(i)]) return false;
        }
        ++res.candidates;
        res.witness = witness_for(cfg, parts);
        return res.witness.has_value();
    };
    w.run();
    return res;
}

/// r pairwise disjoint nonempty rainbow parts of size <= k+1, at most s of
/// them of size exactly k+1, whose hulls meet. With require_cover every
/// point must be used.
inline SearchResult rainbow_search(const RationalPointConfig& cfg, int r, int k, int s, bool require_cover = false,
                                   const SearchOptions& opt = {}) {
    cfg.validate();
    if (cfg.colors.empty()) throw InputError("rainbow_search needs a coloring");
    if (r < 1 || k < 0 || s < 0 || s > r) throw InputError("invalid (r, k, s)");
    const int n = static_cast<int>(cfg.points.size());
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound *= (r + 1);
    if (bound > static_cast<long double>(opt.max_candidates)) throw ResourceLimit("assignment count exceeds bound");
    const auto color = cfg.color_of();
    SearchResult res;
    detail::BlockWalker w;
    w.items = n;
    w.blocks = r;
    w.allow_unused = !require_cover;
    w.reverse = opt.reverse;
    w.admissible = [&](int b, int item, const std::vector<int>& assign) {
        int size = 0, full = 0;
        std::vector<int> sizes(static_cast<std::size_t>(r), 0);
        for (int i = 0; i < item; ++i) {
            const int a = assign[static_cast<std::size_t>(i)];
            if (a < 0) continue;
            ++sizes[static_cast<std::size_t>(a)];
            if (a == b) {
                ++size;
                if (color[static_cast<std::size_t>(i)] == color[static_cast<std::size_t>(item)]) return false;
            }
        }
        if (size + 1 > k + 1) return false;
        ++sizes[static_cast<std::size_t>(b)];
        for (int x : sizes)
            if (x == k + 1) ++full;
        return full <= s;
    };
    w.leaf = [&](const std::vector<int>& assign) {
        ++res.candidates;
        res.witness = witness_for(cfg, detail::blocks_of(assign, r));
        return res.witness.has_value();
    };
    w.run();
    return res;
}

struct SevenPointWitness {
    PartitionWitness witness;         // parts are point indices
    std::vector<Simplex> faces;       // the four faces of K_{3,3,3,1}
};

struct SevenPointResult {
    std::optional<SevenPointWitness> witness;
    std::uint64_t candidates = 0;
};

/// Four sets Δ_1..Δ_4 with a common hull point in which a₁, b₁, c₁, d occur
/// once and a₂, b₂, c₂ twice: four vertex-disjoint rainbow faces of
/// K_{3,3,3,1} covering all ten vertices, pushed through the 3→2 quotient.
/// Colors must be [A, B, C, D] with |A| = |B| = |C| = 2, |D| = 1; the first
/// listed member of each pair plays the role of the once-used point.
inline SevenPointResult seven_point_search(const RationalPointConfig& cfg, const SearchOptions& opt = {}) {
    cfg.validate();
    if (cfg.points.size() != 7 || cfg.colors.size() != 4 || cfg.colors[0].size() != 2 || cfg.colors[1].size() != 2 ||
        cfg.colors[2].size() != 2 || cfg.colors[3].size() != 1)
        throw InputError("seven_point_search needs 7 points colored A,B,C (pairs) and D (singleton)");
    const auto k = multipartite_complex({3, 3, 3, 1});
    const auto q = quotient_map_3to2(k);
    // target vertex 2c+j -> j-th point of color c; 6 -> d
    auto point_of = [&](Vertex target) {
        if (target == 6) return cfg.colors[3][0];
        return cfg.colors[static_cast<std::size_t>(target / 2)][static_cast<std::size_t>(target % 2)];
    };
    std::set<std::vector<std::vector<int>>> tried;
    SevenPointResult res;
    detail::BlockWalker w;
    w.items = 10;
    w.blocks = 4;
    w.reverse = opt.reverse;
    w.admissible = [&](int b, int item, const std::vector<int>& assign) {
        for (int i = 0; i < item; ++i)
            if (assign[static_cast<std::size_t>(i)] == b && i / 3 == item / 3 && item < 9) return false;
        return true;
    };
    w.leaf = [&](const std::vector<int>& assign) {
        auto faces = detail::blocks_of(assign, 4);
        std::vector<std::vector<int>> parts;
        for (const auto& f : faces) {
            std::vector<int> p;
            for (int v : f) p.push_back(point_of(q.alpha.vertex_map.at(v)));
            std::sort(p.begin(), p.end());
            parts.push_back(std::move(p));
        }
        auto key = parts;
        std::sort(key.begin(), key.end());
        if (!tried.insert(key).second) return false;
        ++res.candidates;
        auto wit = witness_for(cfg, parts);
        if (!wit) return false;
        SevenPointWitness sw{std::move(*wit), {}};
        for (auto& f : faces) sw.faces.push_back(make_simplex(f));
        res.witness = std::move(sw);
        return true;
    };
    w.run();
    return res;
}

/// Exact determinant by fraction-preserving Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

/// No d+1 of the points are affinely dependent (for n <= d every subset is checked).
inline bool in_general_position(const RationalPointConfig& cfg) {
    const int n = static_cast<int>(cfg.points.size());
    const int t = std::min(n, cfg.d + 1);
    // affinely independent ⇔ the difference vectors have full rank t−1
    std::vector<int> idx(static_cast<std::size_t>(t));
    std::function<bool(int, int)> rec = [&](int pos, int start) {
        if (pos == t) {
            std::vector<std::vector<Rational>> diff;
            for (int i = 1; i < t; ++i) {
                std::vector<Rational> row(static_cast<std::size_t>(cfg.d));
                for (int c = 0; c < cfg.d; ++c)
                    row[static_cast<std::size_t>(c)] = cfg.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])][static_cast<std::size_t>(c)] -
                                                       cfg.points[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(c)];
                diff.push_back(std::move(row));
            }
            // Gram determinant is nonzero iff the rows are independent
            std::vector<std::vector<Rational>> gram(diff.size(), std::vector<Rational>(diff.size()));
            for (std::size_t i = 0; i < diff.size(); ++i)
                for (std::size_t j = 0; j < diff.size(); ++j)
                    for (int c = 0; c < cfg.d; ++c) gram[i][j] += diff[i][static_cast<std::size_t>(c)] * diff[j][static_cast<std::size_t>(c)];
            return determinant(gram) != 0;
        }
        for (int i = start; i < n; ++i) {
            idx[static_cast<std::size_t>(pos)] = i;
            if (!rec(pos + 1, i + 1)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

/// Seeded random rational configuration in general position. Coordinates are
/// p/q with |p| <= 100·q and 1 <= q <= 7; color classes are consecutive.
inline RationalPointConfig random_config(std::uint64_t seed, int n, int d, const std::vector<int>& color_sizes = {}) {
    if (n < 1 || d < 1) throw InputError("random_config needs n, d >= 1");
    if (!color_sizes.empty()) {
        int total = 0;
        for (int c : color_sizes) {
            if (c < 1) throw InputError("color classes must be nonempty");
            total += c;
        }
        if (total != n) throw InputError("color sizes must sum to n");
    }
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t span) { return rng() % span; };  // stdlib-independent
    RationalPointConfig cfg;
    cfg.d = d;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        cfg.points.clear();
        for (int i = 0; i < n; ++i) {
            Point p;
            for (int c = 0; c < d; ++c) {
                const long long den = 1 + static_cast<long long>(draw(7));
                const long long num = static_cast<long long>(draw(static_cast<std::uint64_t>(200 * den + 1))) - 100 * den;
                p.emplace_back(num, den);
            }
            cfg.points.push_back(std::move(p));
        }
        if (in_general_position(cfg)) break;
        if (attempt == 999) throw ResourceLimit("could not sample a general-position configuration");
    }
    int next = 0;
    for (int c : color_sizes) {
        std::vector<int> cls;
        for (int i = 0; i < c; ++i) cls.push_back(next++);
        cfg.colors.push_back(std::move(cls));
    }
    return cfg;
}

}  // namespace forge

#endif
