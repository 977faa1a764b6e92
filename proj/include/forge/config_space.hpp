#ifndef FORGE_CONFIG_SPACE_HPP
#define FORGE_CONFIG_SPACE_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "forge/coloring.hpp"
#include "forge/simplicial_complex.hpp"

namespace forge {

inline bool is_prime_power(int r) {
    if (r < 2) return false;
    int p = 2;
    while (p * p <= r && r % p != 0) ++p;
    if (r % p != 0) return true;  // r itself is prime
    while (r % p == 0) r /= p;
    return r == 1;
}

/// Parameters of the balanced configuration space:
/// k = ⌈(r−1)d/r⌉, s = (r−1)d − r(k−1), m = (2r−1)(k+1).
struct BalancedParams {
    int r = 0;
    int d = 0;
    int k = 0;
    int s = 0;
    int m = 0;

    int top_dimension() const { return r * k + s - 1; }
    int target_connectivity() const { return r * k + s - 2; }
    int class_size() const { return 2 * r - 1; }
};

inline BalancedParams balanced_params(int r, int d) {
    if (!is_prime_power(r)) throw InputError("r = " + std::to_string(r) + " is not a prime power");
    if (d < 1) throw InputError("d must be >= 1");
    BalancedParams p;
    p.r = r;
    p.d = d;
    const int n = (r - 1) * d;
    p.k = (n + r - 1) / r;
    p.s = n - r * (p.k - 1);
    p.m = (2 * r - 1) * (p.k + 1);
    if (p.r * (p.k - 1) + p.s != n || p.s <= 0 || p.s > r)
        throw std::logic_error("balanced parameter identities violated");
    return p;
}

/// Label (A_1, ..., A_r; B) with B the complement of the union of the parts.
struct ConfigSimplex {
    std::vector<std::uint64_t> parts;

    int dimension() const {
        int n = 0;
        for (auto a : parts) n += std::popcount(a);
        return n - 1;
    }
    std::uint64_t used() const {
        std::uint64_t u = 0;
        for (auto a : parts) u |= a;
        return u;
    }
    std::uint64_t remainder(int m) const { return ~used() & ((m == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1); }

    friend bool operator==(const ConfigSimplex&, const ConfigSimplex&) = default;
};

inline std::vector<Vertex> mask_members(std::uint64_t mask) {
    std::vector<Vertex> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

inline std::uint64_t members_mask(const std::vector<Vertex>& vs) {
    std::uint64_t m = 0;
    for (Vertex v : vs) m |= std::uint64_t{1} << v;
    return m;
}

struct SimplexClass {
    std::vector<bool> color_full;  // C_i-full: every A_j meets C_i
    bool k1_full = false;          // exactly s parts of size k+1
    bool saturated = false;        // (k+1)-full and every |A_j| >= k
};

/// The balanced configuration space, materialised on the flat ground set
/// [m] × [r] (element v in slot i is vertex v·r + i).
class ConfigSpace {
public:
    ConfigSpace(BalancedParams params, Coloring coloring)
        : params_(params), coloring_(std::move(coloring)) {
        if (coloring_.num_colors() != params_.k + 1 || coloring_.ground_size() != params_.m)
            throw InputError("coloring must have k+1 classes covering [m]");
        for (const auto& c : coloring_.classes())
            if (static_cast<int>(c.size()) != params_.class_size())
                throw InputError("every color class must have 2r-1 elements");
        if (params_.m > 64) throw ResourceLimit("configuration space limited to m <= 64");
        enumerate();
    }

    const BalancedParams& params() const { return params_; }
    const Coloring& coloring() const { return coloring_; }
    const SimplicialComplex& complex() const { return complex_; }
    std::size_t size() const { return labels_.size(); }
    /// Labels in graded order of their flat faces (the ∅ label is not a face).
    const std::vector<ConfigSimplex>& labels() const { return labels_; }
    const ConfigSimplex& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }

    bool is_valid(const ConfigSimplex& s) const {
        if (static_cast<int>(s.parts.size()) != params_.r) return false;
        const std::uint64_t all = (params_.m == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << params_.m) - 1;
        std::uint64_t used = 0;
        int full_parts = 0;
        for (auto a : s.parts) {
            if (a & ~all) return false;
            if (a & used) return false;
            used |= a;
            const int sz = std::popcount(a);
            if (sz > params_.k + 1) return false;
            if (sz == params_.k + 1) ++full_parts;
            if (!coloring_.is_rainbow(mask_members(a))) return false;
        }
        return used != 0 && full_parts <= params_.s;
    }

    Simplex flat(const ConfigSimplex& s) const {
        Simplex out;
        for (int i = 0; i < params_.r; ++i)
            for (Vertex v : mask_members(s.parts[static_cast<std::size_t>(i)])) out.push_back(v * params_.r + i);
        return make_simplex(std::move(out));
    }

    ConfigSimplex from_flat(const Simplex& f) const {
        ConfigSimplex s{std::vector<std::uint64_t>(static_cast<std::size_t>(params_.r), 0)};
        for (Vertex x : f) {
            if (x < 0 || x >= params_.m * params_.r) throw InputError("flat vertex outside [m]x[r]");
            s.parts[static_cast<std::size_t>(x % params_.r)] |= std::uint64_t{1} << (x / params_.r);
        }
        return s;
    }

    /// Index into labels(), or -1 for a label that is not a face.
    int index_of(const ConfigSimplex& s) const {
        if (!is_valid(s)) return -1;
        auto it = index_.find(flat(s));
        return it == index_.end() ? -1 : it->second;
    }

    SimplexClass classify(const ConfigSimplex& s) const {
        SimplexClass c;
        const int colors = params_.k + 1;
        c.color_full.assign(static_cast<std::size_t>(colors), true);
        int full_parts = 0;
        bool all_at_least_k = true;
        for (auto a : s.parts) {
            std::vector<char> has(static_cast<std::size_t>(colors), 0);
            for (Vertex v : mask_members(a)) has[static_cast<std::size_t>(coloring_.color_of(v))] = 1;
            for (int i = 0; i < colors; ++i)
                if (!has[static_cast<std::size_t>(i)]) c.color_full[static_cast<std::size_t>(i)] = false;
            const int sz = std::popcount(a);
            if (sz == params_.k + 1) ++full_parts;
            if (sz < params_.k) all_at_least_k = false;
        }
        c.k1_full = full_parts == params_.s;
        c.saturated = c.k1_full && all_at_least_k;
        return c;
    }

private:
    void enumerate() {
        const int r = params_.r;
        const int colors = params_.k + 1;
        std::vector<ConfigSimplex> found;
        ConfigSimplex cur{std::vector<std::uint64_t>(static_cast<std::size_t>(r), 0)};
        // per color, each slot takes at most one element, distinct across slots
        std::function<void(int, int, std::uint64_t)> rec = [&](int color, int slot, std::uint64_t used_in_color) {
            if (color == colors) {
                if (is_valid(cur)) found.push_back(cur);
                return;
            }
            if (slot == r) {
                rec(color + 1, 0, 0);
                return;
            }
            rec(color, slot + 1, used_in_color);
            for (Vertex v : coloring_.color_class(color)) {
                const auto bit = std::uint64_t{1} << v;
                if (used_in_color & bit) continue;
                cur.parts[static_cast<std::size_t>(slot)] |= bit;
                rec(color, slot + 1, used_in_color | bit);
                cur.parts[static_cast<std::size_t>(slot)] &= ~bit;
            }
        };
        rec(0, 0, 0);

        std::vector<std::pair<Simplex, ConfigSimplex>> keyed;
        keyed.reserve(found.size());
        for (auto& s : found) keyed.emplace_back(flat(s), std::move(s));
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return graded_less(a.first, b.first); });

        std::vector<Simplex> generators;
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            index_.emplace(keyed[i].first, static_cast<int>(i));
            labels_.push_back(keyed[i].second);
        }
        // maximal labels: no element of B can join any part
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            bool maximal = true;
            const auto& s = labels_[i];
            for (int slot = 0; slot < r && maximal; ++slot)
                for (Vertex v : mask_members(s.remainder(params_.m))) {
                    ConfigSimplex t = s;
                    t.parts[static_cast<std::size_t>(slot)] |= std::uint64_t{1} << v;
                    if (is_valid(t)) {
                        maximal = false;
                        break;
                    }
                }
            if (maximal) generators.push_back(keyed[i].first);
        }
        std::vector<Vertex> ground(static_cast<std::size_t>(params_.m * r));
        for (std::size_t i = 0; i < ground.size(); ++i) ground[i] = static_cast<Vertex>(i);
        complex_ = SimplicialComplex::from_generators(std::move(ground), std::move(generators));
    }

    BalancedParams params_;
    Coloring coloring_;
    std::vector<ConfigSimplex> labels_;
    std::unordered_map<Simplex, int, SimplexHash> index_;
    SimplicialComplex complex_;
};

inline ConfigSpace build_config_space(const BalancedParams& params, const Coloring& coloring) {
    return ConfigSpace(params, coloring);
}

inline ConfigSpace build_config_space(const BalancedParams& params) {
    return ConfigSpace(params, Coloring::standard(std::vector<int>(static_cast<std::size_t>(params.k + 1), params.class_size())));
}

/// Slot i of the input becomes slot perm[i] of the output.
inline ConfigSimplex slot_action(const std::vector<int>& perm, const ConfigSimplex& s) {
    if (perm.size() != s.parts.size()) throw InputError("slot permutation has wrong length");
    ConfigSimplex out{std::vector<std::uint64_t>(s.parts.size(), 0)};
    for (std::size_t i = 0; i < perm.size(); ++i) out.parts[static_cast<std::size_t>(perm[i])] = s.parts[i];
    return out;
}

}  // namespace forge

#endif
