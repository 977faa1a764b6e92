#ifndef FORGE_BALANCED_MATCHING_HPP
#define FORGE_BALANCED_MATCHING_HPP

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "forge/config_space.hpp"
#include "forge/morse.hpp"

namespace forge {

/// Step (j, i): big step j over slots, small step i over colors, both 0-based.
struct StepAddress {
    int slot = 0;
    int color = 0;
    friend auto operator<=>(const StepAddress&, const StepAddress&) = default;
};

/// Position used for ill-defined entries; larger than every real position.
inline constexpr int kInfinity = INT_MAX;

/// a_j^i on σ, given the position of a_{j−1}^i (nullopt for the first slot):
/// the color-i element of A_j ∪ B with least within-class position strictly
/// above the previous one. Returns nullopt when no such element exists.
inline std::optional<Vertex> a_value(const ConfigSimplex& s, int slot, int color, std::optional<int> previous_position,
                                     const Coloring& coloring, int m) {
    const std::uint64_t pool = s.parts[static_cast<std::size_t>(slot)] | s.remainder(m);
    const int floor = previous_position.value_or(-1);
    for (Vertex v : coloring.color_class(color)) {
        if (!(pool >> v & 1U)) continue;
        if (coloring.position_of(v) > floor) {
            // class members are listed in position order, so the first hit is the minimum
            return v;
        }
    }
    return std::nullopt;
}

/// a_j^i computed with its full history a_1^i, ..., a_{j−1}^i on σ.
inline std::optional<Vertex> a_value(const ConfigSimplex& s, StepAddress at, const Coloring& coloring, int m) {
    std::optional<int> prev;
    std::optional<Vertex> a;
    for (int j = 0; j <= at.slot; ++j) {
        if (j > 0 && !a) return std::nullopt;
        a = a_value(s, j, at.color, prev, coloring, m);
        if (a) prev = coloring.position_of(*a);
    }
    return a;
}

/// Π(σ) = (a_1^1, ..., a_1^{k+1}, a_2^1, ..., a_r^{k+1}) as within-class
/// positions, kInfinity for ill-defined entries.
inline std::vector<int> pi_vector(const ConfigSimplex& s, const BalancedParams& p, const Coloring& coloring) {
    const int colors = p.k + 1;
    std::vector<int> out(static_cast<std::size_t>(p.r * colors), kInfinity);
    for (int i = 0; i < colors; ++i) {
        std::optional<int> prev;
        for (int j = 0; j < p.r; ++j) {
            auto a = a_value(s, j, i, prev, coloring, p.m);
            if (!a) break;
            prev = coloring.position_of(*a);
            out[static_cast<std::size_t>(j * colors + i)] = *prev;
        }
    }
    return out;
}

/// Per-step decision record for diagnostics.
///   'M' matched at this step
///   '1' the a-element could not move from B into A_j
///   '2' the a-element could not move from A_j into B
///   '3' a_j^i ill-defined
struct StepTag {
    StepAddress at;
    char kind;
};

struct BalancedMatching {
    DiscreteVectorField field;
    std::vector<int> partner;                // per label index, -1 when critical
    std::vector<StepAddress> matched_at;     // valid where partner >= 0
    std::vector<std::vector<StepTag>> tags;  // decisions up to and including the matching step
    std::vector<int> critical;               // label indices, graded order
};

/// The step-by-step matching on the configuration space. Steps are processed
/// in lexicographic order (slot, color); within a step still-unmatched labels
/// are scanned in canonical order and σ is paired with its toggle τ (a_j^i
/// moved between A_j and B) when τ is a face and is still unmatched.
inline BalancedMatching balanced_matching(const ConfigSpace& space) {
    const auto& p = space.params();
    const auto& coloring = space.coloring();
    const int n = static_cast<int>(space.size());
    BalancedMatching out;
    out.partner.assign(static_cast<std::size_t>(n), -1);
    out.matched_at.assign(static_cast<std::size_t>(n), {});
    out.tags.assign(static_cast<std::size_t>(n), {});

    // Π prefixes agree on σ and τ through the current step: the toggled element
    // lies above every earlier a-value of its color.
    auto prefix_agrees = [&](const ConfigSimplex& a, const ConfigSimplex& b, StepAddress at) {
        auto pa = pi_vector(a, p, coloring), pb = pi_vector(b, p, coloring);
        const int colors = p.k + 1;
        for (int j = 0; j <= at.slot; ++j)
            for (int i = 0; i < colors; ++i) {
                if (j == at.slot && i > at.color) break;
                if (pa[static_cast<std::size_t>(j * colors + i)] != pb[static_cast<std::size_t>(j * colors + i)]) return false;
            }
        return true;
    };

    for (int j = 0; j < p.r; ++j)
        for (int i = 0; i <= p.k; ++i) {
            const StepAddress at{j, i};
            for (int idx = 0; idx < n; ++idx) {
                if (out.partner[static_cast<std::size_t>(idx)] >= 0) continue;
                const auto& sigma = space.label(idx);
                auto a = a_value(sigma, at, coloring, p.m);
                auto& tags = out.tags[static_cast<std::size_t>(idx)];
                if (!a) {
                    tags.push_back({at, '3'});
                    continue;
                }
                const auto bit = std::uint64_t{1} << *a;
                const bool in_part = sigma.parts[static_cast<std::size_t>(j)] & bit;
                ConfigSimplex tau = sigma;
                tau.parts[static_cast<std::size_t>(j)] ^= bit;
                const int t = space.index_of(tau);
                if (t < 0 || out.partner[static_cast<std::size_t>(t)] >= 0) {
                    tags.push_back({at, in_part ? '2' : '1'});
                    continue;
                }
                auto a_tau = a_value(tau, at, coloring, p.m);
                if (a_tau != a || !prefix_agrees(sigma, tau, at))
                    throw MorseError("toggle invariance violated at step (" + std::to_string(j + 1) + "," +
                                     std::to_string(i + 1) + ")");
                out.partner[static_cast<std::size_t>(idx)] = t;
                out.partner[static_cast<std::size_t>(t)] = idx;
                out.matched_at[static_cast<std::size_t>(idx)] = out.matched_at[static_cast<std::size_t>(t)] = at;
                tags.push_back({at, 'M'});
                out.tags[static_cast<std::size_t>(t)].push_back({at, 'M'});
                const int lo = in_part ? t : idx, hi = in_part ? idx : t;
                out.field.pairs.emplace_back(space.flat(space.label(lo)), space.flat(space.label(hi)));
            }
        }
    for (int idx = 0; idx < n; ++idx)
        if (out.partner[static_cast<std::size_t>(idx)] < 0) out.critical.push_back(idx);
    std::sort(out.field.pairs.begin(), out.field.pairs.end());
    return out;
}

/// Π(σ) as used for the acyclicity argument: the a-values in step order up
/// to and including the step at which σ is matched. A proper prefix compares
/// lexicographically smaller, so a face matched earlier ranks lower.
inline std::vector<int> matched_pi(const BalancedMatching& bm, const ConfigSpace& space, int index) {
    const auto& p = space.params();
    auto v = pi_vector(space.label(index), p, space.coloring());
    if (bm.partner[static_cast<std::size_t>(index)] >= 0) {
        const auto at = bm.matched_at[static_cast<std::size_t>(index)];
        v.resize(static_cast<std::size_t>(at.slot * (p.k + 1) + at.color + 1));
    }
    return v;
}

struct PiMonotonicityReport {
    std::size_t segments_checked = 0;    // α₀ ↗ β₀ ↘ α₁ ↗ β₁ with α₁ ≠ α₀
    std::size_t terminal_segments = 0;   // α₀ ↗ β₀ ↘ α₁ where α₁ is not matched upward
    std::size_t terminal_non_decreasing = 0;
    std::vector<std::pair<Simplex, Simplex>> violations;  // (α₀, α₁) with Π(α₁) not below Π(α₀)

    bool ok() const { return violations.empty(); }
};

/// Checks that Π (see matched_pi) strictly decreases lexicographically along
/// every two-step gradient path segment α₀ ↗ β₀ ↘ α₁ ↗ β₁. Segments that
/// stop at α₁ (α₁ critical or matched downward) are counted separately.
inline PiMonotonicityReport pi_monotonicity(const BalancedMatching& bm, const ConfigSpace& space) {
    const auto& p = space.params();
    PiMonotonicityReport rep;
    const int n = static_cast<int>(space.size());
    std::vector<std::vector<int>> pis(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pis[static_cast<std::size_t>(i)] = matched_pi(bm, space, i);
    auto matched_up = [&](int i) {
        int q = bm.partner[static_cast<std::size_t>(i)];
        return q >= 0 && space.label(q).dimension() > space.label(i).dimension();
    };
    for (int a0 = 0; a0 < n; ++a0) {
        if (!matched_up(a0)) continue;
        const auto& beta = space.label(bm.partner[static_cast<std::size_t>(a0)]);
        for (int slot = 0; slot < p.r; ++slot)
            for (Vertex v : mask_members(beta.parts[static_cast<std::size_t>(slot)])) {
                ConfigSimplex alpha1 = beta;
                alpha1.parts[static_cast<std::size_t>(slot)] &= ~(std::uint64_t{1} << v);
                const int a1 = space.index_of(alpha1);
                if (a1 < 0 || a1 == a0) continue;
                const bool decreasing = pis[static_cast<std::size_t>(a1)] < pis[static_cast<std::size_t>(a0)];
                if (matched_up(a1)) {
                    ++rep.segments_checked;
                    if (!decreasing) rep.violations.emplace_back(space.flat(space.label(a0)), space.flat(alpha1));
                } else {
                    ++rep.terminal_segments;
                    if (!decreasing) ++rep.terminal_non_decreasing;
                }
            }
    }
    return rep;
}

}  // namespace forge

#endif
