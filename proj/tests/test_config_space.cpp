#include <gtest/gtest.h>

#include <set>

#include "forge/config_space.hpp"

using namespace forge;

TEST(Params, BalancedTable) {
    struct Row { int r, d, k, s, m; };
    for (auto row : {Row{2, 3, 2, 1, 9}, Row{2, 2, 1, 2, 6}, Row{2, 1, 1, 1, 6}, Row{3, 2, 2, 1, 15}, Row{3, 1, 1, 2, 10},
                     Row{4, 3, 3, 1, 28}}) {
        auto p = balanced_params(row.r, row.d);
        EXPECT_EQ(p.k, row.k) << row.r << "," << row.d;
        EXPECT_EQ(p.s, row.s) << row.r << "," << row.d;
        EXPECT_EQ(p.m, row.m) << row.r << "," << row.d;
        // identity (r−1)d = r(k−1) + s with 1 <= s <= r
        EXPECT_EQ((row.r - 1) * row.d, row.r * (p.k - 1) + p.s);
    }
}

TEST(Params, PrimePowers) {
    std::vector<int> yes{2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49}, no{0, 1, 6, 10, 12, 15, 18, 20};
    for (int r : yes) EXPECT_TRUE(is_prime_power(r)) << r;
    for (int r : no) EXPECT_FALSE(is_prime_power(r)) << r;
    EXPECT_THROW(balanced_params(6, 2), InputError);
}

namespace {

// every assignment of [m] to A_1, A_2 or B, filtered by the label rules
std::set<Simplex> r2_oracle(const BalancedParams& p, const Coloring& col) {
    std::set<Simplex> out;
    std::vector<int> a(static_cast<std::size_t>(p.m), 0);
    long long total = 1;
    for (int i = 0; i < p.m; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        std::vector<std::set<int>> colors(2);
        std::vector<int> sizes(2, 0);
        Simplex flat;
        bool ok = true;
        for (int v = 0; v < p.m && ok; ++v) {
            const int slot = static_cast<int>(c % 3) - 1;
            c /= 3;
            if (slot < 0) continue;
            if (!colors[static_cast<std::size_t>(slot)].insert(col.color_of(v)).second) ok = false;
            ++sizes[static_cast<std::size_t>(slot)];
            flat.push_back(v * 2 + slot);
        }
        if (!ok || flat.empty()) continue;
        int full = 0;
        for (int s : sizes) {
            if (s > p.k + 1) ok = false;
            if (s == p.k + 1) ++full;
        }
        if (ok && full <= p.s) out.insert(make_simplex(flat));
    }
    return out;
}

}  // namespace

TEST(ConfigSpace, MatchesIndependentEnumerationForTwoSlots) {
    for (int d : {1, 2, 3}) {
        auto p = balanced_params(2, d);
        auto cs = build_config_space(p);
        std::set<Simplex> got;
        for (const auto& l : cs.labels()) got.insert(cs.flat(l));
        EXPECT_EQ(got, r2_oracle(p, cs.coloring())) << "d = " << d;
        // the face set of the flat complex is exactly the label set plus ∅
        auto faces = cs.complex().faces();
        EXPECT_EQ(faces.size(), got.size() + 1);
    }
}

TEST(ConfigSpace, KnownSizes) {
    EXPECT_EQ(build_config_space(balanced_params(2, 3)).size(), 1980u);
    EXPECT_EQ(build_config_space(balanced_params(2, 2)).size(), 168u);
}

TEST(ConfigSpace, FacetsAreExactlySaturatedLabels) {
    for (auto rd : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 1}}) {
        auto p = balanced_params(rd.first, rd.second);
        auto cs = build_config_space(p);
        std::set<Simplex> facets(cs.complex().facets().begin(), cs.complex().facets().end());
        for (const auto& l : cs.labels()) {
            const bool is_facet = facets.count(cs.flat(l)) > 0;
            EXPECT_EQ(is_facet, cs.classify(l).saturated);
        }
        EXPECT_EQ(cs.complex().dimension(), p.top_dimension());
        EXPECT_TRUE(cs.complex().is_pure());
    }
}

TEST(ConfigSpace, FlatRoundTripAndInvalidLabels) {
    auto cs = build_config_space(balanced_params(2, 2));
    for (const auto& l : cs.labels()) {
        EXPECT_EQ(cs.from_flat(cs.flat(l)), l);
        EXPECT_GE(cs.index_of(l), 0);
    }
    ConfigSimplex bad{{0b11, 0}};  // two elements of color 0 in one part
    EXPECT_EQ(cs.index_of(bad), -1);
    ConfigSimplex overlap{{0b1, 0b1}};
    EXPECT_EQ(cs.index_of(overlap), -1);
    EXPECT_THROW(cs.from_flat({99}), InputError);
}

TEST(ConfigSpace, SlotPermutationsPreserveLabels) {
    auto cs = build_config_space(balanced_params(3, 1));
    const std::vector<std::vector<int>> perms{{1, 0, 2}, {1, 2, 0}};
    for (const auto& perm : perms)
        for (const auto& l : cs.labels()) EXPECT_GE(cs.index_of(slot_action(perm, l)), 0);
}

TEST(ConfigSpace, ShapeErrors) {
    auto p = balanced_params(2, 2);
    EXPECT_THROW(ConfigSpace(p, Coloring::standard({3, 3, 3})), InputError);
    EXPECT_THROW(ConfigSpace(p, Coloring::standard({2, 4})), InputError);
    EXPECT_THROW(build_config_space(balanced_params(2, 42)), ResourceLimit);
}

TEST(ConfigSpace, ClassifyFlags) {
    auto p = balanced_params(2, 3);  // k = 2, s = 1
    auto cs = build_config_space(p);
    // A_1 = {0,3,6} uses every color, A_2 = {1,4}
    ConfigSimplex s{{(1u << 0) | (1u << 3) | (1u << 6), (1u << 1) | (1u << 4)}};
    auto c = cs.classify(s);
    EXPECT_TRUE(c.k1_full);
    EXPECT_TRUE(c.saturated);
    EXPECT_TRUE(c.color_full[0]);
    EXPECT_TRUE(c.color_full[1]);
    EXPECT_FALSE(c.color_full[2]);
}
