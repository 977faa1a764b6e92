#include <gtest/gtest.h>

#include <random>

#include "forge/affine.hpp"

using namespace forge;

namespace {

RationalPointConfig make_config(int d, const std::vector<std::vector<long long>>& pts, std::vector<std::vector<int>> colors = {}) {
    RationalPointConfig c;
    c.d = d;
    for (const auto& p : pts) {
        Point q;
        for (long long x : p) q.emplace_back(x);
        c.points.push_back(q);
    }
    c.colors = std::move(colors);
    return c;
}

std::vector<int> part_sizes(const PartitionWitness& w) {
    std::vector<int> out;
    for (const auto& p : w.parts) out.push_back(static_cast<int>(p.size()));
    return out;
}

}  // namespace

TEST(Lp, TrivialSystems) {
    auto r = lp_feasible({{1, 1}}, {1});
    ASSERT_TRUE(r.solution);
    EXPECT_EQ((*r.solution)[0] + (*r.solution)[1], 1);
    EXPECT_GE((*r.solution)[0], 0);
    EXPECT_GE((*r.solution)[1], 0);
    auto bad = lp_feasible({{1}}, {-1});
    EXPECT_FALSE(bad.solution);
    EXPECT_GT(bad.phase1_objective, 0);
}

TEST(Lp, SolutionsSatisfyRandomSystems) {
    std::mt19937_64 rng(31);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < 200; ++t) {
        const int m = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(n)));
        std::vector<Rational> b(static_cast<std::size_t>(m));
        for (auto& row : a)
            for (auto& x : row) x = static_cast<long long>(rng() % 7) - 3;
        for (auto& x : b) x = static_cast<long long>(rng() % 7) - 3;
        auto r = lp_feasible(a, b);
        if (!r.solution) {
            ++infeasible;
            EXPECT_GT(r.phase1_objective, 0);
            continue;
        }
        ++feasible;
        for (int i = 0; i < m; ++i) {
            Rational lhs = 0;
            for (int j = 0; j < n; ++j) lhs += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * (*r.solution)[static_cast<std::size_t>(j)];
            EXPECT_EQ(lhs, b[static_cast<std::size_t>(i)]);
        }
        for (auto& x : *r.solution) EXPECT_GE(x, 0);
    }
    EXPECT_GT(feasible, 0);
    EXPECT_GT(infeasible, 0);
}

TEST(Hulls, SquareDiagonalsMeetAtCenter) {
    auto r = hulls_intersect({{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->x, (Point{Rational(1, 2), Rational(1, 2)}));
    EXPECT_FALSE(hulls_intersect({{{0, 0}}, {{1, 0}}}));
    EXPECT_THROW(hulls_intersect({{{0, 0}}, {}}), InputError);
}

TEST(Hulls, OneDimensionalIntervalOracle) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        const int r = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<Point>> sets(static_cast<std::size_t>(r));
        Rational lo_max = -1000, hi_min = 1000;
        for (auto& s : sets) {
            const int n = 1 + static_cast<int>(rng() % 3);
            Rational lo = 1000, hi = -1000;
            for (int i = 0; i < n; ++i) {
                Rational x(static_cast<long long>(rng() % 21) - 10, 1 + static_cast<long long>(rng() % 3));
                s.push_back({x});
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            lo_max = std::max(lo_max, lo);
            hi_min = std::min(hi_min, hi);
        }
        auto res = hulls_intersect(sets);
        EXPECT_EQ(res.has_value(), lo_max <= hi_min);
        if (res) {
            EXPECT_GE(res->x[0], lo_max);
            EXPECT_LE(res->x[0], hi_min);
        }
    }
}

TEST(Tverberg, SquareAndCollinear) {
    auto sq = make_config(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto r = tverberg_search(sq, 2);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->x, (Point{Rational(1, 2), Rational(1, 2)}));
    EXPECT_EQ(r.witness->parts, (std::vector<std::vector<int>>{{0, 2}, {1, 3}}));
    EXPECT_TRUE(verify_witness(sq, *r.witness));

    auto line = make_config(2, {{0, 0}, {1, 0}, {2, 0}});
    auto l = tverberg_search(line, 2);
    ASSERT_TRUE(l.witness);
    EXPECT_EQ(l.witness->parts, (std::vector<std::vector<int>>{{0, 2}, {1}}));
    EXPECT_EQ(l.witness->x, (Point{1, 0}));
}

TEST(Tverberg, SevenPointsThreeParts) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = random_config(seed, 7, 2);
        auto r = tverberg_search(c, 3);
        ASSERT_TRUE(r.witness) << "seed " << seed;
        EXPECT_TRUE(verify_witness(c, *r.witness));
    }
}

TEST(Tverberg, ExhaustionIsOrderIndependent) {
    int exhausted = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto c = random_config(seed, 5, 2);
        SearchOptions rev;
        rev.reverse = true;
        auto a = tverberg_search(c, 3), b = tverberg_search(c, 3, {}, rev);
        EXPECT_EQ(a.witness.has_value(), b.witness.has_value()) << "seed " << seed;
        if (!a.witness) {
            ++exhausted;
            EXPECT_EQ(a.candidates, b.candidates);
        }
    }
    EXPECT_GT(exhausted, 0);
}

TEST(Tverberg, SizeCapsRespected) {
    auto c = random_config(5, 7, 2);
    auto r = tverberg_search(c, 3, {3, 2, 2});
    if (r.witness)
        for (int s : part_sizes(*r.witness)) EXPECT_LE(s, 3);
    EXPECT_THROW(tverberg_search(c, 3, {3, 3}), InputError);
    EXPECT_THROW(tverberg_search(make_config(2, {{0, 0}}), 2), InputError);
}

TEST(Witness, TamperedWitnessRejectedAndEnlargingKeepsFeasibility) {
    auto c = random_config(77, 7, 2);
    auto r = tverberg_search(c, 3);
    ASSERT_TRUE(r.witness);
    auto bad = *r.witness;
    bad.x[0] += 1;
    EXPECT_FALSE(verify_witness(c, bad));
    auto neg = *r.witness;
    neg.lambda[0][0] = -neg.lambda[0][0] - 1;
    EXPECT_FALSE(verify_witness(c, neg));
    // moving a point from one part to another keeps the enlarged part feasible with the rest
    for (std::size_t i = 0; i < r.witness->parts.size(); ++i) {
        auto parts = r.witness->parts;
        parts[i].push_back(parts[(i + 1) % parts.size()].front());
        std::sort(parts[i].begin(), parts[i].end());
        std::vector<std::vector<int>> kept;
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != (i + 1) % parts.size()) kept.push_back(parts[j]);
        auto w = witness_for(c, kept);
        ASSERT_TRUE(w);
        EXPECT_TRUE(verify_witness(c, *w));
    }
}

TEST(Rainbow, BalancedInstanceInThreeSpace) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto c = random_config(seed, 9, 3, {3, 3, 3});
        auto r = rainbow_search(c, 2, 2, 1);
        ASSERT_TRUE(r.witness) << "seed " << seed;
        EXPECT_TRUE(verify_witness(c, *r.witness));
        auto sizes = part_sizes(*r.witness);
        std::sort(sizes.rbegin(), sizes.rend());
        EXPECT_LE(sizes[0], 3);
        EXPECT_LE(sizes[1], 2);
        auto color = c.color_of();
        for (const auto& p : r.witness->parts) {
            std::set<int> cs;
            for (int i : p) EXPECT_TRUE(cs.insert(color[static_cast<std::size_t>(i)]).second);
        }
    }
}

TEST(Rainbow, NineColoredPointsGiveThreeRainbowTriangles) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto c = random_config(100 + seed, 9, 2, {3, 3, 3});
        auto r = rainbow_search(c, 3, 2, 3, true);
        ASSERT_TRUE(r.witness) << "seed " << seed;
        EXPECT_EQ(part_sizes(*r.witness), (std::vector<int>{3, 3, 3}));
        EXPECT_TRUE(verify_witness(c, *r.witness));
    }
}

TEST(Rainbow, DegenerateAndNegativeControls) {
    auto same = make_config(2, {{1, 1}, {1, 1}, {1, 1}, {1, 1}}, {{0, 1}, {2, 3}});
    EXPECT_TRUE(rainbow_search(same, 2, 1, 2).witness);
    auto two = make_config(2, {{0, 0}, {1, 0}}, {{0}, {1}});
    auto r = rainbow_search(two, 2, 1, 2);
    EXPECT_FALSE(r.witness);
    EXPECT_EQ(r.candidates, 1u);
    EXPECT_THROW(rainbow_search(make_config(2, {{0, 0}}), 2, 1, 1), InputError);
}

TEST(SevenPoint, RandomHexagonAndDegenerate) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto c = random_config(500 + seed, 7, 2, {2, 2, 2, 1});
        auto r = seven_point_search(c);
        ASSERT_TRUE(r.witness) << "seed " << seed;
        EXPECT_TRUE(verify_witness(c, r.witness->witness));
        // a₁, b₁, c₁, d once; a₂, b₂, c₂ twice
        std::map<int, int> uses;
        for (const auto& p : r.witness->witness.parts)
            for (int i : p) ++uses[i];
        for (int cls = 0; cls < 3; ++cls) {
            EXPECT_EQ(uses[c.colors[static_cast<std::size_t>(cls)][0]], 1);
            EXPECT_EQ(uses[c.colors[static_cast<std::size_t>(cls)][1]], 2);
        }
        EXPECT_EQ(uses[c.colors[3][0]], 1);
    }
    // regular hexagon (integer model) with d at the center
    auto hex = make_config(2, {{2, 0}, {-2, 0}, {1, 2}, {-1, -2}, {-1, 2}, {1, -2}, {0, 0}}, {{0, 1}, {2, 3}, {4, 5}, {6}});
    auto h = seven_point_search(hex);
    ASSERT_TRUE(h.witness);
    EXPECT_TRUE(verify_witness(hex, h.witness->witness));
    auto flat = make_config(2, std::vector<std::vector<long long>>(7, {3, 3}), {{0, 1}, {2, 3}, {4, 5}, {6}});
    EXPECT_TRUE(seven_point_search(flat).witness);
    EXPECT_THROW(seven_point_search(make_config(2, {{0, 0}}, {{0}})), InputError);
}

TEST(GeneralPosition, DetectsCollinearityAndSeedsAreDeterministic) {
    EXPECT_FALSE(in_general_position(make_config(2, {{0, 0}, {1, 1}, {2, 2}, {0, 1}})));
    EXPECT_TRUE(in_general_position(make_config(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})));
    EXPECT_FALSE(in_general_position(make_config(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}})));
    auto a = random_config(12, 7, 2), b = random_config(12, 7, 2);
    EXPECT_EQ(a.points, b.points);
    EXPECT_TRUE(in_general_position(a));
    EXPECT_THROW(parse_rational("1/x"), InputError);
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
}
