#include <algorithm>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace geolat;
using namespace geolat::testing;

TEST(Network, AwsFixtureLoads)
{
    const auto net = fixture("aws6.json");
    ASSERT_EQ(net.size(), 6u);
    EXPECT_EQ(net.name(Seoul), "Seoul");
    EXPECT_EQ(net.index_of("Oregon"), Oregon);
    EXPECT_EQ(net.rtt(Ireland, London), Millis(13));
    EXPECT_EQ(net.rtt(London, Ireland), Millis(13));
}

TEST(Network, SingleNode)
{
    const auto net = validate_network({"only"}, {{Millis(0)}});
    EXPECT_EQ(net.size(), 1u);
    const auto p = lambda_profile(net);
    ASSERT_EQ(p.values.size(), 1u);
    EXPECT_EQ(p.values[0], std::vector<Millis>{Millis(0)});
}

TEST(Network, ValidationErrors)
{
    EXPECT_EQ(code_of([] { validate_network({"a", "b"}, {{0, 5}, {7, 0}}); }), ErrorCode::AsymmetricRTT);
    EXPECT_EQ(code_of([] { validate_network({"a", "b"}, {{1, 5}, {5, 0}}); }), ErrorCode::NonzeroDiagonal);
    EXPECT_EQ(code_of([] { validate_network({"a", "b"}, {{0, -5}, {-5, 0}}); }), ErrorCode::NegativeRTT);
    EXPECT_EQ(code_of([] { validate_network({"a", "b", "c"}, {{0, 5}, {5, 0}}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { validate_network({"a", "b"}, {{0, 5, 1}, {5, 0}}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { validate_network({"a", "a"}, {{0, 5}, {5, 0}}); }), ErrorCode::DuplicateNodeName);
    EXPECT_EQ(code_of([] { validate_network({}, {}); }), ErrorCode::EmptyNetwork);
    EXPECT_EQ(code_of([] { fixture("aws6.json").index_of("Tokyo"); }), ErrorCode::UnknownNode);
}

TEST(Network, AsymmetryMessageNamesPair)
{
    try {
        validate_network({"a", "b"}, {{0, 5}, {7, 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("rtt(a,b)"), std::string::npos) << e.what();
    }
}

TEST(Multihop, ChainShortcut)
{
    const auto net = matrix_network({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}});
    ASSERT_TRUE(find_triangle_violation(net));
    const auto red = reduce_multihop(net);
    EXPECT_EQ(red.rtt(0, 2), Millis(2));
    EXPECT_EQ(red.rtt(2, 0), Millis(2));
    EXPECT_FALSE(find_triangle_violation(red));
}

// The AWS table is not quite metric: Seoul-London is 240 direct but
// 120 + 113 = 233 through Mumbai. Nothing else changes.
TEST(Multihop, AwsOnlySeoulLondonShrinks)
{
    const auto net = fixture("aws6.json");
    const auto red = reduce_multihop(net);
    for (NodeId i = 0; i < 6; ++i) {
        for (NodeId j = 0; j < 6; ++j) {
            const bool sl = (i == Seoul && j == London) || (i == London && j == Seoul);
            EXPECT_EQ(red.rtt(i, j), sl ? Millis(233) : net.rtt(i, j)) << i << "," << j;
        }
    }
}

TEST(Multihop, IdempotentAndNonIncreasing)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomNetworkOptions o;
        o.n = 2 + seed % 7;
        const auto net = random_network(seed, o);
        const auto once = reduce_multihop(net);
        const auto twice = reduce_multihop(once);
        EXPECT_EQ(once.rtt(), twice.rtt());
        EXPECT_FALSE(find_triangle_violation(once));
        for (NodeId i = 0; i < net.size(); ++i) {
            for (NodeId j = 0; j < net.size(); ++j) EXPECT_LE(once.rtt(i, j), net.rtt(i, j));
        }
    }
}

TEST(Lambda, AwsRows)
{
    const auto p = lambda_profile(fixture("aws6.json"));
    const std::vector<Millis> seoul{0, 120, 126, 138, 230, 240};
    const std::vector<Millis> ireland{0, 13, 121, 126, 138, 230};
    EXPECT_EQ(p.values[Seoul], seoul);
    EXPECT_EQ(p.values[Ireland], ireland);
    EXPECT_EQ(p.order[Seoul][0], Seoul);
}

TEST(Lambda, RowsArePermutationsStartingAtZero)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomNetworkOptions o;
        o.n = 1 + seed % 8;
        o.tie_bias = 0.5;
        const auto net = random_network(seed, o);
        const auto p = lambda_profile(net);
        for (NodeId i = 0; i < net.size(); ++i) {
            EXPECT_EQ(p.values[i][0], Millis(0));
            EXPECT_TRUE(std::is_sorted(p.values[i].begin(), p.values[i].end()));
            std::vector<Millis> col;
            for (NodeId t = 0; t < net.size(); ++t) col.push_back(net.rtt(t, i));
            EXPECT_TRUE(std::is_permutation(col.begin(), col.end(), p.values[i].begin()));
        }
    }
}

TEST(Bounds, AwsWorstCase)
{
    const auto p = lambda_profile(fixture("aws6.json"));
    EXPECT_EQ(worstcase_lower_bound(p, 4, Seoul), Millis(138));
    EXPECT_EQ(worstcase_lower_bound(p, 4, Ireland), Millis(126));
    for (NodeId i = 0; i < 6; ++i) EXPECT_EQ(worstcase_lower_bound(p, 1, i), Millis(0));
}

TEST(Bounds, AwsAverageIsExact)
{
    const auto p = lambda_profile(fixture("aws6.json"));
    EXPECT_EQ(avg_latency_lower_bound(p, 4), Millis(1833, 24));
    EXPECT_EQ(avg_latency_lower_bound(p, 1), Millis(0));
}

TEST(Bounds, UniformTriangle)
{
    const auto p = lambda_profile(uniform_network(3, 10));
    EXPECT_EQ(avg_latency_lower_bound(p, 2), Millis(5));
}

TEST(Bounds, KOutOfRange)
{
    const auto p = lambda_profile(fixture("aws6.json"));
    EXPECT_EQ(code_of([&] { worstcase_lower_bound(p, 0, 0); }), ErrorCode::KOutOfRange);
    EXPECT_EQ(code_of([&] { worstcase_lower_bound(p, 7, 0); }), ErrorCode::KOutOfRange);
    EXPECT_EQ(code_of([&] { avg_latency_lower_bound(p, 0); }), ErrorCode::KOutOfRange);
    EXPECT_EQ(code_of([&] { avg_latency_lower_bound(p, 7); }), ErrorCode::KOutOfRange);
}

TEST(Bounds, MonotoneAndAverageBelowMeanWorstCase)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomNetworkOptions o;
        o.n = 2 + seed % 7;
        o.tie_bias = 0.3;
        const auto net = random_network(seed, o);
        const auto p = lambda_profile(net);
        const auto n = static_cast<std::int64_t>(net.size());
        for (std::size_t k = 1; k <= net.size(); ++k) {
            Millis mean_wc = 0;
            for (NodeId i = 0; i < net.size(); ++i) {
                mean_wc += worstcase_lower_bound(p, k, i);
                if (k > 1) { EXPECT_GE(worstcase_lower_bound(p, k, i), worstcase_lower_bound(p, k - 1, i)); }
            }
            EXPECT_LE(avg_latency_lower_bound(p, k), mean_wc / n);
        }
    }
}
