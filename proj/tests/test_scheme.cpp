#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace geolat;
using namespace geolat::testing;

namespace {

FieldMatrix columns(std::size_t k, const std::vector<std::vector<Elem>>& cols)
{
    FieldMatrix m(k, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < k; ++r) m.at(r, c) = cols[c][r];
    }
    return m;
}

} // namespace

TEST(Uncoded, IdentityEmbedding)
{
    const auto lin = uncoded_as_linear(make_uncoded(3, {1, 2, 3}), PrimeField(2), 3);
    FieldMatrix id(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = 1;
    EXPECT_EQ(lin.generator(), id);
}

TEST(Uncoded, RepeatedFile)
{
    const auto lin = uncoded_as_linear(make_uncoded(3, {1, 2, 3, 2}), PrimeField(2), 3);
    EXPECT_EQ(lin.generator().column(3), (std::vector<Elem>{0, 1, 0}));
    EXPECT_EQ(rank(lin.field(), lin.generator()), 3u);
    for (std::size_t c = 0; c < 4; ++c) {
        const auto col = lin.generator().column(c);
        EXPECT_EQ(std::count(col.begin(), col.end(), 1u), 1);
    }
}

TEST(Uncoded, MissingFilesAreRankDeficient)
{
    EXPECT_EQ(code_of([] { uncoded_as_linear(make_uncoded(3, {1, 1, 1, 1}), PrimeField(2), 3); }), ErrorCode::RankDeficient);
    EXPECT_EQ(code_of([] { make_uncoded(3, {1, 4}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { make_uncoded(0, {}); }), ErrorCode::KOutOfRange);
}

TEST(Linear, RejectsRankDeficientAndNonResidues)
{
    FieldMatrix g(2, 2);
    g.at(0, 0) = 1;
    g.at(0, 1) = 1;
    EXPECT_EQ(code_of([&] { LinearScheme(PrimeField(2), g); }), ErrorCode::RankDeficient);
    g.at(1, 1) = 3;
    EXPECT_EQ(code_of([&] { LinearScheme(PrimeField(3), g); }), ErrorCode::InvalidArgument);
}

TEST(Linear, Formulas)
{
    const auto g = columns(4, {{1, 1, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const LinearScheme s(PrimeField(2), g);
    EXPECT_EQ(s.formula(0), "W1+W2+W4");
    EXPECT_EQ(s.formula(1), "W1");
    const LinearScheme t(PrimeField(3), columns(1, {{2}, {1}}));
    EXPECT_EQ(t.formula(0), "2*W1");
}

TEST(SolveDecode, IdentitySingleColumn)
{
    const auto v = solve_decode(PrimeField(2), columns(3, {{0, 1, 0}}), 2);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, std::vector<Elem>{1});
}

TEST(SolveDecode, UnreachableCoordinate)
{
    const auto m = columns(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {1, 1, 0, 1}});
    EXPECT_FALSE(solve_decode(PrimeField(2), m, 3));
}

TEST(SolveDecode, SeoulRecoversW2)
{
    // Seoul stores W1+W2+W4, Mumbai W1, Oregon W4.
    const auto m = columns(4, {{1, 1, 0, 1}, {1, 0, 0, 0}, {0, 0, 0, 1}});
    const auto v = solve_decode(PrimeField(2), m, 2);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, (std::vector<Elem>{1, 1, 1}));
}

TEST(SolveDecode, OutOfRangeFile)
{
    EXPECT_EQ(code_of([] { solve_decode(PrimeField(2), FieldMatrix(2, 1), 3); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { solve_decode(PrimeField(2), FieldMatrix(2, 1), 0); }), ErrorCode::InvalidArgument);
}

TEST(SolveDecode, AgreesWithExhaustiveSpanCheck)
{
    std::mt19937_64 rng(3);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const PrimeField f(p);
        std::uniform_int_distribution<Elem> d(0, p - 1);
        for (int t = 0; t < 150; ++t) {
            const std::size_t k = 1 + t % 4;
            const std::size_t m = 1 + (t / 4) % 4;
            std::vector<std::vector<Elem>> cols(m, std::vector<Elem>(k));
            for (auto& c : cols) {
                for (auto& e : c) e = d(rng);
            }
            const auto g = columns(k, cols);
            for (FileIndex j = 1; j <= k; ++j) {
                const auto v = solve_decode(f, g, j);
                EXPECT_EQ(v.has_value(), brute_force_spans(f, cols, k, j));
                if (v) {
                    std::vector<Elem> e(k, 0);
                    e[j - 1] = 1;
                    EXPECT_EQ(multiply(f, g, *v), e);
                }
            }
        }
    }
}

TEST(Scheme, VariantAccessors)
{
    const StorageScheme u = make_uncoded(2, {1, 2, 1});
    EXPECT_EQ(scheme_k(u), 2u);
    EXPECT_EQ(scheme_n(u), 3u);
    const StorageScheme l = as_linear(u);
    EXPECT_EQ(scheme_k(l), 2u);
    EXPECT_EQ(scheme_n(l), 3u);
    EXPECT_EQ(as_linear(l), std::get<LinearScheme>(l));
}
