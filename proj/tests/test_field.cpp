#include <gtest/gtest.h>

#include <random>

#include <rigidres/field.hpp>
#include <rigidres/matrix.hpp>

#include "oracles.hpp"

using namespace rigidres;

TEST(FieldSpec, ParsesAllSpellings)
{
    EXPECT_TRUE(FieldSpec::parse("Q").is_rationals());
    EXPECT_EQ(FieldSpec::parse("F7"), FieldSpec::prime(7));
    EXPECT_EQ(FieldSpec::parse("GF(7)"), FieldSpec::prime(7));
    EXPECT_EQ(FieldSpec::parse("ZZ/7"), FieldSpec::prime(7));
    EXPECT_EQ(FieldSpec::prime(2).name(), "F2");
    EXPECT_EQ(FieldSpec::rationals().characteristic(), 0u);
}

TEST(FieldSpec, RejectsNonPrimes)
{
    EXPECT_THROW(FieldSpec::prime(4), std::invalid_argument);
    EXPECT_THROW(FieldSpec::prime(1), std::invalid_argument);
    EXPECT_THROW(FieldSpec::parse("F4"), std::invalid_argument);
    EXPECT_THROW(FieldSpec::parse("R"), std::invalid_argument);
}

TEST(Scalar, RationalArithmetic)
{
    const auto q = FieldSpec::rationals();
    const Scalar a(q, Rational(3, 2));
    const Scalar b(q, 2);
    EXPECT_EQ((a * b).to_string(), "3");
    EXPECT_EQ((a / b).to_string(), "3/4");
    EXPECT_EQ((a - b).to_string(), "-1/2");
    EXPECT_TRUE((a - a).is_zero());
}

TEST(Scalar, ResidueArithmetic)
{
    const auto f7 = FieldSpec::prime(7);
    const Scalar a(f7, 3);
    EXPECT_EQ((a * a.inverse()), Scalar::one(f7));
    EXPECT_EQ(Scalar(f7, -1).to_string(), "6 mod 7");
    EXPECT_EQ(Scalar(f7, Rational(1, 2)).to_string(), "4 mod 7");
    EXPECT_THROW(Scalar(f7, Rational(1, 7)), std::domain_error);
    EXPECT_THROW(Scalar::zero(f7).inverse(), std::domain_error);
}

TEST(Scalar, MixedFieldsThrow)
{
    EXPECT_THROW(Scalar(FieldSpec::prime(2), 1) + Scalar(FieldSpec::prime(3), 1), FieldMismatch);
}

TEST(Scalar, StringRoundTrip)
{
    std::mt19937_64 rng(3);
    for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(7), FieldSpec::prime(2)})
        for (int k = 0; k < 50; ++k) {
            const long long num = static_cast<long long>(rng() % 41) - 20;
            const long long den = static_cast<long long>(rng() % 5) + 1;
            if (!f.is_rationals() && den % static_cast<long long>(f.characteristic()) == 0)
                continue;
            const Scalar s(f, Rational(num, den));
            EXPECT_EQ(Scalar::parse(f, s.to_string()), s);
        }
    EXPECT_THROW(Scalar::parse(FieldSpec::prime(5), "1 mod 7"), FieldMismatch);
}

TEST(Rank, KnownMatrices)
{
    const std::vector<std::vector<long long>> twice{{2, 0}, {0, 2}};
    EXPECT_EQ(integer_rank(twice, FieldSpec::rationals()), 2u);
    EXPECT_EQ(integer_rank(twice, FieldSpec::prime(2)), 0u);
    EXPECT_EQ(integer_rank(twice, FieldSpec::prime(3)), 2u);
    EXPECT_EQ(integer_rank({}, FieldSpec::rationals()), 0u);
}

TEST(Rank, RandomMatricesAgreeWithRationalOracle)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        std::vector<std::vector<long long>> m(r, std::vector<long long>(c));
        for (auto& row : m)
            for (auto& x : row)
                x = static_cast<long long>(rng() % 7) - 3;
        if (trial % 3 == 0 && r > 1)
            for (std::size_t k = 0; k < c; ++k)
                m[r - 1][k] = m[0][k] * 2 - (r > 2 ? m[1][k] : 0);
        const std::size_t expected = oracle::rational_rank(m);
        EXPECT_EQ(integer_rank(m, FieldSpec::rationals()), expected);
        ScalarMatrix s = ScalarMatrix::from_ints(FieldSpec::rationals(), m);
        EXPECT_EQ(exact_rank(s), expected);
        // rank over GF(p) never exceeds rank over Q
        for (std::uint64_t p : {2u, 3u, 5u}) {
            const std::size_t rp = integer_rank(m, FieldSpec::prime(p));
            EXPECT_LE(rp, expected);
            EXPECT_EQ(exact_rank(ScalarMatrix::from_ints(FieldSpec::prime(p), m)), rp);
        }
    }
}

TEST(Rank, LargeEntriesFallBackToExactElimination)
{
    const long long big = 3'000'000'000LL;
    const std::vector<std::vector<long long>> m{{1, big, 0}, {big, 1, 1}, {big, 1, 1}, {0, 1, big}};
    EXPECT_EQ(integer_rank(m, FieldSpec::rationals()), oracle::rational_rank(m));
}

TEST(Matrix, MultiplyAndSubmatrix)
{
    const auto q = FieldSpec::rationals();
    const auto a = ScalarMatrix::from_ints(q, {{1, 2}, {3, 4}});
    const auto b = ScalarMatrix::from_ints(q, {{0, 1}, {1, 0}});
    EXPECT_EQ(multiply(a, b), ScalarMatrix::from_ints(q, {{2, 1}, {4, 3}}));
    EXPECT_EQ(a.submatrix({1}, {0}), ScalarMatrix::from_ints(q, {{3}}));
    EXPECT_THROW(multiply(a, ScalarMatrix::from_ints(FieldSpec::prime(2), {{1, 0}, {0, 1}})), FieldMismatch);
}
