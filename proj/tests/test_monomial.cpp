#include <gtest/gtest.h>

#include <random>

#include <rigidres/monomial.hpp>

using namespace rigidres;

namespace {

RingPtr abc() { return make_ring({"a", "b", "c"}); }

Monomial mono(const RingPtr& r, std::vector<Exponent> e) { return Monomial(r, std::move(e)); }

} // namespace

TEST(Ring, RejectsDuplicateAndEmptyNames)
{
    EXPECT_THROW(make_ring({"a", "a"}), std::invalid_argument);
    EXPECT_THROW(make_ring({""}), std::invalid_argument);
    EXPECT_TRUE(same_ring(make_ring({"x", "y"}), make_ring({"x", "y"})));
    EXPECT_FALSE(same_ring(make_ring({"x", "y"}), make_ring({"y", "x"})));
}

TEST(Monomial, LcmDividesQuotient)
{
    const auto r = abc();
    const auto a2b = mono(r, {2, 1, 0});
    const auto bc = mono(r, {0, 1, 1});
    EXPECT_EQ(lcm(a2b, bc), mono(r, {2, 1, 1}));
    EXPECT_TRUE(divides(bc, lcm(a2b, bc)));
    EXPECT_FALSE(divides(a2b, bc));
    EXPECT_EQ(quotient_monomial(lcm(a2b, bc), a2b), mono(r, {0, 0, 1}));
    EXPECT_THROW(quotient_monomial(bc, a2b), std::domain_error);
    EXPECT_EQ(multiply(a2b, bc).to_string(), "a^2*b^2*c");
    EXPECT_EQ(Monomial(r).to_string(), "1");
}

TEST(Monomial, DifferentRingsThrow)
{
    const auto x = mono(make_ring({"x"}), {1});
    const auto y = mono(make_ring({"y"}), {1});
    EXPECT_THROW(lcm(x, y), AmbientMismatch);
    EXPECT_THROW(divides(x, y), AmbientMismatch);
}

TEST(Monomial, ExponentOverflowIsChecked)
{
    const auto r = make_ring({"x"});
    const auto huge = mono(r, {std::numeric_limits<Exponent>::max()});
    EXPECT_THROW(multiply(huge, mono(r, {1})), ExponentOverflow);
}

TEST(Monomial, OrderIsTotalDegreeThenExponents)
{
    const auto r = abc();
    EXPECT_LT(mono(r, {1, 0, 0}), mono(r, {0, 1, 1}));
    EXPECT_LT(mono(r, {0, 1, 0}), mono(r, {1, 0, 0}));
}

TEST(Monomial, LatticeLawsOnRandomTriples)
{
    std::mt19937_64 rng(5);
    const auto r = abc();
    auto draw = [&] { return mono(r, {rng() % 4, rng() % 4, rng() % 4}); };
    for (int k = 0; k < 300; ++k) {
        const auto x = draw(), y = draw(), z = draw();
        EXPECT_EQ(lcm(x, y), lcm(y, x));
        EXPECT_EQ(lcm(lcm(x, y), z), lcm(x, lcm(y, z)));
        EXPECT_EQ(lcm(x, x), x);
        EXPECT_TRUE(divides(x, lcm(x, y)));
        EXPECT_EQ(divides(x, y), lcm(x, y) == y);
        if (divides(x, y))
            EXPECT_EQ(multiply(x, quotient_monomial(y, x)), y);
    }
}

TEST(Ideal, MinimalizeKeepsOrderAndFirstDuplicate)
{
    const auto r = abc();
    const MonomialIdeal i(r, {mono(r, {2, 0, 0}), mono(r, {2, 1, 0}), mono(r, {0, 1, 0}), mono(r, {0, 1, 0})});
    EXPECT_FALSE(i.is_minimally_generated());
    const auto m = minimalize_generators(i);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].to_string(), "a^2");
    EXPECT_EQ(m[1].to_string(), "b");
    EXPECT_TRUE(m.is_minimally_generated());
    EXPECT_THROW(MonomialIdeal(r, {}), std::invalid_argument);
}

TEST(Parse, IdealFileRoundTrip)
{
    const auto ideal = parse_ideal("# comment\n\nvars: a b c d\nb*d\nc*d^2\n  a*c\nc^2*d\na*b\n");
    EXPECT_EQ(ideal.size(), 5u);
    EXPECT_EQ(ideal[1].to_string(), "c*d^2");
    EXPECT_EQ(format_ideal(parse_ideal(format_ideal(ideal))), format_ideal(ideal));
    EXPECT_EQ(parse_monomial(ideal.ring(), "a * a").to_string(), "a^2");
}

TEST(Parse, ErrorsNameTheLine)
{
    auto line_of = [](const std::string& text) {
        try {
            parse_ideal(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of(""), 1u);
    EXPECT_EQ(line_of("a*b\n"), 1u);
    EXPECT_EQ(line_of("vars: a b\n"), 2u);
    EXPECT_EQ(line_of("vars: a b\na\n\nq^2\n"), 4u);
    EXPECT_EQ(line_of("vars: a b\na^x\n"), 2u);
    EXPECT_EQ(line_of("vars: a a\n"), 1u);
    EXPECT_EQ(line_of("vars: a\na**a\n"), 2u);
    EXPECT_EQ(line_of("vars: a\na^99999999999999999999999\n"), 2u);
}
