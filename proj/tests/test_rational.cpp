#include <gtest/gtest.h>

#include "geolat/rational.hpp"

using geolat::ErrorCode;
using geolat::Millis;

TEST(Rational, NormalizesSignAndTerms)
{
    Millis a(1833, 24);
    EXPECT_EQ(a.numerator(), 611);
    EXPECT_EQ(a.denominator(), 8);
    Millis b(3, -6);
    EXPECT_EQ(b.numerator(), -1);
    EXPECT_EQ(b.denominator(), 2);
}

TEST(Rational, Arithmetic)
{
    EXPECT_EQ(Millis(10, 12), Millis(5, 6));
    EXPECT_EQ(Millis(1, 3) + Millis(1, 6), Millis(1, 2));
    EXPECT_EQ(Millis(1960) / 24, Millis(245, 3));
    EXPECT_LT(Millis(9, 12), Millis(10, 12));
    EXPECT_EQ(-Millis(1, 2) * 4, Millis(-2));
}

TEST(Rational, ExactAndDecimalRendering)
{
    EXPECT_EQ(to_exact_string(Millis(1833, 24)), "611/8");
    EXPECT_EQ(to_exact_string(Millis(120)), "120");
    EXPECT_EQ(to_decimal_string(Millis(1960, 24)), "81.67");
    EXPECT_EQ(to_decimal_string(Millis(1833, 24)), "76.38");
    EXPECT_EQ(to_decimal_string(Millis(-1, 8)), "-0.13");
    EXPECT_EQ(to_decimal_string(Millis(5)), "5.00");
}

TEST(Rational, Parse)
{
    EXPECT_EQ(geolat::parse_millis("12"), Millis(12));
    EXPECT_EQ(geolat::parse_millis("12.375"), Millis(99, 8));
    EXPECT_EQ(geolat::parse_millis("1833/24"), Millis(611, 8));
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "3/"}) {
        try {
            geolat::parse_millis(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const geolat::Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
        }
    }
}
