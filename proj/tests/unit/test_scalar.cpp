#include <doctest.h>

#include <limits>

#include "tnrank/scalar.hpp"

using namespace tnrank;

TEST_SUITE("scalar") {
    TEST_CASE("parse canonicalizes fractions and decimals") {
        CHECK(parse_rational("6/4") == mpq_class(3, 2));
        CHECK(parse_rational("-0.25") == mpq_class(-1, 4));
        CHECK(parse_rational("7") == mpq_class(7));
        CHECK_THROWS(parse_rational("1/0"));
        CHECK_THROWS(parse_rational("abc"));
    }

    TEST_CASE("gaussian rational field operations") {
        const GaussianRational i{0, 1};
        CHECK(i * i == GaussianRational(-1));
        const GaussianRational z{mpq_class(1, 2), mpq_class(-3, 4)};
        CHECK(z * (GaussianRational(1) / z) == GaussianRational(1));
        CHECK(z.conj().im() == mpq_class(3, 4));
        CHECK(z.norm2() == mpq_class(13, 16));
        CHECK_THROWS_AS(z / GaussianRational(0), std::domain_error);
    }

    TEST_CASE("conversion rounds to nearest") {
        CHECK(to_double_nearest(mpq_class(1, 3)) == 1.0 / 3.0);
        CHECK(to_double_nearest(mpq_class(-2, 7)) == -2.0 / 7.0);
        // 2^53 + 1 is a tie, rounds to even.
        mpz_class big = 1;
        big <<= 53;
        CHECK(to_double_nearest(mpq_class(big + 1)) == 9007199254740992.0);
        CHECK(to_double_nearest(mpq_class(big + 3)) == 9007199254740996.0);
    }

    TEST_CASE("mode names round-trip") {
        CHECK(parse_scalar_mode(to_string(ScalarMode::exact)) == ScalarMode::exact);
        CHECK(parse_scalar_mode("float") == ScalarMode::floating);
        CHECK_THROWS(parse_scalar_mode("double"));
    }
}
