#include <doctest.h>

#include "gst/rational.hpp"
#include "gst/scalar.hpp"

using namespace gst;

TEST_CASE("rational parsing accepts fractions, integers, and decimals") {
    CHECK(parse_rational("1/3") == ratio(1, 3));
    CHECK(parse_rational("-2/8") == ratio(-1, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0.25") == ratio(1, 4));
    CHECK(parse_rational("0.100499") == ratio(100499, 1000000));
    CHECK(parse_rational("-1.5") == ratio(-3, 2));
    CHECK(parse_rational("1e-3") == ratio(1, 1000));
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK(parse_rational("1.0251882335642643e-05") ==
          ratio(10251882335642643, 1) / rat_pow(Rational(10), 21));
    CHECK_THROWS_AS(parse_rational("1e"), InputError);
    CHECK_THROWS_AS(parse_rational("e5"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), InputError);
}

TEST_CASE("rational formatting") {
    CHECK(format_rational(ratio(1, 3)) == "1/3");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(format_rational(ratio(-7, 2)) == "-7/2");
}

TEST_CASE("binomial convention vanishes outside the triangle") {
    CHECK(binom(5, 2) == 10);
    CHECK(binom(5, -1) == 0);
    CHECK(binom(5, 6) == 0);
    CHECK(binom(0, 0) == 1);
}

TEST_CASE("simplest_in_interval recovers small-denominator roots from brackets") {
    CHECK(simplest_in_interval(ratio(341, 1024), ratio(342, 1024)) == ratio(1, 3));
    CHECK(simplest_in_interval(ratio(1, 2), ratio(1, 2)) == ratio(1, 2));
    CHECK(simplest_in_interval(ratio(3, 7), ratio(5, 7)) == ratio(1, 2));
    const Rational r = simplest_in_interval(ratio(100, 1001), ratio(101, 1001));
    CHECK(r >= ratio(100, 1001));
    CHECK(r <= ratio(101, 1001));
    CHECK(r.get_den() <= 1001);
}

TEST_CASE("exact_sqrt detects perfect squares only") {
    CHECK(exact_sqrt(ratio(9, 4)) == ratio(3, 2));
    CHECK(exact_sqrt(Rational(2)) == std::nullopt);
    CHECK(exact_sqrt(Rational(0)) == Rational(0));
    CHECK(exact_sqrt(Rational(-4)) == std::nullopt);
}

TEST_CASE("dyadic helper") {
    CHECK(dyadic(1, 4) == ratio(1, 16));
    CHECK(dyadic(6, 3) == ratio(3, 4));
}

TEST_CASE("probability vectors are box-checked on construction") {
    CHECK_NOTHROW(ProbVector(Vec::exact(RVec{ratio(1, 2), ratio(1, 3)})));
    CHECK_THROWS_AS(ProbVector(Vec::exact(RVec{ratio(3, 2), ratio(1, 3)})), InputError);
    CHECK_THROWS_AS(ProbVector(Vec::exact(RVec{ratio(-1, 2), ratio(1, 3)})), InputError);
    CHECK_THROWS_AS(ProbVector(Vec::exact(RVec{Rational(1)})), InputError);
    CHECK_THROWS_AS(ProbVector(Vec::approx({0.5, 1.5})), InputError);
    const ProbVector p(Vec::approx({0.25, 0.75, 1.0}));
    CHECK(p.n() == 3);
}

TEST_CASE("scalars refuse non-finite floats and cross-mode access") {
    CHECK_THROWS_AS(Scalar(std::numeric_limits<double>::infinity()), InputError);
    const Scalar e(ratio(1, 3));
    CHECK_THROWS_AS(e.flt(), InputError);
    CHECK(e.as_double() == doctest::Approx(1.0 / 3));
    CHECK(Scalar(0.5).str() == "0.5");
    CHECK(e.str() == "1/3");
}
