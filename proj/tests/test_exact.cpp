#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampsep/exact.hpp"

using namespace lampsep;
using namespace lampsep::exact;

TEST_CASE("rational encode/parse round trip and reduction") {
    CHECK(encode_rational(BigRational(7)) == "7");
    CHECK(encode_rational(BigRational(-3, 9)) == "-1/3");
    CHECK(parse_rational("3/6") == BigRational(1, 2));
    CHECK(parse_rational("-14/4") == BigRational(-7, 2));
    CHECK(parse_rational("0") == BigRational(0));
    CHECK(encode_rational(parse_rational("123456789123456789/2")) ==
          "123456789123456789/2");
    CHECK_THROWS_AS(parse_rational("1/0"), precondition_error);
    CHECK_THROWS_AS(parse_rational("1/-2"), precondition_error);
    CHECK_THROWS_AS(parse_rational("a"), precondition_error);
    CHECK_THROWS_AS(parse_rational(""), precondition_error);
    CHECK_THROWS_AS(parse_rational("1.5"), precondition_error);
}

TEST_CASE("primality") {
    CHECK(is_prime(BigInt(2)));
    CHECK(is_prime(BigInt(3)));
    CHECK(is_prime(BigInt(97)));
    CHECK(is_prime(BigInt(7919)));
    CHECK(is_prime(BigInt("2305843009213693951"))); // 2^61 - 1
    CHECK_FALSE(is_prime(BigInt(0)));
    CHECK_FALSE(is_prime(BigInt(1)));
    CHECK_FALSE(is_prime(BigInt(91)));
    CHECK_FALSE(is_prime(BigInt(100)));
    CHECK_FALSE(is_prime(BigInt(-7)));
}

TEST_CASE("p-adic valuation of rationals") {
    CHECK(padic_valuation(BigRational(8), 2) == 3);
    CHECK(padic_valuation(BigRational(5, 8), 2) == -3);
    CHECK(padic_valuation(BigRational(9, 2), 3) == 2);
    CHECK(padic_valuation(BigRational(7), 3) == 0);
    CHECK(padic_valuation(BigRational(0), 5) == std::nullopt);
    CHECK_THROWS_AS(padic_valuation(BigRational(1), 6), precondition_error);
}

TEST_CASE("integer and rational powers") {
    CHECK(int_pow(BigInt(3), 20) == BigInt("3486784401"));
    CHECK(int_pow(BigInt(-2), 5) == -32);
    CHECK(int_pow(BigInt(5), 0) == 1);
    CHECK(rational_pow(BigRational(2, 3), -2) == BigRational(9, 4));
    CHECK(rational_pow(BigRational(0), 0) == BigRational(1));
    CHECK(rational_pow(BigRational(0), 3) == BigRational(0));
    CHECK(rational_pow(BigRational(-1, 2), 3) == BigRational(-1, 8));
    CHECK_THROWS_AS(rational_pow(BigRational(0), -1), precondition_error);
}

TEST_CASE("Laurent polynomial ring over F_p") {
    const LaurentPoly one = LaurentPoly::one(2);
    const LaurentPoly t = LaurentPoly::monomial(2, 1, 1);
    const LaurentPoly one_plus_t = laurent_add(one, t);

    SUBCASE("characteristic-2 cancellation") {
        CHECK(laurent_add(one_plus_t, one_plus_t).is_zero());
        // Freshman's dream: (1 + t)^2 = 1 + t^2 over F_2.
        const LaurentPoly sq = laurent_mul(one_plus_t, one_plus_t);
        const LaurentPoly expected =
            laurent_add(one, LaurentPoly::monomial(2, 1, 2));
        CHECK(sq == expected);
        CHECK(laurent_pow(one_plus_t, 2) == expected);
    }

    SUBCASE("unit inversion") {
        const LaurentPoly u = LaurentPoly::monomial(5, 2, 3); // 2 t^3 in F_5
        const LaurentPoly inv = laurent_pow(u, -1);
        CHECK(inv == LaurentPoly::monomial(5, 3, -3)); // 2 * 3 = 6 = 1 mod 5
        CHECK(laurent_mul(u, inv) == LaurentPoly::one(5));
        CHECK_THROWS_AS(laurent_pow(one_plus_t, -1), precondition_error);
    }

    SUBCASE("order of vanishing") {
        CHECK(t_adic_order(LaurentPoly::zero(3)) == std::nullopt);
        CHECK(t_adic_order(LaurentPoly::monomial(3, 2, -4)) == -4);
        CHECK(t_adic_order(one_plus_t) == 0);
    }

    SUBCASE("mixed characteristics are rejected") {
        CHECK_THROWS_AS(laurent_add(LaurentPoly::one(2), LaurentPoly::one(3)),
                        precondition_error);
        CHECK_THROWS_AS(LaurentPoly::zero(4), precondition_error);
    }

    SUBCASE("encode/parse round trip") {
        CHECK(encode_laurent(one_plus_t) == "{2;0:1,1:1}");
        CHECK(encode_laurent(LaurentPoly::zero(7)) == "{7;}");
        CHECK(parse_laurent("{2;0:1,1:1}") == one_plus_t);
        CHECK(parse_laurent("{5;-3:4}") == LaurentPoly::monomial(5, 4, -3));
        CHECK_THROWS_AS(parse_laurent("{2;0:2}"), precondition_error); // coeff >= p
        CHECK_THROWS_AS(parse_laurent("{2;0:1,0:1}"), precondition_error);
        CHECK_THROWS_AS(parse_laurent("{6;0:1}"), precondition_error);
        CHECK_THROWS_AS(parse_laurent("nope"), precondition_error);
    }
}

TEST_CASE("valuation tags") {
    CHECK(parse_valuation("arch") == Valuation::archimedean());
    CHECK(parse_valuation("3adic") == Valuation::p_adic(3));
    CHECK(parse_valuation("tadic") == Valuation::t_adic());
    CHECK(encode_valuation(Valuation::p_adic(13)) == "13adic");
    CHECK_THROWS_AS(parse_valuation("4adic"), precondition_error);
    CHECK_THROWS_AS(parse_valuation("euclid"), precondition_error);
}

TEST_CASE("valued scalars enforce payload/valuation pairing") {
    CHECK_THROWS_AS(ValuedScalar(BigRational(1), Valuation::t_adic()), precondition_error);
    CHECK_THROWS_AS(ValuedScalar(LaurentPoly::one(2), Valuation::archimedean()),
                    precondition_error);
    const ValuedScalar x(BigRational(2), Valuation::archimedean());
    const ValuedScalar y(BigRational(2), Valuation::p_adic(2));
    CHECK_THROWS_AS(scalar_add(x, y), precondition_error);
    CHECK_THROWS_AS(norm_compare(x, y), precondition_error);
}

TEST_CASE("scalar arithmetic across backends") {
    const Valuation arch = Valuation::archimedean();
    const ValuedScalar a(BigRational(2, 3), arch);
    const ValuedScalar b(BigRational(1, 3), arch);
    CHECK(scalar_add(a, b) == ValuedScalar(BigRational(1), arch));
    CHECK(scalar_sub(a, b) == ValuedScalar(BigRational(1, 3), arch));
    CHECK(scalar_mul(a, b) == ValuedScalar(BigRational(2, 9), arch));
    CHECK(scalar_pow(a, -2) == ValuedScalar(BigRational(9, 4), arch));
    CHECK(scalar_neg(b) == ValuedScalar(BigRational(-1, 3), arch));

    const Valuation tv = Valuation::t_adic();
    const ValuedScalar u(LaurentPoly::monomial(2, 1, -1), tv);
    const ValuedScalar w(LaurentPoly::one(2), tv);
    CHECK(scalar_mul(u, scalar_pow(u, -1)) == w);
    CHECK(scalar_add(w, w).is_zero());
    CHECK(scalar_one_like(u) == w);
    CHECK(scalar_zero_like(a).is_zero());
    CHECK_THROWS_AS(
        scalar_pow(scalar_add(w, u), -1), // 1 + t^-1 is not a unit
        precondition_error);
}

TEST_CASE("value_order") {
    CHECK(ValuedScalar(BigRational(12), Valuation::p_adic(2)).value_order() == 2);
    CHECK(ValuedScalar(BigRational(0), Valuation::p_adic(2)).value_order() == std::nullopt);
    CHECK(ValuedScalar(LaurentPoly::monomial(3, 1, -2), Valuation::t_adic()).value_order() ==
          -2);
    CHECK_THROWS_AS(ValuedScalar(BigRational(1), Valuation::archimedean()).value_order(),
                    precondition_error);
}

TEST_CASE("exact norm comparison") {
    const Valuation arch = Valuation::archimedean();
    auto ar = [&](long long n, long long d) { return ValuedScalar(BigRational(n, d), arch); };
    CHECK(norm_compare(ar(-5, 1), ar(3, 1)) == NormOrder::GT);
    CHECK(norm_compare(ar(-3, 1), ar(3, 1)) == NormOrder::EQ);
    CHECK(norm_compare(ar(1, 2), ar(2, 3)) == NormOrder::LT);
    CHECK(norm_compare(ar(0, 1), ar(0, 1)) == NormOrder::EQ);

    const Valuation v3 = Valuation::p_adic(3);
    auto p3 = [&](long long n, long long d) { return ValuedScalar(BigRational(n, d), v3); };
    // |9|_3 = 1/9 < |3|_3 = 1/3 < |1/3|_3 = 3.
    CHECK(norm_compare(p3(9, 1), p3(3, 1)) == NormOrder::LT);
    CHECK(norm_compare(p3(1, 3), p3(3, 1)) == NormOrder::GT);
    CHECK(norm_compare(p3(6, 1), p3(3, 1)) == NormOrder::EQ);
    CHECK(norm_compare(p3(0, 1), p3(5, 1)) == NormOrder::LT);
    CHECK(norm_compare(p3(0, 1), p3(0, 1)) == NormOrder::EQ);

    const Valuation tv = Valuation::t_adic();
    const ValuedScalar t(LaurentPoly::monomial(2, 1, 1), tv);
    const ValuedScalar tinv(LaurentPoly::monomial(2, 1, -1), tv);
    const ValuedScalar zero(LaurentPoly::zero(2), tv);
    CHECK(norm_compare(t, tinv) == NormOrder::LT);
    CHECK(norm_compare(zero, t) == NormOrder::LT);
}

TEST_CASE("norm at least two") {
    const Valuation arch = Valuation::archimedean();
    CHECK(has_norm_at_least_two(ValuedScalar(BigRational(2), arch)));
    CHECK(has_norm_at_least_two(ValuedScalar(BigRational(-5, 2), arch)));
    CHECK_FALSE(has_norm_at_least_two(ValuedScalar(BigRational(3, 2), arch)));

    const Valuation v2 = Valuation::p_adic(2);
    CHECK(has_norm_at_least_two(ValuedScalar(BigRational(1, 2), v2)));
    CHECK_FALSE(has_norm_at_least_two(ValuedScalar(BigRational(2), v2)));
    CHECK_FALSE(has_norm_at_least_two(ValuedScalar(BigRational(3), v2)));

    const Valuation tv = Valuation::t_adic();
    CHECK(has_norm_at_least_two(ValuedScalar(LaurentPoly::monomial(2, 1, -1), tv)));
    CHECK_FALSE(has_norm_at_least_two(ValuedScalar(LaurentPoly::one(2), tv)));
    CHECK_THROWS_AS(has_norm_at_least_two(ValuedScalar(BigRational(0), arch)),
                    precondition_error);
}

TEST_CASE("norm at least half, exact in every valuation") {
    const Valuation arch = Valuation::archimedean();
    auto ar = [&](long long n, long long d) { return ValuedScalar(BigRational(n, d), arch); };
    CHECK(norm_at_least_half_of(ar(1, 1), ar(2, 1)));
    CHECK(norm_at_least_half_of(ar(-3, 2), ar(3, 1))); // exact boundary |2x| = |y|
    CHECK_FALSE(norm_at_least_half_of(ar(1, 1), ar(3, 1)));
    CHECK(norm_at_least_half_of(ar(0, 1), ar(0, 1)));
    CHECK_FALSE(norm_at_least_half_of(ar(0, 1), ar(1, 1)));

    // p = 3: no slack. |3| = 1/3 < 1/2 = |1|/2.
    const Valuation v3 = Valuation::p_adic(3);
    auto p3 = [&](long long n, long long d) { return ValuedScalar(BigRational(n, d), v3); };
    CHECK_FALSE(norm_at_least_half_of(p3(3, 1), p3(1, 1)));
    CHECK(norm_at_least_half_of(p3(2, 1), p3(1, 1)));

    // p = 2: one step of slack. |2| = 1/2 = |1|/2 exactly.
    const Valuation v2 = Valuation::p_adic(2);
    auto p2 = [&](long long n, long long d) { return ValuedScalar(BigRational(n, d), v2); };
    CHECK(norm_at_least_half_of(p2(2, 1), p2(1, 1)));
    CHECK_FALSE(norm_at_least_half_of(p2(4, 1), p2(1, 1)));

    // t-adic slack follows the coefficient characteristic.
    const Valuation tv = Valuation::t_adic();
    const ValuedScalar t2(LaurentPoly::monomial(2, 1, 1), tv);
    const ValuedScalar one2(LaurentPoly::one(2), tv);
    CHECK(norm_at_least_half_of(t2, one2));
    const ValuedScalar t3(LaurentPoly::monomial(3, 1, 1), tv);
    const ValuedScalar one3(LaurentPoly::one(3), tv);
    CHECK_FALSE(norm_at_least_half_of(t3, one3));
    CHECK(norm_at_least_half_of(one3, one3));
}

TEST_CASE("scalar encode/parse round trip") {
    const Valuation arch = Valuation::archimedean();
    const ValuedScalar x(BigRational(-7, 3), arch);
    CHECK(parse_scalar(encode_scalar(x), arch) == x);
    const Valuation tv = Valuation::t_adic();
    const ValuedScalar u(laurent_add(LaurentPoly::one(3), LaurentPoly::monomial(3, 2, 5)), tv);
    CHECK(encode_scalar(u) == "{3;0:1,5:2}");
    CHECK(parse_scalar("{3;0:1,5:2}", tv) == u);
}
