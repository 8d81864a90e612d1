#include "szp/padic.hpp"

#include <doctest.h>

#include <random>

using namespace szp;

TEST_CASE("ring construction guards") {
    CHECK_THROWS_AS(TruncatedEisensteinRing(4, 1, 4), std::domain_error);
    CHECK_THROWS_AS(TruncatedEisensteinRing(5, 3, 4), std::domain_error);  // 3 does not divide 4
    CHECK_THROWS_AS(TruncatedEisensteinRing(5, 4, 2), std::domain_error);
    CHECK_NOTHROW(TruncatedEisensteinRing(13, 6, 5));
}

TEST_CASE("valuation in units of 1/E") {
    TruncatedEisensteinRing R(5, 4, 6);
    CHECK(R.valuation(R.uniformizer()) == Rational(1, 4));
    CHECK(R.valuation(R.from_integer(5)) == Rational(1));
    CHECK(R.valuation(R.from_integer(1)) == Rational(0));
    CHECK(R.valuation(R.mul(R.uniformizer(), R.uniformizer())) == Rational(1, 2));
    CHECK(!R.valuation(R.zero()).has_value());  // precision exhausted
    CHECK(R.valuation(R.from_integer(75)) == Rational(2));  // 75 = 3 * 5^2
}

TEST_CASE("valuation is multiplicative (fuzz)") {
    std::mt19937_64 rng(7);
    TruncatedEisensteinRing R(7, 6, 5);
    auto random_element = [&] {
        long k = static_cast<long>(rng() % 8);  // valuation k/6
        auto e = R.from_integer(1 + static_cast<long>(rng() % 5));
        for (long i = 0; i < k; ++i) e = R.mul(e, R.uniformizer());
        return std::pair{e, Rational(k, 6)};
    };
    for (int i = 0; i < 500; ++i) {
        auto [a, va] = random_element();
        auto [b, vb] = random_element();
        if (va + vb >= R.precision()) continue;
        auto vm = R.valuation(R.mul(a, b));
        REQUIRE(vm.has_value());
        CHECK(*vm == va + vb);
    }
}

TEST_CASE("teichmuller roots of unity") {
    TruncatedEisensteinRing R(5, 4, 6);
    CHECK(R.congruent(R.teichmuller_root(0), R.one(), Rational(R.precision())));

    auto w1 = R.teichmuller_root(1);
    auto w2 = R.teichmuller_root(2);
    CHECK(R.congruent(R.mul(w1, w1), w2, Rational(R.precision())));

    // w^E - 1 vanishes to the full working precision
    auto pw = R.pow(w1, 4);
    auto diff = R.sub(pw, R.one());
    auto vd = R.valuation(diff);
    CHECK((!vd.has_value() || *vd >= R.precision()));

    // multiplicativity of the section k -> w^k
    TruncatedEisensteinRing S(13, 6, 5);
    for (long k = 0; k < 6; ++k)
        for (long j = 0; j < 6; ++j)
            CHECK(S.congruent(S.mul(S.teichmuller_root(k), S.teichmuller_root(j)),
                              S.teichmuller_root((k + j) % 6),
                              Rational(S.precision())));
}

TEST_CASE("unit inversion") {
    TruncatedEisensteinRing R(7, 3, 5);
    auto u = R.element({Integer(3), Integer(5), Integer(1)});
    auto inv = R.invert_unit(u);
    CHECK(R.congruent(R.mul(u, inv), R.one(), Rational(R.precision())));
    CHECK_THROWS_AS(R.invert_unit(R.uniformizer()), std::domain_error);
}

TEST_CASE("truncated p-adic logarithm") {
    SUBCASE("log of 1 is 0") {
        TruncatedEisensteinRing R(5, 1, 6);
        auto r = R.log_series(R.one());
        CHECK(R.is_zero(r.value));
    }
    SUBCASE("log(1+5) has valuation 1 at p=5") {
        TruncatedEisensteinRing R(5, 1, 6);
        auto r = R.log_series(R.from_integer(6));
        CHECK(R.valuation(r.value) == Rational(1));
    }
    SUBCASE("log(1+4) has valuation 2 at p=2") {
        TruncatedEisensteinRing R(2, 1, 8);
        auto r = R.log_series(R.from_integer(5));
        CHECK(R.valuation(r.value) == Rational(2));
        CHECK(r.terms_used >= 2);
    }
    SUBCASE("convergence guard") {
        TruncatedEisensteinRing R(2, 1, 8);
        // val(3 - 1) = 1 = 1/(p-1): not allowed at p = 2
        CHECK_THROWS_AS(R.log_series(R.from_integer(3)), std::domain_error);
    }
    SUBCASE("val(log(1+a)) = ord(a) when ord(a) > 1/(p-1)") {
        for (long p : {3L, 5L, 7L}) {
            TruncatedEisensteinRing R(p, 1, 7);
            for (long k = 1; k <= 3; ++k) {
                auto a = R.from_integer(pow_integer(Integer(p),
                                                    static_cast<unsigned long>(k)));
                auto r = R.log_series(R.add(R.one(), a));
                CHECK(R.valuation(r.value) == Rational(k));
            }
        }
    }
    SUBCASE("log is a homomorphism on principal units") {
        TruncatedEisensteinRing R(7, 1, 6);
        auto u = R.from_integer(1 + 7);
        auto v = R.from_integer(1 + 2 * 49);
        auto lu = R.log_series(u);
        auto lv = R.log_series(v);
        auto luv = R.log_series(R.mul(u, v));
        Rational margin = std::min(lu.tail_valuation,
                                   std::min(lv.tail_valuation, luv.tail_valuation));
        CHECK(R.congruent(R.add(lu.value, lv.value), luv.value, margin));
    }
    SUBCASE("log kills roots of unity") {
        TruncatedEisensteinRing R(5, 1, 6);
        auto w = R.root_of_unity(4, 1);
        auto u = R.pow(w, 4);  // = 1 up to working precision
        auto r = R.log_series(u);
        auto vr = R.valuation(r.value);
        CHECK((!vr.has_value() || *vr >= R.precision() - 1));
    }
}

TEST_CASE("exact division") {
    TruncatedEisensteinRing R(5, 4, 8);
    auto a = R.element({Integer(2), Integer(1), Integer(0), Integer(3)});
    auto b = R.mul(R.uniformizer(), R.from_integer(3));  // valuation 1/4 unit multiple
    auto q = R.divide(R.mul(a, b), b);
    // top E*val(b) = 1 valuation-units are uncertified
    CHECK(R.congruent(q, a, Rational(R.precision() - 1)));
    CHECK_THROWS_AS(R.divide_by_x(R.one()), PrecisionError);
}

TEST_CASE("exact minimum of n*v - ord_p(n)") {
    CHECK(crude_min_term(Rational(1), 2, 16) == Rational(1));
    CHECK(crude_min_term(Rational(2), 3, 16) == Rational(2));
    CHECK(crude_min_term(Rational(1, 2), 2, 16) == Rational(0));
    // window must cover the analytic minimizer
    CHECK_THROWS_AS(crude_min_term(Rational(1, 100), 2, 10), std::domain_error);
    CHECK_THROWS_AS(crude_min_term(Rational(-1), 2, 10), std::domain_error);
    CHECK_THROWS_AS(crude_min_term(Rational(1), 4, 10), std::domain_error);
}
