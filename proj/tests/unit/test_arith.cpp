#include <doctest.h>

#include <random>

#include "selsym/arith.hpp"
#include "selsym/errors.hpp"

using namespace selsym;

TEST_CASE("primality agrees with trial division") {
    for (u64 n = 0; n < 5000; ++n) {
        bool naive = n >= 2;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) naive = false;
        CHECK(is_prime(n) == naive);
    }
    CHECK(is_prime(2147483647ULL));
    CHECK(is_prime(18097));
    CHECK_FALSE(is_prime(3215031751ULL));
}

TEST_CASE("least primitive roots") {
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(13) == 2);
    CHECK(primitive_root(19) == 2);
    CHECK(primitive_root(31) == 3);
    CHECK(primitive_root(73) == 5);
    CHECK(primitive_root(127) == 3);
}

TEST_CASE("dlog table inverts exponentiation") {
    for (i64 ell : {7, 13, 37, 127, 601}) {
        DlogTable t(ell);
        for (i64 a = 1; a < ell; ++a) {
            i64 k = t.log(a);
            CHECK(k >= 0);
            CHECK(k <= ell - 2);
            CHECK(static_cast<i64>(powmod(t.generator(), k, ell)) == a);
        }
        CHECK(t.log(-1) == (ell - 1) / 2);
    }
}

TEST_CASE("kronecker symbol and fundamental discriminants") {
    CHECK(kronecker(13, 11) == -1);
    CHECK(kronecker(157, 11) == 1);
    CHECK(kronecker(-2963, -11) == 1);
    CHECK(is_fundamental_discriminant(13));
    CHECK(is_fundamental_discriminant(40));
    CHECK(is_fundamental_discriminant(-23));
    CHECK(is_fundamental_discriminant(-2963));
    CHECK(is_fundamental_discriminant(12));
    CHECK_FALSE(is_fundamental_discriminant(8 * 4));
    CHECK_FALSE(is_fundamental_discriminant(45));
    CHECK_FALSE(is_fundamental_discriminant(20));
}

TEST_CASE("rational reconstruction round trip") {
    std::mt19937_64 rng(11);
    mpz_class m("4611686018427387847");
    m *= mpz_class("4611686018427387817");
    for (int i = 0; i < 200; ++i) {
        long num = static_cast<long>(rng() % 2000001) - 1000000;
        long den = static_cast<long>(rng() % 5000) + 1;
        mpq_class q(num, den);
        q.canonicalize();
        mpz_class inv;
        mpz_class d = q.get_den();
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        mpz_class a = (q.get_num() * inv) % m;
        auto r = rational_reconstruct(a, m);
        REQUIRE(r.has_value());
        CHECK(*r == q);
    }
}

TEST_CASE("reduction of rationals modulo prime powers") {
    CHECK(reduce_rational(mpq_class(2753, 2), 3, 2) == 4);
    CHECK(reduce_rational(mpq_class(35325), 3, 3) == 9);
    CHECK_THROWS_AS(reduce_rational(mpq_class(1, 3), 3, 1), Error);
}

TEST_CASE("unit root satisfies its polynomial") {
    for (i64 ap : {-4, -1, 2, 5}) {
        for (int k = 1; k <= 8; ++k) {
            i64 pk = ipow(3, k);
            i64 a = unit_root(ap, 3, k);
            CHECK(mod(a * a - ap * a + 3, pk) == 0);
            CHECK(a % 3 != 0);
        }
    }
    CHECK_THROWS_AS(unit_root(3, 3, 2), Error);
}

TEST_CASE("valuations") {
    CHECK(valuation(i64{35325}, 3) == 2);
    CHECK(valuation(mpq_class(-14065, 2), 2) == -1);
    CHECK(valuation(mpz_class(-412820), 2) == 2);
}
