#include <doctest.h>

#include <cmath>

#include "selsym/modsym.hpp"
#include "selsym/periods.hpp"

using namespace selsym;

TEST_CASE("P^1(Z/N) has N prod(1 + 1/p) points and canonical indices") {
    for (i64 N : {1, 2, 11, 12, 36, 121, 1859}) {
        P1List p1(N);
        i64 want = N;
        for (auto [p, e] : factor(N)) want = want / p * (p + 1);
        CHECK(static_cast<i64>(p1.size()) == want);
        for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1.index(p1.c(i), p1.d(i)) == i);
        for (i64 c = 0; c < N; ++c)
            for (i64 d = 0; d < N; ++d) {
                if (gcd(gcd(c, d), N) != 1) continue;
                std::size_t i = p1.index(c, d);
                // (c:d) and (c_i:d_i) differ by a unit: c*d_i = d*c_i mod N
                CHECK(mod(c * p1.d(i) - d * p1.c(i), N) == 0);
                CHECK(p1.index(-c, -d) == i);
            }
    }
}

TEST_CASE("Merel matrices have determinant n and the expected count") {
    for (i64 n : {2, 3, 5, 7, 11, 13}) {
        auto H = heilbronn_merel(n);
        std::size_t brute = 0;
        for (i64 a = 1; a <= n; ++a)
            for (i64 b = 0; b < a; ++b)
                for (i64 d = 1; d <= n * n; ++d)
                    for (i64 c = 0; c < d; ++c)
                        if (a * d - b * c == n) ++brute;
        CHECK(H.size() == brute);
        for (const auto& h : H) CHECK(h.a * h.d - h.b * h.c == n);
    }
}

TEST_CASE("plus quotient dimension for X0(11)") {
    auto info = manin_quotient_info(11, Sign::Plus);
    CHECK(info.symbols == 12);
    CHECK(info.free_generators == 2);  // one cusp form, one Eisenstein
}

TEST_CASE("X0(11) plus eigensymbol") {
    auto data = compute_eigensymbol(curves::x0_11(), Sign::Plus);
    ModularSymbol x(data);
    CHECK(x.at(0, 1) == mpq_class(1, 5));
    CHECK(check_manin_relations(data));
    CHECK(check_hecke_relation(data, 2, -2));
    CHECK(check_hecke_relation(data, 7, -2));
    NumericSymbols num(curves::x0_11(), 11);
    for (i64 m : {2, 3, 4, 5, 7, 13, 17, 19, 37}) {
        for (i64 a = 1; a < m; ++a) {
            if (gcd(a, m) != 1) continue;
            CHECK(x.at(a, m).get_d() == doctest::Approx(num.plus(a, m)).epsilon(1e-8));
        }
    }
}

TEST_CASE("X0(11) minus eigensymbol matches the imaginary parts") {
    auto data = compute_eigensymbol(curves::x0_11(), Sign::Minus);
    ModularSymbol x(data);
    NumericSymbols num(curves::x0_11(), 11);
    for (i64 m : {2, 3, 5, 7, 13}) {
        for (i64 a = 1; a < m; ++a) CHECK(x.at(a, m).get_d() == doctest::Approx(num.minus(a, m)).epsilon(1e-8));
    }
}

TEST_CASE("Hecke relation on cusps: sum over j of x((a + j m)/(m l)) + x(l a/m) = a_l x(a/m)") {
    auto data = compute_eigensymbol(curves::x0_11(), Sign::Plus);
    ModularSymbol x(data);
    for (i64 l : {2, 3, 7, 13}) {
        i64 al = a_ell(curves::x0_11(), l);
        for (i64 m : {1, 3, 5, 7, 8}) {
            for (i64 a = 0; a < m; ++a) {
                if (gcd(a, m) != 1) continue;
                mpq_class s = x.at(l * a, m);
                for (i64 j = 0; j < l; ++j) s += x.at(a + j * m, m * l);
                CHECK(s == al * x.at(a, m));
            }
        }
    }
}
