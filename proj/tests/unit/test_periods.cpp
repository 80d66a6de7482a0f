#include <doctest.h>

#include <cmath>

#include "selsym/periods.hpp"

using namespace selsym;

TEST_CASE("real period of X0(11)") {
    auto w = period_lattice(curves::x0_11());
    CHECK(w.components == 1);
    CHECK(w.omega_plus == doctest::Approx(1.269209304279553).epsilon(1e-12));
}

TEST_CASE("L(X0(11), 1) / Omega = 1/5") {
    NumericSymbols n(curves::x0_11(), 11);
    CHECK(n.root_number() == 1);
    CHECK(n.l_value() / n.periods().omega_plus == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(n.plus(0, 1) == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("numeric root numbers") {
    CHECK(NumericSymbols(curves::c563a1(), 563).root_number() == 1);
    CHECK(NumericSymbols(curves::c563a1(), 563).l_value() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(NumericSymbols(curves::x0_11_twist(13), 1859).root_number() == -1);
    CHECK(NumericSymbols(curves::x0_11_twist(157), 11 * 157 * 157).root_number() == 1);
}

TEST_CASE("L(E,1)/Omega for the 157 twist is 45") {
    NumericSymbols n(curves::x0_11_twist(157), 11 * 157 * 157);
    CHECK(n.plus(0, 1) == doctest::Approx(45.0).epsilon(1e-8));
}

TEST_CASE("symbols are periodic and the plus part is even") {
    NumericSymbols n(curves::x0_11(), 11);
    for (i64 m : {2, 3, 5, 7, 13}) {
        for (i64 a = 1; a < m; ++a) {
            CHECK(n.plus(a, m) == doctest::Approx(n.plus(a + m, m)).epsilon(1e-9));
            CHECK(n.plus(a, m) == doctest::Approx(n.plus(-a, m)).epsilon(1e-9));
            CHECK(n.minus(a, m) == doctest::Approx(-n.minus(-a, m)).epsilon(1e-9));
        }
    }
}
