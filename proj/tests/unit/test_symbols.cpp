#include <doctest.h>

#include <cmath>
#include <random>

#include "selsym/errors.hpp"
#include "selsym/periods.hpp"
#include "selsym/symbols.hpp"

using namespace selsym;

namespace {

ModularSymbol base_symbol(Sign s) { return ModularSymbol(compute_eigensymbol(curves::x0_11(), s)); }

}  // namespace

TEST_CASE("newform twist equals the direct level 1859 eigensymbol") {
    Curve e = curves::x0_11_twist(13);
    TwistedSymbol tw(e, base_symbol(Sign::Plus), TwistConvention::Newform);
    CHECK(tw.constant() == 1);
    DirectSymbol direct(ModularSymbol(compute_eigensymbol(e, Sign::Plus)));
    for (i64 m = 1; m <= 50; ++m)
        for (i64 a = 0; a < m; ++a) {
            if (gcd(a, m) != 1) continue;
            CHECK(tw.at(a, m) == direct.at(a, m));
        }
}

TEST_CASE("restricted twist is chi_d(m) K^-1 times the newform twist at D^-1 a / m") {
    for (i64 d : {13, 40, -7}) {
        Curve e = curves::x0_11_twist(d);
        Sign s = d > 0 ? Sign::Plus : Sign::Minus;
        TwistedSymbol nf(e, base_symbol(s), TwistConvention::Newform);
        TwistedSymbol rs(e, base_symbol(s), TwistConvention::Restricted);
        i64 D = d > 0 ? d : -d;
        for (i64 m = 1; m <= 40; ++m) {
            if (gcd(m, D) != 1) continue;
            i64 dinv = m == 1 ? 0 : inv_mod(mod(D, m), m);
            for (i64 a = 0; a < m; ++a) {
                if (gcd(a, m) != 1) continue;
                mpq_class want = kronecker(d, m) * nf.at(mod(dinv * a, m), m) / nf.constant();
                CHECK(rs.at(a, m) == want);
            }
        }
    }
}

TEST_CASE("twist constant for d = 40 is 1/2") {
    TwistedSymbol nf(curves::x0_11_twist(40), base_symbol(Sign::Plus), TwistConvention::Newform);
    CHECK(nf.constant() == mpq_class(1, 2));
    CHECK(nf.constant_residual() < 1e-6);
}

TEST_CASE("563a1 eigensymbol satisfies Manin and Hecke relations exactly") {
    auto data = compute_eigensymbol(curves::c563a1(), Sign::Plus);
    CHECK(check_manin_relations(data));
    for (i64 l : {2, 3, 5, 7, 13})
        CHECK(check_hecke_relation(data, l, a_ell(curves::c563a1(), l)));
}

TEST_CASE("exact and numeric symbols agree on 100 random cusps") {
    Curve e = curves::c563a1();
    DirectSymbol exact(ModularSymbol(compute_eigensymbol(e, Sign::Plus)));
    NumericSymbols num(e, 563);
    std::mt19937_64 rng(20240611);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        i64 m = 1 + static_cast<i64>(rng() % 60);
        i64 a = static_cast<i64>(rng() % static_cast<u64>(m));
        while (gcd(a, m) != 1) a = (a + 1) % m;
        worst = std::max(worst, std::abs(exact.at(a, m).get_d() - num.plus(a, m)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("symbol source chooses the route from the curve") {
    auto tw = make_symbol_source(curves::x0_11_twist(13));
    CHECK(tw->describe().find("restricted") != std::string::npos);
    SymbolOptions o;
    o.max_direct_level = 100;
    CHECK_THROWS_AS(make_symbol_source(curves::c563a1(), o), Error);
}

TEST_CASE("provider hook replaces eigensymbol construction") {
    int calls = 0;
    SymbolOptions o;
    o.provider = [&](const Curve& c, Sign s, const EigenOptions& eo) {
        ++calls;
        return compute_eigensymbol(c, s, eo);
    };
    auto src = make_symbol_source(curves::x0_11_twist(13), o);
    CHECK(calls == 1);
    CHECK(src->at(0, 1) == 0);
}
