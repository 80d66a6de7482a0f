#include <doctest.h>

#include <set>
#include <vector>

#include "selsym/errors.hpp"
#include "selsym/primes.hpp"
#include "selsym/theta.hpp"
#include "support/oracles.hpp"

using namespace selsym;

namespace {

const SymbolSource& twist13() {
    static auto s = make_symbol_source(curves::x0_11_twist(13));
    return *s;
}

const SymbolSource& x011() {
    static auto s = make_symbol_source(curves::x0_11());
    return *s;
}

}  // namespace

TEST_CASE("p-adic ring arithmetic") {
    PAdicRing r(3, 3);
    CHECK(r.q == 27);
    CHECK(r.mul(r.inv(5), 5) == 1);
    CHECK_THROWS_AS(r.inv(6), Error);
    CHECK(r.ord(9) == 2);
    CHECK(!r.ord(27).has_value());
    CHECK(r.from(mpq_class(1, 2)) == 14);
}

TEST_CASE("quotient indexing round trips") {
    PQuotient g(3, {7, 19}, 1);
    CHECK(g.orders() == std::vector<i64>{3, 9, 3});
    CHECK(g.size() == 81);
    std::set<std::size_t> seen;
    for (i64 a = 1; a < g.conductor(); ++a) {
        if (gcd(a, g.conductor()) != 1) continue;
        auto idx = g.index(a);
        CHECK(g.unflatten(idx) == g.exponents(a));
        seen.insert(idx);
    }
    CHECK(seen.size() == g.size());
}

TEST_CASE("c_s matches polynomial expansion") {
    for (i64 p : {3, 5, 7})
        for (int n0 = 1; n0 <= 3; ++n0)
            for (int s = 1; s <= 6; ++s) CHECK(c_s(p, n0, s) == oracle::c_s(p, n0, s));
    CHECK(c_s(3, 2, 2) == 1);
}

TEST_CASE("delta_direct agrees with the theta coefficient on a small scan") {
    const auto& s = twist13();
    Curve e = curves::x0_11_twist(13);
    auto p1 = enumerate_p1(e, 3, 1, 200);
    REQUIRE(p1.size() >= 4);
    for (i64 l : p1) {
        auto r = delta_direct(s, {l}, 3, 1);
        CHECK(r.residue == delta_from_theta(s, {l}, 3, 1));
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            auto r = delta_direct(s, {p1[i], p1[j]}, 3, 1);
            CHECK(r.residue == delta_from_theta(s, {p1[i], p1[j]}, 3, 1));
        }
}

TEST_CASE("delta modulo 9 from theta at primes 1 mod 9") {
    const auto& s = twist13();
    for (i64 l : {19, 37, 73, 109}) {
        auto r = delta_direct(s, {l}, 3, 2);
        CHECK(r.residue == delta_from_theta(s, {l}, 3, 2));
    }
}

TEST_CASE("delta from vartheta has the same valuation") {
    const auto& s = twist13();
    Curve e = curves::x0_11_twist(13);
    auto alpha = stabilize(3, a_ell(e, 3), 2);
    PAdicRing r(3, 1);
    for (i64 l : enumerate_p1(e, 3, 1, 200)) {
        auto d = delta_direct(s, {l}, 3, 1);
        i64 v = delta_from_vartheta(s, {l}, alpha, 1);
        CHECK(r.ord(v) == d.ord);
    }
}

TEST_CASE("multithreaded delta is deterministic") {
    const auto& s = twist13();
    auto a = delta_direct(s, {7, 31, 73}, 3, 1, 1);
    auto b = delta_direct(s, {7, 31, 73}, 3, 1, 4);
    CHECK(a.value == b.value);
}

TEST_CASE("first Fitting coefficient of a single prime is delta") {
    const auto& s = twist13();
    for (i64 l : {7, 31, 73}) {
        CHECK(fitting_coefficient(s, {l}, {1}) == delta_direct(s, {l}, 3, 1).value);
        mpq_class sum = 0;
        for (i64 a = 1; a < l; ++a) sum += s.at(a, l);
        CHECK(fitting_coefficient(s, {l}, {0}) == sum);
    }
}

TEST_CASE("vartheta forms a projective system and restricts to the Res3 element") {
    const auto& s = x011();
    auto alpha = stabilize(3, a_ell(curves::x0_11(), 3), 3);
    for (i64 m : {1, 7, 13}) {
        CHECK(vartheta(s, m, 1, alpha).restrict_to(m) == vartheta(s, m, 0, alpha));
        CHECK(vartheta(s, m, 2, alpha).restrict_to(3 * m) == vartheta(s, m, 1, alpha));
    }
}

TEST_CASE("Euler relation for vartheta and norm compatibility of xi") {
    const auto& s = x011();
    Curve e = curves::x0_11();
    auto alpha = stabilize(3, a_ell(e, 3), 3);
    auto ae = [&](i64 l) { return a_ell(e, l); };
    PAdicRing r(3, 3);
    for (int k : {1, 2}) {
        i64 M = ipow(3, k);
        for (i64 l : {7, 13}) {
            auto lhs = vartheta(s, l, k, alpha).restrict_to(M);
            auto one = UnitGroupRing::sigma(M, r, 1);
            auto f = one.scaled(a_ell(e, l)) - UnitGroupRing::sigma(M, r, l) - UnitGroupRing::sigma(M, r, inv_mod(l % M, M));
            CHECK(lhs == f * vartheta(s, 1, k, alpha));
            CHECK(xi(s, l, {}, k, alpha, ae).restrict_to(M) == xi(s, 1, {l}, k, alpha, ae));
        }
    }
}

TEST_CASE("Smith cokernel agrees with brute force over Z/9") {
    const i64 q = 9;
    for (i64 a = 0; a < q; ++a)
        for (i64 b = 0; b < q; ++b)
            for (i64 c = 0; c < q; ++c)
                for (i64 d = 0; d < q; ++d) {
                    auto [order, three_torsion] = oracle::cokernel_z9(a, b, c, d);
                    auto f = smith_cokernel({{a, b}, {c, d}}, 3, 2);
                    CHECK(ipow(3, static_cast<int>(f.order_log())) == order);
                    CHECK(ipow(3, static_cast<int>(f.exponents.size())) == three_torsion);
                }
}
