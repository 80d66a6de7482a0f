#include <doctest.h>

#include <map>
#include <set>

#include "selsym/curve.hpp"
#include "selsym/errors.hpp"

using namespace selsym;

namespace {

// O(l^2) count used as an oracle against the production counters.
i64 naive_count(const Curve& e, i64 l) {
    i64 a[5];
    for (int i = 0; i < 5; ++i) {
        mpz_class r = e.a[i] % l;
        if (r < 0) r += l;
        a[i] = r.get_si();
    }
    i64 n = 1;
    for (i64 x = 0; x < l; ++x)
        for (i64 y = 0; y < l; ++y)
            if (mod(y * y + a[0] * x * y + a[2] * y - x * x % l * x - a[1] * x * x - a[3] * x - a[4], l) == 0) ++n;
    return n;
}

// Euler criterion count, independent of the square table.
i64 euler_count(const Curve& e, i64 l) {
    i64 a[5];
    for (int i = 0; i < 5; ++i) {
        mpz_class r = e.a[i] % l;
        if (r < 0) r += l;
        a[i] = r.get_si();
    }
    i64 n = 1;
    for (i64 x = 0; x < l; ++x) {
        i64 t = mod(a[0] * x + a[2], l);
        i64 f = mod(4 * mod(x * x % l * x + a[1] * (x * x % l) + a[3] * x + a[4], l) + t * t, l);
        if (f == 0)
            n += 1;
        else if (powmod(f, (l - 1) / 2, l) == 1)
            n += 2;
    }
    return n;
}

PointQ pt(const char* x, const char* y) {
    PointQ p;
    p.x = mpq_class(x);
    p.y = mpq_class(y);
    p.x.canonicalize();
    p.y.canonicalize();
    return p;
}

}  // namespace

TEST_CASE("X0(11) invariants and Hecke eigenvalues") {
    Curve e = curves::x0_11();
    CHECK(e.c4() == 496);
    CHECK(e.c6() == 20008);
    CHECK(e.discriminant() == -161051);
    std::map<i64, i64> known{{2, -2}, {3, -1}, {5, 1}, {7, -2}, {11, 1}, {13, 4}, {17, -2},
                              {19, 0}, {23, -1}, {29, 0}, {31, 7}, {37, 3}, {41, -8}, {43, -6}, {47, 8}};
    for (auto [p, ap] : known) CHECK(a_ell(e, p) == ap);
}

TEST_CASE("minimal models of twists of X0(11)") {
    auto same = [](const Curve& e, std::array<long, 5> want) {
        for (int i = 0; i < 5; ++i) CHECK(e.a[i] == want[i]);
    };
    same(curves::x0_11_twist(13), {0, -1, 1, -1746, -50295});
    same(curves::x0_11_twist(265), {0, -1, 1, -725658, -430708782});
    Curve e853 = curves::x0_11_twist(853);
    CHECK(e853.a[4] == mpz_class("-14370149745"));
    CHECK(e853.a[3] == -7518626);
    CHECK(curves::x0_11_twist(13).conductor == 11 * 169);
    CHECK(curves::x0_11_twist(40).conductor == 11 * 1600);
}

TEST_CASE("minimal model is idempotent and preserves j") {
    for (i64 d : {-23, -7, 5, 13, 40, 157, -2963}) {
        Curve e = curves::x0_11_twist(d);
        Curve m = minimal_model(e);
        CHECK(same_c_invariants(e, m));
        mpz_class j1 = e.c4() * e.c4() * e.c4(), j0 = curves::x0_11().c4() * curves::x0_11().c4() * curves::x0_11().c4();
        CHECK(j1 * curves::x0_11().discriminant() == j0 * e.discriminant());
    }
}

TEST_CASE("worked example points lie on their curves") {
    CHECK(on_curve(curves::x0_11_twist(13), pt("7045/36", "-574201/216")));
    CHECK(on_curve(curves::x0_11_twist(265), pt("2403", "108146")));
    CHECK(on_curve(curves::x0_11_twist(265), pt("5901", "-448036")));
    CHECK(on_curve(curves::x0_11_twist(853), pt("1194979057/51984", "40988136480065/11852352")));
    CHECK(on_curve(curves::c563a1(), pt("2", "-2")));
    CHECK(on_curve(curves::c563a1(), pt("-4", "7")));
    CHECK(on_curve(curves::c18097(), pt("0", "2")));
    CHECK(on_curve(curves::c18097(), pt("2", "-1")));
    CHECK(on_curve(curves::c18097(), pt("3", "2")));
}

TEST_CASE("point counts agree with a naive count") {
    for (const Curve& e : {curves::x0_11(), curves::c563a1(), curves::c18097(), curves::x0_11_twist(13), curves::x0_11_twist(-23)}) {
        for (i64 p : primes_up_to(150)) CHECK(count_points(e, p) == naive_count(e, p));
    }
}

TEST_CASE("baby-step giant-step counts agree with the Euler criterion count") {
    Curve e = curves::c563a1();
    for (i64 p : {10007, 10009, 12011, 20011, 49999}) {
        CHECK(count_points(e, p) == euler_count(e, p));
        CHECK(ReducedCurve(e, p).count() == euler_count(e, p));
    }
    Curve t = curves::x0_11_twist(157);
    for (i64 p : {10037, 15013}) CHECK(count_points(t, p) == euler_count(t, p));
}

TEST_CASE("point enumeration lists each affine point once") {
    for (const Curve& e : {curves::x0_11(), curves::c18097(), curves::x0_11_twist(-23)})
        for (i64 p : primes_up_to(120)) {
            if (!good_reduction(e, p)) continue;
            ReducedCurve red(e, p);
            auto pts = red.points();
            std::set<std::pair<i64, i64>> seen;
            for (const auto& q : pts) {
                CHECK(red.contains(q));
                if (!q.infinity) seen.insert({q.x, q.y});
            }
            CHECK(static_cast<i64>(seen.size()) + 1 == naive_count(e, p));
            CHECK(static_cast<i64>(pts.size()) == naive_count(e, p));
        }
}

TEST_CASE("twisting multiplies a_p by the character") {
    Curve base = curves::x0_11();
    for (i64 d : {13, -23, 40}) {
        Curve t = curves::x0_11_twist(d);
        for (i64 p : primes_up_to(400)) {
            if (p == 11 || d % p == 0) continue;
            CHECK(a_ell(t, p) == kronecker(d, p) * a_ell(base, p));
        }
    }
}

TEST_CASE("Fourier coefficients are multiplicative") {
    auto a = fourier_coefficients(curves::x0_11(), 200);
    CHECK(a[1] == 1);
    CHECK(a[4] == 2);
    CHECK(a[6] == 2);
    CHECK(a[121] == 1);
    for (i64 m = 1; m <= 14; ++m)
        for (i64 n = 1; n <= 14; ++n)
            if (gcd(m, n) == 1) CHECK(a[m * n] == a[m] * a[n]);
}

TEST_CASE("group structures of the worked examples") {
    auto cyc = [](const Curve& e, i64 l, i64 n) {
        auto g = ReducedCurve(e, l).structure();
        CHECK(g.n1 == 1);
        CHECK(g.n2 == n);
    };
    cyc(curves::x0_11_twist(13), 7, 6);
    cyc(curves::x0_11_twist(265), 31, 39);
    cyc(curves::x0_11_twist(853), 13, 18);
    cyc(curves::c563a1(), 109, 102);
    cyc(curves::c18097(), 7, 9);
    cyc(curves::c18097(), 43, 42);
}

TEST_CASE("563a1 has full 2-torsion at 13 and 103 but cyclic 3-part") {
    // 4x^3 + b2 x^2 + 2 b4 x + b6 splits completely mod 13 and mod 103
    auto g13 = ReducedCurve(curves::c563a1(), 13).structure();
    auto g103 = ReducedCurve(curves::c563a1(), 103).structure();
    CHECK(g13.n1 == 2);
    CHECK(g13.n2 == 6);
    CHECK(g103.n1 == 2);
    CHECK(g103.n2 == 42);
}

TEST_CASE("group structure has n1 dividing l - 1 and matches the count") {
    for (i64 p : primes_up_to(400)) {
        if (p < 5) continue;
        for (const Curve& e : {curves::x0_11(), curves::c563a1()}) {
            if (!good_reduction(e, p)) continue;
            auto g = ReducedCurve(e, p).structure();
            CHECK(g.order() == count_points(e, p));
            CHECK((p - 1) % g.n1 == 0);
            CHECK(g.n2 % g.n1 == 0);
        }
    }
}

TEST_CASE("reduction is a homomorphism") {
    Curve e = curves::c563a1();
    PointQ P = pt("2", "-2"), Q = pt("-4", "7");
    PointQ S = add(e, P, Q);
    for (i64 l : {13, 103, 109}) {
        ReducedCurve r(e, l);
        auto rp = r.reduce(P), rq = r.reduce(Q), rs = r.reduce(S);
        REQUIRE(rp);
        REQUIRE(rq);
        REQUIRE(rs);
        CHECK(r.add(*rp, *rq) == *rs);
        CHECK(r.multiply(*rp, r.count()).infinity);
    }
}

TEST_CASE("bad reduction is rejected") {
    CHECK_THROWS_AS(ReducedCurve(curves::x0_11(), 11), Error);
    CHECK_FALSE(good_reduction(curves::x0_11_twist(13), 13));
    CHECK(x0_11_twist_root_number(13) == -1);
    CHECK(x0_11_twist_root_number(157) == 1);
    CHECK(x0_11_twist_root_number(40) == -1);
    CHECK(x0_11_twist_root_number(-2963) == 1);
}
