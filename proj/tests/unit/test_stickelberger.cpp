#include <doctest.h>

#include <random>

#include "selsym/errors.hpp"
#include "selsym/stickelberger.hpp"

using namespace selsym;

namespace {

// h = -(w / 2|D|) sum_{a=1}^{|D|} chi(a) a
i64 analytic_class_number(i64 disc) {
    i64 w = disc == -3 ? 6 : disc == -4 ? 4 : 2;
    i64 s = 0;
    for (i64 a = 1; a <= -disc; ++a) s += kronecker(disc, a) * a;
    return -w * s / (2 * -disc);
}

std::vector<i64> negative_fundamental(i64 bound) {
    std::vector<i64> out;
    for (i64 d = 3; d <= bound; ++d)
        if (is_fundamental_discriminant(-d)) out.push_back(-d);
    return out;
}

}  // namespace

TEST_CASE("class numbers match the analytic formula") {
    for (i64 disc : negative_fundamental(2000)) {
        auto g = class_group(disc);
        CHECK_MESSAGE(g.class_number() == analytic_class_number(disc), "disc " << disc);
        CHECK(static_cast<i64>(reduced_forms(disc).size()) == g.class_number());
        for (std::size_t i = 1; i < g.factors.size(); ++i) CHECK(g.factors[i] % g.factors[i - 1] == 0);
    }
}

TEST_CASE("form composition is a group law") {
    for (i64 disc : negative_fundamental(500)) {
        auto forms = reduced_forms(disc);
        Form e = identity_form(disc);
        for (const auto& f : forms) {
            CHECK(compose(f, e) == f);
            CHECK(compose(f, inverse_form(f)) == e);
            for (const auto& g : forms) {
                CHECK(compose(f, g) == compose(g, f));
                for (const auto& h : forms) CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
            }
        }
    }
}

TEST_CASE("class group structures") {
    CHECK(class_group(-23).factors == std::vector<i64>{3});
    CHECK(class_group(-47).factors == std::vector<i64>{5});
    CHECK(class_group(-4).factors.empty());
    CHECK(class_group(-3299).factors == std::vector<i64>{3, 9});
    CHECK(class_group(-4027).factors == std::vector<i64>{3, 3});
    CHECK(class_group(-4 * 65).factors == std::vector<i64>{2, 4});
    CHECK(class_group(-4027).p_rank(3) == 2);
    CHECK_THROWS_AS(class_group(-4000003, 1000000), Error);
}

TEST_CASE("Stickelberger deltas for Q(sqrt(-23))") {
    auto k = imaginary_quadratic(23);
    CHECK(k.disc == -23);
    auto a = stickelberger_delta(k, {151}, 3, 1);
    auto b = stickelberger_delta(k, {211}, 3, 1);
    auto ab = stickelberger_delta(k, {151, 211}, 3, 1);
    CHECK(a.value == -270);
    CHECK(b.value == -1272);
    CHECK(ab.value == -415012);
    CHECK(a.residue == 0);
    CHECK(b.residue == 0);
    CHECK(ab.residue == 2);
    CHECK(stickelberger_delta(k, {}, 3, 1).value == 3);
}

TEST_CASE("direct and folded sums agree") {
    for (i64 d : {1, 2, 5, 7, 23, 47, 71}) {
        auto k = imaginary_quadratic(d);
        std::vector<i64> split;
        for (i64 l : primes_up_to(200))
            if (l % 3 == 1 && k.chi(l) == 1) split.push_back(l);
        CHECK(stickelberger_delta(k, {}, 3, 1).value == stickelberger_delta_folded(k, {}));
        for (std::size_t i = 0; i < std::min<std::size_t>(split.size(), 4); ++i) {
            CHECK(stickelberger_delta(k, {split[i]}, 3, 1).value == stickelberger_delta_folded(k, {split[i]}));
            if (i > 0) CHECK(stickelberger_delta(k, {split[0], split[i]}, 3, 1).value == stickelberger_delta_folded(k, {split[0], split[i]}));
        }
    }
}

TEST_CASE("residues do not depend on the log lift") {
    auto k = imaginary_quadratic(23);
    std::mt19937_64 rng(7);
    for (auto primes : std::vector<std::vector<i64>>{{151}, {211}, {13, 31}, {151, 211}}) {
        std::vector<std::vector<i64>> logs;
        for (i64 l : primes) {
            auto t = log_table(l);
            for (std::size_t a = 1; a < t.size(); ++a) t[a] += (l - 1) * static_cast<i64>(rng() % 5);
            logs.push_back(t);
        }
        auto plain = stickelberger_delta(k, primes, 3, 1);
        auto shifted = stickelberger_delta(k, primes, 3, 1, logs);
        CHECK(plain.residue == shifted.residue);
    }
}

TEST_CASE("primes must split and be 1 mod p") {
    auto k = imaginary_quadratic(23);
    CHECK_THROWS_AS(stickelberger_delta(k, {7}, 3, 1), Error);
    CHECK_THROWS_AS(stickelberger_delta(k, {2}, 3, 1), Error);
    CHECK_THROWS_AS(imaginary_quadratic(12), Error);
}

TEST_CASE("analogue check") {
    auto bad = analogue_check(imaginary_quadratic(23), 3);
    CHECK(bad.dim == 1);
    CHECK(bad.counterexample);
    bool found = false;
    for (const auto& r : bad.minimal)
        if (r.primes == std::vector<i64>{151, 211}) found = true;
    CHECK(found);
    for (i64 d : {1, 7}) {
        auto good = analogue_check(imaginary_quadratic(d), 3);
        CHECK(!good.counterexample);
        REQUIRE(good.minimal.size() == 1);
        CHECK(good.minimal[0].epsilon() == 0);
    }
}
