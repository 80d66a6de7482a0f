#include <doctest.h>

#include "selsym/selmer.hpp"

using namespace selsym;

namespace {

PointQ pt(const char* x, const char* y) { return {mpq_class(x), mpq_class(y), false}; }

Hypotheses assumed() { return {true, true, true, true, true}; }

// discrete log of the p-part image by brute force over multiples of every point
i64 naive_log(const Curve& e, const PointQ& P, i64 l, i64 p) {
    ReducedCurve red(e, l);
    i64 n = count_points(e, l);
    i64 pv = ipow(p, valuation(n, p));
    auto target = red.multiply(*red.reduce(P), n / pv);
    for (i64 x = 0; x < l; ++x)
        for (i64 y = 0; y < l; ++y) {
            ModPoint g{x, y, false};
            if (!red.contains(g)) continue;
            g = red.multiply(g, n / pv);
            if (red.point_order(g, pv) != pv) continue;
            ModPoint acc;
            for (i64 k = 0; k < pv; ++k) {
                if (acc == target) return k;
                acc = red.add(acc, g);
            }
        }
    return -1;
}

}  // namespace

TEST_CASE("s_map entries are zero exactly when the naive log is zero") {
    Curve e = curves::x0_11_twist(265);
    std::vector<PointQ> pts{pt("2403", "108146"), pt("5901", "-448036")};
    auto sm = s_map(e, pts, {7, 13, 31}, 3, 1);
    for (std::size_t i = 0; i < sm.primes.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            CHECK((sm.entries[i][j] == 0) == (naive_log(e, pts[j], sm.primes[i], 3) % 3 == 0));
}

TEST_CASE("s_map ranks of the worked examples") {
    CHECK(s_map(curves::x0_11_twist(265), {pt("2403", "108146"), pt("5901", "-448036")}, {7, 31}, 3, 1).rank == 2);
    CHECK(s_map(curves::c563a1(), {pt("2", "-2"), pt("-4", "7")}, {13, 109}, 3, 1).rank == 2);
    CHECK(s_map(curves::c18097(), {pt("0", "2"), pt("2", "-1"), pt("3", "2")}, {7, 43, 601}, 3, 1).rank == 3);
    auto sm = s_map(curves::x0_11_twist(853), {pt("1194979057/51984", "40988136480065/11852352")}, {7, 13}, 3, 1);
    CHECK(sm.nonzero_at(0));
    CHECK(sm.nonzero_at(1));
}

TEST_CASE("s_map rejects primes outside P1") {
    CHECK_THROWS(s_map(curves::x0_11_twist(265), {pt("2403", "108146")}, {37}, 3, 1));
}

TEST_CASE("rank mod p") {
    CHECK(rank_mod_p({{1, 2}, {2, 4}}, 3) == 1);
    CHECK(rank_mod_p({{1, 2}, {2, 1}}, 3) == 1);
    CHECK(rank_mod_p({{1, 0}, {0, 1}}, 3) == 2);
    CHECK(rank_mod_p({{3, 6}, {9, 0}}, 3) == 0);
    CHECK(rank_mod_p({}, 3) == 0);
}

TEST_CASE("certificate for the 13 twist") {
    Curve e = curves::x0_11_twist(13);
    auto s = make_symbol_source(e);
    DeltaLedger ledger(*s, e.label, 3, 1);
    Evidence ev;
    ev.curve = e.label;
    ev.hypotheses = assumed();
    ev.root_number = -1;
    ev.minimal.push_back(ledger.certify_minimal({7}));
    ev.deltas = ledger.records();
    ev.smaps.push_back(s_map(e, {pt("7045/36", "-574201/216")}, {7}, 3, 1));
    auto c = certify(ev);
    CHECK(c.dim() == 1);
    CHECK(c.rank_lower == 1);
    CHECK(c.rank_upper == 1);
    CHECK(c.sha == "0");
    CHECK(!c.contradiction);
}

TEST_CASE("wrong root number trips the parity gate") {
    Curve e = curves::x0_11_twist(13);
    auto s = make_symbol_source(e);
    DeltaLedger ledger(*s, e.label, 3, 1);
    Evidence ev;
    ev.hypotheses = assumed();
    ev.root_number = 1;
    ev.minimal.push_back(ledger.certify_minimal({7}));
    auto c = certify(ev);
    CHECK(c.contradiction);
    CHECK(!c.dim());
}

TEST_CASE("points beyond the Selmer upper bound are a contradiction") {
    Curve e = curves::x0_11_twist(265);
    auto s = make_symbol_source(e);
    DeltaLedger ledger(*s, e.label, 3, 1);
    Evidence ev;
    ev.hypotheses = assumed();
    ev.deltas.push_back(ledger.get({7}));  // pretend delta_7 is a unit
    ev.deltas.back().ord = 0;
    ev.smaps.push_back(s_map(e, {pt("2403", "108146"), pt("5901", "-448036")}, {7, 31}, 3, 1));
    CHECK(certify(ev).contradiction);
}

TEST_CASE("unproved hypotheses downgrade verdicts") {
    Curve e = curves::x0_11_twist(13);
    auto s = make_symbol_source(e);
    DeltaLedger ledger(*s, e.label, 3, 1);
    Evidence ev;
    ev.hypotheses = assumed();
    ev.hypotheses.surjective = false;
    ev.minimal.push_back(ledger.certify_minimal({7}));
    auto c = certify(ev);
    for (const auto& cl : c.claims) CHECK(cl.verdict == Verdict::Evidence);
}

TEST_CASE("rank zero with L/Omega gives Sha through Cassels") {
    Evidence ev;
    ev.hypotheses = assumed();
    ev.l_ratio = mpq_class(45);
    DeltaRecord d;
    d.primes = {7, 127};
    d.value = 83165;
    d.residue = 2;
    d.ord = 0;
    MinimalityCertificate mc;
    mc.delta = d;
    mc.admissible = is_admissible(3, {7, 127});
    ev.minimal.push_back(mc);
    ev.deltas.push_back(d);
    auto c = certify(ev);
    CHECK(c.dim() == 2);
    CHECK(c.rank_upper == 0);
    CHECK(c.sha == "(Z/3)^2");
}

TEST_CASE("theta ideal bounds are monotone") {
    std::vector<DeltaRecord> ledger;
    auto rec = [](std::vector<i64> primes, std::optional<int> ord) {
        DeltaRecord d;
        d.N = 2;
        d.primes = std::move(primes);
        d.ord = ord;
        return d;
    };
    ledger.push_back(rec({}, std::nullopt));
    ledger.push_back(rec({19}, 1));
    ledger.push_back(rec({37}, std::nullopt));
    ledger.push_back(rec({19, 37}, 0));
    auto b = theta_ideal_bounds(ledger, 3, 2);
    REQUIRE(b.size() == 3);
    CHECK(b[0].bound == 2);
    CHECK(b[1].bound == 1);
    CHECK(b[1].generator == std::vector<i64>{19});
    CHECK(b[2].bound == 0);
}

TEST_CASE("relation matrix cokernel") {
    auto r = relation_cokernel({{3, 0}, {0, 0}}, 3, 2);
    CHECK(r.factors.exponents == std::vector<int>{1, 2});
    CHECK(r.text.find("Z/3") != std::string::npos);
}
