#include "selsym/selmer.hpp"

#include <algorithm>
#include <sstream>

#include "selsym/errors.hpp"

namespace selsym {

namespace {

std::string join(const std::vector<i64>& v, const char* sep = "*") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return v.empty() ? "1" : out;
}

ModPoint find_point(const ReducedCurve& red, i64& x_from) {
    i64 l = red.prime();
    for (; x_from < l; ++x_from)
        for (i64 y = 0; y < l; ++y) {
            ModPoint q{x_from, y, false};
            if (red.contains(q)) {
                ++x_from;
                return q;
            }
        }
    fail(ErrorKind::Internal, "ran out of points");
}

}  // namespace

bool SMapMatrix::nonzero_at(std::size_t i) const {
    return std::any_of(entries[i].begin(), entries[i].end(), [](i64 v) { return v != 0; });
}

SMapMatrix s_map(const Curve& e, const std::vector<PointQ>& points, const std::vector<i64>& primes, i64 p, int N) {
    SMapMatrix out;
    out.p = p;
    out.N = N;
    out.primes = primes;
    out.points = points;
    i64 pN = ipow(p, N);
    for (const auto& pt : points)
        if (!on_curve(e, pt)) fail(ErrorKind::Config, "point not on the curve");
    for (i64 l : primes) {
        auto cls = classify_prime(e, p, N, l);
        if (cls.cls != PrimeClass::P1) fail(ErrorKind::HypothesisFailed, std::to_string(l) + " is not a P1 prime");
        ReducedCurve red(e, l);
        i64 n = cls.count;
        i64 pv = ipow(p, valuation(n, p));
        i64 cof = n / pv;
        ModPoint g;
        i64 x = 0;
        for (;;) {
            g = red.multiply(find_point(red, x), cof);
            if (red.point_order(g, pv) == pv) break;
        }
        std::vector<ModPoint> powers(static_cast<std::size_t>(pv));
        ModPoint acc;
        for (i64 k = 0; k < pv; ++k) {
            powers[static_cast<std::size_t>(k)] = acc;
            acc = red.add(acc, g);
        }
        std::vector<i64> row;
        for (const auto& pt : points) {
            auto r = red.reduce(pt);
            if (!r) fail(ErrorKind::Internal, "point does not reduce onto the curve");
            ModPoint t = red.multiply(*r, cof);
            auto it = std::find(powers.begin(), powers.end(), t);
            if (it == powers.end()) fail(ErrorKind::Internal, "discrete log failed");
            row.push_back(static_cast<i64>(it - powers.begin()) % pN);
        }
        out.entries.push_back(row);
        out.group_orders.push_back(n);
    }
    out.rank = rank_mod_p(out.entries, p);
    return out;
}

int rank_mod_p(std::vector<std::vector<i64>> a, i64 p) {
    int rank = 0;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r)
            if (mod(a[r][c], p) != 0) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
        auto& pr = a[static_cast<std::size_t>(rank)];
        i64 inv = inv_mod(mod(pr[c], p), p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || mod(a[r][c], p) == 0) continue;
            i64 f = mod(a[r][c], p) * inv % p;
            for (std::size_t k = 0; k < cols; ++k) a[r][k] = mod(a[r][k] - f * pr[k], p);
        }
        ++rank;
    }
    return rank;
}

std::string Hypotheses::describe() const {
    std::string s = "(i) ordinary non-anomalous: " + std::string(ordinary_non_anomalous ? "yes" : "no") +
                    "; (ii) Tamagawa prime to p: " + (tamagawa_prime_to_p ? "yes" : "no") +
                    "; (iii) surjective: " + (surjective ? "yes" : "no") + "; (iv) mu = 0: " + (mu_zero ? "yes" : "no");
    if (asserted) s += " [asserted]";
    return s;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Proved: return "proved-under-assumptions";
        case Verdict::Evidence: return "evidence-only";
        case Verdict::Contradiction: return "contradiction";
    }
    return "?";
}

std::optional<int> StructureCertificate::dim() const {
    if (dim_lower && dim_upper && *dim_lower == *dim_upper) return dim_lower;
    return std::nullopt;
}

std::string StructureCertificate::report() const {
    std::ostringstream os;
    os << "curve " << curve << ", p = " << p << ", N = " << N << "\n";
    for (const auto& a : assumptions) os << "assume: " << a << "\n";
    for (const auto& c : claims) os << "[" << c.rule << "] " << c.statement << " (" << to_string(c.verdict) << "; " << c.inputs << ")\n";
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("?"); };
    os << "dim Sel(E/Q, E[p]) in [" << opt(dim_lower) << ", " << opt(dim_upper) << "]\n";
    os << "rank E(Q) in [" << opt(rank_lower) << ", " << opt(rank_upper) << "]\n";
    if (sha) os << "Sha[p^oo] = " << *sha << "\n";
    if (main_conjecture) os << "main conjecture holds\n";
    if (contradiction) os << "CONTRADICTION\n";
    return os.str();
}

StructureCertificate certify(const Evidence& ev) {
    StructureCertificate c;
    c.curve = ev.curve;
    c.p = ev.p;
    c.N = ev.N;
    i64 p = ev.p;
    c.assumptions.push_back(ev.hypotheses.describe());
    if (ev.root_number) c.assumptions.push_back("root number " + std::to_string(*ev.root_number));
    if (ev.lambda_prime)
        c.assumptions.push_back("analytic lambda " + std::to_string(*ev.lambda_prime) +
                                (ev.lambda_computed ? " (computed, stabilized)" : " (asserted)"));
    if (ev.sha_order_from_main_conjecture) c.assumptions.push_back("#Sha[p^oo] = p^ord_p(L/Omega) from the main conjecture");
    Verdict base = ev.hypotheses.all() ? Verdict::Proved : Verdict::Evidence;

    auto add = [&](std::string st, std::string rule, std::string in, Verdict v) {
        c.claims.push_back({std::move(st), std::move(rule), std::move(in), v});
        if (v == Verdict::Contradiction) c.contradiction = true;
    };
    auto lower = [&](int v) { c.dim_lower = c.dim_lower ? std::max(*c.dim_lower, v) : v; };
    auto upper = [&](int v) { c.dim_upper = c.dim_upper ? std::min(*c.dim_upper, v) : v; };

    // Upper bounds: injectivity of s_m and higher Fitting ideals.
    for (const auto& d : ev.deltas) {
        if (!d.unit()) continue;
        upper(d.epsilon());
        add("s_m injective, dim Sel(E/Q, E[p]) <= " + std::to_string(d.epsilon()), "injectivity",
            "m=" + join(d.primes) + ", delta=" + d.value.get_str() + ", N=" + std::to_string(d.N), base);
    }
    for (const auto& f : ev.fitting) {
        if (!f.residue || *f.residue % p == 0) continue;
        upper(f.index_sum());
        add("Fitt_" + std::to_string(f.index_sum()) + "(Sel^dual) = F_p, dim Sel(E/Q, E[p]) <= " + std::to_string(f.index_sum()),
            "fitting", "m=" + join(f.primes) + ", a=" + f.value.get_str() + ", c_s=" + std::to_string(f.c), base);
    }
    // delta-minimal products.
    for (const auto& mc : ev.minimal) {
        if (!mc.minimal()) continue;
        int r = mc.delta.epsilon();
        std::string in = "m=" + join(mc.delta.primes) + ", delta=" + mc.delta.value.get_str();
        if (ev.root_number) {
            int want = r % 2 ? -1 : 1;
            if (*ev.root_number != want) {
                add("parity: root number " + std::to_string(*ev.root_number) + " but epsilon(m) = " + std::to_string(r), "parity", in,
                    Verdict::Contradiction);
                continue;
            }
            add("parity epsilon = (-1)^epsilon(m) holds", "parity", in, Verdict::Proved);
        }
        if (r <= 1) {
            lower(r);
            upper(r);
            add("dim Sel(E/Q, E[p]) = " + std::to_string(r), "minimal-small", in, base);
            if (r == 1) add("Sel(E/Q, E[p^oo])^dual = Z_p", "cyclic-selmer", in, base);
        } else if (!mc.admissible) {
            add("delta-minimal but not admissible, no dimension claim", "minimal-admissible", in, Verdict::Evidence);
        } else if (r == 2) {
            lower(2);
            upper(2);
            add("dim Sel(E/Q, E[p]) = 2", "minimal-admissible", in + ", admissible", base);
        } else if (r == 3) {
            const auto& ord = mc.admissible->ordering;
            auto surj = [&](i64 l) {
                for (const auto& sm : ev.smaps)
                    for (std::size_t i = 0; i < sm.primes.size(); ++i)
                        if (sm.primes[i] == l && sm.nonzero_at(i)) return true;
                return false;
            };
            if (surj(ord[0]) && surj(ord[1])) {
                lower(3);
                upper(3);
                add("dim Sel(E/Q, E[p]) = 3", "minimal-surjective",
                    in + ", admissible, s_" + std::to_string(ord[0]) + " and s_" + std::to_string(ord[1]) + " surjective", base);
            } else {
                add("dim 3 expected, surjectivity evidence missing", "minimal-surjective", in, Verdict::Evidence);
            }
        }
    }
    // Lower bounds from points.
    int pts_rank = 0;
    for (const auto& sm : ev.smaps) {
        if (sm.points.empty()) continue;
        pts_rank = std::max(pts_rank, sm.rank);
        lower(sm.rank);
        c.rank_lower = std::max(c.rank_lower.value_or(0), sm.rank);
        add("points span a rank " + std::to_string(sm.rank) + " subspace of E(F_l)/p over l | " + join(sm.primes), "kummer",
            std::to_string(sm.points.size()) + " points", Verdict::Proved);
    }
    // Main conjecture rules.
    if (ev.lambda_prime) {
        int nl = n_lambda(p, *ev.lambda_prime);
        for (const auto& d : ev.deltas) {
            if (d.epsilon() != 1 || !d.nonzero()) continue;
            i64 l = d.primes[0];
            if (valuation(l - 1, p) >= nl + 2) {
                c.main_conjecture = true;
                add("main conjecture holds, Sel(E/Q_oo, E[p^oo])^dual cyclic over Lambda", "mc-deep-prime",
                    "l=" + std::to_string(l) + ", delta=" + d.value.get_str() + ", lambda'=" + std::to_string(*ev.lambda_prime), base);
                break;
            }
        }
    }
    // Rank and Sha.
    if (ev.l_ratio && *ev.l_ratio != 0) {
        c.rank_upper = 0;
        c.rank_lower = 0;
        add("rank E(Q) = 0", "kato", "L/Omega=" + ev.l_ratio->get_str(), base);
        int o = valuation(*ev.l_ratio, p);
        bool exact = ev.sha_order_from_main_conjecture;
        add(std::string("#Sha[p^oo] ") + (exact ? "= " : "<= ") + std::to_string(p) + "^" + std::to_string(o),
            exact ? "mc-order" : "fitting-rank0", "L/Omega=" + ev.l_ratio->get_str(), base);
        if (exact && o > 0) {
            lower(2);
            add("Sha[p] nonzero of even dimension", "cassels", "#Sha = p^" + std::to_string(o), base);
        }
        if (auto d = c.dim()) {
            int e = exact ? o : (*d == o ? o : -1);
            if (*d == 0) {
                c.sha = "0";
            } else if (e > 0 && *d % 2 == 0 && e % 2 == 0) {
                int g = *d / 2;
                if (g == 1) c.sha = "(Z/" + std::to_string(ipow(p, e / 2)) + ")^2";
                else if (g * 2 == e) c.sha = "(Z/" + std::to_string(p) + ")^" + std::to_string(e);
            }
            if (c.sha) add("Sha[p^oo] = " + *c.sha, "cassels", "dim=" + std::to_string(*d) + ", order p^" + std::to_string(o), base);
        }
    }
    for (const auto& dr : ev.deltas) {
        if (dr.epsilon() != 1 || !dr.nonzero() || !dr.ord || *dr.ord >= dr.N || dr.N < 2 || pts_rank < 1) continue;
        c.rank_upper = 1;
        int e = *dr.ord;
        add("rank E(Q) = 1 and #Sha[p^oo] <= p^" + std::to_string(e), "fitting-rank1",
            "l=" + std::to_string(dr.primes[0]) + ", delta=" + dr.value.get_str() + " (mod p^" + std::to_string(dr.N) + ")", base);
        if (auto d = c.dim(); d && *d - 1 == e) {
            c.sha = e == 0 ? "0" : "(Z/" + std::to_string(p) + ")^" + std::to_string(e);
            add("Sha[p^oo] = " + *c.sha, "fitting-rank1", "dim=" + std::to_string(*d), base);
        }
        break;
    }
    if (auto d = c.dim(); d && pts_rank == *d && pts_rank > 0) {
        c.rank_lower = c.rank_upper = pts_rank;
        c.sha = "0";
        add("E(Q)/p = Sel(E/Q, E[p]), rank E(Q) = " + std::to_string(pts_rank) + ", Sha[p^oo] = 0", "points",
            "s_map rank " + std::to_string(pts_rank), base);
    }
    if (ev.lambda_prime) {
        if (auto d = c.dim(); d && *d == *ev.lambda_prime && !c.main_conjecture) {
            c.main_conjecture = true;
            add("main conjecture holds (dim Sel(E/Q, E[p]) = lambda')", "mc-lambda", "lambda'=" + std::to_string(*ev.lambda_prime), base);
        }
    }
    if (c.dim_lower && c.dim_upper && *c.dim_lower > *c.dim_upper)
        add("dimension bounds cross", "sandwich", std::to_string(*c.dim_lower) + " > " + std::to_string(*c.dim_upper),
            Verdict::Contradiction);
    if (c.rank_lower && c.rank_upper && *c.rank_lower > *c.rank_upper)
        add("rank bounds cross", "sandwich", std::to_string(*c.rank_lower) + " > " + std::to_string(*c.rank_upper), Verdict::Contradiction);
    return c;
}

std::vector<IdealBound> theta_ideal_bounds(const std::vector<DeltaRecord>& ledger, i64 p, int N) {
    (void)p;
    int max_eps = 0;
    for (const auto& d : ledger) max_eps = std::max(max_eps, d.epsilon());
    std::vector<IdealBound> out;
    IdealBound cur{0, N, {}};
    for (int i = 0; i <= max_eps; ++i) {
        cur.i = i;
        for (const auto& d : ledger) {
            if (d.epsilon() != i || d.N != N || !d.p_integral || !d.ord) continue;
            if (*d.ord < cur.bound) {
                cur.bound = *d.ord;
                cur.generator = d.primes;
            }
        }
        out.push_back(cur);
    }
    return out;
}

RelationReport relation_cokernel(const std::vector<std::vector<i64>>& a, i64 p, int N) {
    RelationReport r{smith_cokernel(a, p, N), {}};
    r.text = "Sel(E/Q, E[p^N])^dual = " + r.factors.describe() + " (cokernel of the relation matrix)";
    return r;
}

}  // namespace selsym
