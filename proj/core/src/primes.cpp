#include "selsym/primes.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "selsym/errors.hpp"

namespace selsym {

std::string to_string(PrimeClass c) {
    switch (c) {
        case PrimeClass::NotGood: return "not_good";
        case PrimeClass::Not1ModPN: return "not_1_mod_pN";
        case PrimeClass::PNOnly: return "P_N_only";
        case PrimeClass::P0Prime: return "P0_prime";
        case PrimeClass::P1: return "P1";
        case PrimeClass::P0Other: return "P0_other";
    }
    return "?";
}

PrimeClassRecord classify_prime(const Curve& e, i64 p, int N, i64 ell) {
    PrimeClassRecord r;
    r.ell = ell;
    if (ell == p || !good_reduction(e, ell)) return r;
    r.n_ell = valuation(ell - 1, p);
    if (r.n_ell < N) {
        r.cls = PrimeClass::Not1ModPN;
        return r;
    }
    ReducedCurve red(e, ell);
    r.group = red.structure();
    r.count = r.group.order();
    // E(F_ell)[p^N] = Z/p^a x Z/p^b with a = min(v(n1), N), b = min(v(n2), N)
    int a = std::min(valuation(r.group.n1, p), N), b = std::min(valuation(r.group.n2, p), N);
    if (b < N)
        r.cls = PrimeClass::PNOnly;
    else if (a == 0)
        r.cls = PrimeClass::P1;
    else if (a == N)
        r.cls = PrimeClass::P0Prime;
    else
        r.cls = PrimeClass::P0Other;
    return r;
}

std::vector<PrimeClassRecord> classify_range(const Curve& e, i64 p, int N, i64 bound) {
    std::vector<PrimeClassRecord> out;
    for (i64 l : primes_up_to(bound)) out.push_back(classify_prime(e, p, N, l));
    return out;
}

std::vector<i64> enumerate_p1(const Curve& e, i64 p, int N, i64 bound) {
    std::vector<i64> out;
    i64 step = ipow(p, N);
    for (i64 l : primes_up_to(bound))
        if ((l - 1) % step == 0 && classify_prime(e, p, N, l).cls == PrimeClass::P1) out.push_back(l);
    return out;
}

bool ResidueCertificate::holds() const {
    return (modulo - 1) % power == 0 &&
           powmod(static_cast<u64>(mod(residue, modulo)), static_cast<u64>((modulo - 1) / power), static_cast<u64>(modulo)) == 1;
}

std::optional<AdmissibleProduct> is_admissible(i64 p, std::vector<i64> primes) {
    std::sort(primes.begin(), primes.end());
    do {
        AdmissibleProduct w{primes, {}};
        bool ok = true;
        for (std::size_t i = 1; i < primes.size() && ok; ++i)
            for (std::size_t j = 0; j < i && ok; ++j) {
                ResidueCertificate c{primes[i], primes[j], ipow(p, valuation(primes[j] - 1, p)), mod(primes[i], primes[j])};
                ok = c.holds();
                w.certificates.push_back(c);
            }
        if (ok) return w;
    } while (std::next_permutation(primes.begin(), primes.end()));
    return std::nullopt;
}

int n_lambda(i64 p, int lambda) {
    int n = 0;
    while (ipow(p, n) - 1 < lambda) ++n;
    return n;
}

bool p1_layer_test(const Curve& e, i64 p, int N, int n, int lambda, i64 ell) {
    int dn = n_lambda(p, lambda) + N * n;
    if (valuation(ell - 1, p) < dn) return false;
    return classify_prime(e, p, N, ell).cls == PrimeClass::P1;
}

bool MinimalityCertificate::minimal() const {
    if (!delta.nonzero()) return false;
    for (const auto& d : divisors)
        if (d.nonzero()) return false;
    return true;
}

const DeltaRecord& DeltaLedger::get(std::vector<i64> primes) {
    std::sort(primes.begin(), primes.end());
    auto it = memo_.find(primes);
    if (it != memo_.end()) return it->second;
    DeltaRecord r = delta_direct(s_, primes, p_, N_);
    r.curve = curve_;
    return memo_.emplace(primes, std::move(r)).first->second;
}

MinimalityCertificate DeltaLedger::certify_minimal(const std::vector<i64>& primes) {
    MinimalityCertificate c;
    c.delta = get(primes);
    std::size_t r = primes.size();
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << r); ++mask) {
        std::vector<i64> sub;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) sub.push_back(primes[i]);
        c.divisors.push_back(get(sub));
    }
    if (r >= 1) c.admissible = is_admissible(p_, primes);
    return c;
}

std::vector<DeltaRecord> DeltaLedger::records() const {
    std::vector<DeltaRecord> out;
    for (const auto& [k, v] : memo_) out.push_back(v);
    return out;
}

SearchResult delta_minimal_search(const Curve& e, const SymbolSource& s, i64 p, int N, const SearchOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    SearchResult res;
    DeltaLedger ledger(s, e.label, p, N);
    auto p1 = enumerate_p1(e, p, N, opts.prime_bound);
    auto over_budget = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > opts.budget_seconds;
    };
    bool done = false;
    for (int eps = 0; eps <= opts.eps_bound && !done; ++eps) {
        if (opts.root_number && *opts.root_number != (eps % 2 ? -1 : 1)) continue;
        std::vector<std::vector<i64>> cands;
        std::vector<i64> cur;
        std::function<void(std::size_t, i64)> rec = [&](std::size_t start, i64 prod) {
            if (static_cast<int>(cur.size()) == eps) {
                cands.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < p1.size(); ++i) {
                if (prod * p1[i] > opts.product_bound) break;
                cur.push_back(p1[i]);
                rec(i + 1, prod * p1[i]);
                cur.pop_back();
            }
        };
        rec(0, 1);
        auto prod = [](const std::vector<i64>& v) {
            i64 m = 1;
            for (i64 x : v) m *= x;
            return m;
        };
        std::sort(cands.begin(), cands.end(), [&](const auto& x, const auto& y) { return prod(x) < prod(y); });
        for (const auto& c : cands) {
            if (over_budget()) {
                res.budget_exceeded = true;
                done = true;
                break;
            }
            if (opts.admissible_only && c.size() >= 2 && !is_admissible(p, c)) continue;
            if (!ledger.get(c).nonzero()) continue;
            auto cert = ledger.certify_minimal(c);
            if (cert.minimal()) {
                res.minimal.push_back(std::move(cert));
                if (opts.stop_at_first) {
                    done = true;
                    break;
                }
            }
        }
    }
    res.ledger = ledger.records();
    return res;
}

}  // namespace selsym
