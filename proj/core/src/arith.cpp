#include "selsym/arith.hpp"

#include <algorithm>
#include <cstdlib>

#include "selsym/errors.hpp"

namespace selsym {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadReduction: return "BadReduction";
        case ErrorKind::NotInPN: return "NotInPN";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::NormalizationMismatch: return "NormalizationMismatch";
        case ErrorKind::PrecisionLoss: return "PrecisionLoss";
        case ErrorKind::NonIntegral: return "NonIntegral";
        case ErrorKind::InconsistentRoot: return "InconsistentRoot";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::Config: return "Config";
        case ErrorKind::Io: return "Io";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

i64 gcd(i64 a, i64 b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 inv_mod(i64 a, i64 m) {
    auto e = ext_gcd(mod(a, m), m);
    if (e.g != 1) fail(ErrorKind::Internal, "inv_mod: not invertible");
    return mod(e.x, m);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
    std::vector<std::pair<i64, int>> out;
    n = std::llabs(n);
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> primes_up_to(i64 bound) {
    std::vector<i64> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
    for (i64 i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out{1};
    for (auto [p, e] : factor(n)) {
        size_t sz = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

i64 primitive_root(i64 ell) {
    if (ell == 2) return 1;
    auto fs = factor(ell - 1);
    for (i64 g = 2; g < ell; ++g) {
        bool ok = true;
        for (auto [q, e] : fs) {
            if (powmod(g, (ell - 1) / q, ell) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    fail(ErrorKind::Internal, "no primitive root");
}

int valuation(i64 n, i64 p) {
    if (n == 0) return 1 << 30;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const mpz_class& n, i64 p) {
    if (n == 0) return 1 << 30;
    mpz_class q = n;
    int v = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

int valuation(const mpq_class& q, i64 p) {
    if (q == 0) return 1 << 30;
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int kronecker(i64 a, i64 n) {
    mpz_class A(static_cast<long>(a)), N(static_cast<long>(n));
    return mpz_kronecker(A.get_mpz_t(), N.get_mpz_t());
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    i64 r = mod(d, 4);
    auto squarefree = [](i64 n) {
        for (auto [p, e] : factor(n))
            if (e > 1) return false;
        return true;
    };
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    i64 q = d / 4;
    i64 r4 = mod(q, 4);
    return (r4 == 2 || r4 == 3) && squarefree(q);
}

DlogTable::DlogTable(i64 ell) : ell_(ell), g_(primitive_root(ell)), log_(static_cast<size_t>(ell), -1) {
    i64 x = 1;
    for (i64 k = 0; k < ell - 1; ++k) {
        log_[static_cast<size_t>(x)] = static_cast<std::int32_t>(k);
        x = x * g_ % ell;
    }
}

i64 DlogTable::log(i64 a) const {
    i64 r = mod(a, ell_);
    if (r == 0) fail(ErrorKind::Internal, "dlog of non-unit");
    return log_[static_cast<size_t>(r)];
}

mpz_class crt(const std::vector<mpz_class>& residues, const std::vector<mpz_class>& moduli) {
    mpz_class x = 0, M = 1;
    for (size_t i = 0; i < residues.size(); ++i) {
        mpz_class inv;
        mpz_class Mi = M % moduli[i];
        mpz_invert(inv.get_mpz_t(), Mi.get_mpz_t(), moduli[i].get_mpz_t());
        mpz_class t = ((residues[i] - x) % moduli[i]) * inv % moduli[i];
        if (t < 0) t += moduli[i];
        x += M * t;
        M *= moduli[i];
    }
    return x;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

i64 reduce_rational(const mpq_class& q, i64 p, int k) {
    i64 pk = ipow(p, k);
    mpz_class M(static_cast<long>(pk));
    mpz_class den = q.get_den() % M;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
        fail(ErrorKind::NonIntegral, "rational not p-integral");
    mpz_class r = (q.get_num() % M) * inv % M;
    if (r < 0) r += M;
    return r.get_si();
}

i64 unit_root(i64 ap, i64 p, int k) {
    if (mod(ap, p) == 0) fail(ErrorKind::HypothesisFailed, "supersingular prime: no unit root");
    i64 pk = ipow(p, k);
    i64 x = mod(ap, p);
    for (int i = 0; i < k; ++i) {
        i64 f = mod(static_cast<i64>((static_cast<i128>(x) * x - static_cast<i128>(ap) * x + p) % pk), pk);
        if (f == 0) break;
        i64 df = mod(2 * x - ap, pk);
        x = mod(x - static_cast<i64>(static_cast<i128>(f) * inv_mod(df, pk) % pk), pk);
    }
    return x;
}

}  // namespace selsym
