#include "selsym/stickelberger.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "selsym/errors.hpp"

namespace selsym {

QuadraticField imaginary_quadratic(i64 d) {
    if (d <= 0) fail(ErrorKind::Config, "d must be positive");
    for (auto [q, e] : factor(d))
        if (e > 1) fail(ErrorKind::Config, "d must be squarefree");
    return {d, d % 4 == 3 ? -d : -4 * d};
}

Form reduce_form(Form f) {
    for (;;) {
        if (f.b <= -f.a || f.b > f.a) {
            i64 two_a = 2 * f.a;
            i64 b = mod(f.b, two_a);
            if (b > f.a) b -= two_a;
            i64 disc = f.b * f.b - 4 * f.a * f.c;
            f.b = b;
            f.c = (b * b - disc) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if ((f.a == f.c || f.b == -f.a) && f.b < 0) f.b = -f.b;
        if (f.b > -f.a && f.b <= f.a) return f;
    }
}

Form compose(const Form& f, const Form& g) {
    Form f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    i64 disc = f1.b * f1.b - 4 * f1.a * f1.c;
    i64 s = (f1.b + f2.b) / 2, n = f2.b - s;
    i64 y1 = 0, d = f1.a;
    if (f2.a % f1.a != 0) {
        auto e = ext_gcd(f2.a, f1.a);
        y1 = e.x;
        d = e.g;
    }
    i64 x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        auto e = ext_gcd(s, d);
        x2 = e.x;
        y2 = -e.y;
        d1 = e.g;
    }
    i64 v1 = f1.a / d1, v2 = f2.a / d1;
    i128 r = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.c) % v1;
    if (r < 0) r += v1;
    i128 b3 = f2.b + 2 * static_cast<i128>(v2) * r;
    i128 a3 = static_cast<i128>(v1) * v2;
    i128 c3 = (b3 * b3 - disc) / (4 * a3);
    while (a3 > c3 || b3 <= -a3 || b3 > a3) {
        if (b3 <= -a3 || b3 > a3) {
            i128 two_a = 2 * a3;
            i128 b = b3 % two_a;
            if (b < 0) b += two_a;
            if (b > a3) b -= two_a;
            b3 = b;
            c3 = (b3 * b3 - disc) / (4 * a3);
        }
        if (a3 > c3) {
            std::swap(a3, c3);
            b3 = -b3;
        }
    }
    return reduce_form({static_cast<i64>(a3), static_cast<i64>(b3), static_cast<i64>(c3)});
}

Form identity_form(i64 disc) {
    i64 b = mod(disc, 2);
    return {1, b, (b * b - disc) / 4};
}

Form inverse_form(const Form& f) { return reduce_form({f.a, -f.b, f.c}); }

std::vector<Form> reduced_forms(i64 disc) {
    if (disc >= 0 || mod(disc, 4) > 1) fail(ErrorKind::Config, "not a negative discriminant");
    std::vector<Form> out;
    for (i64 a = 1; 3 * a * a <= -disc; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b - disc, 2) != 0) continue;
            i64 num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a || (a == c && b < 0)) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    return out;
}

i64 ClassGroupInvariants::class_number() const {
    i64 h = 1;
    for (i64 f : factors) h *= f;
    return h;
}

int ClassGroupInvariants::p_rank(i64 p) const {
    return static_cast<int>(std::count_if(factors.begin(), factors.end(), [p](i64 f) { return f % p == 0; }));
}

std::string ClassGroupInvariants::describe() const {
    if (factors.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(factors[i]);
    return s;
}

ClassGroupInvariants class_group(i64 disc, i64 cap) {
    if (-disc > cap) fail(ErrorKind::Config, "discriminant above the class group cap");
    auto forms = reduced_forms(disc);
    Form e = identity_form(disc);
    i64 h = static_cast<i64>(forms.size());
    std::vector<i64> orders;
    for (const auto& f : forms) {
        i64 k = 1;
        for (Form x = f; !(x == e); x = compose(x, f)) ++k;
        orders.push_back(k);
    }
    // exponents[q] = cyclic factor exponents of the q-part, descending
    std::vector<std::vector<std::pair<i64, int>>> columns;
    for (auto [q, v] : factor(h)) {
        std::vector<int> ge;  // ge[k-1] = number of factors with exponent >= k
        i64 prev = 1;
        for (int k = 1; k <= v; ++k) {
            i64 qk = ipow(q, k);
            i64 cnt = std::count_if(orders.begin(), orders.end(), [qk](i64 o) { return qk % o == 0; });
            int r = 0;
            for (i64 t = cnt / prev; t > 1; t /= q) ++r;
            ge.push_back(r);
            prev = cnt;
        }
        std::vector<std::pair<i64, int>> col;
        int nfac = ge.empty() ? 0 : ge[0];
        for (int i = 0; i < nfac; ++i) {
            int ex = 0;
            while (ex < static_cast<int>(ge.size()) && ge[static_cast<std::size_t>(ex)] > i) ++ex;
            col.push_back({q, ex});
        }
        columns.push_back(col);
    }
    std::size_t width = 0;
    for (const auto& c : columns) width = std::max(width, c.size());
    ClassGroupInvariants g{disc, {}};
    for (std::size_t i = 0; i < width; ++i) {
        i64 f = 1;
        for (const auto& c : columns)
            if (i < c.size()) f *= ipow(c[i].first, c[i].second);
        g.factors.push_back(f);
    }
    std::reverse(g.factors.begin(), g.factors.end());
    if (g.class_number() != h) fail(ErrorKind::Internal, "class group invariants do not multiply to h");
    return g;
}

std::vector<i64> log_table(i64 ell) {
    std::vector<i64> t(static_cast<std::size_t>(ell), -1);
    i64 g = primitive_root(ell), x = 1;
    for (i64 k = 0; k < ell - 1; ++k) {
        t[static_cast<std::size_t>(x)] = k;
        x = x * g % ell;
    }
    return t;
}

namespace {

void check_primes(const QuadraticField& k, const std::vector<i64>& primes, i64 p, int N) {
    i64 pN = ipow(p, N);
    std::set<i64> seen;
    for (i64 l : primes) {
        if (!is_prime(static_cast<u64>(l)) || !seen.insert(l).second) fail(ErrorKind::Config, std::to_string(l) + " is not a new prime");
        if (k.chi(l) != 1) fail(ErrorKind::HypothesisFailed, std::to_string(l) + " does not split in " + k.name());
        if ((l - 1) % pN != 0) fail(ErrorKind::NotInPN, std::to_string(l) + " is not 1 mod p^N");
    }
}

i64 product(const std::vector<i64>& v) {
    i64 m = 1;
    for (i64 x : v) m *= x;
    return m;
}

}  // namespace

StickelbergerRecord stickelberger_delta(const QuadraticField& k, const std::vector<i64>& primes, i64 p, int N) {
    std::vector<std::vector<i64>> logs;
    for (i64 l : primes) logs.push_back(log_table(l));
    return stickelberger_delta(k, primes, p, N, logs);
}

StickelbergerRecord stickelberger_delta(const QuadraticField& k, const std::vector<i64>& primes, i64 p, int N,
                                        const std::vector<std::vector<i64>>& logs) {
    check_primes(k, primes, p, N);
    i64 f = k.conductor(), m = product(primes), mf = m * f;
    mpz_class sum = 0;
    for (i64 a = 1; a <= mf; ++a) {
        int c = k.chi(a);
        if (c == 0 || gcd(a, m) != 1) continue;
        mpz_class t = c * a;
        for (std::size_t i = 0; i < primes.size(); ++i) t *= static_cast<long>(logs[i][static_cast<std::size_t>(a % primes[i])]);
        sum += t;
    }
    StickelbergerRecord r;
    r.disc = k.disc;
    r.primes = primes;
    r.p = p;
    r.N = N;
    r.value = mpq_class(-sum, mpz_class(static_cast<long>(mf)));
    r.value.canonicalize();
    if (mpz_divisible_ui_p(r.value.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0) r.residue = reduce_rational(r.value, p, N);
    return r;
}

mpq_class stickelberger_delta_folded(const QuadraticField& k, const std::vector<i64>& primes) {
    i64 f = k.conductor(), m = product(primes);
    i64 minv = inv_mod(mod(m, f), f);
    std::vector<i64> F(static_cast<std::size_t>(f), 0);
    for (i64 v = 0; v < f; ++v)
        for (i64 u = 0; u < f; ++u)
            if (int c = k.chi(u)) F[static_cast<std::size_t>(v)] += c * mod((u - v) % f * minv, f);
    std::vector<std::vector<i64>> logs;
    for (i64 l : primes) logs.push_back(log_table(l));
    mpz_class sum = 0;
    for (i64 r = 1; r <= m; ++r) {
        if (gcd(r, m) != 1) continue;
        mpz_class t = static_cast<long>(F[static_cast<std::size_t>(r % f)]);
        for (std::size_t i = 0; i < primes.size(); ++i) t *= static_cast<long>(logs[i][static_cast<std::size_t>(r % primes[i])]);
        sum += t;
    }
    mpq_class q(-sum, mpz_class(static_cast<long>(f)));
    q.canonicalize();
    return q;
}

std::string AnalogueReport::text() const {
    std::ostringstream os;
    os << field.name() << ", p = " << p << ": Cl_K = " << class_group.describe() << ", dim Cl_K/p = " << dim << "\n";
    for (const auto& r : minimal) {
        std::string m;
        for (std::size_t i = 0; i < r.primes.size(); ++i) m += (i ? "*" : "") + std::to_string(r.primes[i]);
        if (m.empty()) m = "1";
        os << "minimal m = " << m << ", delta = " << r.value.get_str() << ", epsilon = " << r.epsilon()
           << (r.epsilon() == dim ? " (match)" : " (counterexample)") << "\n";
    }
    os << (counterexample ? "analogue fails" : "analogue holds on the scan") << "\n";
    return os.str();
}

AnalogueReport analogue_check(const QuadraticField& k, i64 p, int N, const AnalogueOptions& opts) {
    AnalogueReport rep;
    rep.field = k;
    rep.p = p;
    rep.N = N;
    rep.class_group = class_group(k.disc);
    rep.dim = rep.class_group.p_rank(p);
    i64 pN = ipow(p, N);
    for (i64 l : primes_up_to(opts.prime_bound))
        if (l != p && (l - 1) % pN == 0 && k.chi(l) == 1) rep.scanned_primes.push_back(l);
    // all_zero holds m when delta vanishes mod p^N at every divisor of m
    std::set<std::vector<i64>> all_zero;
    std::vector<i64> cur;
    const auto& P = rep.scanned_primes;
    for (int eps = 0; eps <= opts.eps_bound; ++eps) {
        std::vector<std::vector<i64>> layer;
        std::function<void(std::size_t, i64)> rec = [&](std::size_t start, i64 prod) {
            if (static_cast<int>(cur.size()) == eps) {
                layer.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < P.size() && prod * P[i] <= opts.product_bound; ++i) {
                cur.push_back(P[i]);
                rec(i + 1, prod * P[i]);
                cur.pop_back();
            }
        };
        rec(0, 1);
        for (const auto& m : layer) {
            bool below = true;
            for (std::size_t drop = 0; drop < m.size() && below; ++drop) {
                auto sub = m;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                below = all_zero.count(sub) > 0;
            }
            if (!below) continue;
            auto r = stickelberger_delta(k, m, p, N);
            if (r.nonzero()) {
                if (r.epsilon() != rep.dim) rep.counterexample = true;
                rep.minimal.push_back(std::move(r));
            } else if (r.residue) {
                all_zero.insert(m);
            }
        }
    }
    return rep;
}

}  // namespace selsym
