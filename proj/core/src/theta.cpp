#include "selsym/theta.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <thread>

#include "selsym/errors.hpp"

namespace selsym {

PAdicRing::PAdicRing(i64 p_, int k_) : p(p_), k(k_), q(ipow(p_, k_)) {
    if (k_ < 1) fail(ErrorKind::Config, "precision must be positive");
}

i64 PAdicRing::inv(i64 a) const {
    a = norm(a);
    if (a % p == 0) fail(ErrorKind::PrecisionLoss, "division by a non-unit mod p^" + std::to_string(k));
    return inv_mod(a, q);
}

std::optional<int> PAdicRing::ord(i64 a) const {
    a = norm(a);
    if (a == 0) return std::nullopt;
    return valuation(a, p);
}

PQuotient::PQuotient(i64 p, std::vector<i64> primes, int layer, int cap)
    : p_(p), primes_(std::move(primes)), layer_(layer) {
    for (i64 l : primes_) {
        if (!is_prime(static_cast<u64>(l)) || l == p_) fail(ErrorKind::Config, "bad prime " + std::to_string(l));
        conductor_ *= l;
        logs_.emplace_back(l);
        orders_.push_back(ipow(p_, std::min(valuation(l - 1, p_), cap)));
    }
    if (layer_ > 0) {
        pn1_ = ipow(p_, layer_ + 1);
        conductor_ *= pn1_;
        i64 pn = pn1_ / p_;
        orders_.push_back(pn);
        gamma_log_.assign(static_cast<std::size_t>(pn1_), -1);
        i64 g = 1;
        for (i64 t = 0; t < pn; ++t) {
            gamma_log_[static_cast<std::size_t>(g)] = t;
            g = g * (1 + p_) % pn1_;
        }
    }
    for (i64 o : orders_) size_ *= static_cast<std::size_t>(o);
}

std::vector<i64> PQuotient::exponents(i64 a) const {
    std::vector<i64> e;
    e.reserve(orders_.size());
    for (std::size_t j = 0; j < primes_.size(); ++j) e.push_back(logs_[j].log(mod(a, primes_[j])) % orders_[j]);
    if (layer_ > 0) {
        i64 u = mod(a, pn1_);
        if (u % p_ == 0) fail(ErrorKind::Config, "element not prime to p");
        i64 omega = static_cast<i64>(powmod(static_cast<u64>(u), static_cast<u64>(pn1_ / p_), static_cast<u64>(pn1_)));
        i64 one = u * inv_mod(omega, pn1_) % pn1_;
        e.push_back(gamma_log_[static_cast<std::size_t>(one)]);
    }
    return e;
}

std::size_t PQuotient::index(i64 a) const {
    auto e = exponents(a);
    std::size_t idx = 0, stride = 1;
    for (std::size_t j = 0; j < e.size(); ++j) {
        idx += static_cast<std::size_t>(e[j]) * stride;
        stride *= static_cast<std::size_t>(orders_[j]);
    }
    return idx;
}

std::vector<i64> PQuotient::unflatten(std::size_t idx) const {
    std::vector<i64> e;
    for (i64 o : orders_) {
        e.push_back(static_cast<i64>(idx % static_cast<std::size_t>(o)));
        idx /= static_cast<std::size_t>(o);
    }
    return e;
}

UnitGroupRing::UnitGroupRing(i64 modulus, PAdicRing ring)
    : m_(modulus), r_(ring), c_(static_cast<std::size_t>(modulus), 0) {}

UnitGroupRing UnitGroupRing::sigma(i64 modulus, PAdicRing ring, i64 a) {
    UnitGroupRing x(modulus, ring);
    x.at(a) = 1;
    return x;
}

UnitGroupRing UnitGroupRing::operator+(const UnitGroupRing& o) const {
    if (o.m_ != m_) fail(ErrorKind::Internal, "group ring modulus mismatch");
    UnitGroupRing x = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) x.c_[i] = r_.add(c_[i], o.c_[i]);
    return x;
}

UnitGroupRing UnitGroupRing::operator-(const UnitGroupRing& o) const { return *this + o.scaled(-1); }

UnitGroupRing UnitGroupRing::operator*(const UnitGroupRing& o) const {
    if (o.m_ != m_) fail(ErrorKind::Internal, "group ring modulus mismatch");
    UnitGroupRing x(m_, r_);
    for (i64 a = 0; a < m_; ++a) {
        i64 ca = c_[static_cast<std::size_t>(a)];
        if (ca == 0) continue;
        for (i64 b = 0; b < m_; ++b) {
            i64 cb = o.c_[static_cast<std::size_t>(b)];
            if (cb == 0) continue;
            i64& t = x.c_[static_cast<std::size_t>(static_cast<i64>(static_cast<i128>(a) * b % m_))];
            t = r_.add(t, r_.mul(ca, cb));
        }
    }
    return x;
}

UnitGroupRing UnitGroupRing::scaled(i64 s) const {
    UnitGroupRing x = *this;
    for (auto& v : x.c_) v = r_.mul(v, s);
    return x;
}

UnitGroupRing UnitGroupRing::times_sigma(i64 b) const {
    UnitGroupRing x(m_, r_);
    for (i64 a = 0; a < m_; ++a) x.at(static_cast<i64>(static_cast<i128>(a) * mod(b, m_) % m_)) = c_[static_cast<std::size_t>(a)];
    return x;
}

UnitGroupRing UnitGroupRing::restrict_to(i64 divisor) const {
    if (m_ % divisor != 0) fail(ErrorKind::Internal, "restriction to a non-divisor");
    UnitGroupRing x(divisor, r_);
    for (i64 a = 0; a < m_; ++a) {
        if (gcd(a, m_) != 1) continue;
        i64& t = x.at(a % divisor);
        t = r_.add(t, c_[static_cast<std::size_t>(a)]);
    }
    return x;
}

UnitGroupRing UnitGroupRing::norm_to(i64 multiple) const {
    if (multiple % m_ != 0) fail(ErrorKind::Internal, "norm to a non-multiple");
    UnitGroupRing x(multiple, r_);
    for (i64 a = 0; a < multiple; ++a)
        if (gcd(a, multiple) == 1) x.at(a) = c_[static_cast<std::size_t>(a % m_)];
    return x;
}

i64 QuotientElement::s_coefficient(const std::vector<int>& multi_index) const {
    const auto& orders = group->orders();
    if (multi_index.size() != orders.size()) fail(ErrorKind::Config, "multi-index length mismatch");
    std::vector<std::vector<i64>> binom(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) {
        binom[j].resize(static_cast<std::size_t>(orders[j]));
        for (i64 e = 0; e < orders[j]; ++e) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(multi_index[j]));
            binom[j][static_cast<std::size_t>(e)] = mpz_class(b % static_cast<long>(ring.q)).get_si();
        }
    }
    i64 acc = 0;
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
        if (c[idx] == 0) continue;
        auto e = group->unflatten(idx);
        i64 t = c[idx];
        for (std::size_t j = 0; j < e.size(); ++j) t = ring.mul(t, binom[j][static_cast<std::size_t>(e[j])]);
        acc = ring.add(acc, t);
    }
    return acc;
}

QuotientElement project(const UnitGroupRing& x, const PQuotient& g) {
    if (x.modulus() % g.conductor() != 0) fail(ErrorKind::Config, "projection needs the conductor to divide the modulus");
    QuotientElement out{&g, x.ring(), std::vector<i64>(g.size(), 0)};
    for (i64 a = 0; a < x.modulus(); ++a) {
        if (gcd(a, x.modulus()) != 1 || x[a] == 0) continue;
        i64& t = out.c[g.index(a)];
        t = out.ring.add(t, x[a]);
    }
    return out;
}

std::vector<mpq_class> theta_tilde_exact(const SymbolSource& s, i64 modulus) {
    std::vector<mpq_class> out(static_cast<std::size_t>(modulus));
    for (i64 a = 0; a < modulus; ++a)
        if (gcd(a, modulus) == 1) out[static_cast<std::size_t>(a)] = s.at(a, modulus);
    return out;
}

UnitGroupRing theta_tilde(const SymbolSource& s, i64 modulus, const PAdicRing& ring) {
    UnitGroupRing x(modulus, ring);
    i64 den_inv = ring.inv(s.denom());
    for (i64 a = 0; a < modulus; ++a)
        if (gcd(a, modulus) == 1) x.at(a) = ring.mul(ring.norm(s.numer_at(a, modulus)), den_inv);
    return x;
}

namespace {
i64 unit_inverse(i64 l, i64 modulus) { return modulus == 1 ? 0 : inv_mod(mod(l, modulus), modulus); }
}  // namespace

StabilizedAlpha stabilize(i64 p, i64 ap, int precision) {
    if (mod(ap, p) == 0) fail(ErrorKind::HypothesisFailed, "p is supersingular");
    return {p, ap, precision, unit_root(ap, p, precision)};
}

UnitGroupRing vartheta(const SymbolSource& s, i64 m, int k, const StabilizedAlpha& alpha) {
    PAdicRing r(alpha.p, alpha.precision);
    i64 u = r.inv(alpha.alpha);
    if (m % alpha.p == 0) fail(ErrorKind::Config, "m must be prime to p");
    if (k == 0) {
        UnitGroupRing th = theta_tilde(s, m, r);
        UnitGroupRing f = UnitGroupRing::sigma(m, r, 1).scaled(r.add(1, r.mul(u, u)));
        f = f - UnitGroupRing::sigma(m, r, alpha.p).scaled(u);
        f = f - UnitGroupRing::sigma(m, r, unit_inverse(alpha.p, m)).scaled(u);
        return f * th;
    }
    i64 big = m * ipow(alpha.p, k), small = big / alpha.p;
    i64 uk = 1;
    for (int i = 0; i < k; ++i) uk = r.mul(uk, u);
    i64 den_inv = r.inv(s.denom());
    UnitGroupRing x(big, r);
    for (i64 a = 0; a < big; ++a) {
        if (gcd(a, big) != 1) continue;
        i64 hi = r.mul(r.norm(s.numer_at(a, big)), den_inv);
        i64 lo = r.mul(r.norm(s.numer_at(a % small, small)), den_inv);
        x.at(a) = r.mul(uk, r.sub(hi, r.mul(u, lo)));
    }
    return x;
}

UnitGroupRing xi(const SymbolSource& s, i64 m, const std::vector<i64>& extra_primes, int k, const StabilizedAlpha& alpha,
                 const std::function<i64(i64)>& a_ell) {
    PAdicRing r(alpha.p, alpha.precision);
    i64 big = m * ipow(alpha.p, k);
    UnitGroupRing out(big, r);
    auto fm = factor(m);
    for (i64 d : divisors(m)) {
        i64 level = d * ipow(alpha.p, k);
        UnitGroupRing term = vartheta(s, d, k, alpha);
        for (auto [l, e] : fm) {
            (void)e;
            if (d % l == 0) continue;
            term = term.times_sigma(unit_inverse(l, level)).scaled(-1);
        }
        out = out + term.norm_to(big);
    }
    for (i64 l : extra_primes) {
        // -sigma_l^-1 P'_l(sigma_l) = a_l - sigma_l - l sigma_l^-1
        UnitGroupRing f = UnitGroupRing::sigma(big, r, 1).scaled(a_ell(l));
        f = f - UnitGroupRing::sigma(big, r, l);
        f = f - UnitGroupRing::sigma(big, r, unit_inverse(l, big)).scaled(l);
        out = f * out;
    }
    return out;
}

i64 DeltaRecord::m() const {
    i64 m = 1;
    for (i64 l : primes) m *= l;
    return m;
}

namespace {

unsigned thread_count(unsigned requested, i64 work) {
    unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (work < 20000) t = 1;
    return t;
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 uv = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    mpz_class f;
    mpz_import(f.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, &uv);
    return neg ? mpz_class(-f) : f;
}

// Sum over units a mod m of numer_at(a, m) * weight(a), chunked over threads with a fixed merge order.
template <class Weight>
mpz_class weighted_sum(const SymbolSource& s, i64 m, unsigned threads, Weight weight) {
    unsigned t = thread_count(threads, m);
    std::vector<mpz_class> parts(t);
    constexpr i128 kFlush = static_cast<i128>(1) << 100;
    auto run = [&](unsigned w) {
        i64 lo = m * w / t, hi = m * (w + 1) / t;
        mpz_class acc = 0;
        i128 fast = 0;
        for (i64 a = lo; a < hi; ++a) {
            if (gcd(a, m) != 1) continue;
            i64 x = s.numer_at(a, m);
            if (x == 0) continue;
            weight(a, x, fast, acc);
            if (fast > kFlush || fast < -kFlush) {
                acc += to_mpz(fast);
                fast = 0;
            }
        }
        parts[w] = acc + to_mpz(fast);
    };
    if (t == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < t; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    mpz_class total = 0;
    for (auto& p : parts) total += p;
    return total;
}

void fill_residue(DeltaRecord& r) {
    mpz_class den = r.value.get_den();
    r.p_integral = valuation(den, r.p) == 0;
    if (!r.p_integral) return;
    PAdicRing ring(r.p, r.N);
    r.residue = ring.from(r.value);
    r.ord = ring.ord(r.residue);
}

}  // namespace

DeltaRecord delta_direct(const SymbolSource& s, const std::vector<i64>& primes, i64 p, int N, unsigned threads) {
    auto t0 = std::chrono::steady_clock::now();
    DeltaRecord r;
    r.p = p;
    r.N = N;
    r.primes = primes;
    i64 m = r.m();
    std::vector<DlogTable> logs;
    for (i64 l : primes) logs.emplace_back(l);
    mpz_class total = weighted_sum(s, m, threads, [&](i64 a, i64 x, i128& fast, mpz_class&) {
        i128 w = x;
        for (auto& t : logs) w *= t.log(a % t.prime());
        fast += w;
    });
    r.value = mpq_class(total, mpz_class(static_cast<long>(s.denom())));
    r.value.canonicalize();
    fill_residue(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

i64 delta_from_theta(const SymbolSource& s, const std::vector<i64>& primes, i64 p, int N) {
    PAdicRing ring(p, N);
    PQuotient g(p, primes);
    for (i64 o : g.orders())
        if (o < ring.q) fail(ErrorKind::Config, "primes must be 1 mod p^N");
    auto q = project(theta_tilde(s, g.conductor(), ring), g);
    return q.s_coefficient(std::vector<int>(primes.size(), 1));
}

i64 delta_from_vartheta(const SymbolSource& s, const std::vector<i64>& primes, const StabilizedAlpha& alpha, int N) {
    PQuotient g(alpha.p, primes);
    i64 m = g.conductor();
    auto q = project(vartheta(s, m, 0, alpha), g);
    i64 c = q.s_coefficient(std::vector<int>(primes.size(), 1));
    if (primes.size() % 2 == 1) c = q.ring.sub(0, c);
    return PAdicRing(alpha.p, N).norm(c);
}

int c_s(i64 p, int n0, int s) {
    if (n0 < 1 || s < 1) fail(ErrorKind::Config, "c_s needs n0 >= 1 and s >= 1");
    mpz_class pn = 1;
    for (int i = 0; i < n0; ++i) pn *= static_cast<long>(p);
    int best = 1 << 30;
    for (int j = 1; j <= s + 1; ++j) {
        mpz_class b;
        mpz_bin_ui(b.get_mpz_t(), pn.get_mpz_t(), static_cast<unsigned long>(j));
        if (b == 0) continue;
        best = std::min(best, valuation(b, p));
    }
    return best;
}

mpq_class fitting_coefficient(const SymbolSource& s, const std::vector<i64>& primes, const std::vector<int>& multi_index,
                              unsigned threads) {
    if (multi_index.size() != primes.size()) fail(ErrorKind::Config, "multi-index length mismatch");
    i64 m = 1;
    for (i64 l : primes) m *= l;
    std::vector<DlogTable> logs;
    std::vector<std::vector<mpz_class>> binom;
    for (std::size_t j = 0; j < primes.size(); ++j) {
        logs.emplace_back(primes[j]);
        binom.emplace_back(static_cast<std::size_t>(primes[j] - 1));
        for (i64 e = 0; e + 1 < primes[j]; ++e)
            mpz_bin_uiui(binom[j][static_cast<std::size_t>(e)].get_mpz_t(), static_cast<unsigned long>(e),
                         static_cast<unsigned long>(multi_index[j]));
    }
    mpz_class total = weighted_sum(s, m, threads, [&](i64 a, i64 x, i128&, mpz_class& acc) {
        mpz_class w = static_cast<long>(x);
        for (std::size_t j = 0; j < logs.size(); ++j) w *= binom[j][static_cast<std::size_t>(logs[j].log(a % primes[j]))];
        acc += w;
    });
    mpq_class v(total, mpz_class(static_cast<long>(s.denom())));
    v.canonicalize();
    return v;
}

int FittingRecord::index_sum() const { return std::accumulate(multi_index.begin(), multi_index.end(), 0); }

FittingRecord fitting_record(const SymbolSource& s, i64 p, const std::vector<i64>& primes, const std::vector<int>& multi_index) {
    FittingRecord r{primes, multi_index, fitting_coefficient(s, primes, multi_index), 0, std::nullopt};
    int smax = std::max(1, *std::max_element(multi_index.begin(), multi_index.end()));
    int c = 1 << 30;
    for (i64 l : primes) {
        int n0 = valuation(l - 1, p);
        if (n0 < 1) fail(ErrorKind::Config, "prime not 1 mod p");
        c = std::min(c, c_s(p, n0, smax));
    }
    r.c = c;
    if (c > 0 && valuation(mpz_class(r.value.get_den()), p) == 0) r.residue = reduce_rational(r.value, p, c);
    return r;
}

std::string InvariantFactors::describe() const {
    if (exponents.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (i) out += " + ";
        out += "Z/" + std::to_string(p);
        if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
    }
    return out;
}

i64 InvariantFactors::order_log() const { return std::accumulate(exponents.begin(), exponents.end(), i64{0}); }

InvariantFactors smith_cokernel(std::vector<std::vector<i64>> a, i64 p, int N) {
    PAdicRing r(p, N);
    std::size_t n = a.size();
    for (auto& row : a) {
        if (row.size() != n) fail(ErrorKind::Config, "matrix must be square");
        for (auto& v : row) v = r.norm(v);
    }
    InvariantFactors out{p, N, {}};
    for (std::size_t k = 0; k < n; ++k) {
        int best = N;
        std::size_t bi = k, bj = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                auto o = r.ord(a[i][j]);
                if (o && *o < best) {
                    best = *o;
                    bi = i;
                    bj = j;
                }
            }
        if (best == N) {
            for (std::size_t t = k; t < n; ++t) out.exponents.push_back(N);
            break;
        }
        std::swap(a[k], a[bi]);
        for (auto& row : a) std::swap(row[k], row[bj]);
        i64 pv = ipow(p, best);
        i64 unit_inv = r.inv(a[k][k] / pv);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            i64 f = r.mul(a[i][k] / pv, unit_inv);
            for (std::size_t j = k; j < n; ++j) a[i][j] = r.sub(a[i][j], r.mul(f, a[k][j]));
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (a[k][j] == 0) continue;
            i64 f = r.mul(a[k][j] / pv, unit_inv);
            for (std::size_t i = k; i < n; ++i) a[i][j] = r.sub(a[i][j], r.mul(f, a[i][k]));
        }
        if (best > 0) out.exponents.push_back(best);
    }
    std::sort(out.exponents.begin(), out.exponents.end());
    return out;
}

LambdaEstimate lambda_mu_estimate(const SymbolSource& s, const StabilizedAlpha& alpha, int max_layer) {
    LambdaEstimate est;
    for (int n = 1; n <= max_layer; ++n) {
        PQuotient g(alpha.p, {}, n);
        auto q = project(vartheta(s, 1, n + 1, alpha), g);
        q.ring = PAdicRing(alpha.p, 1);
        for (auto& v : q.c) v = q.ring.norm(v);
        std::optional<int> first;
        for (i64 i = 0; i < g.orders()[0] && !first; ++i)
            if (q.s_coefficient({static_cast<int>(i)}) != 0) first = static_cast<int>(i);
        est.per_layer.push_back(first);
        if (first) est.mu_zero_witness = true;
    }
    std::size_t L = est.per_layer.size();
    est.lambda = est.per_layer.back();
    if (L >= 2 && est.per_layer[L - 1] && est.per_layer[L - 1] == est.per_layer[L - 2]) est.stabilized = true;
    return est;
}

}  // namespace selsym
