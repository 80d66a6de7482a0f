#include "selsym/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "selsym/errors.hpp"

namespace selsym {

mpz_class Curve::b2() const { return a[0] * a[0] + 4 * a[1]; }
mpz_class Curve::b4() const { return 2 * a[3] + a[0] * a[2]; }
mpz_class Curve::b6() const { return a[2] * a[2] + 4 * a[4]; }
mpz_class Curve::b8() const {
    return a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] + a[1] * a[2] * a[2] - a[3] * a[3];
}
mpz_class Curve::c4() const { return b2() * b2() - 24 * b4(); }
mpz_class Curve::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
mpz_class Curve::discriminant() const {
    mpz_class B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

Curve make_curve(long a1, long a2, long a3, long a4, long a6, std::string label, std::optional<i64> conductor) {
    Curve e;
    e.a = {mpz_class(a1), mpz_class(a2), mpz_class(a3), mpz_class(a4), mpz_class(a6)};
    e.label = std::move(label);
    e.conductor = conductor;
    if (e.discriminant() == 0) fail(ErrorKind::Config, "singular curve");
    return e;
}

namespace {

mpz_class floor_mod(const mpz_class& x, long m) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
    return r;
}

// Kraus: c4, c6 come from an integral model.
bool kraus(const mpz_class& c4, const mpz_class& c6) {
    if (valuation(c6, 3) == 2) return false;
    mpz_class c6m4 = floor_mod(c6, 4);
    if (c6m4 == 3) return true;
    if (c4 != 0 && valuation(c4, 2) < 4) return false;
    mpz_class c6m32 = floor_mod(c6, 32);
    return c6m32 == 0 || c6m32 == 8;
}

std::vector<mpz_class> prime_factors(mpz_class n) {
    std::vector<mpz_class> out;
    n = abs(n);
    for (unsigned long p = 2; p < 1000000 && n > 1; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
        if (mpz_class(p) * p > n) break;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) fail(ErrorKind::Internal, "cannot factor c-invariant gcd");
        out.push_back(n);
    }
    return out;
}

int vz(const mpz_class& n, const mpz_class& p) {
    if (n == 0) return 1 << 30;
    mpz_class q = n;
    int v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

mpz_class zpow(const mpz_class& b, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

Curve minimal_model(const Curve& e) {
    mpz_class c4 = e.c4(), c6 = e.c6(), disc = e.discriminant();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c4.get_mpz_t(), c6.get_mpz_t());
    if (c4 == 0) g = abs(c6);
    if (c6 == 0) g = abs(c4);
    for (const auto& p : prime_factors(g)) {
        int emax = std::min({vz(c4, p) / 4, vz(c6, p) / 6, vz(disc, p) / 12});
        for (int k = emax; k > 0; --k) {
            mpz_class u4 = zpow(p, 4 * k), u6 = zpow(p, 6 * k);
            mpz_class n4 = c4 / u4, n6 = c6 / u6;
            if (p > 3 || kraus(n4, n6)) {
                c4 = n4;
                c6 = n6;
                disc /= zpow(p, 12 * k);
                break;
            }
        }
    }
    if (!kraus(c4, c6)) fail(ErrorKind::Internal, "minimal_model: Kraus conditions fail");
    mpz_class b2 = floor_mod(-c6, 12);
    if (b2 > 6) b2 -= 12;
    mpz_class b4 = (b2 * b2 - c4) / 24;
    mpz_class b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
    Curve out = e;
    mpz_class a1 = floor_mod(b2, 2), a3 = floor_mod(b6, 2);
    out.a = {a1, (b2 - a1) / 4, a3, (b4 - a1 * a3) / 2, (b6 - a3) / 4};
    if (out.c4() != c4 || out.c6() != c6) fail(ErrorKind::Internal, "minimal_model: reconstruction mismatch");
    return out;
}

Curve quadratic_twist(const Curve& base, i64 d) {
    if (!is_fundamental_discriminant(d)) fail(ErrorKind::Config, "twist parameter must be a fundamental discriminant");
    mpz_class D(static_cast<long>(d));
    Curve raw;
    raw.a = {0, 0, 0, -27 * base.c4() * D * D, -54 * base.c6() * D * D * D};
    Curve out = minimal_model(raw);
    out.twist_base = std::make_shared<const Curve>(base);
    out.twist_d = d;
    out.label = base.label + "^(" + std::to_string(d) + ")";
    if (base.conductor && gcd(*base.conductor, d) == 1) out.conductor = *base.conductor * d * d;
    return out;
}

bool same_c_invariants(const Curve& x, const Curve& y) { return x.c4() == y.c4() && x.c6() == y.c6(); }

namespace curves {
Curve x0_11() { return make_curve(0, -1, 1, -10, -20, "11a1", 11); }
Curve c563a1() { return make_curve(1, 1, 1, -15, 16, "563a1", 563); }
Curve c18097() { return make_curve(1, 1, 1, -10, 6, "18097a1", 18097); }
Curve x0_11_twist(i64 d) { return quadratic_twist(x0_11(), d); }
}  // namespace curves

bool good_reduction(const Curve& e, i64 ell) {
    if (e.conductor && *e.conductor % ell == 0) return false;
    return !mpz_divisible_ui_p(e.discriminant().get_mpz_t(), static_cast<unsigned long>(ell));
}

bool on_curve(const Curve& e, const PointQ& pt) {
    if (pt.infinity) return true;
    mpq_class a1(e.a[0]), a2(e.a[1]), a3(e.a[2]), a4(e.a[3]), a6(e.a[4]);
    const mpq_class &x = pt.x, &y = pt.y;
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6;
}

PointQ negate(const Curve& e, const PointQ& p) {
    if (p.infinity) return p;
    PointQ r = p;
    r.y = -p.y - mpq_class(e.a[0]) * p.x - mpq_class(e.a[2]);
    return r;
}

PointQ add(const Curve& e, const PointQ& p, const PointQ& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    mpq_class a1(e.a[0]), a2(e.a[1]), a3(e.a[2]), a4(e.a[3]);
    mpq_class lam;
    if (p.x == q.x) {
        mpq_class den = 2 * p.y + a1 * p.x + a3;
        if (p.y != q.y || den == 0) return PointQ{0, 0, true};
        lam = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / den;
    } else {
        lam = (q.y - p.y) / (q.x - p.x);
    }
    mpq_class nu = p.y - lam * p.x;
    PointQ r;
    r.x = lam * lam + a1 * lam - a2 - p.x - q.x;
    r.y = -(lam + a1) * r.x - nu - a3;
    return r;
}

PointQ multiply(const Curve& e, const PointQ& p, i64 k) {
    PointQ base = k < 0 ? negate(e, p) : p;
    u64 n = static_cast<u64>(k < 0 ? -k : k);
    PointQ acc{0, 0, true};
    while (n) {
        if (n & 1) acc = add(e, acc, base);
        base = add(e, base, base);
        n >>= 1;
    }
    return acc;
}

ReducedCurve::ReducedCurve(const Curve& e, i64 ell) : ell_(ell) {
    if (!good_reduction(e, ell)) fail(ErrorKind::BadReduction, "prime " + std::to_string(ell));
    for (int i = 0; i < 5; ++i) a_[i] = floor_mod(e.a[i], static_cast<long>(ell)).get_si();
}

bool ReducedCurve::contains(const ModPoint& p) const {
    if (p.infinity) return true;
    i64 l = ell_, x = p.x, y = p.y;
    i64 lhs = mod(y * y + a_[0] * x % l * y + a_[2] * y, l);
    i64 rhs = mod((x * x % l) * x + a_[1] * (x * x % l) + a_[3] * x + a_[4], l);
    return lhs == rhs;
}

ModPoint ReducedCurve::negate(const ModPoint& p) const {
    if (p.infinity) return p;
    return {p.x, mod(-p.y - a_[0] * p.x - a_[2], ell_), false};
}

ModPoint ReducedCurve::add(const ModPoint& p, const ModPoint& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    i64 l = ell_;
    i64 lam;
    if (p.x == q.x) {
        i64 den = mod(2 * p.y + a_[0] * p.x + a_[2], l);
        if (p.y != q.y || den == 0) return {};
        i64 num = mod(3 * (p.x * p.x % l) + 2 * a_[1] * p.x + a_[3] - a_[0] * p.y, l);
        lam = num * inv_mod(den, l) % l;
    } else {
        lam = mod(q.y - p.y, l) * inv_mod(mod(q.x - p.x, l), l) % l;
    }
    i64 nu = mod(p.y - lam * p.x, l);
    i64 x3 = mod(lam * lam + a_[0] * lam - a_[1] - p.x - q.x, l);
    i64 y3 = mod(-(lam + a_[0]) % l * x3 - nu - a_[2], l);
    return {x3, y3, false};
}

ModPoint ReducedCurve::multiply(const ModPoint& p, i64 k) const {
    ModPoint base = k < 0 ? negate(p) : p;
    u64 n = static_cast<u64>(k < 0 ? -k : k);
    ModPoint acc;
    while (n) {
        if (n & 1) acc = add(acc, base);
        base = add(base, base);
        n >>= 1;
    }
    return acc;
}

i64 ReducedCurve::point_order(const ModPoint& p, i64 group_order) const {
    i64 n = group_order;
    for (auto [q, e] : factor(group_order)) {
        for (int i = 0; i < e; ++i) {
            if (multiply(p, n / q).infinity)
                n /= q;
            else
                break;
        }
    }
    return n;
}

namespace {

constexpr i64 kExhaustiveLimit = 10000;

std::vector<char> square_table(i64 ell) {
    std::vector<char> sq(static_cast<size_t>(ell), 0);
    for (i64 y = 0; y < ell; ++y) sq[static_cast<size_t>(y * y % ell)] = 1;
    return sq;
}

i64 count_exhaustive(const std::array<i64, 5>& a, i64 l) {
    i64 n = 1;
    if (l == 2) {
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y)
                if (mod(y * y + a[0] * x * y + a[2] * y - x * x * x - a[1] * x * x - a[3] * x - a[4], 2) == 0) ++n;
        return n;
    }
    auto sq = square_table(l);
    for (i64 x = 0; x < l; ++x) {
        i64 t = mod(a[0] * x + a[2], l);
        i64 f = mod(4 * mod((x * x % l) * x + a[1] * (x * x % l) + a[3] * x + a[4], l) + t * t, l);
        if (f == 0)
            n += 1;
        else if (sq[static_cast<size_t>(f)])
            n += 2;
    }
    return n;
}

i64 sqrt_mod(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    if (p % 4 == 3) return static_cast<i64>(powmod(static_cast<u64>(a), static_cast<u64>((p + 1) / 4), static_cast<u64>(p)));
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    i64 z = 2;
    while (powmod(static_cast<u64>(z), static_cast<u64>((p - 1) / 2), static_cast<u64>(p)) != static_cast<u64>(p - 1)) ++z;
    u64 m = static_cast<u64>(s), c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return static_cast<i64>(r);
}

class ShortCurveOps {
public:
    ShortCurveOps(i64 l, i64 A, i64 B) : l_(l), A_(A), B_(B) {}

    ModPoint add(const ModPoint& p, const ModPoint& q) const {
        if (p.infinity) return q;
        if (q.infinity) return p;
        i64 lam;
        if (p.x == q.x) {
            if (p.y != q.y || p.y == 0) return {};
            lam = static_cast<i64>(mulmod(mod(3 * static_cast<i64>(mulmod(p.x, p.x, l_)) + A_, l_), inv_mod(2 * p.y, l_), l_));
        } else {
            lam = static_cast<i64>(mulmod(mod(q.y - p.y, l_), inv_mod(mod(q.x - p.x, l_), l_), l_));
        }
        i64 x3 = mod(static_cast<i64>(mulmod(lam, lam, l_)) - p.x - q.x, l_);
        i64 y3 = mod(static_cast<i64>(mulmod(lam, mod(p.x - x3, l_), l_)) - p.y, l_);
        return {x3, y3, false};
    }
    ModPoint negate(const ModPoint& p) const { return p.infinity ? p : ModPoint{p.x, mod(-p.y, l_), false}; }
    ModPoint multiply(const ModPoint& p, i64 k) const {
        ModPoint base = k < 0 ? negate(p) : p;
        u64 n = static_cast<u64>(k < 0 ? -k : k);
        ModPoint acc;
        while (n) {
            if (n & 1) acc = add(acc, base);
            base = add(base, base);
            n >>= 1;
        }
        return acc;
    }
    std::optional<ModPoint> lift_x(i64 x) const {
        i64 f = mod(static_cast<i64>((mulmod(mulmod(x, x, l_), x, l_) + mulmod(A_, x, l_) + static_cast<u64>(B_)) % l_), l_);
        if (f == 0) return ModPoint{x, 0, false};
        if (powmod(static_cast<u64>(f), static_cast<u64>((l_ - 1) / 2), static_cast<u64>(l_)) != 1) return std::nullopt;
        return ModPoint{x, sqrt_mod(f, l_), false};
    }

    // All k in [lo, hi] with kP = O.
    std::vector<i64> annihilators(const ModPoint& P, i64 lo, i64 hi) const {
        i64 width = hi - lo + 1;
        i64 m = 1;
        while (m * m < width) ++m;
        std::map<std::pair<i64, i64>, std::vector<i64>> baby;
        ModPoint jP;
        for (i64 j = 0; j < m; ++j) {
            ModPoint neg = negate(jP);
            baby[{neg.infinity ? -1 : neg.x, neg.infinity ? -1 : neg.y}].push_back(j);
            jP = add(jP, P);
        }
        ModPoint step = multiply(P, m);
        ModPoint Q = multiply(P, lo);
        std::vector<i64> out;
        for (i64 i = 0; i * m < width; ++i) {
            auto it = baby.find({Q.infinity ? -1 : Q.x, Q.infinity ? -1 : Q.y});
            if (it != baby.end())
                for (i64 j : it->second) {
                    i64 k = lo + i * m + j;
                    if (k <= hi) out.push_back(k);
                }
            Q = add(Q, step);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    i64 l_, A_, B_;
};

i64 count_bsgs(const std::array<i64, 5>& a, i64 l) {
    i64 b2 = mod(a[0] * a[0] + 4 * a[1], l);
    i64 b4 = mod(2 * a[3] + a[0] * a[2], l);
    i64 b6 = mod(a[2] * a[2] + 4 * a[4], l);
    i64 c4 = mod(static_cast<i64>(mulmod(b2, b2, l)) - 24 * b4, l);
    i64 c6 = mod(-static_cast<i64>(mulmod(mulmod(b2, b2, l), b2, l)) + static_cast<i64>(mulmod(36 * b2 % l, b4, l)) - 216 * b6, l);
    i64 A = mod(-27 * c4, l), B = mod(-54 * c6, l);
    i64 g = 2;
    while (powmod(g, (l - 1) / 2, l) == 1) ++g;
    i64 g2 = static_cast<i64>(mulmod(g, g, l));
    ShortCurveOps E(l, A, B), T(l, static_cast<i64>(mulmod(A, g2, l)), static_cast<i64>(mulmod(B, mulmod(g2, g, l), l)));
    i64 r = 0;
    while (r * r <= 4 * l) ++r;
    i64 lo = l + 1 - r, hi = l + 1 + r;
    std::mt19937_64 rng(static_cast<u64>(l));
    std::vector<i64> cand;
    for (i64 k = lo; k <= hi; ++k) cand.push_back(k);
    for (int round = 0; round < 40 && cand.size() > 1; ++round) {
        bool twist = round % 2 == 1;
        const ShortCurveOps& C = twist ? T : E;
        std::optional<ModPoint> P;
        while (!P) P = C.lift_x(static_cast<i64>(rng() % static_cast<u64>(l)));
        std::vector<i64> keep;
        if (twist) {
            auto ann = C.annihilators(*P, 2 * l + 2 - hi, 2 * l + 2 - lo);
            for (i64 k : cand)
                if (std::binary_search(ann.begin(), ann.end(), 2 * l + 2 - k)) keep.push_back(k);
        } else {
            auto ann = C.annihilators(*P, lo, hi);
            for (i64 k : cand)
                if (std::binary_search(ann.begin(), ann.end(), k)) keep.push_back(k);
        }
        cand = keep;
    }
    if (cand.size() != 1) fail(ErrorKind::Internal, "point count ambiguous at " + std::to_string(l));
    return cand.front();
}

}  // namespace

i64 ReducedCurve::count() const {
    if (ell_ < kExhaustiveLimit || ell_ <= 3) return count_exhaustive(a_, ell_);
    return count_bsgs(a_, ell_);
}

std::vector<ModPoint> ReducedCurve::points() const {
    if (ell_ > 200000) fail(ErrorKind::BudgetExceeded, "point enumeration above 2e5");
    std::vector<ModPoint> out{ModPoint{}};
    if (ell_ == 2) {
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y)
                if (contains({x, y, false})) out.push_back({x, y, false});
        return out;
    }
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
    i64 l = ell_, half = (l + 1) / 2;
    for (i64 x = 0; x < l; ++x) {
        i64 t = mod(a_[0] * x + a_[2], l);
        i64 f = mod(4 * mod((x * x % l) * x + a_[1] * (x * x % l) + a_[3] * x + a_[4], l) + t * t, l);
        if (f != 0 && powmod(static_cast<u64>(f), static_cast<u64>((l - 1) / 2), static_cast<u64>(l)) != 1) continue;
        i64 r = sqrt_mod(f, l);
        out.push_back({x, mod((r - t) * half, l), false});
        if (r != 0) out.push_back({x, mod((-r - t) * half, l), false});
    }
    return out;
}

GroupStructure ReducedCurve::structure() const {
    i64 n = count();
    i64 exponent = 1;
    if (ell_ <= 5000) {
        for (const auto& p : points()) {
            exponent = std::lcm(exponent, point_order(p, n));
            if (exponent == n) break;
        }
    } else {
        std::mt19937_64 rng(static_cast<u64>(ell_) * 7919);
        for (int i = 0; i < 64 && exponent < n; ++i) {
            i64 x = static_cast<i64>(rng() % static_cast<u64>(ell_));
            for (i64 y = 0; y < ell_; ++y) {
                ModPoint p{x, y, false};
                if (contains(p)) {
                    exponent = std::lcm(exponent, point_order(p, n));
                    break;
                }
            }
        }
        i64 n1 = n / exponent;
        if (n % exponent != 0 || exponent % n1 != 0 || (ell_ - 1) % n1 != 0)
            fail(ErrorKind::Internal, "group structure undetermined");
    }
    return {n / exponent, exponent};
}

std::optional<ModPoint> ReducedCurve::reduce(const PointQ& pt) const {
    if (pt.infinity) return ModPoint{};
    mpz_class L(static_cast<long>(ell_));
    if (mpz_divisible_p(pt.x.get_den().get_mpz_t(), L.get_mpz_t())) return ModPoint{};
    i64 x = reduce_rational(pt.x, ell_, 1), y = reduce_rational(pt.y, ell_, 1);
    ModPoint p{x, y, false};
    if (!contains(p)) return std::nullopt;
    return p;
}

i64 count_points(const Curve& e, i64 ell) {
    std::array<i64, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = floor_mod(e.a[i], static_cast<long>(ell)).get_si();
    if (ell < kExhaustiveLimit || !good_reduction(e, ell)) return count_exhaustive(a, ell);
    return count_bsgs(a, ell);
}

i64 a_ell(const Curve& e, i64 ell) { return ell + 1 - count_points(e, ell); }

std::vector<i64> fourier_coefficients(const Curve& e, i64 nmax) {
    std::vector<i64> a(static_cast<size_t>(nmax) + 1, 0);
    if (nmax < 1) return a;
    std::vector<i64> spf(static_cast<size_t>(nmax) + 1, 0);
    for (i64 i = 2; i <= nmax; ++i)
        if (spf[i] == 0)
            for (i64 j = i; j <= nmax; j += i)
                if (spf[j] == 0) spf[j] = i;
    a[1] = 1;
    for (i64 n = 2; n <= nmax; ++n) {
        i64 p = spf[n];
        i64 m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m != 1) {
            a[n] = a[m] * a[pk];
            continue;
        }
        if (pk == p) {
            a[n] = a_ell(e, p);
        } else if (good_reduction(e, p)) {
            a[n] = a[p] * a[pk / p] - p * a[pk / p / p];
        } else {
            a[n] = a[p] * a[pk / p];
        }
    }
    return a;
}

int x0_11_twist_root_number(i64 d) { return kronecker(d, -11); }

}  // namespace selsym
