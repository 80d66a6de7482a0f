#include "selsym/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "selsym/errors.hpp"

namespace selsym {

namespace {

using ld = long double;
constexpr ld kPi = std::numbers::pi_v<long double>;

ld agm(ld a, ld b) {
    for (int i = 0; i < 200 && std::fabs(a - b) > 1e-18L * std::fabs(a); ++i) {
        ld an = (a + b) / 2;
        b = std::sqrt(a * b);
        a = an;
    }
    return a;
}

ld to_ld(const mpz_class& z) { return static_cast<ld>(z.get_d()); }

// Real roots of x^3 + B x^2 + C x + D, sorted descending.
std::vector<ld> real_roots(ld B, ld C, ld D) {
    auto f = [&](ld x) { return ((x + B) * x + C) * x + D; };
    auto df = [&](ld x) { return (3 * x + 2 * B) * x + C; };
    ld p = C - B * B / 3, q = 2 * B * B * B / 27 - B * C / 3 + D;
    ld disc = q * q / 4 + p * p * p / 27;
    std::vector<ld> roots;
    if (disc < 0) {
        ld r = std::sqrt(-p / 3);
        ld phi = std::acos(std::clamp(-q / (2 * r * r * r), -1.0L, 1.0L));
        for (int k = 0; k < 3; ++k) roots.push_back(2 * r * std::cos((phi + 2 * kPi * k) / 3) - B / 3);
    } else {
        ld s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s) - B / 3);
    }
    for (auto& x : roots) {
        for (int i = 0; i < 8; ++i) {
            ld d = df(x);
            if (d == 0) break;
            x -= f(x) / d;
        }
    }
    std::sort(roots.rbegin(), roots.rend());
    return roots;
}

}  // namespace

PeriodLattice period_lattice(const Curve& e) {
    ld b2 = to_ld(e.b2()), b4 = to_ld(e.b4()), b6 = to_ld(e.b6());
    PeriodLattice out;
    if (e.discriminant() > 0) {
        auto r = real_roots(b2 / 4, b4 / 2, b6 / 4);
        if (r.size() != 3) fail(ErrorKind::PrecisionLoss, "expected three real roots");
        ld e1 = r[0], e2 = r[1], e3 = r[2];
        ld w1 = kPi / agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
        ld w2 = kPi / agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3));
        out.components = 2;
        out.omega_plus = static_cast<double>(2 * w1);
        out.omega_minus = static_cast<double>(2 * w2);
    } else {
        auto r = real_roots(b2 / 4, b4 / 2, b6 / 4);
        ld e1 = r[0];
        ld a = 3 * e1 + b2 / 4;
        ld b = std::sqrt(3 * e1 * e1 + b2 / 2 * e1 + b4 / 2);
        ld w1 = 2 * kPi / agm(2 * std::sqrt(b), std::sqrt(2 * b + a));
        ld w2i = kPi / agm(2 * std::sqrt(b), std::sqrt(2 * b - a));
        out.components = 1;
        out.omega_plus = static_cast<double>(w1);
        out.omega_minus = static_cast<double>(2 * w2i);
    }
    return out;
}

NumericSymbols::NumericSymbols(const Curve& e, i64 level) : curve_(e), level_(level), lattice_(period_lattice(e)) {}

void NumericSymbols::ensure_terms(i64 n) {
    if (n > 20000000) fail(ErrorKind::BudgetExceeded, "numeric symbol needs too many coefficients");
    if (static_cast<i64>(an_.size()) > n) return;
    i64 target = std::max<i64>(n, static_cast<i64>(an_.size()) * 2);
    an_ = fourier_coefficients(curve_, target);
}

double NumericSymbols::split_sum(double t, int eps) {
    double N = static_cast<double>(level_);
    i64 terms = static_cast<i64>(40.0 / (2 * std::numbers::pi * std::min(t, 1.0 / (N * t)))) + 10;
    ensure_terms(terms);
    ld s = 0;
    for (i64 n = 1; n <= terms; ++n) {
        if (an_[n] == 0) continue;
        ld x = std::exp(-2 * kPi * n * t) + eps * std::exp(-2 * kPi * n / (N * t));
        s += static_cast<ld>(an_[n]) / n * x;
    }
    return static_cast<double>(s);
}

int NumericSymbols::root_number() {
    if (eps_ != 0) return eps_;
    double N = static_cast<double>(level_);
    double t1 = 1 / std::sqrt(N), t2 = 1.1 / std::sqrt(N);
    double a1 = split_sum(t1, 0), a2 = split_sum(t2, 0);
    double b1 = split_sum(t1, 1) - a1, b2 = split_sum(t2, 1) - a2;
    double eps = (a1 - a2) / (b2 - b1);
    int r = eps > 0 ? 1 : -1;
    if (std::fabs(eps - r) > 1e-6) fail(ErrorKind::InconsistentRoot, "numeric root number " + std::to_string(eps));
    eps_ = r;
    return eps_;
}

double NumericSymbols::l_value() {
    if (have_l_) return l_;
    int eps = root_number();
    l_ = eps == -1 ? 0.0 : split_sum(1 / std::sqrt(static_cast<double>(level_)), 1);
    have_l_ = true;
    return l_;
}

std::complex<double> NumericSymbols::period_of(i64 A, i64 B, i64 C, i64 D) {
    (void)B;
    if (C < 0) {
        A = -A;
        C = -C;
        D = -D;
    }
    i64 terms = static_cast<i64>(6.5 * static_cast<double>(C)) + 50;
    ensure_terms(terms);
    std::complex<ld> z0(static_cast<ld>(-D) / C, 1.0L / C), z1(static_cast<ld>(A) / C, 1.0L / C);
    std::complex<ld> s = 0;
    const std::complex<ld> twopii(0, 2 * kPi);
    for (i64 n = 1; n <= terms; ++n) {
        if (an_[n] == 0) continue;
        s += static_cast<ld>(an_[n]) / n * (std::exp(twopii * static_cast<ld>(n) * z1) - std::exp(twopii * static_cast<ld>(n) * z0));
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

std::complex<double> NumericSymbols::symbol(i64 a, i64 m) {
    a = mod(a, m);
    if (a == 0) return l_value();
    if (gcd(a, m) != 1) {
        i64 g = gcd(a, m);
        a /= g;
        m /= g;
    }
    if (gcd(m, level_) == 1) {
        i64 an = static_cast<i64>(static_cast<i128>(a) * level_ % m);
        i64 c = mod(-inv_mod(an, m), m);
        if (c > m / 2) c -= m;
        i64 C = level_ * c;
        i64 x = static_cast<i64>((1 + static_cast<i128>(a) * C) / m);
        return l_value() + period_of(x, a, C, m);
    }
    if (m % level_ == 0) {
        auto e = ext_gcd(a, m);  // a*x + m*y = 1
        return period_of(a, -e.y, m, e.x);
    }
    fail(ErrorKind::Config, "numeric symbol needs gcd(m, N) = 1 or N | m");
}

}  // namespace selsym
