#include "selsym/symbols.hpp"

#include <cmath>

#include "selsym/errors.hpp"
#include "selsym/periods.hpp"

namespace selsym {

TwistedSymbol::TwistedSymbol(const Curve& twist, ModularSymbol base_signed, TwistConvention conv, double tolerance)
    : base_(std::move(base_signed)), conv_(conv), d_(twist.twist_d), D_(std::llabs(twist.twist_d)) {
    if (!twist.is_twist()) fail(ErrorKind::Config, "curve is not a recorded twist");
    Sign want = d_ > 0 ? Sign::Plus : Sign::Minus;
    if (base_.data().sign != want) fail(ErrorKind::Config, "base symbol sign does not match the twist");
    if (gcd(D_, base_.level()) != 1) fail(ErrorKind::Config, "twist discriminant must be prime to the base level");
    chi_.resize(static_cast<std::size_t>(D_));
    for (i64 u = 0; u < D_; ++u) chi_[static_cast<std::size_t>(u)] = kronecker(d_, u);
    if (conv_ == TwistConvention::Restricted) {
        denom_ = base_.denom();
        return;
    }
    double k = base_.data().period / (std::sqrt(static_cast<double>(D_)) * period_lattice(twist).omega_plus);
    double best = 1e300;
    for (i64 den = 1; den <= 64; ++den) {
        i64 num = std::llround(k * static_cast<double>(den));
        if (num == 0) continue;
        double err = std::fabs(k - static_cast<double>(num) / static_cast<double>(den)) / std::fabs(k);
        if (err < best - 1e-15) {
            best = err;
            k_num_ = num;
            k_den_ = den;
        }
    }
    residual_ = best;
    if (best > tolerance)
        fail(ErrorKind::NormalizationMismatch, "twist constant " + std::to_string(k) + " is not a small rational");
    denom_ = k_den_ * base_.denom();
}

i64 TwistedSymbol::numer_at(i64 a, i64 m) const {
    i64 s = 0;
    i64 M = m * D_;
    if (conv_ == TwistConvention::Restricted) {
        a = mod(a, m);
        for (i64 t = 0; t < D_; ++t) {
            i64 n = a + m * t;
            int c = chi_[static_cast<std::size_t>(n % D_)];
            if (c == 0) continue;
            i64 v = base_.numer_at(n, M);
            s += c > 0 ? v : -v;
        }
        return s;
    }
    for (i64 u = 1; u < D_; ++u) {
        int c = chi_[static_cast<std::size_t>(u)];
        if (c == 0) continue;
        i64 v = base_.numer_at(a * D_ + u * m, M);
        s += c > 0 ? v : -v;
    }
    return s * k_num_;
}

std::string TwistedSymbol::describe() const {
    std::string head = "twist by " + std::to_string(d_) + " of the level " + std::to_string(base_.level()) + " eigensymbol";
    if (conv_ == TwistConvention::Restricted) return head + ", restricted convention";
    return head + ", newform convention, K = " + constant().get_str();
}

std::unique_ptr<SymbolSource> make_symbol_source(const Curve& e, const SymbolOptions& opts) {
    auto build = [&](const Curve& c, Sign s) {
        return opts.provider ? opts.provider(c, s, opts.eigen) : compute_eigensymbol(c, s, opts.eigen);
    };
    if (e.is_twist() && e.twist_base->conductor && *e.twist_base->conductor <= opts.max_direct_level) {
        Sign s = e.twist_d > 0 ? Sign::Plus : Sign::Minus;
        ModularSymbol base(build(*e.twist_base, s));
        return std::make_unique<TwistedSymbol>(e, std::move(base), opts.twist);
    }
    if (!e.conductor) fail(ErrorKind::Config, "curve needs a conductor or a twist base");
    if (*e.conductor > opts.max_direct_level)
        fail(ErrorKind::BudgetExceeded, "conductor " + std::to_string(*e.conductor) + " above the direct level cap");
    return std::make_unique<DirectSymbol>(ModularSymbol(build(e, Sign::Plus)));
}

}  // namespace selsym
