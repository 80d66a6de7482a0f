#pragma once

#include <functional>
#include <memory>
#include <string>

#include <gmpxx.h>

#include "selsym/arith.hpp"
#include "selsym/curve.hpp"
#include "selsym/modsym.hpp"

namespace selsym {

// x(a/m) = Re[a/m] / Omega^+ as numer_at(a, m) / denom().
class SymbolSource {
public:
    virtual ~SymbolSource() = default;
    virtual i64 numer_at(i64 a, i64 m) const = 0;
    virtual i64 denom() const = 0;
    virtual std::string describe() const = 0;

    mpq_class at(i64 a, i64 m) const {
        mpq_class q(static_cast<long>(numer_at(a, m)), static_cast<long>(denom()));
        q.canonicalize();
        return q;
    }
};

class DirectSymbol : public SymbolSource {
public:
    explicit DirectSymbol(ModularSymbol s) : s_(std::move(s)) {}
    i64 numer_at(i64 a, i64 m) const override { return s_.numer_at(a, m); }
    i64 denom() const override { return s_.denom(); }
    std::string describe() const override { return "eigensymbol at level " + std::to_string(s_.level()); }
    const ModularSymbol& symbol() const { return s_; }

private:
    ModularSymbol s_;
};

// Newform: plus symbol of the twist itself over its Neron period,
//   x_d(a/m) = K sum_{u mod D} chi_d(u) x_base^{sign d}(a/m + u/D), D = |d|.
// Restricted: the chi_d-twisted base element at level mD pushed down to level m, over Omega_base/sqrt(D),
//   x(a/m) = sum_{n mod mD, n = a mod m} chi_d(n) x_base^{sign d}(n/(mD)).
// The two differ by the group ring unit chi_d(m) K^-1 sigma_D.
enum class TwistConvention { Newform, Restricted };

class TwistedSymbol : public SymbolSource {
public:
    TwistedSymbol(const Curve& twist, ModularSymbol base_signed, TwistConvention conv = TwistConvention::Restricted,
                  double tolerance = 1e-9);

    i64 numer_at(i64 a, i64 m) const override;
    i64 denom() const override { return denom_; }
    std::string describe() const override;

    i64 d() const { return d_; }
    TwistConvention convention() const { return conv_; }
    // K for the newform convention, 1 for the restricted one.
    mpq_class constant() const { return mpq_class(static_cast<long>(k_num_), static_cast<long>(k_den_)); }
    double constant_residual() const { return residual_; }

private:
    ModularSymbol base_;
    TwistConvention conv_;
    i64 d_, D_;
    std::vector<int> chi_;
    i64 k_num_ = 1, k_den_ = 1;
    i64 denom_ = 1;
    double residual_ = 0;
};

struct SymbolOptions {
    EigenOptions eigen;
    i64 max_direct_level = 40000;
    TwistConvention twist = TwistConvention::Restricted;
    // Replaces compute_eigensymbol, e.g. to serve cached symbols.
    std::function<EigenSymbolData(const Curve&, Sign, const EigenOptions&)> provider;
};

// Chooses the twist route when the curve records a base with small conductor, else the direct route.
std::unique_ptr<SymbolSource> make_symbol_source(const Curve& e, const SymbolOptions& opts = {});

}  // namespace selsym
