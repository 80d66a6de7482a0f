#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "selsym/arith.hpp"
#include "selsym/curve.hpp"

namespace selsym {

// P^1(Z/N) with canonical representatives (c:d).
class P1List {
public:
    explicit P1List(i64 level);

    i64 level() const { return n_; }
    std::size_t size() const { return c_.size(); }
    i64 c(std::size_t i) const { return c_[i]; }
    i64 d(std::size_t i) const { return d_[i]; }

    // Index of the class of (c:d); requires gcd(c, d, N) = 1.
    std::size_t index(i64 c, i64 d) const;

private:
    i64 n_;
    std::vector<i64> c_, d_;
    std::vector<i64> divisors_;
    std::vector<std::size_t> div_slot_;   // divisor g of N -> slot
    std::vector<std::vector<std::int64_t>> table_;  // slot -> d -> index
    std::vector<std::vector<i64>> stabilizer_units_;
};

// Merel's set X_n: determinant n, a > b >= 0, d > c >= 0.
struct Heilbronn {
    i64 a, b, c, d;
};
std::vector<Heilbronn> heilbronn_merel(i64 n);

enum class Sign { Plus = 1, Minus = -1 };

// Values of a Hecke eigen modular symbol on every Manin symbol, with common denominator.
struct EigenSymbolData {
    i64 level = 0;
    Sign sign = Sign::Plus;
    std::vector<i64> numer;  // value on Manin symbol i is numer[i] / denom
    i64 denom = 1;
    double period = 0;       // the period the values are normalized by
    double residual = 0;     // normalization check residual
    std::vector<i64> hecke_primes;  // primes whose eigen relation was checked exactly
};

class ModularSymbol {
public:
    ModularSymbol(EigenSymbolData data);

    const EigenSymbolData& data() const { return data_; }
    const P1List& p1() const { return p1_; }
    i64 level() const { return data_.level; }
    i64 denom() const { return data_.denom; }

    // x(a/m) * denom, exact; x(r) is the value of the symbol on the path from infinity to r.
    i64 numer_at(i64 a, i64 m) const;
    mpq_class at(i64 a, i64 m) const;
    i64 manin_value(i64 c, i64 d) const { return data_.numer[p1_.index(c, d)]; }

private:
    EigenSymbolData data_;
    P1List p1_;
};

struct EigenOptions {
    int max_hecke_primes = 12;
    i64 scale_bound = 60;
    double tolerance = 1e-6;
};

// Plus (or minus) eigensymbol of the newform attached to e at level = conductor, normalized by
// the real period of E(R) (plus) or the imaginary period (minus).
EigenSymbolData compute_eigensymbol(const Curve& e, Sign sign, const EigenOptions& opts = {});

// Manin symbol space statistics, exposed for tests.
struct ManinQuotientInfo {
    std::size_t symbols = 0;
    std::size_t two_term_classes = 0;
    std::size_t free_generators = 0;
};
ManinQuotientInfo manin_quotient_info(i64 level, Sign sign);

// Exact verification: Manin relations, star relation and the Hecke relation at the given primes.
bool check_manin_relations(const EigenSymbolData& s);
bool check_hecke_relation(const EigenSymbolData& s, i64 ell, i64 a_ell);

}  // namespace selsym
