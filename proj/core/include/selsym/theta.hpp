#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "selsym/arith.hpp"
#include "selsym/symbols.hpp"

namespace selsym {

// Arithmetic in Z/p^k.
struct PAdicRing {
    i64 p = 3;
    int k = 1;
    i64 q = 3;

    PAdicRing(i64 p_, int k_);
    i64 norm(i64 a) const { return mod(a, q); }
    i64 add(i64 a, i64 b) const { return mod(a + b, q); }
    i64 sub(i64 a, i64 b) const { return mod(a - b, q); }
    i64 mul(i64 a, i64 b) const { return static_cast<i64>(mulmod(static_cast<u64>(norm(a)), static_cast<u64>(norm(b)), static_cast<u64>(q))); }
    i64 inv(i64 a) const;  // throws PrecisionLoss on non-units
    i64 from(const mpq_class& x) const { return reduce_rational(x, p, k); }
    // ord_p of a residue, nullopt for zero.
    std::optional<int> ord(i64 a) const;
};

// Gal(Q(m) Q_n / Q) as the p-quotient of (Z/M)^x, M = m p^(n+1) when n > 0 and M = m otherwise:
// a cyclic factor <tau_l> of order p^(e_l) for each l | m, e_l = min(ord_p(l - 1), cap), and
// <gamma> of order p^n with gamma the image of 1 + p.
class PQuotient {
public:
    PQuotient(i64 p, std::vector<i64> primes, int layer = 0, int cap = 32);

    i64 p() const { return p_; }
    const std::vector<i64>& primes() const { return primes_; }
    int layer() const { return layer_; }
    i64 conductor() const { return conductor_; }
    // Cyclic factor orders; the gamma factor (if any) comes last.
    const std::vector<i64>& orders() const { return orders_; }
    std::size_t size() const { return size_; }

    // Exponents of the image of sigma_a, a prime to the conductor.
    std::vector<i64> exponents(i64 a) const;
    std::size_t index(i64 a) const;
    std::vector<i64> unflatten(std::size_t idx) const;

private:
    i64 p_;
    std::vector<i64> primes_;
    int layer_;
    i64 conductor_ = 1;
    std::vector<DlogTable> logs_;
    std::vector<i64> orders_;
    std::size_t size_ = 1;
    std::vector<i64> gamma_log_;  // (1 + pZ)/(1 + p^(n+1)Z), indexed by residue mod p^(n+1)
    i64 pn1_ = 1;
};

// Group ring (Z/p^k)[(Z/M)^x], dense over residues mod M; non-units carry zero.
class UnitGroupRing {
public:
    UnitGroupRing(i64 modulus, PAdicRing ring);

    i64 modulus() const { return m_; }
    const PAdicRing& ring() const { return r_; }
    i64 operator[](i64 a) const { return c_[static_cast<std::size_t>(mod(a, m_))]; }
    i64& at(i64 a) { return c_[static_cast<std::size_t>(mod(a, m_))]; }

    static UnitGroupRing sigma(i64 modulus, PAdicRing ring, i64 a);
    UnitGroupRing operator+(const UnitGroupRing& o) const;
    UnitGroupRing operator-(const UnitGroupRing& o) const;
    UnitGroupRing operator*(const UnitGroupRing& o) const;
    UnitGroupRing scaled(i64 s) const;
    UnitGroupRing times_sigma(i64 b) const;

    // Natural restriction to a divisor of the modulus.
    UnitGroupRing restrict_to(i64 divisor) const;
    // Norm map nu into a multiple of the modulus.
    UnitGroupRing norm_to(i64 multiple) const;

    bool operator==(const UnitGroupRing& o) const { return m_ == o.m_ && c_ == o.c_; }

private:
    i64 m_;
    PAdicRing r_;
    std::vector<i64> c_;
};

// Group ring over a PQuotient with coefficients in Z/p^k.
struct QuotientElement {
    const PQuotient* group = nullptr;
    PAdicRing ring{3, 1};
    std::vector<i64> c;

    // Coefficient of prod_j S_j^(i_j), S_j = tau_j - 1, using exponent representatives in [0, order).
    i64 s_coefficient(const std::vector<int>& multi_index) const;
};

QuotientElement project(const UnitGroupRing& x, const PQuotient& g);

// theta~ of Q(mu_M) with exact coefficients x(a/M).
std::vector<mpq_class> theta_tilde_exact(const SymbolSource& s, i64 modulus);
UnitGroupRing theta_tilde(const SymbolSource& s, i64 modulus, const PAdicRing& ring);

// Unit root alpha of x^2 - a_p x + p.
struct StabilizedAlpha {
    i64 p, ap;
    int precision;
    i64 alpha;
};
StabilizedAlpha stabilize(i64 p, i64 ap, int precision);

// p-stabilized element at level m p^k (k >= 1), and at level m through (1 - sigma_p/alpha)(1 - sigma_p^-1/alpha) for k = 0.
UnitGroupRing vartheta(const SymbolSource& s, i64 m, int k, const StabilizedAlpha& alpha);

// Finite-layer xi for squarefree m: sum over d | m of nu_{m,d}(prod_{l | m/d} (-sigma_l^-1) vartheta_{d p^k}),
// times (-sigma_l^-1 P'_l(sigma_l)) for each extra prime l.
UnitGroupRing xi(const SymbolSource& s, i64 m, const std::vector<i64>& extra_primes, int k, const StabilizedAlpha& alpha,
                 const std::function<i64(i64)>& a_ell);

struct DeltaRecord {
    std::string curve;
    i64 p = 3;
    int N = 1;
    std::vector<i64> primes;
    mpq_class value;                // exact integer lift, or rational when not p-integral
    bool p_integral = true;
    i64 residue = 0;                // value mod p^N when p-integral
    std::optional<int> ord;         // ord_p in {0..N-1}, nullopt for zero mod p^N
    double seconds = 0;

    i64 m() const;
    int epsilon() const { return static_cast<int>(primes.size()); }
    bool unit() const { return p_integral && ord && *ord == 0; }
    bool nonzero() const { return p_integral && ord.has_value(); }
};

// Integer lift sum_a x(a/m) prod_l log_l(a) with logs in [0, l-2] for the least primitive roots.
DeltaRecord delta_direct(const SymbolSource& s, const std::vector<i64>& primes, i64 p, int N, unsigned threads = 0);

// Coefficient of prod (tau_i - 1) in theta~_{Q(m)} modulo (p^N, (tau_i - 1)^2).
i64 delta_from_theta(const SymbolSource& s, const std::vector<i64>& primes, i64 p, int N);
// delta_m read off vartheta_{Q(m)} = delta_m prod (1 - tau_i); ord_p agrees with the theta~ version.
i64 delta_from_vartheta(const SymbolSource& s, const std::vector<i64>& primes, const StabilizedAlpha& alpha, int N);

// Largest c with ((1+T)^(p^n0) - 1)/T in p^c Z_p[T] + T^(s+1) Z_p[T].
int c_s(i64 p, int n0, int s);

// S-expansion coefficient a_{i_1..i_r} of theta~_{Q(m)} with full log lifts in [0, l-2]; exact rational.
mpq_class fitting_coefficient(const SymbolSource& s, const std::vector<i64>& primes, const std::vector<int>& multi_index,
                              unsigned threads = 0);

struct FittingRecord {
    std::vector<i64> primes;
    std::vector<int> multi_index;
    mpq_class value;
    int c = 0;                  // coefficient is meaningful modulo p^c
    std::optional<i64> residue; // value mod p^c when c > 0 and p-integral
    int index_sum() const;
};
FittingRecord fitting_record(const SymbolSource& s, i64 p, const std::vector<i64>& primes, const std::vector<int>& multi_index);

// Invariant factors of the cokernel of a square matrix over Z/p^N: exponents e with summands Z/p^e, ascending,
// trivial summands dropped.
struct InvariantFactors {
    i64 p = 3;
    int N = 1;
    std::vector<int> exponents;
    std::string describe() const;
    i64 order_log() const;  // log_p of the cokernel order
};
InvariantFactors smith_cokernel(std::vector<std::vector<i64>> a, i64 p, int N);

struct LambdaEstimate {
    std::optional<int> lambda;          // candidate from the deepest layer
    bool mu_zero_witness = false;       // some coefficient is a p-adic unit
    bool stabilized = false;            // two consecutive layers agree
    std::vector<std::optional<int>> per_layer;  // index of first unit coefficient at Q_1, Q_2, ...
};
LambdaEstimate lambda_mu_estimate(const SymbolSource& s, const StabilizedAlpha& alpha, int max_layer);

}  // namespace selsym
