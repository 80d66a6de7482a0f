#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace selsym {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m);

// Result lies in [0, m).
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b);

// Returns g and x, y with a*x + b*y = g >= 0.
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);

// Throws Internal if gcd(a, m) != 1.
i64 inv_mod(i64 a, i64 m);

bool is_prime(u64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<i64> primes_up_to(i64 bound);
std::vector<i64> divisors(i64 n);

i64 euler_phi(i64 n);

// Least primitive root modulo an odd prime.
i64 primitive_root(i64 ell);

int valuation(i64 n, i64 p);
int valuation(const mpz_class& n, i64 p);
// Valuation of a nonzero rational.
int valuation(const mpq_class& q, i64 p);

i64 ipow(i64 b, int e);

int kronecker(i64 a, i64 n);

bool is_fundamental_discriminant(i64 d);

// Discrete logarithm table for a prime: log[a] in [0, ell-2] with respect to the least primitive root.
class DlogTable {
public:
    explicit DlogTable(i64 ell);
    i64 prime() const { return ell_; }
    i64 generator() const { return g_; }
    i64 log(i64 a) const;  // a coprime to ell, any sign

private:
    i64 ell_;
    i64 g_;
    std::vector<std::int32_t> log_;
};

// Chinese remaindering of residues r_i mod m_i (pairwise coprime).
mpz_class crt(const std::vector<mpz_class>& residues, const std::vector<mpz_class>& moduli);

// Rational reconstruction of a mod m with |num|, den <= sqrt(m/2).
std::optional<mpq_class> rational_reconstruct(const mpz_class& a, const mpz_class& m);

// Image of a p-integral rational in Z/p^k, as a value in [0, p^k).
i64 reduce_rational(const mpq_class& q, i64 p, int k);

// Unit root of x^2 - ap*x + p in Z/p^k (ordinary case).
i64 unit_root(i64 ap, i64 p, int k);

}  // namespace selsym
