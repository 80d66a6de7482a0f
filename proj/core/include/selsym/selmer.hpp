#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "selsym/curve.hpp"
#include "selsym/primes.hpp"
#include "selsym/theta.hpp"

namespace selsym {

// Images of rational points in E(F_l)/p^N for P_1 primes l: entry (i, j) is the discrete log of the
// prime-to-p multiple of P_j against a fixed generator of the cyclic p-part of E(F_{l_i}), mod p^N.
struct SMapMatrix {
    i64 p = 3;
    int N = 1;
    std::vector<i64> primes;
    std::vector<PointQ> points;
    std::vector<std::vector<i64>> entries;
    std::vector<i64> group_orders;
    int rank = 0;  // rank of the matrix mod p

    bool nonzero_at(std::size_t prime_index) const;
};

SMapMatrix s_map(const Curve& e, const std::vector<PointQ>& points, const std::vector<i64>& primes, i64 p, int N);

int rank_mod_p(std::vector<std::vector<i64>> a, i64 p);

// Standing hypotheses: (i) ordinary and non-anomalous at p, (ii) p prime to the Tamagawa numbers,
// (iii) surjective p-adic Galois representation, (iv) mu = 0.
struct Hypotheses {
    bool ordinary_non_anomalous = false;
    bool tamagawa_prime_to_p = false;
    bool surjective = false;
    bool mu_zero = false;
    bool asserted = false;  // flags come from configuration rather than computation
    bool all() const { return ordinary_non_anomalous && tamagawa_prime_to_p && surjective && mu_zero; }
    std::string describe() const;
};

struct Evidence {
    std::string curve;
    i64 p = 3;
    int N = 1;
    Hypotheses hypotheses;
    std::optional<int> root_number;
    std::optional<int> lambda_prime;
    bool lambda_computed = false;
    std::optional<mpq_class> l_ratio;            // L(E,1)/Omega^+
    bool sha_order_from_main_conjecture = false;  // take #Sha[p^oo] = p^ord_p(L/Omega) as known
    std::vector<DeltaRecord> deltas;              // any N
    std::vector<MinimalityCertificate> minimal;
    std::vector<FittingRecord> fitting;
    std::vector<SMapMatrix> smaps;
};

enum class Verdict { Proved, Evidence, Contradiction };
std::string to_string(Verdict v);

struct Claim {
    std::string statement;
    std::string rule;
    std::string inputs;
    Verdict verdict = Verdict::Proved;
};

struct StructureCertificate {
    std::string curve;
    i64 p = 3;
    int N = 1;
    std::vector<std::string> assumptions;
    std::vector<Claim> claims;
    std::optional<int> dim_lower, dim_upper;  // dim_Fp Sel(E/Q, E[p])
    std::optional<int> rank_lower, rank_upper;
    bool main_conjecture = false;
    std::optional<std::string> sha;             // structure of Sha[p^oo] when determined
    bool contradiction = false;

    std::optional<int> dim() const;
    std::string report() const;
};

StructureCertificate certify(const Evidence& ev);

struct IdealBound {
    int i = 0;
    int bound = 0;  // upper bound on n_{i,N}; N means no information
    std::vector<i64> generator;
};
// Non-exhaustive: bounds come from the scanned deltas only.
std::vector<IdealBound> theta_ideal_bounds(const std::vector<DeltaRecord>& ledger, i64 p, int N);

struct RelationReport {
    InvariantFactors factors;
    std::string text;
};
RelationReport relation_cokernel(const std::vector<std::vector<i64>>& a, i64 p, int N);

}  // namespace selsym
