#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selsym/curve.hpp"
#include "selsym/theta.hpp"

namespace selsym {

enum class PrimeClass { NotGood, Not1ModPN, PNOnly, P0Prime, P1, P0Other };
std::string to_string(PrimeClass c);

struct PrimeClassRecord {
    i64 ell = 0;
    PrimeClass cls = PrimeClass::NotGood;
    int n_ell = 0;             // ord_p(ell - 1)
    i64 count = 0;             // #E(F_ell), 0 when not computed
    GroupStructure group;      // valid when count > 0
};

PrimeClassRecord classify_prime(const Curve& e, i64 p, int N, i64 ell);
std::vector<PrimeClassRecord> classify_range(const Curve& e, i64 p, int N, i64 bound);
std::vector<i64> enumerate_p1(const Curve& e, i64 p, int N, i64 bound);

// ell_{i+1} is a p^(n_j)-th power modulo ell_j for every earlier ell_j.
struct ResidueCertificate {
    i64 ell, modulo, power, residue;  // residue = ell mod modulo
    bool holds() const;
};

struct AdmissibleProduct {
    std::vector<i64> ordering;
    std::vector<ResidueCertificate> certificates;
    int epsilon() const { return static_cast<int>(ordering.size()); }
};

// Searches all orderings for a witness chain.
std::optional<AdmissibleProduct> is_admissible(i64 p, std::vector<i64> primes);

int n_lambda(i64 p, int lambda);
// ell in P_1^(N) and ell = 1 mod p^(n_lambda + N n).
bool p1_layer_test(const Curve& e, i64 p, int N, int n, int lambda, i64 ell);

struct MinimalityCertificate {
    DeltaRecord delta;
    std::vector<DeltaRecord> divisors;  // every proper divisor, including 1
    std::optional<AdmissibleProduct> admissible;
    bool minimal() const;
};

// Memoized delta values keyed by the sorted prime list.
class DeltaLedger {
public:
    DeltaLedger(const SymbolSource& s, std::string curve, i64 p, int N) : s_(s), curve_(std::move(curve)), p_(p), N_(N) {}

    const DeltaRecord& get(std::vector<i64> primes);
    MinimalityCertificate certify_minimal(const std::vector<i64>& primes);
    std::vector<DeltaRecord> records() const;
    i64 p() const { return p_; }
    int N() const { return N_; }

private:
    const SymbolSource& s_;
    std::string curve_;
    i64 p_;
    int N_;
    std::map<std::vector<i64>, DeltaRecord> memo_;
};

struct SearchOptions {
    i64 prime_bound = 1000;
    int eps_bound = 3;
    i64 product_bound = 200000;
    bool admissible_only = true;   // for products of two or more primes
    bool stop_at_first = true;
    double budget_seconds = 600;
    // When set, epsilon levels with (-1)^epsilon != root_number are skipped: delta~_m = 0 mod p there.
    std::optional<int> root_number;
};

struct SearchResult {
    std::vector<MinimalityCertificate> minimal;
    std::vector<DeltaRecord> ledger;
    bool budget_exceeded = false;
};

// Scan by increasing epsilon(m), then increasing m, over squarefree products of P_1^(N) primes.
SearchResult delta_minimal_search(const Curve& e, const SymbolSource& s, i64 p, int N, const SearchOptions& opts = {});

}  // namespace selsym
