#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "selsym/arith.hpp"

namespace selsym {

// K = Q(sqrt(-d)) for squarefree d > 0.
struct QuadraticField {
    i64 d = 0;
    i64 disc = 0;     // fundamental discriminant, negative
    i64 conductor() const { return -disc; }
    int chi(i64 a) const { return kronecker(disc, a); }
    std::string name() const { return "Q(sqrt(-" + std::to_string(d) + "))"; }
};

QuadraticField imaginary_quadratic(i64 d);

struct Form {
    i64 a, b, c;
    friend bool operator==(const Form&, const Form&) = default;
    friend auto operator<=>(const Form&, const Form&) = default;
};

Form reduce_form(Form f);
Form compose(const Form& f, const Form& g);
Form identity_form(i64 disc);
Form inverse_form(const Form& f);
std::vector<Form> reduced_forms(i64 disc);

struct ClassGroupInvariants {
    i64 disc = 0;
    std::vector<i64> factors;  // d_1 | d_2 | ..., all > 1
    i64 class_number() const;
    int p_rank(i64 p) const;
    std::string describe() const;
};

constexpr i64 kClassGroupCap = 1000000;
ClassGroupInvariants class_group(i64 disc, i64 cap = kClassGroupCap);

// Discrete logs to the least primitive root, lifted to [0, ell - 2]; index 0 unused.
std::vector<i64> log_table(i64 ell);

struct StickelbergerRecord {
    i64 disc = 0;
    std::vector<i64> primes;
    i64 p = 3;
    int N = 1;
    mpq_class value;
    std::optional<i64> residue;  // mod p^N when p-integral
    int epsilon() const { return static_cast<int>(primes.size()); }
    bool nonzero() const { return residue && *residue != 0; }
};

// -sum_{a <= md, (a, md) = 1} (a / md) chi(a) prod_l log_l(a). Every l must split in K and be 1 mod p^N.
StickelbergerRecord stickelberger_delta(const QuadraticField& k, const std::vector<i64>& primes, i64 p, int N);
StickelbergerRecord stickelberger_delta(const QuadraticField& k, const std::vector<i64>& primes, i64 p, int N,
                                        const std::vector<std::vector<i64>>& logs);
// Same value through sum_{r mod m} L(r) F(r mod d), with F(v) = sum_u chi(u) ((u - v) m^-1 mod d).
mpq_class stickelberger_delta_folded(const QuadraticField& k, const std::vector<i64>& primes);

struct AnalogueOptions {
    i64 prime_bound = 250;
    int eps_bound = 2;
    i64 product_bound = 100000;
};

struct AnalogueReport {
    QuadraticField field;
    i64 p = 3;
    int N = 1;
    ClassGroupInvariants class_group;
    int dim = 0;  // dim_Fp Cl_K / p
    std::vector<i64> scanned_primes;
    std::vector<StickelbergerRecord> minimal;
    bool counterexample = false;
    std::string text() const;
};

AnalogueReport analogue_check(const QuadraticField& k, i64 p, int N = 1, const AnalogueOptions& opts = {});

}  // namespace selsym
