#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "selsym/arith.hpp"

namespace selsym {

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct Curve {
    std::array<mpz_class, 5> a;  // a1, a2, a3, a4, a6
    std::string label;
    std::optional<i64> conductor;
    std::shared_ptr<const Curve> twist_base;
    i64 twist_d = 0;

    mpz_class b2() const;
    mpz_class b4() const;
    mpz_class b6() const;
    mpz_class b8() const;
    mpz_class c4() const;
    mpz_class c6() const;
    mpz_class discriminant() const;

    bool is_twist() const { return twist_base != nullptr; }
};

Curve make_curve(long a1, long a2, long a3, long a4, long a6, std::string label = {},
                 std::optional<i64> conductor = std::nullopt);

// Global minimal model with reduced a1, a2, a3 (Kraus conditions at 2 and 3).
Curve minimal_model(const Curve& e);

// Minimal model of the quadratic twist by a fundamental discriminant d.
Curve quadratic_twist(const Curve& base, i64 d);

bool same_c_invariants(const Curve& x, const Curve& y);

namespace curves {
Curve x0_11();
Curve c563a1();
Curve c18097();
Curve x0_11_twist(i64 d);
}  // namespace curves

bool good_reduction(const Curve& e, i64 ell);

struct PointQ {
    mpq_class x, y;
    bool infinity = false;
};

bool on_curve(const Curve& e, const PointQ& pt);
PointQ add(const Curve& e, const PointQ& p, const PointQ& q);
PointQ negate(const Curve& e, const PointQ& p);
PointQ multiply(const Curve& e, const PointQ& p, i64 k);

struct ModPoint {
    i64 x = 0, y = 0;
    bool infinity = true;
    friend bool operator==(const ModPoint&, const ModPoint&) = default;
};

struct GroupStructure {
    i64 n1 = 1, n2 = 1;  // E = Z/n1 x Z/n2 with n1 | n2
    i64 order() const { return n1 * n2; }
};

// Reduction of a curve at a prime of good reduction.
class ReducedCurve {
public:
    ReducedCurve(const Curve& e, i64 ell);

    i64 prime() const { return ell_; }
    const std::array<i64, 5>& coeffs() const { return a_; }

    bool contains(const ModPoint& p) const;
    ModPoint add(const ModPoint& p, const ModPoint& q) const;
    ModPoint negate(const ModPoint& p) const;
    ModPoint multiply(const ModPoint& p, i64 k) const;
    i64 point_order(const ModPoint& p, i64 group_order) const;

    i64 count() const;
    GroupStructure structure() const;
    std::vector<ModPoint> points() const;

    std::optional<ModPoint> reduce(const PointQ& pt) const;

private:
    i64 ell_;
    std::array<i64, 5> a_;
};

// Number of points on the reduction of the minimal model, valid at bad primes too.
i64 count_points(const Curve& e, i64 ell);
i64 a_ell(const Curve& e, i64 ell);

// Fourier coefficients a_1..a_nmax of the attached newform; index 0 unused.
std::vector<i64> fourier_coefficients(const Curve& e, i64 nmax);

// Root number of the twist of X0(11) by d: chi_d(-11).
int x0_11_twist_root_number(i64 d);

}  // namespace selsym
