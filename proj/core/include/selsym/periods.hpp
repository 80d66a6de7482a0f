#pragma once

#include <complex>
#include <vector>

#include "selsym/arith.hpp"
#include "selsym/curve.hpp"

namespace selsym {

struct PeriodLattice {
    double omega_plus = 0;   // integral of the invariant differential over E(R)
    double omega_minus = 0;  // least imaginary lattice period times the number of real components
    int components = 1;
};

PeriodLattice period_lattice(const Curve& e);

// Modular symbols of the newform attached to a curve, by direct summation of its q-expansion.
class NumericSymbols {
public:
    NumericSymbols(const Curve& e, i64 level);

    i64 level() const { return level_; }
    const PeriodLattice& periods() const { return lattice_; }

    int root_number();
    double l_value();  // L(E, 1)

    // 2 pi i times the integral of f from infinity to a/m.
    std::complex<double> symbol(i64 a, i64 m);
    double plus(i64 a, i64 m) { return symbol(a, m).real() / lattice_.omega_plus; }
    double minus(i64 a, i64 m) { return symbol(a, m).imag() / lattice_.omega_minus; }

private:
    void ensure_terms(i64 n);
    double split_sum(double t, int eps);
    std::complex<double> period_of(i64 A, i64 B, i64 C, i64 D);

    Curve curve_;
    i64 level_;
    PeriodLattice lattice_;
    std::vector<i64> an_;
    int eps_ = 0;
    bool have_l_ = false;
    double l_ = 0;
};

}  // namespace selsym
