#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "selsym/arith.hpp"

namespace selsym::oracle {

// min over 0 <= j <= s of ord_p of the T^j coefficient of ((1+T)^q - 1)/T, by polynomial powering
inline int c_s(i64 p, int n0, int s) {
    std::size_t deg = static_cast<std::size_t>(s) + 2;
    std::vector<mpz_class> acc(deg, 0), base(deg, 0);
    acc[0] = 1;
    base[0] = base[1] = 1;
    auto mul = [&](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
        std::vector<mpz_class> z(deg, 0);
        for (std::size_t i = 0; i < deg; ++i)
            for (std::size_t j = 0; i + j < deg; ++j) z[i + j] += x[i] * y[j];
        return z;
    };
    for (i64 q = ipow(p, n0); q; q >>= 1) {
        if (q & 1) acc = mul(acc, base);
        base = mul(base, base);
    }
    int best = 1 << 20;
    for (int j = 0; j <= s; ++j) {
        const mpz_class& c = acc[static_cast<std::size_t>(j) + 1];
        if (c != 0) best = std::min(best, valuation(c, p));
    }
    return best;
}

// Order of coker([[a,b],[c,d]]) over Z/9 and the size of its 3-torsion, by enumerating the image.
inline std::pair<i64, i64> cokernel_z9(i64 a, i64 b, i64 c, i64 d) {
    const i64 q = 9;
    std::set<std::pair<i64, i64>> image;
    for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y) image.insert({(a * x + b * y) % q, (c * x + d * y) % q});
    i64 killed = 0;  // v with 3v in the image
    for (i64 u = 0; u < q; ++u)
        for (i64 v = 0; v < q; ++v)
            if (image.count({3 * u % q, 3 * v % q})) ++killed;
    auto n = static_cast<i64>(image.size());
    return {q * q / n, killed / n};
}

}  // namespace selsym::oracle
