#include "selsym/modsym.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "selsym/errors.hpp"
#include "selsym/periods.hpp"

namespace selsym {

P1List::P1List(i64 level) : n_(level) {
    if (level < 1) fail(ErrorKind::Config, "level must be positive");
    divisors_ = divisors(level);
    div_slot_.assign(static_cast<std::size_t>(level) + 1, 0);
    for (std::size_t s = 0; s < divisors_.size(); ++s) div_slot_[static_cast<std::size_t>(divisors_[s])] = s;
    table_.assign(divisors_.size(), std::vector<std::int64_t>(static_cast<std::size_t>(level), -1));
    for (std::size_t s = 0; s < divisors_.size(); ++s) {
        i64 g = divisors_[s];
        i64 step = level / g;
        std::vector<i64> stab;
        for (i64 k = 0; k < g; ++k) {
            i64 v = mod(1 + k * step, level);
            if (gcd(v, level) == 1) stab.push_back(v);
        }
        for (i64 d = 0; d < level; ++d) {
            if (gcd(gcd(g, d), level) != 1 || table_[s][static_cast<std::size_t>(d)] != -1) continue;
            auto idx = static_cast<std::int64_t>(c_.size());
            c_.push_back(g % level);
            d_.push_back(d);
            for (i64 v : stab) table_[s][static_cast<std::size_t>(mod(v * d, level))] = idx;
        }
    }
    // unit u_c with u_c * c = gcd(c, N) mod N
    stabilizer_units_.assign(1, std::vector<i64>(static_cast<std::size_t>(level), 0));
    auto& unit = stabilizer_units_[0];
    for (i64 c = 0; c < level; ++c) {
        i64 g = gcd(c, level);
        i64 m = level / g;
        i64 u = m == 1 ? 1 : inv_mod(c / g, m);
        while (gcd(u, level) != 1) u += m;
        unit[static_cast<std::size_t>(c)] = u % level;
    }
}

std::size_t P1List::index(i64 c, i64 d) const {
    c = mod(c, n_);
    d = mod(d, n_);
    i64 g = gcd(c, n_);
    i64 u = stabilizer_units_[0][static_cast<std::size_t>(c)];
    std::size_t s = div_slot_[static_cast<std::size_t>(g)];
    auto idx = table_[s][static_cast<std::size_t>(static_cast<i64>(static_cast<i128>(u) * d % n_))];
    if (idx < 0) fail(ErrorKind::Internal, "P1List::index: not a point of P^1(Z/N)");
    return static_cast<std::size_t>(idx);
}

std::vector<Heilbronn> heilbronn_merel(i64 n) {
    std::vector<Heilbronn> out;
    for (i64 a = 1; a <= n; ++a) {
        i64 q = n / a;
        if (q * a == n) {
            for (i64 b = 0; b < a; ++b) out.push_back({a, b, 0, q});
            for (i64 c = 1; c < q; ++c) out.push_back({a, 0, c, q});
        }
        for (i64 d = q + 1; d <= n; ++d) {
            i64 bc = a * d - n;
            for (i64 c = bc / a + 1; c < d; ++c)
                if (bc % c == 0) out.push_back({a, bc / c, c, d});
        }
    }
    return out;
}

namespace {

struct TwoTerm {
    std::vector<int> rep;   // symbol -> class, -1 if killed
    std::vector<int> sign;  // symbol -> +1, -1, or 0
    std::vector<std::size_t> class_symbol;
};

TwoTerm two_term(const P1List& p1, Sign sign) {
    std::size_t n = p1.size();
    TwoTerm t;
    t.rep.assign(n, -2);
    t.sign.assign(n, 0);
    int star = static_cast<int>(sign);
    for (std::size_t i = 0; i < n; ++i) {
        if (t.rep[i] != -2) continue;
        std::map<std::size_t, int> orbit{{i, 1}};
        std::vector<std::size_t> todo{i};
        bool killed = false;
        while (!todo.empty()) {
            std::size_t j = todo.back();
            todo.pop_back();
            int sj = orbit[j];
            i64 c = p1.c(j), d = p1.d(j);
            std::pair<std::size_t, int> nbrs[2] = {{p1.index(d, -c), -sj}, {p1.index(-c, d), star * sj}};
            for (auto [k, sk] : nbrs) {
                auto it = orbit.find(k);
                if (it == orbit.end()) {
                    orbit.emplace(k, sk);
                    todo.push_back(k);
                } else if (it->second != sk) {
                    killed = true;
                }
            }
        }
        int cls = killed ? -1 : static_cast<int>(t.class_symbol.size());
        if (!killed) t.class_symbol.push_back(i);
        for (auto [k, sk] : orbit) {
            t.rep[k] = cls;
            t.sign[k] = killed ? 0 : sk;
        }
    }
    return t;
}

using Row = std::vector<std::pair<int, i64>>;  // sorted by column, integer coefficients

std::vector<Row> three_term_rows(const P1List& p1, const TwoTerm& t) {
    std::vector<char> seen(p1.size(), 0);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (seen[i]) continue;
        i64 c = p1.c(i), d = p1.d(i);
        std::size_t j = p1.index(d, -c - d), k = p1.index(-c - d, c);
        seen[i] = seen[j] = seen[k] = 1;
        std::map<int, i64> acc;
        for (std::size_t s : {i, j, k})
            if (t.rep[s] >= 0) acc[t.rep[s]] += t.sign[s];
        Row r;
        for (auto [col, v] : acc)
            if (v != 0) r.emplace_back(col, v);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    return rows;
}

using ModRow = std::vector<std::pair<int, u64>>;

// Quotient of the span of two-term classes by the three-term relations, over F_P.
struct Quotient {
    u64 P;
    int classes = 0;
    std::vector<int> free_index;  // class -> index among free generators or -1
    std::vector<int> free_class;  // free index -> class
    std::vector<int> pivot_slot;  // class -> slot into expr or -1
    std::vector<std::vector<u64>> expr;  // dense expressions of pivot classes in the free basis
};

u64 inv_p(u64 a, u64 P) { return powmod(a, P - 2, P); }

Quotient eliminate(const std::vector<Row>& rows_in, int classes, u64 P) {
    std::vector<ModRow> rows;
    rows.reserve(rows_in.size());
    for (const auto& r : rows_in) {
        ModRow m;
        for (auto [c, v] : r) m.emplace_back(c, static_cast<u64>(mod(v, static_cast<i64>(P))));
        rows.push_back(std::move(m));
    }
    std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(classes));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto [c, v] : rows[r]) col_rows[static_cast<std::size_t>(c)].push_back(static_cast<int>(r));
    std::vector<char> active(rows.size(), 1);
    std::vector<char> is_pivot_col(static_cast<std::size_t>(classes), 0);
    using Item = std::pair<std::size_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t r = 0; r < rows.size(); ++r) pq.emplace(rows[r].size(), static_cast<int>(r));
    std::vector<std::pair<int, int>> pivots;  // (col, row)

    auto col_weight = [&](int c) {
        std::size_t w = 0;
        for (int r : col_rows[static_cast<std::size_t>(c)])
            if (active[static_cast<std::size_t>(r)]) ++w;
        return w;
    };

    while (!pq.empty()) {
        auto [w, r] = pq.top();
        pq.pop();
        auto ru = static_cast<std::size_t>(r);
        if (!active[ru] || rows[ru].size() != w) continue;
        if (rows[ru].empty()) {
            active[ru] = 0;
            continue;
        }
        int pc = rows[ru].front().first;
        std::size_t best = SIZE_MAX;
        for (auto [c, v] : rows[ru]) {
            std::size_t cw = col_weight(c);
            if (cw < best) {
                best = cw;
                pc = c;
            }
        }
        u64 pv = 0;
        for (auto [c, v] : rows[ru])
            if (c == pc) pv = v;
        u64 pinv = inv_p(pv, P);
        for (auto& [c, v] : rows[ru]) v = v * pinv % P;
        active[ru] = 0;
        is_pivot_col[static_cast<std::size_t>(pc)] = 1;
        pivots.emplace_back(pc, r);
        std::vector<int> targets = col_rows[static_cast<std::size_t>(pc)];
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (int t : targets) {
            auto tu = static_cast<std::size_t>(t);
            if (!active[tu]) continue;
            u64 f = 0;
            for (auto [c, v] : rows[tu])
                if (c == pc) f = v;
            if (f == 0) continue;
            ModRow merged;
            merged.reserve(rows[tu].size() + rows[ru].size());
            std::size_t i = 0, j = 0;
            const ModRow &A = rows[tu], &B = rows[ru];
            while (i < A.size() || j < B.size()) {
                if (j == B.size() || (i < A.size() && A[i].first < B[j].first)) {
                    merged.push_back(A[i++]);
                } else if (i == A.size() || B[j].first < A[i].first) {
                    u64 v = (P - f) * B[j].second % P;
                    if (v) {
                        merged.emplace_back(B[j].first, v);
                        col_rows[static_cast<std::size_t>(B[j].first)].push_back(t);
                    }
                    ++j;
                } else {
                    u64 v = (A[i].second + (P - f) * B[j].second) % P;
                    if (v) merged.emplace_back(A[i].first, v);
                    ++i;
                    ++j;
                }
            }
            rows[tu] = std::move(merged);
            if (rows[tu].empty())
                active[tu] = 0;
            else
                pq.emplace(rows[tu].size(), t);
        }
    }

    Quotient q;
    q.P = P;
    q.classes = classes;
    q.free_index.assign(static_cast<std::size_t>(classes), -1);
    q.pivot_slot.assign(static_cast<std::size_t>(classes), -1);
    for (int c = 0; c < classes; ++c) {
        if (!is_pivot_col[static_cast<std::size_t>(c)]) {
            q.free_index[static_cast<std::size_t>(c)] = static_cast<int>(q.free_class.size());
            q.free_class.push_back(c);
        }
    }
    std::size_t f = q.free_class.size();
    q.expr.assign(pivots.size(), {});
    for (std::size_t k = 0; k < pivots.size(); ++k) q.pivot_slot[static_cast<std::size_t>(pivots[k].first)] = static_cast<int>(k);
    for (std::size_t k = pivots.size(); k-- > 0;) {
        auto [pc, r] = pivots[k];
        std::vector<u64> e(f, 0);
        for (auto [c, v] : rows[static_cast<std::size_t>(r)]) {
            if (c == pc) continue;
            u64 m = P - v;
            int fi = q.free_index[static_cast<std::size_t>(c)];
            if (fi >= 0) {
                e[static_cast<std::size_t>(fi)] = (e[static_cast<std::size_t>(fi)] + m) % P;
            } else {
                const auto& sub = q.expr[static_cast<std::size_t>(q.pivot_slot[static_cast<std::size_t>(c)])];
                for (std::size_t x = 0; x < f; ++x)
                    if (sub[x]) e[x] = (e[x] + m * sub[x]) % P;
            }
        }
        q.expr[k] = std::move(e);
    }
    return q;
}

// Right kernel of a rows x cols matrix over F_P; basis vectors of length cols.
std::vector<std::vector<u64>> kernel(std::vector<u64> M, std::size_t rows, std::size_t cols, u64 P) {
    std::vector<int> pivot_of_col(cols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (M[r * cols + col]) {
                sel = r;
                break;
            }
        if (sel == rows) continue;
        if (sel != rank)
            for (std::size_t x = 0; x < cols; ++x) std::swap(M[sel * cols + x], M[rank * cols + x]);
        u64* pr = &M[rank * cols];
        u64 inv = inv_p(pr[col], P);
        for (std::size_t x = col; x < cols; ++x) pr[x] = pr[x] * inv % P;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            u64* rr = &M[r * cols];
            u64 f = rr[col];
            if (!f) continue;
            u64 nf = P - f;
            for (std::size_t x = col; x < cols; ++x)
                if (pr[x]) rr[x] = (rr[x] + nf * pr[x]) % P;
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }
    std::vector<std::vector<u64>> basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (pivot_of_col[fc] >= 0) continue;
        std::vector<u64> v(cols, 0);
        v[fc] = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            int pr = pivot_of_col[c];
            if (pr >= 0) v[c] = (P - M[static_cast<std::size_t>(pr) * cols + fc]) % P;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<i64> good_primes(i64 level, int count) {
    std::vector<i64> out;
    for (i64 p = 2; static_cast<int>(out.size()) < count; ++p)
        if (is_prime(p) && level % p != 0) out.push_back(p);
    return out;
}

struct ModResult {
    std::vector<u64> values;  // on every Manin symbol
    std::size_t anchor = 0;
    std::vector<i64> primes_used;
    std::size_t free_dim = 0;
};

// Eigenvector mod P, values on all Manin symbols normalized to 1 at the anchor.
ModResult eigen_mod_p(const P1List& p1, const TwoTerm& t, const std::vector<Row>& rows, const std::vector<i64>& hecke,
                      const std::vector<i64>& ap, u64 P, int max_primes) {
    Quotient q = eliminate(rows, static_cast<int>(t.class_symbol.size()), P);
    std::size_t f = q.free_class.size();
    if (f == 0) fail(ErrorKind::Internal, "empty modular symbol quotient");

    // Values of the current basis (columns of V) on a class.
    std::vector<std::vector<u64>> V;  // V[j] is a vector over the free basis (a functional)
    auto class_value = [&](const std::vector<u64>& phi, int cls) -> u64 {
        int fi = q.free_index[static_cast<std::size_t>(cls)];
        if (fi >= 0) return phi[static_cast<std::size_t>(fi)];
        const auto& e = q.expr[static_cast<std::size_t>(q.pivot_slot[static_cast<std::size_t>(cls)])];
        u64 s = 0;
        for (std::size_t x = 0; x < f; ++x)
            if (e[x]) s = (s + e[x] * phi[x]) % P;
        return s;
    };
    auto symbol_value = [&](const std::vector<u64>& cache, std::size_t sym) -> u64 {
        int cls = t.rep[sym];
        if (cls < 0) return 0;
        u64 v = cache[static_cast<std::size_t>(cls)];
        return t.sign[sym] > 0 ? v : (P - v) % P;
    };

    ModResult res;
    res.free_dim = f;
    bool first = true;
    for (std::size_t step = 0; step < hecke.size() && static_cast<int>(step) < max_primes; ++step) {
        i64 ell = hecke[step];
        auto H = heilbronn_merel(ell);
        u64 a = static_cast<u64>(mod(ap[step], static_cast<i64>(P)));
        if (first) {
            std::vector<u64> A(f * f, 0);
            for (std::size_t j = 0; j < f; ++j) {
                std::size_t sym = t.class_symbol[static_cast<std::size_t>(q.free_class[j])];
                i64 u = p1.c(sym), v = p1.d(sym);
                u64* row = &A[j * f];
                for (const auto& h : H) {
                    std::size_t s = p1.index(u * h.a + v * h.c, u * h.b + v * h.d);
                    int cls = t.rep[s];
                    if (cls < 0) continue;
                    u64 sg = t.sign[s] > 0 ? 1 : P - 1;
                    int fi = q.free_index[static_cast<std::size_t>(cls)];
                    if (fi >= 0) {
                        row[fi] = (row[fi] + sg) % P;
                    } else {
                        const auto& e = q.expr[static_cast<std::size_t>(q.pivot_slot[static_cast<std::size_t>(cls)])];
                        for (std::size_t x = 0; x < f; ++x)
                            if (e[x]) row[x] = (row[x] + sg * e[x]) % P;
                    }
                }
                row[j] = (row[j] + P - a) % P;
            }
            V = kernel(std::move(A), f, f, P);
            first = false;
        } else {
            std::size_t k = V.size();
            std::vector<std::vector<u64>> cache(k);
            for (std::size_t c = 0; c < k; ++c) {
                cache[c].resize(t.class_symbol.size());
                for (std::size_t cls = 0; cls < t.class_symbol.size(); ++cls) cache[c][cls] = class_value(V[c], static_cast<int>(cls));
            }
            std::vector<u64> M(f * k, 0);
            for (std::size_t j = 0; j < f; ++j) {
                std::size_t sym = t.class_symbol[static_cast<std::size_t>(q.free_class[j])];
                i64 u = p1.c(sym), v = p1.d(sym);
                for (const auto& h : H) {
                    std::size_t s = p1.index(u * h.a + v * h.c, u * h.b + v * h.d);
                    for (std::size_t c = 0; c < k; ++c) M[j * k + c] = (M[j * k + c] + symbol_value(cache[c], s)) % P;
                }
                for (std::size_t c = 0; c < k; ++c) M[j * k + c] = (M[j * k + c] + (P - a) * V[c][j]) % P;
            }
            auto Y = kernel(std::move(M), f, k, P);
            std::vector<std::vector<u64>> W;
            for (const auto& y : Y) {
                std::vector<u64> w(f, 0);
                for (std::size_t c = 0; c < k; ++c)
                    if (y[c])
                        for (std::size_t x = 0; x < f; ++x) w[x] = (w[x] + y[c] * V[c][x]) % P;
                W.push_back(std::move(w));
            }
            V = std::move(W);
        }
        res.primes_used.push_back(ell);
        if (V.size() <= 1) break;
    }
    if (V.size() != 1)
        fail(ErrorKind::Internal, "Hecke eigenspace has dimension " + std::to_string(V.size()) + " after " +
                                      std::to_string(res.primes_used.size()) + " primes");
    std::vector<u64> cls_vals(t.class_symbol.size());
    for (std::size_t cls = 0; cls < cls_vals.size(); ++cls) cls_vals[cls] = class_value(V[0], static_cast<int>(cls));
    res.values.resize(p1.size());
    for (std::size_t s = 0; s < p1.size(); ++s) res.values[s] = symbol_value(cls_vals, s);
    while (res.anchor < res.values.size() && res.values[res.anchor] == 0) ++res.anchor;
    if (res.anchor == res.values.size()) fail(ErrorKind::Internal, "zero eigensymbol");
    u64 inv = inv_p(res.values[res.anchor], P);
    for (auto& v : res.values) v = v * inv % P;
    return res;
}

std::vector<u64> crt_primes(int count) {
    std::vector<u64> out;
    for (u64 p = 2147483647ULL; static_cast<int>(out.size()) < count; p -= 2)
        if (is_prime(p)) out.push_back(p);
    return out;
}

// Continued fraction value of x(a/m) from integer values on Manin symbols.
template <class F>
i64 cf_sum(i64 a, i64 m, F&& value) {
    a = mod(a, m);
    i64 x = a, y = m;
    i64 q_prev = 0, q = 1;
    i64 sum = value(q, -q_prev);  // j = 0
    i64 sgn = 1;                  // (-1)^(j-1) for j = 1
    i64 ak = x / y;
    i64 r = x - ak * y;
    x = y;
    y = r;
    while (y != 0) {
        ak = x / y;
        r = x - ak * y;
        x = y;
        y = r;
        i64 qn = ak * q + q_prev;
        q_prev = q;
        q = qn;
        sum += value(q, sgn * q_prev);
        sgn = -sgn;
    }
    return sum;
}

std::pair<i64, i64> best_rational(double x, i64 bound) {
    i64 best_n = std::llround(x), best_d = 1;
    double best_err = std::fabs(x - static_cast<double>(best_n));
    for (i64 d = 2; d <= bound; ++d) {
        i64 n = std::llround(x * static_cast<double>(d));
        double err = std::fabs(x - static_cast<double>(n) / static_cast<double>(d));
        if (err < best_err - 1e-15) {
            best_err = err;
            best_n = n;
            best_d = d;
        }
    }
    return {best_n, best_d};
}

}  // namespace

ModularSymbol::ModularSymbol(EigenSymbolData data) : data_(std::move(data)), p1_(data_.level) {
    if (data_.numer.size() != p1_.size()) fail(ErrorKind::Internal, "symbol data does not match level");
}

i64 ModularSymbol::numer_at(i64 a, i64 m) const {
    return cf_sum(a, m, [&](i64 c, i64 d) { return data_.numer[p1_.index(c, d)]; });
}

mpq_class ModularSymbol::at(i64 a, i64 m) const {
    mpq_class q(static_cast<long>(numer_at(a, m)), static_cast<long>(data_.denom));
    q.canonicalize();
    return q;
}

ManinQuotientInfo manin_quotient_info(i64 level, Sign sign) {
    P1List p1(level);
    TwoTerm t = two_term(p1, sign);
    auto rows = three_term_rows(p1, t);
    Quotient q = eliminate(rows, static_cast<int>(t.class_symbol.size()), crt_primes(1)[0]);
    return {p1.size(), t.class_symbol.size(), q.free_class.size()};
}

bool check_manin_relations(const EigenSymbolData& s) {
    P1List p1(s.level);
    int star = static_cast<int>(s.sign);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        i64 c = p1.c(i), d = p1.d(i);
        i64 x = s.numer[i];
        if (x + s.numer[p1.index(d, -c)] != 0) return false;
        if (x + s.numer[p1.index(d, -c - d)] + s.numer[p1.index(-c - d, c)] != 0) return false;
        if (s.numer[p1.index(-c, d)] != star * x) return false;
    }
    return true;
}

bool check_hecke_relation(const EigenSymbolData& s, i64 ell, i64 a_ell) {
    P1List p1(s.level);
    auto H = heilbronn_merel(ell);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        i64 u = p1.c(i), v = p1.d(i);
        i128 acc = 0;
        for (const auto& h : H) acc += s.numer[p1.index(u * h.a + v * h.c, u * h.b + v * h.d)];
        if (acc != static_cast<i128>(a_ell) * s.numer[i]) return false;
    }
    return true;
}

EigenSymbolData compute_eigensymbol(const Curve& e, Sign sign, const EigenOptions& opts) {
    if (!e.conductor) fail(ErrorKind::Config, "eigensymbol needs the conductor");
    i64 N = *e.conductor;
    P1List p1(N);
    TwoTerm t = two_term(p1, sign);
    auto rows = three_term_rows(p1, t);
    auto hecke = good_primes(N, opts.max_hecke_primes);
    std::vector<i64> ap;
    for (i64 ell : hecke) ap.push_back(a_ell(e, ell));

    auto primes = crt_primes(8);
    std::vector<mpz_class> moduli;
    std::vector<std::vector<mpz_class>> residues(p1.size());
    std::optional<std::size_t> anchor;
    std::vector<i64> used;
    std::vector<mpq_class> rat;
    for (u64 P : primes) {
        ModResult r = eigen_mod_p(p1, t, rows, hecke, ap, P, opts.max_hecke_primes);
        if (anchor && (*anchor != r.anchor || used != r.primes_used)) continue;
        anchor = r.anchor;
        used = r.primes_used;
        moduli.emplace_back(static_cast<unsigned long>(P));
        for (std::size_t s = 0; s < p1.size(); ++s) residues[s].emplace_back(static_cast<unsigned long>(r.values[s]));
        if (moduli.size() < 2) continue;
        mpz_class M = 1;
        for (const auto& m : moduli) M *= m;
        rat.assign(p1.size(), 0);
        bool ok = true;
        for (std::size_t s = 0; s < p1.size() && ok; ++s) {
            auto q = rational_reconstruct(crt(residues[s], moduli), M);
            if (!q) ok = false;
            else rat[s] = *q;
        }
        if (!ok) continue;
        // primitive integer vector
        mpz_class L = 1;
        for (const auto& q : rat) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
        mpz_class G = 0;
        std::vector<mpz_class> w(p1.size());
        for (std::size_t s = 0; s < p1.size(); ++s) {
            w[s] = rat[s].get_num() * (L / rat[s].get_den());
            mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), w[s].get_mpz_t());
        }
        EigenSymbolData cand;
        cand.level = N;
        cand.sign = sign;
        cand.numer.resize(p1.size());
        bool fits = true;
        for (std::size_t s = 0; s < p1.size(); ++s) {
            mpz_class v = w[s] / G;
            if (!v.fits_slong_p() || abs(v) > mpz_class(1L << 40)) fits = false;
            else cand.numer[s] = v.get_si();
        }
        if (!fits) continue;
        bool exact = check_manin_relations(cand);
        for (std::size_t k = 0; k < used.size() && exact; ++k)
            exact = check_hecke_relation(cand, used[k], ap[k]);
        if (!exact) continue;
        cand.hecke_primes = used;
        EigenSymbolData& out = cand;

        // Scale by the numeric period.
        NumericSymbols num(e, N);
        ModularSymbol ms(out);
        auto numeric = [&](i64 a, i64 m) { return sign == Sign::Plus ? num.plus(a, m) : num.minus(a, m); };
        std::vector<std::pair<i64, i64>> anchors;
        if (ms.numer_at(0, 1) != 0) anchors.emplace_back(0, 1);
        for (i64 m = 2; anchors.size() < 2 && m < 200; ++m) {
            if (gcd(m, N) != 1) continue;
            for (i64 a = 1; a < m && anchors.size() < 2; ++a)
                if (gcd(a, m) == 1 && ms.numer_at(a, m) != 0) anchors.emplace_back(a, m);
        }
        if (anchors.empty()) fail(ErrorKind::NormalizationMismatch, "no anchor cusp");
        auto [a0, m0] = anchors.front();
        double scale = numeric(a0, m0) / static_cast<double>(ms.numer_at(a0, m0));
        auto [sn, sd] = best_rational(scale, opts.scale_bound);
        double residual = 0;
        for (auto [a, m] : anchors) {
            double want = numeric(a, m);
            double got = static_cast<double>(ms.numer_at(a, m)) * static_cast<double>(sn) / static_cast<double>(sd);
            residual = std::max(residual, std::fabs(want - got) / std::max(1.0, std::fabs(want)));
        }
        if (sn == 0 || residual > opts.tolerance)
            fail(ErrorKind::NormalizationMismatch, "period scale " + std::to_string(scale) + " residual " + std::to_string(residual));
        for (auto& v : out.numer) v *= sn;
        out.denom = sd;
        i64 g = sd;
        for (auto v : out.numer) g = gcd(g, v);
        if (g > 1) {
            for (auto& v : out.numer) v /= g;
            out.denom /= g;
        }
        if (out.denom < 0) {
            out.denom = -out.denom;
            for (auto& v : out.numer) v = -v;
        }
        out.period = sign == Sign::Plus ? num.periods().omega_plus : num.periods().omega_minus;
        out.residual = residual;
        return out;
    }
    fail(ErrorKind::Internal, "eigensymbol reconstruction did not stabilize");
}

}  // namespace selsym
