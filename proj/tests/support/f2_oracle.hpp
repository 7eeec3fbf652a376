#ifndef DMHS_TESTS_F2_ORACLE_HPP
#define DMHS_TESTS_F2_ORACLE_HPP

// Exhaustive search for the relative monodromy filtration over F_2, and
// planted integral instances whose answer is known by construction.

#include "random_models.hpp"

#include <dmhs/mhs/monodromy.hpp>

#include <bit>
#include <set>

namespace dmhs::testing::f2 {

// n <= 6. A vector is a bitmask; a subspace is the 64-bit set of its members.
using Vec = unsigned;
using Sub = std::uint64_t;

struct Map {
    std::size_t n = 0;
    std::vector<Vec> cols;  // image of e_j

    Vec operator()(Vec v) const {
        Vec r = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (v >> j & 1) r ^= cols[j];
        return r;
    }
    Map operator*(const Map& o) const {
        Map m{n, {}};
        for (std::size_t j = 0; j < n; ++j) m.cols.push_back((*this)(o.cols[j]));
        return m;
    }
    static Map identity(std::size_t n) {
        Map m{n, {}};
        for (std::size_t j = 0; j < n; ++j) m.cols.push_back(Vec(1) << j);
        return m;
    }
};

inline bool member(Sub s, Vec v) { return s >> v & 1; }
inline int dim(Sub s) { return std::countr_zero(static_cast<std::uint64_t>(std::popcount(s))); }

inline Sub add(Sub s, Vec v) {
    if (member(s, v)) return s;
    Sub out = s;
    for (Vec u = 0; u < 64; ++u)
        if (member(s, u)) out |= Sub(1) << (u ^ v);
    return out;
}

inline Sub zero() { return 1; }
inline Sub full(std::size_t n) { return n == 6 ? ~Sub(0) : (Sub(1) << (Vec(1) << n)) - 1; }

inline Sub sum(Sub a, Sub b) {
    for (Vec v = 0; v < 64; ++v)
        if (member(b, v)) a = add(a, v);
    return a;
}

inline Sub image(const Map& m, Sub s) {
    Sub out = zero();
    for (Vec v = 0; v < 64; ++v)
        if (member(s, v)) out = add(out, m(v));
    return out;
}

inline Sub preimage(const Map& m, Sub s, std::size_t n) {
    Sub out = 0;
    for (Vec v = 0; v < (Vec(1) << n); ++v)
        if (member(s, m(v))) out |= Sub(1) << v;
    return out;
}

// Subspaces of F_2^n of dimension d containing base.
inline std::vector<Sub> subspaces_over(Sub base, int d, std::size_t n) {
    std::set<Sub> level{base};
    for (int k = dim(base); k < d; ++k) {
        std::set<Sub> next;
        for (Sub s : level)
            for (Vec v = 1; v < (Vec(1) << n); ++v)
                if (!member(s, v)) next.insert(add(s, v));
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

struct Problem {
    std::size_t n = 0;
    std::map<int, Sub> w;  // W_k at each jump (the last one is everything)
    Map nmap;

    Sub W(int k) const {
        auto it = w.upper_bound(k);
        if (it == w.begin()) return zero();
        return std::prev(it)->second;
    }
};

struct Solution {
    int lo = 0;
    std::vector<Sub> m;  // M_lo, M_lo+1, ...
    Sub at(int k, std::size_t n) const {
        if (k < lo) return zero();
        if (k - lo >= static_cast<int>(m.size())) return full(n);
        return m[k - lo];
    }
};

// All filtrations M with N M_k in M_{k-2} inducing on each gr_w the monodromy
// filtration of gr N shifted by w. Stops after `limit` solutions.
inline std::vector<Solution> search(const Problem& p, std::size_t limit = 2) {
    std::size_t n = p.n;
    std::vector<int> ws;
    for (auto& [k, s] : p.w) ws.push_back(k);
    int lo = ws.front() - static_cast<int>(n) - 1, hi = ws.back() + static_cast<int>(n) + 1;
    std::vector<Map> pw{Map::identity(n)};
    for (std::size_t k = 0; k <= n; ++k) pw.push_back(p.nmap * pw.back());
    // target[k][w] = preimage in W_w of the k-th step of the shifted monodromy filtration of gr_w
    std::map<int, std::map<int, Sub>> target;
    std::map<int, int> dims;
    for (int k = lo; k <= hi; ++k) {
        int d = 0;
        for (int w : ws) {
            Sub ww = p.W(w), wl = p.W(w - 1);
            Sub l = wl;
            for (int i = 0; i <= static_cast<int>(n); ++i)
                for (int j = 0; j <= static_cast<int>(n); ++j) {
                    if (i - j > k - w) continue;
                    Sub ker = preimage(pw[i + 1], wl, n) & ww;
                    Sub im = sum(image(pw[j], ww), wl);
                    l = sum(l, ker & im);
                }
            target[k][w] = l;
            d += dim(l) - dim(wl);
        }
        dims[k] = d;
    }
    std::vector<Solution> out;
    std::vector<Sub> cur;
    std::function<void(int)> dfs = [&](int k) {
        if (out.size() >= limit) return;
        if (k > hi) {
            out.push_back({lo, cur});
            return;
        }
        Sub prev = cur.empty() ? zero() : cur.back();
        Sub prev2 = cur.size() >= 2 ? cur[cur.size() - 2] : zero();
        for (Sub u : subspaces_over(prev, dims[k], n)) {
            bool ok = true;
            for (Vec v = 0; v < 64 && ok; ++v)
                if (member(u, v) && !member(prev2, p.nmap(v))) ok = false;
            for (int w : ws) {
                if (!ok) break;
                if (sum(u & p.W(w), p.W(w - 1)) != target[k][w]) ok = false;
            }
            if (!ok) continue;
            cur.push_back(u);
            dfs(k + 1);
            cur.pop_back();
        }
    };
    dfs(lo);
    return out;
}

// --- reduction mod 2 of rational data ---

inline long v2(const mpz_class& z) {
    if (z == 0) return 1 << 20;
    return static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
}
inline long v2(const Rational& q) { return sgn(q) == 0 ? 1 << 20 : v2(q.get_num()) - v2(q.get_den()); }

// Reduction of the 2-adically saturated lattice of a rational subspace.
inline Sub reduce(const QSubspace& s) {
    std::size_t n = s.ambient();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(s.vector(i));
    Sub out = zero();
    while (!rows.empty()) {
        for (auto& r : rows) {
            long m = 1 << 20;
            for (auto& x : r) m = std::min(m, v2(x));
            Rational f = 1;
            for (long k = 0; k < std::labs(m); ++k) f *= 2;
            for (auto& x : r) x = m >= 0 ? Rational(x / f) : Rational(x * f);
        }
        std::size_t c = 0;
        while (v2(rows[0][c]) != 0) ++c;
        Vec v = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (v2(rows[0][j]) == 0) v |= Vec(1) << j;
        out = add(out, v);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            Rational f = rows[r][c] / rows[0][c];
            for (std::size_t j = 0; j < n; ++j) rows[r][j] -= f * rows[0][j];
        }
        rows.erase(rows.begin());
    }
    return out;
}

// Integral matrix with odd denominators (here: integers) mod 2.
inline Map reduce(const QMatrix& m) {
    Map out{m.rows(), {}};
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Vec v = 0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (v2(m(i, j)) == 0) v |= Vec(1) << i;
        out.cols.push_back(v);
    }
    return out;
}

inline Problem reduce(const QFiltration& w, const QMatrix& n) {
    Problem p;
    p.n = w.ambient();
    for (int k : w.jumps()) p.w[k] = reduce(w[k]);
    p.nmap = reduce(n);
    return p;
}

// --- planted instances ---

struct Planted {
    QFiltration w;
    QMatrix n;
    QFiltration m;  // the answer, by construction
};

// Basis vectors carry (w, mu). Inside each gr_w, N moves along strings whose
// mu values are symmetric about w; extra arrows go to lower W-weight and mu at
// least 2 lower. Then W, N, M are moved by a random unimodular integer matrix.
inline Planted planted_instance(Rng& g, std::size_t max_rank = 6) {
    std::size_t n = static_cast<std::size_t>(uniform(g, 2, static_cast<long>(max_rank)));
    struct B {
        int w, mu;
        long next;  // index of the next vector in the string, or -1
    };
    std::vector<B> basis;
    int nweights = static_cast<int>(uniform(g, 1, 3));
    std::vector<int> weights;
    int w0 = static_cast<int>(uniform(g, -4, 0));
    for (int k = 0; k < nweights; ++k) {
        weights.push_back(w0);
        w0 += static_cast<int>(uniform(g, 1, 3));
    }
    // split n among the weights, each piece nonempty when possible
    std::vector<std::size_t> size(weights.size(), 0);
    for (std::size_t k = 0; k < n; ++k) size[k < weights.size() ? k : uniform(g, 0, static_cast<long>(weights.size()) - 1)]++;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        std::size_t left = size[k];
        while (left > 0) {
            std::size_t len = static_cast<std::size_t>(uniform(g, 1, static_cast<long>(left)));
            int l = static_cast<int>(len) - 1;
            for (int p = 0; p <= l; ++p)
                basis.push_back({weights[k], weights[k] + l - 2 * p, p < l ? static_cast<long>(basis.size()) + 1 : -1});
            left -= len;
        }
    }
    n = basis.size();
    QMatrix nm(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (basis[j].next >= 0) nm(basis[j].next, j) = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (basis[i].w < basis[j].w && basis[i].mu <= basis[j].mu - 2 && uniform(g, 0, 2) == 0) nm(i, j) += 1;
    }
    auto flag = [&](auto key) {
        std::map<int, QSubspace> st;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i)
                if (key(basis[i]) <= key(basis[j])) idx.push_back(i);
            st[key(basis[j])] = QSubspace::coordinate(n, idx);
        }
        return QFiltration(n, st);
    };
    QFiltration w = flag([](const B& b) { return b.w; });
    QFiltration m = flag([](const B& b) { return b.mu; });
    // unimodular change of basis from elementary moves and a permutation
    QMatrix t = QMatrix::identity(n);
    for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
        std::size_t i = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n) - 1));
        if (i == j) continue;
        QMatrix e = QMatrix::identity(n);
        e(i, j) = uniform(g, -1, 1);
        t = e * t;
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), g);
    QMatrix p(n, n);
    for (std::size_t k = 0; k < n; ++k) p(perm[k], k) = 1;
    t = p * t;
    QMatrix ti = inverse_or_throw(t);
    return {transform(w, t), t * nm * ti, transform(m, t)};
}

}  // namespace dmhs::testing::f2

#endif
