#ifndef DMHS_GALLERY_MODELS_HPP
#define DMHS_GALLERY_MODELS_HPP

#include <dmhs/sl2/orbit.hpp>

#include <set>

namespace dmhs::gallery {

inline QSubspace coords(std::size_t n, std::vector<std::size_t> idx) { return QSubspace::coordinate(n, idx); }

inline std::vector<Gaussian> cvec(std::size_t n, std::initializer_list<std::pair<std::size_t, Gaussian>> entries) {
    std::vector<Gaussian> v(n);
    for (auto& [k, x] : entries) v[k] = x;
    return v;
}

inline HodgeFiltration hodge_filtration(std::size_t n, const std::map<int, std::vector<std::vector<Gaussian>>>& gens) {
    std::map<int, CSubspace> st;
    for (auto& [p, vs] : gens) st.emplace(p, CSubspace::span(vs, n));
    return {n, st};
}

inline QMatrix symplectic2() { return QMatrix::from_rows({{0, -1}, {1, 0}}); }

// H = Q^3 with e1, e2 of weight -3 and e3 of weight 0; <e2, e1> = 1.
inline HodgeData example3_data() {
    QFiltration w(3, {{-3, coords(3, {0, 1})}, {0, QSubspace::full(3)}});
    return HodgeData(3, w, {{-3, symplectic2()}, {0, QMatrix::from_rows({{1}})}},
                     {{{0, 0}, 1}, {{-1, -2}, 1}, {{-2, -1}, 1}});
}

inline QMatrix example3_n(const Rational& a) {
    QMatrix n(3, 3);
    n(1, 2) = a;
    n(0, 1) = 1;
    return n;
}

inline HodgeFiltration example3_f(const Rational& b) {
    Gaussian ib(Rational(0), b);
    return hodge_filtration(3, {{0, {cvec(3, {{2, 1}, {0, ib}})}},
                                {-1, {cvec(3, {{2, 1}, {0, ib}}), cvec(3, {{1, 1}})}},
                                {-2, {cvec(3, {{0, 1}}), cvec(3, {{1, 1}}), cvec(3, {{2, 1}})}}});
}

inline NilpotentOrbit example3_orbit(const Rational& a, const Rational& b) {
    return {example3_data(), {example3_n(a)}, example3_f(b)};
}

// H = Q^4: e1 weight -2, e2 e3 weight -1, e4 weight 0; <e3, e2> = 1.
inline HodgeData example4_data() {
    QFiltration w(4, {{-2, coords(4, {0})}, {-1, coords(4, {0, 1, 2})}, {0, QSubspace::full(4)}});
    return HodgeData(4, w,
                     {{-2, QMatrix::from_rows({{1}})}, {-1, symplectic2()}, {0, QMatrix::from_rows({{1}})}},
                     {{{0, 0}, 1}, {{-1, -1}, 1}, {{0, -1}, 1}, {{-1, 0}, 1}});
}

inline QMatrix example4_n(const Rational& a) {
    QMatrix n(4, 4);
    n(0, 3) = a;
    n(1, 2) = 1;
    return n;
}

inline HodgeFiltration example4_f(const Rational& b) {
    Gaussian ib(Rational(0), b);
    return hodge_filtration(4, {{0, {cvec(4, {{2, 1}}), cvec(4, {{3, 1}, {0, ib}})}},
                                {-1, {cvec(4, {{0, 1}}), cvec(4, {{1, 1}}), cvec(4, {{2, 1}}), cvec(4, {{3, 1}})}}});
}

inline NilpotentOrbit example4_orbit(const Rational& a, const Rational& b) {
    return {example4_data(), {example4_n(a)}, example4_f(b)};
}

// Extension of Q(0) by Q(1): e1 weight -2, e2 weight 0, N e2 = a e1, F^0 = <e2 + i b e1>.
inline NilpotentOrbit tate_orbit(const Rational& a, const Rational& b) {
    QFiltration w(2, {{-2, coords(2, {0})}, {0, QSubspace::full(2)}});
    HodgeData hd(2, w, {{-2, QMatrix::from_rows({{1}})}, {0, QMatrix::from_rows({{1}})}}, {{{0, 0}, 1}, {{-1, -1}, 1}});
    QMatrix n(2, 2);
    n(0, 1) = a;
    Gaussian ib(Rational(0), b);
    HodgeFiltration f = hodge_filtration(2, {{0, {cvec(2, {{1, 1}, {0, ib}})}}, {-1, {cvec(2, {{0, 1}}), cvec(2, {{1, 1}})}}});
    return {hd, {n}, f};
}

// Extension of Q(0) by a weight -1 structure: e1 e2 weight -1, e3 weight 0,
// N e2 = e1, N e3 = a e1, F^0 = <e2, e3 + i b e1>.
inline NilpotentOrbit elliptic_orbit(const Rational& a, const Rational& b) {
    QFiltration w(3, {{-1, coords(3, {0, 1})}, {0, QSubspace::full(3)}});
    HodgeData hd(3, w, {{-1, symplectic2()}, {0, QMatrix::from_rows({{1}})}}, {{{0, 0}, 1}, {{0, -1}, 1}, {{-1, 0}, 1}});
    QMatrix n(3, 3);
    n(0, 1) = 1;
    n(0, 2) = a;
    Gaussian ib(Rational(0), b);
    HodgeFiltration f = hodge_filtration(3, {{0, {cvec(3, {{1, 1}}), cvec(3, {{2, 1}, {0, ib}})}},
                                             {-1, {cvec(3, {{0, 1}}), cvec(3, {{1, 1}}), cvec(3, {{2, 1}})}}});
    return {hd, {n}, f};
}

// Two-parameter cone on the same space: N1 e2 = e1; N2 e2 = e1, N2 e3 = e1.
// Every element of the cone is split, but not by a common splitting.
inline NilpotentOrbit elliptic_cone_orbit() {
    NilpotentOrbit o = elliptic_orbit(0, 0);
    QMatrix n2(3, 3);
    n2(0, 1) = 1;
    n2(0, 2) = 1;
    o.n.push_back(n2);
    return o;
}

inline QMatrix block_diagonal(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

// Direct sum of two orbits with the same number of nilpotents. Bases are
// concatenated, so W and the graded bases of the summands are kept.
inline NilpotentOrbit direct_sum(const NilpotentOrbit& x, const NilpotentOrbit& y) {
    if (x.n.size() != y.n.size()) throw ValidationError("direct sum needs equal numbers of nilpotents");
    std::size_t n1 = x.data.rank(), n2 = y.data.rank(), n = n1 + n2;
    auto embed = [&](const QSubspace& a, const QSubspace& b) {
        QMatrix cols(n, 0);
        QMatrix ac = a.columns(), bc = b.columns();
        QMatrix pa(n, ac.cols()), pb(n, bc.cols());
        for (std::size_t c = 0; c < ac.cols(); ++c)
            for (std::size_t i = 0; i < n1; ++i) pa(i, c) = ac(i, c);
        for (std::size_t c = 0; c < bc.cols(); ++c)
            for (std::size_t i = 0; i < n2; ++i) pb(n1 + i, c) = bc(i, c);
        return QSubspace::span(QMatrix::hstack(QMatrix::hstack(cols, pa), pb));
    };
    std::map<int, QSubspace> wst;
    std::vector<int> keys;
    for (auto& [k, s] : x.data.W().steps()) keys.push_back(k);
    for (auto& [k, s] : y.data.W().steps()) keys.push_back(k);
    for (int k : keys) wst[k] = embed(x.data.W()[k], y.data.W()[k]);
    QFiltration w(n, wst);
    // graded bases of the sum are the concatenated graded bases of the summands
    std::map<int, QMatrix> pairings;
    HodgeNumbers h = x.data.hodge_numbers();
    for (auto& [pq, d] : y.data.hodge_numbers()) h[pq] += d;
    std::set<int> weights;
    for (int k : x.data.frame().distinct()) weights.insert(k);
    for (int k : y.data.frame().distinct()) weights.insert(k);
    for (int k : weights) {
        QMatrix a = x.data.pairings().count(k) ? x.data.pairings().at(k) : QMatrix();
        QMatrix b = y.data.pairings().count(k) ? y.data.pairings().at(k) : QMatrix();
        pairings[k] = block_diagonal(a, b);
    }
    HodgeData hd(n, w, pairings, h);
    std::vector<QMatrix> ns;
    for (std::size_t j = 0; j < x.n.size(); ++j) ns.push_back(block_diagonal(x.n[j], y.n[j]));
    std::map<int, CSubspace> fst;
    int lo = std::min(x.f.lowest(), y.f.lowest()), hi = std::max(x.f.highest(), y.f.highest());
    for (int p = lo; p <= hi; ++p) {
        CMatrix ac = x.f[p].columns(), bc = y.f[p].columns();
        CMatrix m(n, ac.cols() + bc.cols());
        for (std::size_t c = 0; c < ac.cols(); ++c)
            for (std::size_t i = 0; i < n1; ++i) m(i, c) = ac(i, c);
        for (std::size_t c = 0; c < bc.cols(); ++c)
            for (std::size_t i = 0; i < n2; ++i) m(n1 + i, ac.cols() + c) = bc(i, c);
        fst.emplace(p, CSubspace::span(m));
    }
    return {hd, ns, HodgeFiltration(n, fst)};
}

// Conjugate an orbit by g in G (original coordinates): N -> g N g^-1, F -> g F.
inline NilpotentOrbit conjugate(const NilpotentOrbit& o, const QMatrix& g) {
    if (!in_group(o.data, o.data.to_adapted(g))) throw ValidationError("element is not in G");
    QMatrix gi = inverse_or_throw(g);
    NilpotentOrbit out = o;
    for (auto& x : out.n) x = g * x * gi;
    out.f = o.f.transform(to_complex(g));
    return out;
}

}  // namespace dmhs::gallery

#endif
