#ifndef DMHS_MHS_MONODROMY_HPP
#define DMHS_MHS_MONODROMY_HPP

#include <dmhs/mhs/mixed_hodge.hpp>

#include <optional>

namespace dmhs {

// Canonical complement of small inside big: echelon rows of big reduced
// modulo small.
template <class T>
Matrix<T> complement_rows(const Subspace<T>& big, const Subspace<T>& small) {
    std::size_t n = big.ambient();
    Matrix<T> reduced = big.rows();
    auto piv = row_reduce(small.rows()).pivots;
    for (std::size_t r = 0; r < reduced.rows(); ++r)
        for (std::size_t q = 0; q < small.dim(); ++q) {
            T f = reduced(r, piv[q]);
            if (is_zero(f)) continue;
            for (std::size_t j = 0; j < n; ++j) reduced(r, j) -= f * small.rows()(q, j);
        }
    if (reduced.rows() == 0) return Matrix<T>(0, n);
    return row_reduce(reduced).rref;
}

template <class T>
Subspace<T> kernel_space(const Matrix<T>& a) {
    return Subspace<T>::span(kernel(a));
}

template <class T>
struct JordanChain {
    std::vector<T> head;
    std::size_t length;  // number of vectors head, A head, ..., A^{length-1} head
};

// Heads of a Jordan basis of the nilpotent A, longest chains first.
template <class T>
std::vector<JordanChain<T>> jordan_chains(const Matrix<T>& a) {
    std::size_t d = a.rows();
    if (!is_nilpotent(a)) throw ValidationError("matrix is not nilpotent");
    std::vector<Subspace<T>> ker(d + 2);
    for (std::size_t k = 0; k <= d + 1; ++k) ker[k] = kernel_space(power(a, k));
    std::vector<JordanChain<T>> out;
    for (std::size_t l = d; l-- > 0;) {
        Subspace<T> small = ker[l] + ker[l + 2].image(a);
        Matrix<T> heads = complement_rows(ker[l + 1], small);
        for (std::size_t r = 0; r < heads.rows(); ++r) out.push_back({heads.row(r), l + 1});
    }
    return out;
}

// Weight filtration of a nilpotent centered at c: a chain of length l+1
// occupies weights c+l, c+l-2, ..., c-l.
template <class T>
IncreasingFiltration<T> monodromy_filtration(const Matrix<T>& a, int center = 0) {
    std::size_t d = a.rows();
    std::map<int, std::vector<std::vector<T>>> by_weight;
    for (auto& ch : jordan_chains(a)) {
        std::vector<T> v = ch.head;
        int l = static_cast<int>(ch.length) - 1;
        for (int j = 0; j <= l; ++j) {
            by_weight[center + l - 2 * j].push_back(v);
            v = a.apply(v);
        }
    }
    std::map<int, Subspace<T>> st;
    std::vector<std::vector<T>> acc;
    for (auto& [w, vs] : by_weight) {
        acc.insert(acc.end(), vs.begin(), vs.end());
        st[w] = Subspace<T>::span(acc, d);
    }
    if (st.empty()) st[center] = Subspace<T>::full(d);
    return {d, st};
}

// Restriction of a square matrix to a block of coordinates.
template <class T>
Matrix<T> restrict_block(const Matrix<T>& a, const std::vector<std::size_t>& idx) {
    return a.select_rows(idx).select_columns(idx);
}

// Relative weight filtration M(N, W) in adapted coordinates, built weight
// by weight from the bottom of W. Empty when it does not exist.
inline std::optional<QFiltration> relative_monodromy_adapted(const GradedFrame& fr, const QMatrix& n) {
    std::size_t dim = fr.size();
    if (!fr.preserves(n)) throw ValidationError("N does not preserve W");
    if (!is_nilpotent(n)) throw ValidationError("N is not nilpotent");
    // steps of M as lists of spanning vectors per weight
    std::map<int, std::vector<std::vector<Rational>>> by_weight;
    auto current = [&](int i) {
        std::vector<std::vector<Rational>> acc;
        for (auto& [w, vs] : by_weight)
            if (w <= i) acc.insert(acc.end(), vs.begin(), vs.end());
        return QSubspace::span(acc, dim);
    };
    for (int k : fr.distinct()) {
        auto blk = fr.block(k);
        auto below = fr.upto(k - 1);
        QMatrix nk = restrict_block(n, blk);
        for (auto& ch : jordan_chains(nk)) {
            int l = static_cast<int>(ch.length) - 1;
            std::vector<Rational> x0(dim);
            for (std::size_t t = 0; t < blk.size(); ++t) x0[blk[t]] = ch.head[t];
            QMatrix np = power(n, static_cast<std::size_t>(l + 1));
            QSubspace target = current(k - l - 2);
            QMatrix ann = target.annihilator();
            std::vector<Rational> lifted = x0;
            if (ann.rows() > 0 && !below.empty()) {
                QMatrix lhs = ann * np.select_columns(below);
                std::vector<Rational> rhs_v = (ann * np).apply(x0);
                QMatrix rhs(rhs_v.size(), 1);
                for (std::size_t r = 0; r < rhs_v.size(); ++r) rhs(r, 0) = -rhs_v[r];
                auto u = solve(lhs, rhs);
                if (!u) return std::nullopt;
                for (std::size_t t = 0; t < below.size(); ++t) lifted[below[t]] += (*u)(t, 0);
            } else if (!target.contains(np.apply(x0))) {
                return std::nullopt;
            }
            std::vector<Rational> v = lifted;
            for (int j = 0; j <= l; ++j) {
                by_weight[k + l - 2 * j].push_back(v);
                v = n.apply(v);
            }
        }
    }
    std::map<int, QSubspace> st;
    for (auto& [w, vs] : by_weight) st[w] = current(w);
    return QFiltration(dim, st);
}

// Axioms: N M_i ⊆ M_{i-2} and M induces on gr_w the weight filtration of
// gr(N) centered at w.
inline bool is_relative_monodromy(const GradedFrame& fr, const QMatrix& n, const QFiltration& m) {
    for (int i = m.lowest() - 2; i <= m.highest() + 2; ++i)
        if (!m[i - 2].contains(m[i].image(n))) return false;
    for (int w : fr.distinct()) {
        auto blk = fr.block(w);
        QFiltration l = monodromy_filtration(restrict_block(n, blk), w);
        for (int i = m.lowest() - 1; i <= m.highest() + 1; ++i) {
            QSubspace inter = m[i].intersect(QSubspace::coordinate(fr.size(), fr.upto(w)));
            QMatrix cols = inter.columns();
            QSubspace proj = QSubspace::span(cols.select_rows(blk));
            if (proj != l[i]) return false;
        }
    }
    return true;
}

// M(N, W) in original coordinates; empty when it does not exist.
inline std::optional<QFiltration> relative_monodromy(const QFiltration& w, const QMatrix& n) {
    if (n.rows() != w.ambient() || !n.square()) throw ValidationError("dimension mismatch");
    FrameChange fc(w);
    auto m = relative_monodromy_adapted(fc.frame, fc.in(n));
    if (!m) return std::nullopt;
    return transform(*m, fc.basis.basis);
}

// The filtration induced on gr^W by M(N, W), in graded coordinates. It is the
// sum over w of the weight filtrations of gr(N) centered at w.
inline QFiltration graded_relative_filtration(const GradedFrame& fr, const QMatrix& n_adapted) {
    std::size_t d = fr.size();
    std::map<int, std::vector<std::vector<Rational>>> by_weight;
    for (int w : fr.distinct()) {
        auto blk = fr.block(w);
        QFiltration l = monodromy_filtration(restrict_block(n_adapted, blk), w);
        for (int i = l.lowest(); i <= l.highest(); ++i) {
            QMatrix cols = l[i].columns();
            for (std::size_t c = 0; c < cols.cols(); ++c) {
                std::vector<Rational> v(d);
                for (std::size_t t = 0; t < blk.size(); ++t) v[blk[t]] = cols(t, c);
                by_weight[i].push_back(v);
            }
        }
    }
    std::map<int, QSubspace> st;
    for (auto& [i, vs] : by_weight) st[i] = QSubspace::span(vs, d);
    // sums over blocks: accumulate lower steps
    std::map<int, QSubspace> acc;
    QSubspace run(d);
    for (int i = st.begin()->first; i <= st.rbegin()->first; ++i) {
        if (st.count(i)) run = run + st[i];
        acc.emplace(i, run);
    }
    return {d, acc};
}

}  // namespace dmhs

#endif
