#ifndef DMHS_MHS_SPLITTING_HPP
#define DMHS_MHS_SPLITTING_HPP

#include <dmhs/algebra/polynomial.hpp>
#include <dmhs/mhs/mixed_hodge.hpp>

namespace dmhs {

// A splitting s of W (adapted coordinates) with N s = s gr(N), if any.
template <class T>
std::optional<Matrix<T>> compatible_splitting(const GradedFrame& fr, const Matrix<T>& n) {
    std::size_t d = fr.size();
    if (n.rows() != d || !n.square()) throw ValidationError("dimension mismatch");
    if (!fr.preserves(n)) throw ValidationError("N does not preserve W");
    Matrix<T> ng = fr.graded_part(n);
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (fr.weights[i] < fr.weights[j]) unknowns.emplace_back(i, j);
    Matrix<T> rhs(d * d, 1);
    Matrix<T> diff = ng - n;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) rhs(r * d + c, 0) = diff(r, c);
    if (unknowns.empty()) {
        if (diff.is_zero()) return Matrix<T>::identity(d);
        return std::nullopt;
    }
    // N X - X gr(N) = gr(N) - N
    Matrix<T> a(d * d, unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        auto [i, j] = unknowns[u];
        for (std::size_t r = 0; r < d; ++r) a(r * d + j, u) += n(r, i);
        for (std::size_t c = 0; c < d; ++c) a(i * d + c, u) -= ng(j, c);
    }
    auto x = solve(a, rhs);
    if (!x) return std::nullopt;
    Matrix<T> s = Matrix<T>::identity(d);
    for (std::size_t u = 0; u < unknowns.size(); ++u) s(unknowns[u].first, unknowns[u].second) = (*x)(u, 0);
    return s;
}

inline bool splits(const GradedFrame& fr, const QMatrix& n) { return compatible_splitting(fr, n).has_value(); }

// One splitting compatible with every N_j at once.
inline std::optional<QMatrix> common_splitting(const GradedFrame& fr, const std::vector<QMatrix>& ns) {
    std::size_t d = fr.size();
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (fr.weights[i] < fr.weights[j]) unknowns.emplace_back(i, j);
    QMatrix a(d * d * ns.size(), unknowns.size()), rhs(d * d * ns.size(), 1);
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const QMatrix& n = ns[k];
        if (!fr.preserves(n)) throw ValidationError("N does not preserve W");
        QMatrix ng = fr.graded_part(n), diff = ng - n;
        std::size_t off = k * d * d;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) rhs(off + r * d + c, 0) = diff(r, c);
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            auto [i, j] = unknowns[u];
            for (std::size_t r = 0; r < d; ++r) a(off + r * d + j, u) += n(r, i);
            for (std::size_t c = 0; c < d; ++c) a(off + i * d + c, u) -= ng(j, c);
        }
    }
    if (unknowns.empty()) {
        if (rhs.is_zero()) return QMatrix::identity(d);
        return std::nullopt;
    }
    auto x = solve(a, rhs);
    if (!x) return std::nullopt;
    QMatrix s = QMatrix::identity(d);
    for (std::size_t u = 0; u < unknowns.size(); ++u) s(unknowns[u].first, unknowns[u].second) = (*x)(u, 0);
    return s;
}

inline Matrix<RationalFunction> lift_to_qt(const QMatrix& m) {
    Matrix<RationalFunction> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RationalFunction(m(i, j));
    return r;
}

struct PencilResult {
    bool split = false;
    Matrix<RationalFunction> witness;  // splitting for N1 + t N2, generic in t
    std::vector<Rational> exceptional;  // positive rational t checked separately
    std::optional<Rational> failing_t;
};

// Does (W, N1 + t N2) split for every rational t > 0?
inline PencilResult splits_pencil(const GradedFrame& fr, const QMatrix& n1, const QMatrix& n2) {
    PencilResult out;
    Matrix<RationalFunction> n = lift_to_qt(n1) + lift_to_qt(n2) * RationalFunction(Polynomial::x(), Polynomial(1));
    auto generic = compatible_splitting(fr, n);
    if (!generic) {
        for (long k = 1; k <= 64; ++k) {
            Rational t(k);
            if (!splits(fr, n1 + n2 * t)) {
                out.failing_t = t;
                break;
            }
        }
        return out;
    }
    out.witness = *generic;
    std::set<Rational> bad;
    for (std::size_t i = 0; i < generic->rows(); ++i)
        for (std::size_t j = 0; j < generic->cols(); ++j)
            for (auto& r : (*generic)(i, j).den().rational_roots())
                if (sgn(r) > 0) bad.insert(r);
    out.split = true;
    for (auto& t : bad) {
        out.exceptional.push_back(t);
        if (!splits(fr, n1 + n2 * t)) {
            out.split = false;
            out.failing_t = t;
            break;
        }
    }
    return out;
}

}  // namespace dmhs

#endif
