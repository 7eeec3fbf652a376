#ifndef DMHS_SL2_TRIPLE_HPP
#define DMHS_SL2_TRIPLE_HPP

#include <dmhs/mhs/monodromy.hpp>

namespace dmhs {

// [H, N] = -2N, [H, N+] = 2N+, [N+, N] = H.
struct Sl2Triple {
    QMatrix n;
    QMatrix h;
    QMatrix n_plus;
};

inline bool is_sl2_triple(const Sl2Triple& t) {
    return commutator(t.h, t.n) == t.n * Rational(-2) && commutator(t.h, t.n_plus) == t.n_plus * Rational(2) &&
           commutator(t.n_plus, t.n) == t.h;
}

// Solve for N+ given N and the grading H.
inline Sl2Triple sl2_triple(const QMatrix& n, const QMatrix& h) {
    std::size_t d = n.rows();
    if (!n.square() || h.rows() != d || !h.square()) throw ValidationError("dimension mismatch");
    if (commutator(h, n) != n * Rational(-2)) throw ValidationError("inconsistent grading: [H, N] != -2N");
    // unknown X: H X - X H - 2X = 0 and X N - N X = H
    QMatrix a(2 * d * d, d * d), b(2 * d * d, 1);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t u = i * d + j;  // unknown X(i,j)
            for (std::size_t r = 0; r < d; ++r) {
                a(r * d + j, u) += h(r, i);            // (H X)(r, j)
                a(d * d + r * d + j, u) -= n(r, i);    // -(N X)(r, j)
            }
            for (std::size_t c = 0; c < d; ++c) {
                a(i * d + c, u) -= h(j, c);            // -(X H)(i, c)
                a(d * d + i * d + c, u) += n(j, c);    // (X N)(i, c)
            }
            a(u, u) -= 2;
        }
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) b(d * d + r * d + c, 0) = h(r, c);
    auto x = solve(a, b);
    if (!x) throw ValidationError("inconsistent grading: no N+ exists");
    QMatrix np(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) np(i, j) = (*x)(i * d + j, 0);
    Sl2Triple t{n, h, np};
    if (!is_sl2_triple(t)) throw Error("sl2 triple check failed");
    return t;
}

// Decomposition V = ⊕ V_(k,r), V_(k,r) = (N+)^r Z_(-k), Z = ker N.
struct PrimitiveDecomposition {
    std::map<std::pair<int, int>, QSubspace> pieces;

    // Component of v in each piece.
    std::map<std::pair<int, int>, std::vector<Rational>> components(const std::vector<Rational>& v) const {
        std::size_t d = v.size();
        QMatrix basis(d, 0);
        std::vector<std::pair<int, int>> label;
        for (auto& [kr, s] : pieces) {
            basis = QMatrix::hstack(basis, s.columns());
            for (std::size_t k = 0; k < s.dim(); ++k) label.push_back(kr);
        }
        QMatrix rhs(d, 1);
        for (std::size_t k = 0; k < d; ++k) rhs(k, 0) = v[k];
        auto c = solve(basis, rhs);
        if (!c) throw Error("vector outside the decomposition");
        std::map<std::pair<int, int>, std::vector<Rational>> out;
        for (std::size_t k = 0; k < label.size(); ++k) {
            if (is_zero((*c)(k, 0))) continue;
            auto& vec = out[label[k]];
            if (vec.empty()) vec.assign(d, Rational(0));
            for (std::size_t i = 0; i < d; ++i) vec[i] += (*c)(k, 0) * basis(i, k);
        }
        return out;
    }
};

inline PrimitiveDecomposition primitive_decomposition(const Sl2Triple& t) {
    std::size_t d = t.n.rows();
    PrimitiveDecomposition out;
    QSubspace z = kernel_space(t.n);
    std::size_t total = 0;
    for (int k = 0; k <= static_cast<int>(2 * d); ++k) {
        QSubspace zk = z.intersect(kernel_space(t.h + QMatrix::identity(d) * Rational(k)));
        if (zk.dim() == 0) continue;
        QSubspace cur = zk;
        for (int r = 0; r <= k; ++r) {
            out.pieces.emplace(std::make_pair(k, r), cur);
            total += cur.dim();
            cur = cur.image(t.n_plus);
        }
    }
    if (total != d) throw Error("primitive decomposition is incomplete");
    return out;
}

// Matrix units spanning E_w = ⊕_a Hom(gr_a, gr_{a+w}) in graded coordinates.
inline std::vector<std::pair<std::size_t, std::size_t>> endomorphism_units(const GradedFrame& fr, int w) {
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < fr.size(); ++i)
        for (std::size_t j = 0; j < fr.size(); ++j)
            if (fr.weights[i] == fr.weights[j] + w) units.emplace_back(i, j);
    return units;
}

inline QMatrix unit_to_matrix(const std::vector<std::pair<std::size_t, std::size_t>>& units, const std::vector<Rational>& coords,
                              std::size_t d) {
    QMatrix m(d, d);
    for (std::size_t u = 0; u < units.size(); ++u) m(units[u].first, units[u].second) = coords[u];
    return m;
}

inline std::vector<Rational> matrix_to_units(const std::vector<std::pair<std::size_t, std::size_t>>& units, const QMatrix& m) {
    std::vector<Rational> c(units.size());
    for (std::size_t u = 0; u < units.size(); ++u) c[u] = m(units[u].first, units[u].second);
    return c;
}

// Adjoint action of a graded triple on E_w, in the basis of matrix units.
inline Sl2Triple adjoint_triple(const GradedFrame& fr, const Sl2Triple& t, int w) {
    auto units = endomorphism_units(fr, w);
    std::size_t m = units.size(), d = fr.size();
    auto ad = [&](const QMatrix& x) {
        QMatrix a(m, m);
        for (std::size_t u = 0; u < m; ++u) {
            QMatrix e(d, d);
            e(units[u].first, units[u].second) = 1;
            auto col = matrix_to_units(units, commutator(x, e));
            for (std::size_t v = 0; v < m; ++v) a(v, u) = col[v];
        }
        return a;
    };
    return {ad(t.n), ad(t.h), ad(t.n_plus)};
}

// Decomposition E_w = ⊕ E_{w,(k,r)}, pieces as subspaces of End(gr) (flattened row-major).
struct EndomorphismDecomposition {
    int w;
    std::vector<std::pair<std::size_t, std::size_t>> units;
    PrimitiveDecomposition dec;

    std::map<std::pair<int, int>, QMatrix> components(const QMatrix& x, std::size_t d) const {
        std::map<std::pair<int, int>, QMatrix> out;
        if (units.empty()) return out;
        for (auto& [kr, v] : dec.components(matrix_to_units(units, x))) out[kr] = unit_to_matrix(units, v, d);
        return out;
    }
};

inline EndomorphismDecomposition endomorphism_decomposition(const GradedFrame& fr, const Sl2Triple& t, int w) {
    EndomorphismDecomposition out{w, endomorphism_units(fr, w), {}};
    if (out.units.empty()) return out;
    out.dec = primitive_decomposition(adjoint_triple(fr, t, w));
    return out;
}

// Membership of the monomial t^m X, X in E_{w,(k,r)}, in the rings A0 ⊂ A, B0 ⊂ B.
inline bool monomial_in_A(int m, int /*k*/, int r) { return m >= 2 * r && m % 2 == 0; }
inline bool monomial_in_A0(int m, int /*k*/, int r) { return m == 0 && r == 0; }
inline bool monomial_in_B(int m, int k, int /*r*/) { return m >= k && (m - k) % 2 == 0; }
inline bool monomial_in_B0(int m, int k, int r) { return m == k && r == 0; }

}  // namespace dmhs

#endif
