#ifndef DMHS_MHS_MIXED_HODGE_HPP
#define DMHS_MHS_MIXED_HODGE_HPP

#include <dmhs/algebra/filtration.hpp>

#include <map>
#include <utility>

namespace dmhs {

using Bigrading = std::map<std::pair<int, int>, CSubspace>;

// Coordinates adapted to a weight filtration: basis vectors sorted by weight,
// gr identified with the same coordinate space. Everything in this header
// works in such coordinates.
struct GradedFrame {
    std::vector<int> weights;

    std::size_t size() const { return weights.size(); }
    std::vector<std::size_t> block(int w) const {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < weights.size(); ++k)
            if (weights[k] == w) idx.push_back(k);
        return idx;
    }
    std::vector<int> distinct() const {
        std::vector<int> out;
        for (int w : weights)
            if (out.empty() || out.back() != w) out.push_back(w);
        return out;
    }
    std::vector<std::size_t> upto(int w) const {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < weights.size(); ++k)
            if (weights[k] <= w) idx.push_back(k);
        return idx;
    }
    int span() const { return weights.empty() ? 0 : weights.back() - weights.front(); }

    CSubspace W(int w) const { return CSubspace::coordinate(size(), upto(w)); }
    CSubspace gr(int w) const { return CSubspace::coordinate(size(), block(w)); }

    // X preserves W.
    template <class T>
    bool preserves(const Matrix<T>& x) const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (!is_zero(x(i, j)) && weights[i] > weights[j]) return false;
        return true;
    }
    // X maps W_k into W_{k-d}.
    template <class T>
    bool lowers_by(const Matrix<T>& x, int d) const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (!is_zero(x(i, j)) && weights[i] > weights[j] - d) return false;
        return true;
    }
    // Block diagonal part.
    template <class T>
    Matrix<T> graded_part(const Matrix<T>& x) const {
        Matrix<T> g(size(), size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (weights[i] == weights[j]) g(i, j) = x(i, j);
        return g;
    }
    // Component of x mapping gr_a to gr_{a+d}.
    template <class T>
    Matrix<T> weight_component(const Matrix<T>& x, int d) const {
        Matrix<T> g(size(), size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (weights[i] == weights[j] + d) g(i, j) = x(i, j);
        return g;
    }
};

// Weight-adapted analysis for an arbitrary rational weight filtration on H.
struct FrameChange {
    AdaptedBasis basis;
    QMatrix inv;
    GradedFrame frame;

    explicit FrameChange(const QFiltration& w)
        : basis(adapted_basis(w)), inv(inverse_or_throw(basis.basis)), frame{basis.weights} {}

    HodgeFiltration in(const HodgeFiltration& f) const { return f.transform(to_complex(inv)); }
    HodgeFiltration out(const HodgeFiltration& f) const { return f.transform(to_complex(basis.basis)); }
    QMatrix in(const QMatrix& x) const { return inv * x * basis.basis; }
    QMatrix out(const QMatrix& x) const { return basis.basis * x * inv; }
};

// F on gr: the image of F^p ∩ W_w in gr_w, summed over w.
inline HodgeFiltration graded_hodge(const GradedFrame& fr, const HodgeFiltration& f) {
    std::size_t n = fr.size();
    std::map<int, CSubspace> st;
    for (int p = f.lowest(); p <= f.highest() + 1; ++p) {
        CSubspace acc(n);
        for (int w : fr.distinct()) {
            CSubspace piece = f[p].intersect(fr.W(w));
            if (piece.dim() == 0) continue;
            CMatrix cols = piece.columns();
            auto blk = fr.block(w);
            CMatrix proj(n, cols.cols());
            for (std::size_t c = 0; c < cols.cols(); ++c)
                for (std::size_t k : blk) proj(k, c) = cols(k, c);
            acc = acc + CSubspace::span(proj);
        }
        st.emplace(p, acc);
    }
    return {n, st};
}

// Hodge decomposition H^{p,q} = F^p ∩ conj(F^q) on each gr_w.
inline Bigrading hodge_decomposition(const GradedFrame& fr, const HodgeFiltration& fgr) {
    Bigrading out;
    HodgeFiltration fb = conj(fgr);
    for (int w : fr.distinct()) {
        CSubspace g = fr.gr(w);
        for (int p = fgr.lowest(); p <= fgr.highest(); ++p) {
            int q = w - p;
            CSubspace h = fgr[p].intersect(fb[q]).intersect(g);
            if (h.dim() > 0) out.emplace(std::make_pair(p, q), h);
        }
    }
    return out;
}

inline std::map<std::pair<int, int>, int> hodge_numbers_of(const GradedFrame& fr, const HodgeFiltration& fgr) {
    std::map<std::pair<int, int>, int> h;
    for (int w : fr.distinct()) {
        CSubspace g = fr.gr(w);
        for (int p = fgr.lowest(); p <= fgr.highest(); ++p) {
            int d = static_cast<int>(fgr[p].intersect(g).dim()) - static_cast<int>(fgr[p + 1].intersect(g).dim());
            if (d > 0) h[{p, w - p}] = d;
        }
    }
    return h;
}

// Each gr_w carries a pure Hodge structure of weight w.
inline bool graded_pieces_pure(const GradedFrame& fr, const HodgeFiltration& fgr) {
    HodgeFiltration fb = conj(fgr);
    for (int w : fr.distinct()) {
        CSubspace g = fr.gr(w);
        for (int p = fgr.lowest(); p <= fgr.highest() + 1; ++p) {
            CSubspace a = fgr[p].intersect(g);
            CSubspace b = fb[w - p + 1].intersect(g);
            if (a.intersect(b).dim() != 0 || a.dim() + b.dim() != g.dim()) return false;
        }
    }
    return true;
}

inline Bigrading deligne_bigrading(const GradedFrame& fr, const HodgeFiltration& f) {
    std::size_t n = fr.size();
    HodgeFiltration fb = conj(f);
    Bigrading out;
    int lo = f.lowest(), hi = f.highest();
    for (int w : fr.distinct())
        for (int p = lo; p <= hi; ++p) {
            int q = w - p;
            CSubspace inner = fb[q].intersect(fr.W(w));
            for (int j = 1; j <= w - fr.weights.front() + 1; ++j) inner = inner + fb[q - j].intersect(fr.W(w - j - 1));
            CSubspace ipq = f[p].intersect(fr.W(w)).intersect(inner);
            if (ipq.dim() > 0) out.emplace(std::make_pair(p, q), ipq);
        }
    std::size_t total = 0;
    CSubspace sum(n);
    for (auto& [k, s] : out) {
        total += s.dim();
        sum = sum + s;
    }
    if (total != n || sum.dim() != n) throw ValidationError("Deligne bigrading does not decompose the space");
    return out;
}

// Splitting gr -> H sending gr_k onto the sum of I^{p,q}, p+q=k.
inline CMatrix deligne_splitting(const GradedFrame& fr, const Bigrading& ipq) {
    std::size_t n = fr.size();
    CMatrix s(n, n);
    for (int w : fr.distinct()) {
        CSubspace e(n);
        for (auto& [pq, sub] : ipq)
            if (pq.first + pq.second == w) e = e + sub;
        auto blk = fr.block(w);
        if (e.dim() != blk.size()) throw ValidationError("Deligne bigrading has wrong dimension in weight " + std::to_string(w));
        CMatrix cols = e.columns();
        CMatrix top = cols.select_rows(blk);
        CMatrix lift = cols * inverse_or_throw(top, "graded projection");
        for (std::size_t c = 0; c < blk.size(); ++c)
            for (std::size_t i = 0; i < n; ++i) s(i, blk[c]) = lift(i, c);
    }
    return s;
}

// Components X_{p,q} of an endomorphism of gr with respect to the Hodge decomposition.
inline std::map<std::pair<int, int>, CMatrix> hodge_components(const GradedFrame& fr, const HodgeFiltration& fgr, const CMatrix& x) {
    Bigrading h = hodge_decomposition(fr, fgr);
    std::size_t n = fr.size();
    CMatrix basis(n, 0);
    std::vector<std::pair<int, int>> label;
    for (auto& [pq, sub] : h) {
        basis = CMatrix::hstack(basis, sub.columns());
        for (std::size_t k = 0; k < sub.dim(); ++k) label.push_back(pq);
    }
    if (label.size() != n) throw ValidationError("Hodge decomposition of gr is incomplete");
    CMatrix inv = inverse_or_throw(basis, "Hodge basis");
    CMatrix y = inv * x * basis;
    std::map<std::pair<int, int>, CMatrix> comps;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (is_zero(y(i, j))) continue;
            std::pair<int, int> t{label[i].first - label[j].first, label[i].second - label[j].second};
            auto it = comps.find(t);
            if (it == comps.end()) it = comps.emplace(t, CMatrix(n, n)).first;
            it->second(i, j) = y(i, j);
        }
    for (auto& [t, m] : comps) m = basis * m * inv;
    return comps;
}

struct DeltaSplitting {
    HodgeFiltration f_gr;
    QMatrix delta;    // on gr, in L
    QMatrix s_prime;  // real splitting with F = s'(exp(i delta) F_gr)
};

inline DeltaSplitting delta_splitting(const GradedFrame& fr, const HodgeFiltration& f) {
    HodgeFiltration fgr = graded_hodge(fr, f);
    if (!graded_pieces_pure(fr, fgr)) throw ValidationError("graded pieces are not pure Hodge structures");
    Bigrading ipq = deligne_bigrading(fr, f);
    CMatrix sd = deligne_splitting(fr, ipq);
    CMatrix g = conj(sd) * inverse_or_throw(sd, "Deligne splitting");
    CMatrix dt = log_unipotent(g) * (Gaussian::i() * Gaussian(Rational(1, 2)));
    CMatrix d = inverse_or_throw(sd) * dt * sd;
    CMatrix sp = exp_nilpotent(dt * (-Gaussian::i())) * sd;
    DeltaSplitting out{fgr, real_matrix(d, "delta"), real_matrix(sp, "real splitting")};
    if (!fr.lowers_by(out.delta, 2)) throw Error("delta does not lower weights by 2");
    return out;
}

// Depth the closed zeta formula handles, measured as weight span.
inline constexpr int kMaxWeightSpan = 4;

inline bool is_pure_type_minus_one(const std::map<std::pair<int, int>, CMatrix>& comps) {
    for (auto& [t, m] : comps)
        if (t != std::make_pair(-1, -1) && !m.is_zero()) return false;
    return true;
}

// zeta as a function of (F_gr, delta); linear in delta within the supported depth.
inline QMatrix zeta_of(const GradedFrame& fr, const HodgeFiltration& fgr, const QMatrix& delta) {
    std::size_t n = fr.size();
    if (delta.is_zero()) return QMatrix(n, n);
    auto comps = hodge_components(fr, fgr, to_complex(delta));
    if (is_pure_type_minus_one(comps)) return QMatrix(n, n);
    if (fr.span() > kMaxWeightSpan)
        throw UnsupportedDepthError("weight span " + std::to_string(fr.span()) + " exceeds " + std::to_string(kMaxWeightSpan));
    static const std::map<std::pair<int, int>, Gaussian> coeff = {
        {{-1, -2}, Gaussian(Rational(0), Rational(-1, 2))},
        {{-2, -1}, Gaussian(Rational(0), Rational(1, 2))},
        {{-1, -3}, Gaussian(Rational(0), Rational(-3, 4))},
        {{-3, -1}, Gaussian(Rational(0), Rational(3, 4))},
    };
    CMatrix z(n, n);
    for (auto& [t, m] : comps) {
        auto it = coeff.find(t);
        if (it != coeff.end()) z += m * it->second;
    }
    return real_matrix(z, "zeta");
}

struct CanonicalDecomposition {
    HodgeFiltration f_gr;
    QMatrix spl;
    QMatrix delta;
    QMatrix zeta;
    QMatrix s_prime;
};

inline CanonicalDecomposition canonical_decomposition(const GradedFrame& fr, const HodgeFiltration& f) {
    DeltaSplitting ds = delta_splitting(fr, f);
    QMatrix z = zeta_of(fr, ds.f_gr, ds.delta);
    return {ds.f_gr, ds.s_prime * exp_nilpotent(z), ds.delta, z, ds.s_prime};
}

inline HodgeFiltration recompose(const GradedFrame& fr, const HodgeFiltration& fgr, const QMatrix& spl, const QMatrix& delta) {
    QMatrix z = zeta_of(fr, fgr, delta);
    QMatrix sp = spl * exp_nilpotent(-z);
    CMatrix g = to_complex(sp) * exp_nilpotent(to_complex(delta) * Gaussian::i());
    return fgr.transform(g);
}

// delta lies in L(F_gr): components of Hodge type (p,q) with p,q <= -1, weight <= -2.
inline bool in_L(const GradedFrame& fr, const HodgeFiltration& fgr, const QMatrix& delta) {
    if (!fr.lowers_by(delta, 2)) return false;
    for (auto& [t, m] : hodge_components(fr, fgr, to_complex(delta)))
        if (!m.is_zero() && (t.first > -1 || t.second > -1)) return false;
    return true;
}

// Real splitting of W in adapted coordinates: unipotent, block upper triangular.
inline bool is_splitting(const GradedFrame& fr, const QMatrix& s) {
    if (!s.square() || s.rows() != fr.size()) return false;
    return fr.preserves(s) && fr.graded_part(s) == QMatrix::identity(fr.size());
}

}  // namespace dmhs

#endif
