#ifndef DMHS_SL2_LIMIT_HPP
#define DMHS_SL2_LIMIT_HPP

#include <dmhs/mhs/mhs_point.hpp>
#include <dmhs/mhs/monodromy.hpp>
#include <dmhs/sl2/orbit.hpp>

namespace dmhs {

// Filtrations W^(j) = M(y_1 N_1 + ... + y_j N_j, W), original coordinates.
inline std::vector<QFiltration> relative_filtrations(const NilpotentOrbit& o) {
    std::vector<QFiltration> out;
    QMatrix acc_one(o.data.rank(), o.data.rank()), acc_mixed(o.data.rank(), o.data.rank());
    for (std::size_t j = 0; j < o.n.size(); ++j) {
        acc_one += o.n[j];
        acc_mixed += o.n[j] * Rational(static_cast<long>(2 * j + 3), static_cast<long>(j + 1));
        auto m1 = relative_monodromy(o.data.W(), acc_one);
        auto m2 = relative_monodromy(o.data.W(), acc_mixed);
        if (!m1 || !m2) throw ValidationError("relative weight filtration does not exist for j=" + std::to_string(j + 1));
        if (*m1 != *m2) throw ValidationError("relative weight filtration depends on y for j=" + std::to_string(j + 1));
        out.push_back(*m1);
    }
    return out;
}

struct OrbitValidation {
    std::vector<QFiltration> relative;
    std::vector<Rational> sample;
};

// Throws ValidationError naming the first failing condition.
inline OrbitValidation validate_orbit(const NilpotentOrbit& o) {
    std::size_t d = o.data.rank();
    if (o.f.ambient() != d) throw ValidationError("dimension mismatch: F");
    for (auto& x : o.n)
        if (x.rows() != d || x.cols() != d) throw ValidationError("dimension mismatch: nilpotent");
    auto an = o.adapted_n();
    for (std::size_t j = 0; j < an.size(); ++j) {
        if (!is_nilpotent(an[j])) throw ValidationError("N_" + std::to_string(j + 1) + " is not nilpotent");
        if (!in_lie_algebra(o.data, an[j])) throw ValidationError("N_" + std::to_string(j + 1) + " is not in the Lie algebra of G");
        for (std::size_t k = 0; k < j; ++k)
            if (!commutator(an[j], an[k]).is_zero()) throw ValidationError("nilpotents do not commute");
    }
    HodgeFiltration fa = o.adapted_f();
    DomainCheck c = check_domain(o.data, fa);
    if (!c.in_check_d()) throw ValidationError("F not in the compact dual: " + c.failure);
    for (std::size_t j = 0; j < an.size(); ++j) {
        CMatrix nc = to_complex(an[j]);
        for (int p = fa.lowest(); p <= fa.highest(); ++p)
            if (!fa[p - 1].contains(fa[p].image(nc))) throw ValidationError("Griffiths transversality fails for N_" + std::to_string(j + 1));
    }
    OrbitValidation out;
    out.relative = relative_filtrations(o);
    std::string last;
    for (long base : {1000L, 1000000L, 1000000000L}) {
        std::vector<Rational> y(o.n.size());
        Rational v = base;
        for (std::size_t j = o.n.size(); j-- > 0;) {
            y[j] = v;
            v *= base;
        }
        DomainCheck dc = check_domain(o.data, o.data.to_adapted(orbit_point_imag(o, y)));
        if (dc.in_d()) {
            out.sample = y;
            return out;
        }
        last = dc.failure;
    }
    throw ValidationError("orbit point not in D: " + last);
}

enum class OrbitKind { A, B };

// One graded piece of the tau-star weight decomposition of gr.
struct TorusWeightSpace {
    std::vector<int> weights;  // one entry per variable
    QSubspace space;           // in graded coordinates
};

struct Sl2LimitData {
    std::vector<QFiltration> relative;           // W^(j) on H
    std::vector<HodgeFiltration> f_hat;          // F^_(j), j = 1..n
    std::vector<std::size_t> phi_index;          // j (1-based) with W^(j)(gr) in Phi
    std::vector<QFiltration> phi;                // W^(j)(gr), graded coordinates
    HodgeFiltration r_hat;                        // point of the limiting torus orbit
    OrbitKind kind = OrbitKind::A;
    std::vector<TorusWeightSpace> torus_weights;
};

// Pure piece gr_w of a filtration on H given in adapted coordinates.
inline HodgeFiltration restrict_to_gr(const GradedFrame& fr, const HodgeFiltration& fa, int w) {
    HodgeFiltration fgr = graded_hodge(fr, fa);
    auto blk = fr.block(w);
    std::map<int, CSubspace> st;
    for (int p = fgr.lowest(); p <= fgr.highest() + 1; ++p) {
        CSubspace s = fgr[p].intersect(fr.gr(w));
        CMatrix cols = s.columns();
        st.emplace(p, CSubspace::span(cols.select_rows(blk)));
    }
    return {blk.size(), st};
}

inline QFiltration restrict_filtration(const QFiltration& f, const std::vector<std::size_t>& blk) {
    std::map<int, QSubspace> st;
    for (int i = f.lowest(); i <= f.highest(); ++i) {
        QSubspace s = f[i].intersect(QSubspace::coordinate(f.ambient(), blk));
        st.emplace(i, QSubspace::span(s.columns().select_rows(blk)));
    }
    return {blk.size(), st};
}

// Simultaneous eigenspaces of commuting diagonalizable gradings with integer eigenvalues.
inline std::vector<std::pair<std::vector<int>, QSubspace>> joint_eigenspaces(const std::vector<QMatrix>& ys, std::size_t d) {
    std::vector<std::pair<std::vector<int>, QSubspace>> cur{{{}, QSubspace::full(d)}};
    for (auto& y : ys) {
        std::vector<std::pair<std::vector<int>, QSubspace>> next;
        for (auto& [wv, sp] : cur) {
            std::size_t found = 0;
            for (int lam = -64; lam <= 64 && found < sp.dim(); ++lam) {
                QSubspace e = kernel_space(y - QMatrix::identity(d) * Rational(lam)).intersect(sp);
                if (e.dim() == 0) continue;
                auto v = wv;
                v.push_back(lam);
                next.emplace_back(v, e);
                found += e.dim();
            }
            if (found != sp.dim()) throw Error("grading is not diagonalizable with integer weights");
        }
        cur = std::move(next);
    }
    return cur;
}

inline Sl2LimitData sl2_limit(const NilpotentOrbit& o) {
    Sl2LimitData out;
    std::size_t n = o.n.size();
    const GradedFrame& fr = o.data.frame();
    out.relative = relative_filtrations(o);
    if (n == 0) {
        out.r_hat = o.f;
        return out;
    }
    out.f_hat.resize(n);
    out.f_hat[n - 1] = split_filtration(out.relative[n - 1], o.f);
    for (std::size_t j = n - 1; j >= 1; --j) {
        HodgeFiltration moved = out.f_hat[j].transform(exp_nilpotent(to_complex(o.n[j]) * Gaussian::i()));
        out.f_hat[j - 1] = split_filtration(out.relative[j - 1], moved);
    }
    auto an = o.adapted_n();
    std::optional<std::size_t> first;
    for (std::size_t j = 0; j < n; ++j)
        if (!o.n[j].is_zero()) {
            first = j;
            break;
        }
    if (!first) {
        out.r_hat = o.f;
    } else {
        out.r_hat = out.f_hat[*first].transform(exp_nilpotent(to_complex(o.n[*first]) * Gaussian::i()));
        out.kind = fr.graded_part(an[*first]).is_zero() ? OrbitKind::B : OrbitKind::A;
    }
    QMatrix acc(o.data.rank(), o.data.rank());
    bool active = false;
    std::vector<QMatrix> gradings;
    for (std::size_t j = 0; j < n; ++j) {
        acc += an[j];
        if (!fr.graded_part(an[j]).is_zero()) active = true;
        QFiltration wg = graded_relative_filtration(fr, acc);
        if (active) {
            out.phi_index.push_back(j + 1);
            out.phi.push_back(wg);
        }
        // tau-star grading: on each gr_w the real grading of (W^(j)(gr_w), F^_(j)(gr_w)), shifted by -w
        QMatrix y(o.data.rank(), o.data.rank());
        HodgeFiltration fa = o.data.to_adapted(out.f_hat[j]);
        for (int w : fr.distinct()) {
            auto blk = fr.block(w);
            QFiltration wb = restrict_filtration(wg, blk);
            HodgeFiltration fb = restrict_to_gr(fr, fa, w);
            QMatrix yb = split_grading(wb, fb);
            for (std::size_t a = 0; a < blk.size(); ++a)
                for (std::size_t b = 0; b < blk.size(); ++b)
                    y(blk[a], blk[b]) = yb(a, b) - (a == b ? Rational(w) : Rational(0));
        }
        gradings.push_back(y);
    }
    for (std::size_t a = 0; a < gradings.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (!commutator(gradings[a], gradings[b]).is_zero()) throw Error("torus gradings do not commute");
    for (auto& [wv, sp] : joint_eigenspaces(gradings, o.data.rank())) out.torus_weights.push_back({wv, sp});
    return out;
}

// Ad(tau-star)-weight decomposition of an endomorphism of gr: component of
// each weight vector.
inline std::map<std::vector<int>, QMatrix> torus_components(const std::vector<TorusWeightSpace>& tw, const QMatrix& x) {
    std::size_t d = x.rows();
    QMatrix basis(d, 0);
    std::vector<std::vector<int>> label;
    for (auto& s : tw) {
        basis = QMatrix::hstack(basis, s.space.columns());
        for (std::size_t k = 0; k < s.space.dim(); ++k) label.push_back(s.weights);
    }
    QMatrix inv = inverse_or_throw(basis, "torus basis");
    QMatrix y = inv * x * basis;
    std::map<std::vector<int>, QMatrix> out;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (is_zero(y(i, j))) continue;
            std::vector<int> w(label[i].size());
            for (std::size_t k = 0; k < w.size(); ++k) w[k] = label[i][k] - label[j][k];
            auto it = out.find(w);
            if (it == out.end()) it = out.emplace(w, QMatrix(d, d)).first;
            it->second(i, j) = y(i, j);
        }
    for (auto& [w, m] : out) m = basis * m * inv;
    return out;
}

}  // namespace dmhs

#endif
