#ifndef DMHS_GALLERY_NOCKS_HPP
#define DMHS_GALLERY_NOCKS_HPP

#include <dmhs/gallery/models.hpp>
#include <dmhs/sl2/limit.hpp>

#include <cmath>

namespace dmhs::gallery {

// Rank 2m+1 family with basis e'_1..e'_m, e_1..e_m, e (indices 0..2m).
// (W, N1) splits, (W, N2) does not, and delta_W along the rescaled orbit
// does not converge for m >= 3.
struct NoCksFamily {
    int m = 0;
    int epsilon = 1;  // sign of the pairing on gr_{-m}
    NilpotentOrbit orbit;

    std::size_t ep(int j) const { return static_cast<std::size_t>(j - 1); }
    std::size_t e(int j) const { return static_cast<std::size_t>(m + j - 1); }
    std::size_t e0() const { return static_cast<std::size_t>(2 * m); }
};

inline NilpotentOrbit nocks_orbit(int m, int epsilon) {
    std::size_t n = 2 * m + 1;
    auto ep = [](int j) { return static_cast<std::size_t>(j - 1); };
    auto e = [m](int j) { return static_cast<std::size_t>(m + j - 1); };
    std::size_t e0 = 2 * m;
    std::vector<std::size_t> low;
    for (std::size_t k = 0; k < n - 1; ++k) low.push_back(k);
    QFiltration w(n, {{-m, coords(n, low)}, {0, QSubspace::full(n)}});
    // <,> on gr_{-m} is b (x) b': b antisymmetric on (e', e), b'(g_j, g_{m+1-j}) = (-1)^j eps
    QMatrix p(2 * m, 2 * m);
    for (int j = 1; j <= m; ++j) {
        int k = m + 1 - j;
        Rational bj = (j % 2 == 0 ? 1 : -1) * epsilon;
        p(ep(j), e(k)) = bj;
        p(e(j), ep(k)) = -bj;
    }
    HodgeNumbers h{{{0, 0}, 1}, {{0, -m}, 1}, {{-m, 0}, 1}};
    for (int j = -1; j >= 1 - m; --j) h[{j, -m - j}] = 2;
    HodgeData hd(n, w, {{-m, p}, {0, QMatrix::from_rows({{1}})}}, h);
    QMatrix n1(n, n), n2(n, n);
    for (int j = 1; j <= m; ++j) n1(ep(j), e(j)) = 1;
    n2(ep(m), e0) = 1;
    for (int j = 2; j <= m; ++j) {
        n2(e(j - 1), e(j)) = 1;
        n2(ep(j - 1), ep(j)) = 1;
    }
    std::map<int, std::vector<std::vector<Gaussian>>> gens;
    std::vector<std::vector<Gaussian>> cur = {cvec(n, {{e0, 1}}), cvec(n, {{e(m), 1}})};
    gens[0] = cur;
    for (int j = 1; j <= m - 1; ++j) {
        cur.push_back(cvec(n, {{e(m - j), 1}}));
        cur.push_back(cvec(n, {{ep(m - j + 1), 1}}));
        gens[-j] = cur;
    }
    std::vector<std::vector<Gaussian>> all;
    for (std::size_t k = 0; k < n; ++k) all.push_back(cvec(n, {{k, 1}}));
    gens[-m] = all;
    return {hd, {n1, n2}, hodge_filtration(n, gens)};
}

// Picks the pairing sign for which (N1, N2, F) generates a nilpotent orbit.
inline NoCksFamily nocks_family(int m) {
    if (m < 1) throw ValidationError("m must be at least 1");
    std::string last;
    for (int eps : {1, -1}) {
        try {
            NilpotentOrbit o = nocks_orbit(m, eps);
            validate_orbit(o);
            return {m, eps, o};
        } catch (const ValidationError& err) {
            last = err.what();
        }
    }
    throw Error("no pairing sign makes the family a nilpotent orbit: " + last);
}

// t*(y) with r1 = (y2/y1)^(1/2), r2 = y2^(-1/2) given exactly.
inline QMatrix nocks_torus(const NoCksFamily& f, const Rational& r1, const Rational& r2) {
    int m = f.m;
    QMatrix t = QMatrix::identity(2 * m + 1);
    auto pw = [](const Rational& x, int k) {
        Rational r = 1;
        for (int i = 0; i < std::abs(k); ++i) r *= x;
        return k >= 0 ? r : Rational(1) / r;
    };
    for (int j = 1; j <= m; ++j) {
        t(f.e(j), f.e(j)) = pw(r1, 1) * pw(r2, 2 * j - m);
        t(f.ep(j), f.ep(j)) = pw(r1, -1) * pw(r2, 2 * j - m - 2);
    }
    return t;
}

// The fixed vector w = sum_{k odd} (-1)^((k-1)/2) / k! e'_{m-k+1} (graded coordinates).
inline std::vector<Rational> nocks_w(const NoCksFamily& f) {
    std::vector<Rational> w(2 * f.m + 1);
    Rational fact = 1;
    for (int k = 1; k <= f.m; ++k) {
        fact *= k;
        if (k % 2 == 1) w[f.ep(f.m - k + 1)] = Rational((k / 2) % 2 == 0 ? 1 : -1) / fact;
    }
    return w;
}

struct NoCksSample {
    Rational s, y1, y2, u;
    QMatrix delta;          // delta_W(F_y), graded coordinates
    std::vector<Rational> delta_e;
};

struct NoCksReport {
    int m = 0;
    int epsilon = 0;
    bool w_nonzero = false;
    bool claim_holds = false;          // w not in the (0,-m)+(-m,0) component
    std::vector<Rational> direction;   // delta_W(F_y)(e) / u_y
    bool direction_constant = false;   // same on every exact sample of both paths
    bool direction_is_projection = false;
    std::vector<NoCksSample> path4, path5;  // y1 = y2^4 and y1 = y2^5
    double limit_gap = 0;              // sup-norm gap between the two path limits
};

// F_y = t*(y)^{-1} exp(i y1 N1 + i y2 N2) F at y2 = s^2, y1 = s^(2k).
inline NoCksSample nocks_sample(const NoCksFamily& f, const Rational& s, int k) {
    NoCksSample out;
    out.s = s;
    out.y2 = s * s;
    out.y1 = 1;
    for (int i = 0; i < 2 * k; ++i) out.y1 *= s;
    Rational r1 = 1;
    for (int i = 0; i < k - 1; ++i) r1 /= s;  // (y2/y1)^(1/2) = s^(1-k)
    Rational r2 = Rational(1) / s;
    // u = y1^(-1/2) y2^((m+1)/2) = s^(m+1-k)
    out.u = 1;
    for (int i = 0; i < std::abs(f.m + 1 - k); ++i) out.u *= s;
    if (f.m + 1 - k < 0) out.u = Rational(1) / out.u;
    HodgeFiltration fy = orbit_point_imag(f.orbit, {out.y1, out.y2});
    fy = fy.transform(to_complex(inverse_or_throw(nocks_torus(f, r1, r2))));
    out.delta = delta_W(MhsPoint{f.orbit.data, fy});
    out.delta_e.resize(2 * f.m + 1);
    for (std::size_t i = 0; i < out.delta_e.size(); ++i) out.delta_e[i] = out.delta(i, f.e0());
    return out;
}

inline NoCksReport nocks_report(int m, int samples = 4) {
    NoCksFamily f = nocks_family(m);
    NoCksReport out;
    out.m = m;
    out.epsilon = f.epsilon;
    auto w = nocks_w(f);
    for (auto& x : w)
        if (sgn(x) != 0) out.w_nonzero = true;
    std::size_t n = 2 * m + 1;
    // claim: w is not a combination of exp(+-i(N1+N2)) e_m
    CMatrix nn = to_complex(f.orbit.n[0] + f.orbit.n[1]);
    CMatrix a(n, 2), rhs(n, 1);
    CMatrix gp = exp_nilpotent(nn * Gaussian::i()), gm = exp_nilpotent(nn * (-Gaussian::i()));
    for (std::size_t i = 0; i < n; ++i) {
        a(i, 0) = gp(i, f.e(m));
        a(i, 1) = gm(i, f.e(m));
        rhs(i, 0) = Gaussian(w[i]);
    }
    out.claim_holds = !solve(a, rhs).has_value();
    // projection of w onto the middle Hodge components of gr F_y (independent of y)
    HodgeFiltration fgr = graded_hodge(f.orbit.data.frame(), f.orbit.data.to_adapted(f.orbit.f.transform(gp)));
    CMatrix wm(n, n);
    for (std::size_t i = 0; i < n; ++i) wm(i, f.e0()) = Gaussian(w[i]);
    CMatrix proj(n, n);
    for (auto& [t, c] : hodge_components(f.orbit.data.frame(), fgr, wm))
        if (t.first <= -1 && t.first >= 1 - m) proj += c;
    out.direction_constant = true;
    for (int k : {4, 5}) {
        auto& dst = k == 4 ? out.path4 : out.path5;
        for (int i = 0; i < samples; ++i) {
            NoCksSample smp = nocks_sample(f, Rational(2 + i), k);
            std::vector<Rational> dir;
            for (auto& x : smp.delta_e) dir.push_back(x / smp.u);
            if (out.direction.empty()) out.direction = dir;
            else if (dir != out.direction) out.direction_constant = false;
            dst.push_back(std::move(smp));
        }
    }
    out.direction_is_projection = true;
    for (std::size_t i = 0; i < n; ++i)
        if (proj(i, f.e0()) != Gaussian(out.direction[i])) out.direction_is_projection = false;
    // far out on both paths (for m = 3: u = 1 along y1 = y2^4, u -> 0 along y1 = y2^5)
    double gap = 0;
    NoCksSample a4 = nocks_sample(f, Rational(1024), 4), a5 = nocks_sample(f, Rational(1024), 5);
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(to_double(a4.delta_e[i]) - to_double(a5.delta_e[i])));
    out.limit_gap = gap;
    return out;
}

}  // namespace dmhs::gallery

#endif
