#ifndef DMHS_SL2_MILD_HPP
#define DMHS_SL2_MILD_HPP

#include <dmhs/algebra/polynomial.hpp>
#include <dmhs/asymptotics/asymptotics.hpp>
#include <dmhs/mhs/splitting.hpp>
#include <dmhs/sl2/limit.hpp>

#include <cmath>
#include <functional>

namespace dmhs {

struct MildResult {
    bool mild = true;
    bool exact = true;          // false: sampled interior points only
    std::size_t samples = 0;    // rational cone elements tested directly
    std::vector<Rational> failing;  // coefficients of a non-split cone element
};

inline MildResult is_mild(const NilpotentOrbit& o) {
    MildResult out;
    const GradedFrame& fr = o.data.frame();
    auto an = o.adapted_n();
    std::size_t n = an.size();
    auto unit = [&](std::size_t j) {
        std::vector<Rational> c(n, Rational(0));
        c[j] = 1;
        return c;
    };
    for (std::size_t j = 0; j < n; ++j) {
        ++out.samples;
        if (!splits(fr, an[j])) {
            out.mild = false;
            out.failing = unit(j);
            return out;
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            PencilResult p = splits_pencil(fr, an[j], an[k]);
            if (!p.split) {
                out.mild = false;
                out.failing = unit(j);
                out.failing[k] = p.failing_t.value_or(Rational(1));
                return out;
            }
        }
    if (n <= 2) return out;
    // beyond two generators: interior points with coefficients in {1,2,3}
    out.exact = false;
    std::vector<int> c(n, 1);
    while (true) {
        QMatrix x(fr.size(), fr.size());
        for (std::size_t j = 0; j < n; ++j) x += an[j] * Rational(c[j]);
        ++out.samples;
        if (!splits(fr, x)) {
            out.mild = false;
            out.failing.clear();
            for (int v : c) out.failing.push_back(v);
            return out;
        }
        std::size_t j = 0;
        while (j < n && c[j] == 3) c[j++] = 1;
        if (j == n) break;
        ++c[j];
    }
    return out;
}

// y_j = s^(n-j+1): consecutive ratios all equal s.
inline std::vector<Rational> path_point(std::size_t n, const Rational& s) {
    std::vector<Rational> y(n);
    Rational v = s;
    for (std::size_t j = n; j-- > 0;) {
        y[j] = v;
        v *= s;
    }
    return y;
}

// Entrywise limit as s -> infinity of matrices sampled exactly along a path.
// nullopt when some entry is unbounded.
inline std::optional<QMatrix> matrix_limit(const std::function<QMatrix(const Rational&)>& f, int max_degree = 16) {
    std::vector<Rational> s;
    std::vector<QMatrix> v;
    int degree = 2;
    while (degree <= max_degree) {
        while (s.size() < static_cast<std::size_t>(2 * degree + 4)) {
            Rational x(static_cast<long>(10 + s.size()));
            s.push_back(x);
            v.push_back(f(x));
        }
        QMatrix lim(v[0].rows(), v[0].cols());
        bool ok = true, bounded = true;
        for (std::size_t i = 0; i < lim.rows() && ok; ++i)
            for (std::size_t j = 0; j < lim.cols() && ok; ++j) {
                std::vector<Rational> vals;
                for (auto& m : v) vals.push_back(m(i, j));
                auto r = reconstruct_rational(s, vals, degree);
                if (!r) {
                    ok = false;
                    break;
                }
                auto l = limit_at_infinity(*r);
                if (!l) bounded = false;
                else lim(i, j) = *l;
            }
        if (ok) {
            if (!bounded) return std::nullopt;
            return lim;
        }
        degree += 4;
    }
    throw Error("could not reconstruct the trajectory as a rational function");
}

struct DiamondPoint {
    Sl2LimitData limit;
    QMatrix s;      // splitting of W, original coordinates
    QMatrix delta;  // graded coordinates
    bool weights_nonpositive = false;
    bool zero_component_in_l = false;    // Hodge type (<= -1, <= -1) for r^(gr)
    bool zero_component_matches = false; // delta_W on the torus orbit equals delta_0
    bool in_l = false;
    HodgeFiltration torus_point;
    std::map<std::vector<int>, QMatrix> components;
};

inline DiamondPoint diamond_point(const NilpotentOrbit& o) {
    validate_orbit(o);
    if (!is_mild(o).mild) throw ValidationError("orbit is not mild");
    DiamondPoint out;
    out.limit = sl2_limit(o);
    std::size_t n = o.n.size();
    auto sample = [&](const Rational& s) { return decompose(MhsPoint{o.data, orbit_point_imag(o, path_point(n, s))}); };
    if (n == 0) {
        auto d = decompose(MhsPoint{o.data, o.f});
        out.delta = d.delta;
        out.s = d.spl;
    } else {
        auto dl = matrix_limit([&](const Rational& s) { return sample(s).delta; });
        auto sl = matrix_limit([&](const Rational& s) { return sample(s).spl; });
        if (!dl || !sl) throw ValidationError("delta does not converge along the orbit");
        out.delta = *dl;
        out.s = *sl;
    }
    const GradedFrame& fr = o.data.frame();
    out.components = torus_components(out.limit.torus_weights, out.delta);
    out.weights_nonpositive = true;
    for (auto& [w, m] : out.components)
        for (int x : w)
            if (x > 0) out.weights_nonpositive = false;
    QMatrix zero = QMatrix(fr.size(), fr.size());
    std::vector<int> origin(n, 0);
    if (out.components.count(origin)) zero = out.components.at(origin);
    // a point of the limiting torus orbit Z: graded part of r^, splitting s, delta_0
    HodgeFiltration rgr = graded_hodge(fr, o.data.to_adapted(out.limit.r_hat));
    out.zero_component_in_l = in_L(fr, rgr, zero);
    if (out.zero_component_in_l) {
        QMatrix sa = o.data.splitting_to_adapted(out.s);
        out.torus_point = o.data.from_adapted(recompose(fr, rgr, sa, zero));
        out.zero_component_matches = delta_W(MhsPoint{o.data, out.torus_point}) == zero;
    }
    out.in_l = in_L(fr, rgr, out.delta);
    return out;
}

struct ProbeSample {
    double t = 0;
    double y1 = 0;
    std::vector<double> delta;  // row-major, graded coordinates
};

struct ProbeResult {
    bool converges = false;
    std::vector<double> limit;
    double cauchy_constant = 0;  // sup |delta(t) - delta(2t)| / t on the first half
    bool cauchy_bound_holds = false;
    double loglog_slope = 0;     // log |delta| against log y1 on the tail
    double linear_slope = 0;     // dominant entry against y1
    double linear_intercept = 0;
    std::size_t dominant_row = 0, dominant_col = 0;
    std::vector<ProbeSample> samples;
};

// t = 2^-k, y_j = 4^(k(n-j+1)), k = 1..depth.
inline ProbeResult probe_delta_convergence(const NilpotentOrbit& o, int depth = 20, double tol = 1e-8) {
    if (depth < 4) throw ValidationError("grid depth must be at least 4");
    std::size_t n = o.n.size();
    ProbeResult out;
    for (int k = 1; k <= depth; ++k) {
        std::vector<Rational> y(n);
        mpz_class four_k;
        mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
        Rational v(four_k);
        for (std::size_t j = n; j-- > 0;) {
            y[j] = v;
            v *= Rational(four_k);
        }
        QMatrix d = delta_W(MhsPoint{o.data, orbit_point_imag(o, y)});
        ProbeSample ps;
        ps.t = std::ldexp(1.0, -k);
        ps.y1 = n ? to_double(y[0]) : 1.0;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) ps.delta.push_back(to_double(d(i, j)));
        out.samples.push_back(std::move(ps));
    }
    auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
        double m = 0;
        for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
        return m;
    };
    std::vector<double> diff(out.samples.size(), 0.0);
    for (std::size_t k = 1; k < out.samples.size(); ++k) diff[k] = dist(out.samples[k].delta, out.samples[k - 1].delta);
    std::size_t half = out.samples.size() / 2;
    for (std::size_t k = 1; k < half; ++k) out.cauchy_constant = std::max(out.cauchy_constant, diff[k] / out.samples[k].t);
    out.cauchy_bound_holds = true;
    for (std::size_t k = half; k < out.samples.size(); ++k)
        if (diff[k] > out.cauchy_constant * out.samples[k].t * (1 + 1e-9) + 1e-12) out.cauchy_bound_holds = false;
    out.converges = diff.back() <= tol && out.cauchy_bound_holds;
    out.limit = out.samples.back().delta;
    // growth diagnostics on the tail
    const auto& last = out.samples.back().delta;
    std::size_t dom = 0;
    for (std::size_t k = 0; k < last.size(); ++k)
        if (std::abs(last[k]) > std::abs(last[dom])) dom = k;
    std::size_t d = n ? o.data.rank() : 1;
    out.dominant_row = dom / std::max<std::size_t>(d, 1);
    out.dominant_col = dom % std::max<std::size_t>(d, 1);
    if (n > 0) {
        std::vector<std::pair<double, double>> lin, lg;
        for (auto& s : out.samples) {
            lin.emplace_back(s.y1, s.delta[dom]);
            double m = 0;
            for (double x : s.delta) m = std::max(m, std::abs(x));
            if (m > 0) lg.emplace_back(std::log(s.y1), std::log(m));
        }
        LinearFit f = fit_linear_asymptotic(lin);
        out.linear_slope = f.slope;
        out.linear_intercept = f.intercept;
        if (lg.size() >= 4) out.loglog_slope = fit_linear_asymptotic(lg).slope;
    }
    return out;
}

// One-variable conditions: (i) mild, (iii) delta converges, (vii) the split
// point exp(iN)F^ has delta_W = 0, (viii) its splitting is compatible with N.
struct R1eqReport {
    bool mild = false;
    bool converges = false;
    bool split_point_delta_zero = false;
    bool splitting_compatible = false;
    ProbeResult probe;

    bool unanimous() const {
        return mild == converges && mild == split_point_delta_zero && mild == splitting_compatible;
    }
};

inline R1eqReport r1eq_battery(const NilpotentOrbit& o, int depth = 20, double tol = 1e-8) {
    if (o.n.size() != 1) throw ValidationError("the battery takes exactly one nilpotent");
    validate_orbit(o);
    R1eqReport out;
    const HodgeData& hd = o.data;
    const GradedFrame& fr = hd.frame();
    QMatrix na = hd.to_adapted(o.n[0]);
    out.mild = splits(fr, na);
    out.probe = probe_delta_convergence(o, depth, tol);
    out.converges = out.probe.converges;
    auto m = relative_monodromy(hd.W(), o.n[0]);
    if (!m) throw ValidationError("relative weight filtration does not exist");
    HodgeFiltration fhat = split_filtration(*m, o.f);
    MhsPoint r{hd, fhat.transform(exp_nilpotent(to_complex(o.n[0]) * Gaussian::i()))};
    out.split_point_delta_zero = delta_W(r).is_zero();
    QMatrix s = hd.splitting_to_adapted(spl_W(r));
    out.splitting_compatible = na * s == s * fr.graded_part(na);
    return out;
}

}  // namespace dmhs

#endif
