#ifndef DMHS_GALLERY_COORDINATES_HPP
#define DMHS_GALLERY_COORDINATES_HPP

#include <dmhs/algebra/polynomial.hpp>
#include <dmhs/gallery/models.hpp>
#include <dmhs/mhs/mhs_point.hpp>

#include <cmath>
#include <functional>
#include <mutex>
#include <tuple>
#include <sstream>

namespace dmhs::gallery {

// Charts on the partial compactifications of the two gallery models.
enum class Space { standard, weak_diamond, diamond, star, sl2, star_val, sl2_val };

inline const std::vector<std::pair<Space, std::string>>& space_names() {
    static const std::vector<std::pair<Space, std::string>> names = {
        {Space::standard, "standard"}, {Space::weak_diamond, "weak_diamond"}, {Space::diamond, "diamond"},
        {Space::star, "star"},         {Space::sl2, "sl2"},                   {Space::star_val, "star_val"},
        {Space::sl2_val, "sl2_val"}};
    return names;
}

inline std::string to_string(Space s) {
    for (auto& [k, v] : space_names())
        if (k == s) return v;
    return "?";
}

inline Space parse_space(const std::string& s) {
    for (auto& [k, v] : space_names())
        if (v == s) return k;
    throw ValidationError("unknown space tag: " + s);
}

inline bool is_valuative(Space s) { return s == Space::star_val || s == Space::sl2_val; }

// Finite Laurent polynomial in t.
struct Laurent {
    std::map<int, Rational> c;

    bool zero() const { return c.empty(); }
    int lowest() const { return c.begin()->first; }
    Rational coeff(int k) const {
        auto it = c.find(k);
        return it == c.end() ? Rational(0) : it->second;
    }
    Laurent shifted(int k) const {
        Laurent o;
        for (auto& [e, v] : c) o.c[e + k] = v;
        return o;
    }
    Rational operator()(const Rational& t) const {
        Rational s = 0;
        for (auto& [e, v] : c) {
            Rational p = 1;
            for (int i = 0; i < std::abs(e); ++i) p *= t;
            s += e >= 0 ? Rational(v * p) : Rational(v / p);
        }
        return s;
    }
    friend bool operator==(const Laurent&, const Laurent&) = default;

    std::string to_string() const {
        if (zero()) return "0";
        std::string s;
        for (auto& [e, v] : c) {
            std::string a = dmhs::to_string(v);
            if (!s.empty() && a[0] != '-') s += "+";
            s += a;
            if (e != 0) s += "*t^" + std::to_string(e);
        }
        return s;
    }
};

// f(t) sampled exactly at t = 1/2, 1/3, ...; must be a Laurent polynomial.
inline Laurent reconstruct_laurent(const std::vector<Rational>& t, const std::vector<Rational>& v) {
    auto r = reconstruct_rational(t, v, static_cast<int>(t.size() / 2) - 2);
    if (!r) throw Error("coordinate is not a rational function of t");
    const Polynomial& den = r->den();
    int k = den.degree();
    for (int j = 0; j < k; ++j)
        if (sgn(den.coeff(j)) != 0) throw Error("coordinate is not a Laurent polynomial in t");
    Laurent out;
    for (int j = 0; j <= r->num().degree(); ++j)
        if (sgn(r->num().coeff(j)) != 0) out.c[j - k] = r->num().coeff(j) / den.leading();
    return out;
}

// A point in one of the charts: (t, delta, x, s).
struct GalleryPoint {
    Rational t;
    std::vector<Rational> delta;
    Rational x;
    std::vector<Rational> s;
    friend bool operator==(const GalleryPoint&, const GalleryPoint&) = default;
};

// The same coordinates as functions of t along a one-parameter family.
struct Trajectory {
    std::vector<Laurent> delta;
    Laurent x;
    std::vector<Laurent> s;

    GalleryPoint at(const Rational& t) const {
        GalleryPoint p{t, {}, x(t), {}};
        for (auto& d : delta) p.delta.push_back(d(t));
        for (auto& v : s) p.s.push_back(v(t));
        return p;
    }
};

// Element of V-bar: a vector, or a ray at infinity.
struct BarValue {
    bool infinite = false;
    std::vector<Rational> v;  // value, or direction scaled so the first entry is +-1
    friend bool operator==(const BarValue&, const BarValue&) = default;
};

inline BarValue ray(std::vector<Rational> v) {
    for (auto& x : v)
        if (sgn(x) != 0) {
            Rational a = abs(x);
            for (auto& y : v) y /= a;
            break;
        }
    return {true, std::move(v)};
}

// Points of (R>=0 x V-bar)_val. regular: (t, delta). The others sit over t = 0:
// p(0, l), p(c, l) with c irrational, p(c+, l), p(c-, l), p(c, mu) with c rational.
enum class ValKind { regular, p_zero, p_irrational, p_plus, p_minus, p_rational };

struct ValPoint {
    ValKind kind = ValKind::regular;
    Rational t;
    BarValue delta;      // regular: (t, delta); p_rational: mu; others: the ray l
    Rational c;          // rational c
    double c_irrational = 0;
    friend bool operator==(const ValPoint&, const ValPoint&) = default;
};

inline ValPoint val_regular(const Rational& t, std::vector<Rational> d) { return {ValKind::regular, t, {false, std::move(d)}, 0, 0}; }
inline ValPoint val_rational(const Rational& c, std::vector<Rational> mu) { return {ValKind::p_rational, 0, {false, std::move(mu)}, c, 0}; }

// Effect of delta -> t^k delta on (R>=0 x V-bar)_val.
inline ValPoint shift_valuative(const ValPoint& p, int k) {
    std::size_t d = p.delta.v.size();
    ValPoint origin = val_regular(0, std::vector<Rational>(d, Rational(0)));
    Rational kk(k);
    switch (p.kind) {
    case ValKind::regular: {
        if (sgn(p.t) == 0) return p.delta.infinite ? p : origin;
        if (p.delta.infinite) return p;
        ValPoint q = p;
        Rational f = 1;
        for (int i = 0; i < std::abs(k); ++i) f *= p.t;
        for (auto& x : q.delta.v) x = k >= 0 ? Rational(x * f) : Rational(x / f);
        return q;
    }
    case ValKind::p_zero:
        return p;
    case ValKind::p_irrational: {
        if (p.c_irrational < k) return origin;
        ValPoint q = p;
        q.c_irrational -= k;
        return q;
    }
    case ValKind::p_plus: {
        if (p.c < kk) return origin;
        ValPoint q = p;
        q.c -= kk;
        return q;
    }
    case ValKind::p_minus: {
        if (p.c <= kk) return origin;
        ValPoint q = p;
        q.c -= kk;
        return q;
    }
    case ValKind::p_rational: {
        if (p.c < kk) return origin;
        if (p.c == kk) return val_regular(0, p.delta.v);
        ValPoint q = p;
        q.c -= kk;
        return q;
    }
    }
    return p;
}

struct GalleryLimit {
    Space space = Space::standard;
    bool valuative = false;
    ValPoint val;        // valuative spaces
    BarValue delta;      // other spaces, at t = 0
    Rational x;
    std::vector<Rational> s;
};

// Names of the basis vectors of V when printing (empty: V = R, print the scalar).
inline std::string format_vector(const std::vector<Rational>& v) {
    if (v.size() == 1) return dmhs::to_string(v[0]);
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(v[k]) == 0) continue;
        std::string a = dmhs::to_string(v[k]);
        if (a == "1") a = "";
        else if (a == "-1") a = "-";
        if (!s.empty() && (a.empty() || a[0] != '-')) s += "+";
        s += a + "e" + std::to_string(k + 1);
    }
    return s.empty() ? "0" : s;
}

inline std::string format_bar(const BarValue& b) {
    if (!b.infinite) return format_vector(b.v);
    if (b.v.size() == 1) return sgn(b.v[0]) < 0 ? "-inf" : "inf";
    std::string v = format_vector(b.v);
    return v.find_first_of("+-", 1) == std::string::npos ? "inf*" + v : "inf*(" + v + ")";
}

inline std::string format_val(const ValPoint& p) {
    std::string l = format_bar(p.delta);
    switch (p.kind) {
    case ValKind::regular: return dmhs::to_string(p.t) + ", " + l;
    case ValKind::p_zero: return "p(0, " + l + ")";
    case ValKind::p_irrational: {
        std::ostringstream os;
        os << "p(" << p.c_irrational << ", " << l << ")";
        return os.str();
    }
    case ValKind::p_plus: return "p(" + dmhs::to_string(p.c) + "+, " + l + ")";
    case ValKind::p_minus: return "p(" + dmhs::to_string(p.c) + "-, " + l + ")";
    case ValKind::p_rational: return "p(" + dmhs::to_string(p.c) + ", " + l + ")";
    }
    return "?";
}

// Example III prints (t, delta, x, s); Example IV packs (x, s) into one u.
inline std::string format_tail(const Rational& x, const std::vector<Rational>& s, bool packed) {
    bool zs = true;
    for (auto& v : s)
        if (sgn(v) != 0) zs = false;
    if (!packed) return dmhs::to_string(x) + ", " + (zs ? "0" : format_vector(s));
    if (zs && sgn(x) == 0) return "0";
    std::string out = "(" + dmhs::to_string(x);
    for (auto& v : s) out += ", " + dmhs::to_string(v);
    return out + ")";
}

inline std::string format_limit(const GalleryLimit& l, bool packed) {
    std::string tail = format_tail(l.x, l.s, packed);
    if (l.valuative) {
        return "(" + format_val(l.val) + ", " + tail + ")";
    }
    return "(0, " + format_bar(l.delta) + ", " + tail + ")";
}

inline std::string format_point(const GalleryPoint& p, bool packed) {
    return "(" + dmhs::to_string(p.t) + ", " + format_vector(p.delta) + ", " + format_tail(p.x, p.s, packed) + ")";
}

namespace detail {

// tau with F^p(gr_w) = <e_hi + tau e_lo>.
inline Gaussian graded_period(const HodgeData& hd, const HodgeFiltration& fgr, int p, int w, std::size_t hi, std::size_t lo) {
    CSubspace sp = fgr[p].intersect(hd.frame().gr(w));
    if (sp.dim() != 1) throw Error("unexpected graded Hodge filtration");
    auto v = sp.vector(0);
    if (is_zero(v[hi])) throw Error("graded period at infinity");
    return v[lo] / v[hi];
}

inline Rational inverse_square(const Rational& t) {
    if (sgn(t) <= 0) throw ValidationError("t must be positive");
    return Rational(1) / (t * t);
}

inline Trajectory trace(const std::function<GalleryPoint(const Rational&)>& f, std::size_t n = 12) {
    std::vector<Rational> ts;
    std::vector<GalleryPoint> ps;
    for (std::size_t k = 0; k < n; ++k) {
        ts.emplace_back(1, static_cast<long>(k + 2));
        ps.push_back(f(ts.back()));
    }
    auto comp = [&](auto get) {
        std::vector<Rational> v;
        for (auto& p : ps) v.push_back(get(p));
        return reconstruct_laurent(ts, v);
    };
    Trajectory tr;
    for (std::size_t i = 0; i < ps[0].delta.size(); ++i) tr.delta.push_back(comp([i](const GalleryPoint& p) { return p.delta[i]; }));
    tr.x = comp([](const GalleryPoint& p) { return p.x; });
    for (std::size_t i = 0; i < ps[0].s.size(); ++i) tr.s.push_back(comp([i](const GalleryPoint& p) { return p.s[i]; }));
    return tr;
}

inline Rational limit_at_zero(const Laurent& l, const char* what) {
    if (!l.zero() && l.lowest() < 0) throw ValidationError(std::string(what) + " diverges as t -> 0");
    return l.coeff(0);
}

}  // namespace detail

// Exponent of t multiplying each delta coordinate, relative to the standard chart.
inline std::vector<int> example3_shift(Space s) {
    switch (s) {
    case Space::standard:
    case Space::weak_diamond: return {0, 0};
    case Space::diamond: return {0, -1};
    case Space::star:
    case Space::star_val: return {1, -1};
    case Space::sl2:
    case Space::sl2_val: return {4, 2};
    }
    return {0, 0};
}

inline std::vector<int> example4_shift(Space s) {
    return {s == Space::sl2 || s == Space::sl2_val ? 2 : 0};
}

inline GalleryPoint apply_shift(GalleryPoint p, const std::vector<int>& shift) {
    for (std::size_t i = 0; i < p.delta.size(); ++i) {
        Rational f = 1;
        for (int k = 0; k < std::abs(shift[i]); ++k) f *= p.t;
        p.delta[i] = shift[i] >= 0 ? Rational(p.delta[i] * f) : Rational(p.delta[i] / f);
    }
    return p;
}

inline Trajectory apply_shift(Trajectory tr, const std::vector<int>& shift) {
    for (std::size_t i = 0; i < tr.delta.size(); ++i) tr.delta[i] = tr.delta[i].shifted(shift[i]);
    return tr;
}

inline std::vector<int> shift_between(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> d;
    for (std::size_t i = 0; i < from.size(); ++i) d.push_back(to[i] - from[i]);
    return d;
}

// Standard coordinates of exp(i y N_a) F_b, y = 1/t^2, read off from delta_W and spl_W:
// delta(e3) = c1 e1 + c2 e2, spl(e3) = e3 + s1 e1 + s2 e2, F(gr_-3)^-1 = <e2 + (x + iy) e1>.
inline GalleryPoint example3_standard(const Rational& a, const Rational& b, const Rational& t) {
    Rational y = detail::inverse_square(t);
    NilpotentOrbit o = example3_orbit(a, b);
    MhsPoint p{o.data, orbit_point_imag(o, {y})};
    auto d = decompose(p);
    Gaussian tau = detail::graded_period(o.data, d.f_gr, -1, -3, 1, 0);
    if (tau.im() != y) throw Error("graded period does not match y");
    return {t, {d.delta(0, 2), d.delta(1, 2)}, tau.re(), {d.spl(0, 2), d.spl(1, 2)}};
}

inline GalleryPoint example3_point(const Rational& a, const Rational& b, const Rational& t, Space sp) {
    return apply_shift(example3_standard(a, b, t), example3_shift(sp));
}

namespace detail {

// The standard-chart trajectory does not depend on the target chart; keep the
// last few so that sweeping all charts samples the orbit once.
inline Trajectory cached_trace(int example, const Rational& a, const Rational& b,
                               const std::function<GalleryPoint(const Rational&)>& f) {
    static std::mutex mu;
    static std::map<std::tuple<int, Rational, Rational>, Trajectory> cache;
    auto key = std::make_tuple(example, a, b);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    Trajectory tr = trace(f);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 256) cache.clear();
    cache.emplace(key, tr);
    return tr;
}

}  // namespace detail

inline Trajectory example3_trajectory(const Rational& a, const Rational& b, Space sp = Space::standard) {
    Trajectory tr = detail::cached_trace(3, a, b, [&](const Rational& t) { return example3_standard(a, b, t); });
    return apply_shift(tr, example3_shift(sp));
}

// delta(e4) = r e1; spl as (s34, s24, s14, s13, s12); F(gr_-1)^0 = <e3 + (x + iy) e2>.
inline GalleryPoint example4_standard(const Rational& a, const Rational& b, const Rational& t) {
    Rational y = detail::inverse_square(t);
    NilpotentOrbit o = example4_orbit(a, b);
    MhsPoint p{o.data, orbit_point_imag(o, {y})};
    auto d = decompose(p);
    Gaussian tau = detail::graded_period(o.data, d.f_gr, 0, -1, 2, 1);
    if (tau.im() != y) throw Error("graded period does not match y");
    return {t, {d.delta(0, 3)}, tau.re(), {d.spl(2, 3), d.spl(1, 3), d.spl(0, 3), d.spl(0, 2), d.spl(0, 1)}};
}

inline GalleryPoint example4_point(const Rational& a, const Rational& b, const Rational& t, Space sp) {
    return apply_shift(example4_standard(a, b, t), example4_shift(sp));
}

inline Trajectory example4_trajectory(const Rational& a, const Rational& b, Space sp = Space::standard) {
    Trajectory tr = detail::cached_trace(4, a, b, [&](const Rational& t) { return example4_standard(a, b, t); });
    return apply_shift(tr, example4_shift(sp));
}

// Limit as t -> 0 of a trajectory given in the chart of `sp`. `line` restricts the
// boundary values of delta in the weak diamond chart (empty: no restriction).
inline GalleryLimit trajectory_limit(const Trajectory& tr, Space sp, const std::vector<bool>& line = {}) {
    GalleryLimit out;
    out.space = sp;
    out.x = detail::limit_at_zero(tr.x, "x");
    for (auto& v : tr.s) out.s.push_back(detail::limit_at_zero(v, "splitting coordinate"));
    int low = 0;
    for (auto& d : tr.delta)
        if (!d.zero()) low = std::min(low, d.lowest());
    std::vector<Rational> lead;
    for (auto& d : tr.delta) lead.push_back(d.coeff(low));
    if (is_valuative(sp)) {
        out.valuative = true;
        out.val = low < 0 ? val_rational(Rational(-low), lead) : val_regular(0, lead);
        return out;
    }
    if (low < 0) {
        if (sp == Space::diamond || sp == Space::weak_diamond)
            throw ValidationError("no limit in the " + to_string(sp) + " chart: delta diverges (the orbit is not mild)");
        out.delta = ray(lead);
        return out;
    }
    out.delta = {false, lead};
    if (sp == Space::weak_diamond && !line.empty())
        for (std::size_t i = 0; i < lead.size(); ++i)
            if (!line[i] && sgn(lead[i]) != 0) throw ValidationError("limit leaves the weak diamond space");
    return out;
}

inline GalleryLimit example3_limit(const Rational& a, const Rational& b, Space sp) {
    return trajectory_limit(example3_trajectory(a, b, sp), sp, {true, false});
}

inline GalleryLimit example4_limit(const Rational& a, const Rational& b, Space sp) {
    return trajectory_limit(example4_trajectory(a, b, sp), sp);
}

// The ladder maps of Example III, as coordinate substitutions on delta.
inline std::vector<int> example3_map_diamond_to_weak() { return {0, 1}; }
inline std::vector<int> example3_map_diamond_to_star() { return {1, 0}; }
inline std::vector<int> example3_map_star_to_sl2() { return {3, 3}; }
inline std::vector<int> example4_map_star_to_sl2() { return {2}; }

inline GalleryLimit map_valuative_limit(GalleryLimit l, int k, Space target) {
    if (!l.valuative) throw ValidationError("not a valuative limit");
    l.val = shift_valuative(l.val, k);
    l.space = target;
    return l;
}

// A path converging in the weak diamond chart whose image in the star chart
// has a c-dependent limit: (t, t c e2, 0, 0).
struct NoIIStarDemo {
    Rational c;
    Trajectory weak, star;
    GalleryLimit weak_limit, star_limit;
};

inline NoIIStarDemo no_ii_star_demo(const Rational& c) {
    NoIIStarDemo d;
    d.c = c;
    Laurent zero, tc;
    if (sgn(c) != 0) tc.c[1] = c;
    d.weak = {{zero, tc}, zero, {zero, zero}};
    d.star = apply_shift(d.weak, shift_between(example3_shift(Space::weak_diamond), example3_shift(Space::star)));
    d.weak_limit = trajectory_limit(d.weak, Space::weak_diamond, {true, false});
    d.star_limit = trajectory_limit(d.star, Space::star);
    return d;
}

}  // namespace dmhs::gallery

#endif
