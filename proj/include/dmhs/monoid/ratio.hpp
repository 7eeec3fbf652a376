#ifndef DMHS_MONOID_RATIO_HPP
#define DMHS_MONOID_RATIO_HPP

#include <dmhs/monoid/monoid.hpp>

namespace dmhs {

// [0, inf] with x/0 = inf for x > 0; 0 * inf is an error.
struct ExtendedRational {
    bool infinite = false;
    Rational value;

    static ExtendedRational inf() { return {true, 0}; }
    static ExtendedRational of(const Rational& x) {
        if (sgn(x) < 0) throw ValidationError("negative value in [0, inf]");
        return {false, x};
    }
    bool is_zero() const { return !infinite && sgn(value) == 0; }

    ExtendedRational inverse() const {
        if (infinite) return of(0);
        if (sgn(value) == 0) return inf();
        return of(Rational(1) / value);
    }
    friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite || b.infinite) return inf();
        return of(a.value + b.value);
    }
    friend ExtendedRational operator*(const ExtendedRational& a, const ExtendedRational& b) {
        if ((a.infinite && b.is_zero()) || (b.infinite && a.is_zero())) throw ValidationError("0 * inf is undefined");
        if (a.infinite || b.infinite) return inf();
        return of(a.value * b.value);
    }
    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
};

inline std::string to_string(const ExtendedRational& x) { return x.infinite ? "inf" : to_string(x.value); }

inline ExtendedRational parse_extended(const std::string& s) {
    if (s == "inf" || s == "infinity") return ExtendedRational::inf();
    return ExtendedRational::of(parse_rational(s));
}

// A point of R(S): faces S = S(0) > ... > S(n) = {1}, and N_j on S(j-1) with N_j(q_j) = 1.
// functionals[j] is the canonical representative of N_(j+1) (orthogonal to the
// annihilator of the span of S(j)).
struct RatioPoint {
    std::vector<Face> flag;
    std::vector<std::vector<Rational>> functionals;
    std::vector<std::size_t> markers;

    std::size_t length() const { return functionals.size(); }
    friend bool operator==(const RatioPoint& a, const RatioPoint& b) {
        return a.flag == b.flag && a.functionals == b.functionals && a.markers == b.markers;
    }
};

using PairMap = std::function<ExtendedRational(const IntVec&, const IntVec&)>;

namespace detail {

// Orthogonal projection of h onto span(S(face)).
inline std::vector<Rational> project_to_face(const FsMonoid& m, const Face& f, const std::vector<Rational>& h) {
    std::size_t n = m.ambient_rank();
    QSubspace sp = m.span(f.gens);
    if (sp.dim() == 0) return std::vector<Rational>(n, Rational(0));
    QMatrix b = sp.columns(), hb(n, 1);
    for (std::size_t k = 0; k < n; ++k) hb(k, 0) = h[k];
    QMatrix bt = b.transpose();
    QMatrix p = b * *solve(bt * b, bt * hb);
    return p.column(0);
}

inline std::size_t depth(const FsMonoid& m, const RatioPoint& p, const IntVec& f) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < p.flag.size(); ++k)
        if (m.face_contains(p.flag[k], f)) j = k;
    return j;
}

inline IntVec unit_vector(std::size_t m, std::size_t k) {
    IntVec v(m, 0);
    v[k] = 1;
    return v;
}

}  // namespace detail

inline void validate_ratio_point(const FsMonoid& m, const RatioPoint& p) {
    if (p.flag.size() != p.functionals.size() + 1 || p.markers.size() != p.functionals.size())
        throw ValidationError("ratio point: flag, functionals and markers have inconsistent lengths");
    if (!(p.flag.front() == m.whole())) throw ValidationError("ratio point: flag must start at the whole monoid");
    if (!p.flag.back().gens.empty()) throw ValidationError("ratio point: flag must end at the trivial face");
    for (std::size_t j = 0; j + 1 < p.flag.size(); ++j) {
        const Face& big = p.flag[j];
        const Face& small = p.flag[j + 1];
        if (small.gens.size() >= big.gens.size() || !std::includes(big.gens.begin(), big.gens.end(), small.gens.begin(), small.gens.end()))
            throw ValidationError("ratio point: flag is not strictly decreasing");
        const auto& h = p.functionals[j];
        if (h.size() != m.ambient_rank()) throw ValidationError("ratio point: functional has wrong length");
        if (detail::project_to_face(m, big, h) != h) throw ValidationError("ratio point: functional is not in canonical form");
        for (auto g : big.gens) {
            bool deep = std::binary_search(small.gens.begin(), small.gens.end(), g);
            int s = sgn(dot(h, m.generators()[g]));
            if (deep && s != 0) throw ValidationError("ratio point: N_j does not kill the next face");
            if (!deep && s <= 0) throw ValidationError("ratio point: N_j is not positive off the next face");
        }
        std::size_t q = p.markers[j];
        if (!std::binary_search(big.gens.begin(), big.gens.end(), q) || std::binary_search(small.gens.begin(), small.gens.end(), q))
            throw ValidationError("ratio point: marker not in S(j-1) minus S(j)");
        if (dot(h, m.generators()[q]) != 1) throw ValidationError("ratio point: N_j(q_j) != 1");
    }
}

// r(f, g). Elements deeper in the flag are less degenerate, so r(f, g) = 0 when
// f lies strictly deeper than g and inf in the opposite case.
inline ExtendedRational ratio_to_pair_map(const FsMonoid& m, const RatioPoint& p, const IntVec& f, const IntVec& g) {
    m.require(f, "f");
    m.require(g, "g");
    if (is_origin(f) && is_origin(g)) throw ValidationError("r(1, 1) is undefined");
    std::size_t j = detail::depth(m, p, f), k = detail::depth(m, p, g);
    if (j > k) return ExtendedRational::of(0);
    if (j < k) return ExtendedRational::inf();
    const auto& h = p.functionals[j];
    return ExtendedRational::of(dot(h, f) / dot(h, g));
}

// Test elements for the axioms: nonzero generators, 1, and pairwise sums.
inline std::vector<IntVec> axiom_test_elements(const FsMonoid& m) {
    std::vector<IntVec> t;
    const auto& g = m.generators();
    t.push_back(IntVec(m.ambient_rank(), 0));
    for (auto& x : g) t.push_back(x);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j) t.push_back(g[i] + g[j]);
    return t;
}

inline void check_pair_map_axioms(const FsMonoid& m, const PairMap& r) {
    auto t = axiom_test_elements(m);
    auto show = [](const IntVec& v) {
        std::string s = "(";
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
        return s + ")";
    };
    for (auto& f : t)
        for (auto& g : t) {
            if (is_origin(f) && is_origin(g)) continue;
            if (!(r(g, f) == r(f, g).inverse()))
                throw ValidationError("pair map violates axiom (i) at " + show(f) + ", " + show(g));
        }
    for (auto& f : t)
        for (auto& g : t)
            for (auto& h : t) {
                if ((is_origin(f) && is_origin(g)) || (is_origin(g) && is_origin(h)) || (is_origin(f) && is_origin(h))) continue;
                auto a = r(f, g), b = r(g, h);
                if ((a.is_zero() && b.infinite) || (a.infinite && b.is_zero())) continue;
                if (!(a * b == r(f, h)))
                    throw ValidationError("pair map violates axiom (ii) at " + show(f) + ", " + show(g) + ", " + show(h));
            }
    const auto& gens = m.generators();
    for (auto& f : gens)
        for (auto& g : t)
            for (auto& h : t) {
                if (is_origin(h) && is_origin(f + g)) continue;
                if (is_origin(h) && (is_origin(f) || is_origin(g))) continue;
                if (!(r(f + g, h) == r(f, h) + r(g, h)))
                    throw ValidationError("pair map violates axiom (iii) at " + show(f) + ", " + show(g) + ", " + show(h));
            }
}

// The flag of faces S(r, f) = {g : r(g, f) != inf} and N_j = r(-, q_j).
inline RatioPoint ratio_from_pair_map(const FsMonoid& m, const PairMap& r) {
    if (!m.sharp()) throw ValidationError("monoid is not sharp");
    check_pair_map_axioms(m, r);
    const auto& gens = m.generators();
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t f = 0; f < gens.size(); ++f) {
        std::vector<std::size_t> s;
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (!r(gens[g], gens[f]).infinite) s.push_back(g);
        if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
    }
    sets.push_back({});
    std::sort(sets.begin(), sets.end(), [](auto& a, auto& b) { return a.size() > b.size(); });
    RatioPoint p;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (k + 1 < sets.size() && !std::includes(sets[k].begin(), sets[k].end(), sets[k + 1].begin(), sets[k + 1].end()))
            throw ValidationError("pair map violates axiom (ii): faces S(r, f) are not totally ordered");
        p.flag.push_back(m.face_from_generators(sets[k]));
    }
    if (!(p.flag.front() == m.whole())) throw Error("flag does not start at the whole monoid");
    std::size_t n = m.ambient_rank();
    for (std::size_t j = 0; j + 1 < p.flag.size(); ++j) {
        const Face& big = p.flag[j];
        const Face& small = p.flag[j + 1];
        std::size_t q = 0;
        for (auto g : big.gens)
            if (!std::binary_search(small.gens.begin(), small.gens.end(), g)) {
                q = g;
                break;
            }
        // N_j from its values on the generators of S(j-1)
        QMatrix a(big.gens.size(), n), b(big.gens.size(), 1);
        for (std::size_t i = 0; i < big.gens.size(); ++i) {
            for (std::size_t k = 0; k < n; ++k) a(i, k) = gens[big.gens[i]][k];
            auto v = r(gens[big.gens[i]], gens[q]);
            if (v.infinite) throw ValidationError("pair map violates axiom (ii): infinite value inside a face");
            b(i, 0) = v.value;
        }
        auto x = solve(a, b);
        if (!x) throw ValidationError("pair map violates axiom (iii): N_j is not additive on S(j-1)");
        p.functionals.push_back(detail::project_to_face(m, big, x->column(0)));
        p.markers.push_back(q);
    }
    validate_ratio_point(m, p);
    return p;
}

inline PairMap pair_map_of(const FsMonoid& m, const RatioPoint& p) {
    return [&m, p](const IntVec& f, const IntVec& g) { return ratio_to_pair_map(m, p, f, g); };
}

// V = {a : (l_1(a), ..., l_r(a)) >= 0 lexicographically}.
struct LexValuation {
    std::vector<std::vector<Rational>> functionals;

    int sign(const IntVec& a) const {
        for (auto& l : functionals) {
            int s = sgn(dot(l, a));
            if (s != 0) return s;
        }
        return 0;
    }
    bool contains(const IntVec& a) const { return sign(a) >= 0; }
};

inline void validate_valuation(const FsMonoid& m, const LexValuation& v) {
    for (auto& l : v.functionals)
        if (l.size() != m.ambient_rank()) throw ValidationError("valuation functional has wrong length");
    for (auto& g : m.generators())
        if (v.sign(g) <= 0) throw ValidationError("valuation does not contain S with trivial units");
}

// r_V(f, g) read off at the first functional not vanishing on both.
inline ExtendedRational valuation_pair(const LexValuation& v, const IntVec& f, const IntVec& g) {
    for (auto& l : v.functionals) {
        Rational a = dot(l, f), b = dot(l, g);
        if (sgn(a) == 0 && sgn(b) == 0) continue;
        if (sgn(b) == 0) return ExtendedRational::inf();
        if (sgn(a) == 0) return ExtendedRational::of(0);
        return ExtendedRational::of(a / b);
    }
    throw ValidationError("r_V(1, 1) is undefined");
}

inline RatioPoint valuation_to_ratio(const FsMonoid& m, const LexValuation& v) {
    validate_valuation(m, v);
    return ratio_from_pair_map(m, [&v](const IntVec& f, const IntVec& g) { return valuation_pair(v, f, g); });
}

// Bounds from sup{a/b : f^b/g^a in V} and inf{a/b : g^a/f^b in V} with b <= D, a <= cap.
struct OracleBounds {
    ExtendedRational lower, upper;
};

inline OracleBounds valuation_oracle(const LexValuation& v, const IntVec& f, const IntVec& g, long d, long cap = 100000) {
    OracleBounds out{ExtendedRational::of(0), ExtendedRational::inf()};
    for (long b = 1; b <= d; ++b) {
        // largest a with b f - a g in V (monotone in a since g >= 0)
        long lo = 0, hi = cap;
        if (!v.contains(scaled(f, b))) lo = -1;
        else
            while (lo < hi) {
                long mid = (lo + hi + 1) / 2;
                if (v.contains(scaled(f, b) - scaled(g, mid))) lo = mid;
                else hi = mid - 1;
            }
        if (lo >= 0) {
            auto x = ExtendedRational::of(Rational(lo, b));
            if (out.lower < x) out.lower = x;
        }
        // smallest a with a g - b f in V
        long a0 = 0, a1 = cap + 1;
        while (a0 < a1) {
            long mid = (a0 + a1) / 2;
            if (v.contains(scaled(g, mid) - scaled(f, b))) a1 = mid;
            else a0 = mid + 1;
        }
        if (a0 <= cap) {
            auto x = ExtendedRational::of(Rational(a0, b));
            if (x < out.upper) out.upper = x;
        }
    }
    return out;
}

// The valuation built from the kernels Q(j) = ker N_j on S(j-1)_Q and a basis
// of Q(j)/S(j)_Q, as in the surjectivity argument.
inline LexValuation ratio_lift_valuation(const FsMonoid& m, const RatioPoint& p) {
    validate_ratio_point(m, p);
    std::size_t n = m.ambient_rank();
    LexValuation v;
    for (std::size_t j = 0; j < p.length(); ++j) {
        const auto& nj = p.functionals[j];
        v.functionals.push_back(nj);
        QSubspace big = m.span(p.flag[j].gens), small = m.span(p.flag[j + 1].gens);
        QMatrix row(1, n);
        for (std::size_t k = 0; k < n; ++k) row(0, k) = nj[k];
        QSubspace q = big.intersect(QSubspace::span(kernel(row)));
        // complement of S(j)_Q inside Q(j), then dual functionals vanishing on S(j)_Q
        std::vector<std::vector<Rational>> comp;
        QSubspace cur = small;
        for (std::size_t k = 0; k < q.dim(); ++k) {
            auto x = q.vector(k);
            if (!cur.contains(x)) {
                comp.push_back(x);
                cur = cur + QSubspace::span({x}, n);
            }
        }
        QMatrix sb = small.columns();
        for (std::size_t c = 0; c < comp.size(); ++c) {
            // l with l(comp_c') = delta, l(S(j)) = 0
            std::size_t rows = comp.size() + sb.cols();
            QMatrix a(rows, n), b(rows, 1);
            for (std::size_t i = 0; i < comp.size(); ++i) {
                for (std::size_t k = 0; k < n; ++k) a(i, k) = comp[i][k];
                b(i, 0) = i == c ? 1 : 0;
            }
            for (std::size_t i = 0; i < sb.cols(); ++i)
                for (std::size_t k = 0; k < n; ++k) a(comp.size() + i, k) = sb(k, i);
            auto x = solve(a, b);
            if (!x) throw Error("dual functional construction failed");
            v.functionals.push_back(x->column(0));
        }
    }
    validate_valuation(m, v);
    return v;
}

// Chart of R(N^n) at the flag Phi: S(j) generated by q_(j+1), ..., q_n.
inline void require_free(const FsMonoid& m) {
    std::size_t n = m.ambient_rank();
    if (m.generators().size() != n) throw ValidationError("chart needs the standard monoid N^n");
    for (std::size_t k = 0; k < n; ++k)
        if (m.generators()[k] != detail::unit_vector(n, k)) throw ValidationError("chart needs the standard monoid N^n");
}

inline std::vector<Rational> chart_Nn(const FsMonoid& m, const RatioPoint& p) {
    require_free(m);
    validate_ratio_point(m, p);
    std::size_t n = m.ambient_rank();
    for (auto& f : p.flag) {
        bool tail = true;
        for (std::size_t i = 0; i < f.gens.size(); ++i)
            if (f.gens[i] != n - f.gens.size() + i) tail = false;
        if (!tail) {
            std::string s;
            for (auto k : f.gens) s += " q" + std::to_string(k + 1);
            throw ValidationError("point outside the chart: face <" + s + " > is not in the flag");
        }
    }
    std::vector<Rational> t;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        auto r = ratio_to_pair_map(m, p, detail::unit_vector(n, j + 1), detail::unit_vector(n, j));
        if (r.infinite) throw Error("chart coordinate is infinite");
        t.push_back(r.value);
    }
    return t;
}

inline RatioPoint chart_Nn_inverse(const FsMonoid& m, const std::vector<Rational>& t) {
    require_free(m);
    std::size_t n = m.ambient_rank();
    if (t.size() + 1 != n && !(n == 0 && t.empty())) throw ValidationError("chart needs n - 1 coordinates");
    for (auto& x : t)
        if (sgn(x) < 0) throw ValidationError("chart coordinates must be >= 0");
    RatioPoint p;
    std::size_t start = 0;
    auto tail_face = [&](std::size_t from) {
        std::vector<std::size_t> g;
        for (std::size_t k = from; k < n; ++k) g.push_back(k);
        return m.face_from_generators(g);
    };
    p.flag.push_back(tail_face(0));
    while (start < n) {
        std::size_t end = start + 1;  // block [start, end)
        while (end < n && sgn(t[end - 1]) != 0) ++end;
        std::vector<Rational> h(n, Rational(0));
        Rational v = 1;
        for (std::size_t k = start; k < end; ++k) {
            h[k] = v;
            if (k + 1 < end) v *= t[k];
        }
        p.functionals.push_back(h);
        p.markers.push_back(start);
        p.flag.push_back(tail_face(end));
        start = end;
    }
    validate_ratio_point(m, p);
    return p;
}

}  // namespace dmhs

#endif
