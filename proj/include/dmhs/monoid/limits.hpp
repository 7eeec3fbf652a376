#ifndef DMHS_MONOID_LIMITS_HPP
#define DMHS_MONOID_LIMITS_HPP

#include <dmhs/algebra/scalar.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace dmhs {

// Element of [0, inf]: exact rational, a real known numerically (irrational), or inf.
struct LimitValue {
    enum Kind { rational, real, infinite } kind = rational;
    Rational q;
    double x = 0;

    static LimitValue of(const Rational& r) { return {rational, r, r.get_d()}; }
    static LimitValue approx(double v) { return {real, 0, v}; }
    static LimitValue inf() { return {infinite, 0, INFINITY}; }

    double value() const { return kind == rational ? q.get_d() : x; }
    bool positive_rational() const { return kind == rational && sgn(q) > 0; }
    bool is_zero() const { return kind == rational && sgn(q) == 0; }

    friend bool operator==(const LimitValue& a, const LimitValue& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == rational) return a.q == b.q;
        if (a.kind == infinite) return true;
        return std::abs(a.x - b.x) <= 1e-12 * std::max(1.0, std::abs(a.x));
    }
};

inline std::string to_string(const LimitValue& v) {
    if (v.kind == LimitValue::infinite) return "inf";
    if (v.kind == LimitValue::rational) return to_string(v.q);
    std::ostringstream os;
    os.precision(12);
    os << v.x;
    return os.str();
}

// Points over (0,0) of S_[:] (r), S_val (p) and S_[val] (s) for S = R^2_{>=0}.
struct LimitLabel {
    char tag = 'r';
    LimitValue a;
    std::optional<LimitValue> c;

    friend bool operator==(const LimitLabel&, const LimitLabel&) = default;
};

inline std::string to_string(const LimitLabel& l) {
    std::string s(1, l.tag);
    s += "(" + to_string(l.a);
    if (l.c) s += ", " + to_string(*l.c);
    return s + ")";
}

inline LimitLabel label_r(LimitValue a) { return {'r', a, std::nullopt}; }
inline LimitLabel label_p(LimitValue a, std::optional<LimitValue> c = std::nullopt) { return {'p', a, c}; }
inline LimitLabel label_s(LimitValue a, std::optional<LimitValue> c = std::nullopt) { return {'s', a, c}; }

// q = c tau^alpha exp(-kappa tau^-beta) as tau -> 0+, so that
// -log q = kappa tau^-beta + alpha (-log tau) - log c.
struct PathComponent {
    Rational coeff = 1;
    Rational alpha = 0;
    Rational kappa = 0;
    LimitValue beta = LimitValue::of(1);
};

struct PathSpec {
    PathComponent q1, q2;
};

// (c q, q)
inline PathSpec linear_path(const Rational& c) {
    if (sgn(c) <= 0) throw ValidationError("c must be positive");
    return {{c, 1, 0, LimitValue::of(1)}, {1, 1, 0, LimitValue::of(1)}};
}

// (exp(-1/t), exp(-1/t^a))
inline PathSpec power_exponential_path(const LimitValue& a) {
    if (a.kind == LimitValue::infinite || a.value() <= 0) throw ValidationError("a must be positive and finite");
    return {{1, 0, 1, LimitValue::of(1)}, {1, 0, 1, a}};
}

struct LimitClassification {
    LimitLabel ratio;      // S_[:]
    LimitLabel val;        // S_val
    LimitLabel ratio_val;  // S_[val]
};

namespace detail {

inline int compare_exponents(const LimitValue& a, const LimitValue& b) {
    if (a.kind == LimitValue::rational && b.kind == LimitValue::rational) return a.q < b.q ? -1 : (a.q > b.q ? 1 : 0);
    if (a == b) return 0;
    return a.value() < b.value() ? -1 : 1;
}

inline LimitValue ratio_of(const LimitValue& a, const LimitValue& b) {
    if (a.kind == LimitValue::rational && b.kind == LimitValue::rational) return LimitValue::of(a.q / b.q);
    return LimitValue::approx(a.value() / b.value());
}

// x^e with x > 0, exact when e is an integer
inline LimitValue power(const Rational& x, const LimitValue& e) {
    if (e.kind == LimitValue::rational && e.q.get_den() == 1) {
        Rational r = 1;
        long n = e.q.get_num().get_si();
        for (long k = 0; k < std::labs(n); ++k) r *= x;
        return LimitValue::of(n >= 0 ? r : Rational(1 / r));
    }
    if (x == 1) return LimitValue::of(1);
    return LimitValue::approx(std::pow(x.get_d(), e.value()));
}

inline void require_degenerating(const PathComponent& p, const char* name) {
    if (sgn(p.coeff) <= 0) throw ValidationError(std::string(name) + ": coefficient must be positive");
    if (sgn(p.alpha) < 0 || sgn(p.kappa) < 0) throw ValidationError(std::string(name) + ": exponents must be >= 0");
    if (sgn(p.kappa) == 0 && sgn(p.alpha) == 0) throw ValidationError(std::string("no limit along path: ") + name + " does not tend to 0");
    if (sgn(p.kappa) > 0 && (p.beta.kind == LimitValue::infinite || p.beta.value() <= 0))
        throw ValidationError(std::string(name) + ": beta must be positive");
}

inline bool power_led(const PathComponent& p) { return sgn(p.kappa) > 0; }

}  // namespace detail

inline LimitClassification classify_limit(const PathSpec& path) {
    const PathComponent &q1 = path.q1, &q2 = path.q2;
    detail::require_degenerating(q1, "q1");
    detail::require_degenerating(q2, "q2");
    LimitClassification out;

    // a = lim log q2 / log q1
    LimitValue a;
    bool p1 = detail::power_led(q1), p2 = detail::power_led(q2);
    if (p1 && p2) {
        int c = detail::compare_exponents(q2.beta, q1.beta);
        a = c > 0 ? LimitValue::inf() : (c < 0 ? LimitValue::of(0) : LimitValue::of(q2.kappa / q1.kappa));
    } else if (p1) {
        a = LimitValue::of(0);
    } else if (p2) {
        a = LimitValue::inf();
    } else {
        a = LimitValue::of(q2.alpha / q1.alpha);
    }
    out.ratio = label_r(a);

    // c = lim q1^a / q2 = exp(lim (L2 - a L1)) when a is a positive rational
    if (a.positive_rational()) {
        std::map<double, Rational> growth;  // power terms by exponent (descending after sort)
        std::map<double, LimitValue> keys;
        auto add = [&](const LimitValue& beta, const Rational& k) {
            for (auto& [x, b] : keys)
                if (detail::compare_exponents(b, beta) == 0) {
                    growth[x] += k;
                    return;
                }
            keys[beta.value()] = beta;
            growth[beta.value()] += k;
        };
        if (p1) add(q1.beta, -a.q * q1.kappa);
        if (p2) add(q2.beta, q2.kappa);
        Rational logc = q2.alpha - a.q * q1.alpha;
        int sign = 0;
        for (auto it = growth.rbegin(); it != growth.rend() && sign == 0; ++it) sign = sgn(it->second);
        if (sign == 0) sign = sgn(logc);
        LimitValue c;
        if (sign > 0) c = LimitValue::inf();
        else if (sign < 0) c = LimitValue::of(0);
        else {
            LimitValue c1a = detail::power(q1.coeff, a);
            if (c1a.kind == LimitValue::rational) c = LimitValue::of(c1a.q / q2.coeff);
            else c = LimitValue::approx(c1a.x / q2.coeff.get_d());
        }
        out.val = label_p(a, c);
    } else {
        out.val = label_p(a);
    }

    // t_j = -1/log q_j: a' = lim log t2 / log t1 = lim log L2 / log L1, c' = lim L2 / L1^a'
    LimitValue as;
    std::optional<LimitValue> cs;
    if (p1 && p2) {
        as = detail::ratio_of(q2.beta, q1.beta);
        if (as.positive_rational()) {
            LimitValue k = detail::power(q1.kappa, as);
            cs = k.kind == LimitValue::rational ? LimitValue::of(q2.kappa / k.q) : LimitValue::approx(q2.kappa.get_d() / k.x);
        }
    } else if (p1) {
        as = LimitValue::of(0);
    } else if (p2) {
        as = LimitValue::inf();
    } else {
        as = LimitValue::of(1);
        cs = LimitValue::of(q2.alpha / q1.alpha);
    }
    out.ratio_val = label_s(as, cs);
    return out;
}

}  // namespace dmhs

#endif
