#ifndef DMHS_ALGEBRA_POLYNOMIAL_HPP
#define DMHS_ALGEBRA_POLYNOMIAL_HPP

#include <dmhs/algebra/matrix.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace dmhs {

// Univariate polynomial over Q, coefficients low degree first.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) : c_{c} { trim(); }  // NOLINT
    Polynomial(long c) : c_{Rational(c)} { trim(); }  // NOLINT
    explicit Polynomial(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static Polynomial x() { return Polynomial(std::vector<Rational>{0, 1}); }

    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& t) const {
        Rational v = 0;
        for (std::size_t k = c_.size(); k-- > 0;) v = v * t + c_[k];
        return v;
    }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& x : p.c_) x = -x;
        return p;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return Polynomial(c);
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.zero() || b.zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(c);
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Quotient and remainder.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.zero()) throw Error("polynomial division by zero");
        std::vector<Rational> r = a.c_;
        int db = b.degree();
        std::vector<Rational> q(std::max(0, a.degree() - db + 1), Rational(0));
        for (int k = a.degree(); k >= db; --k) {
            Rational f = r[k] / b.leading();
            if (sgn(f) == 0) continue;
            q[k - db] = f;
            for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
        }
        return {Polynomial(q), Polynomial(r)};
    }
    Polynomial monic() const {
        if (zero()) return *this;
        Polynomial p = *this;
        Rational l = leading();
        for (auto& x : p.c_) x /= l;
        return p;
    }
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.zero()) {
            Polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // Rational roots by the rational root theorem on the cleared integer polynomial.
    std::vector<Rational> rational_roots() const {
        std::vector<Rational> out;
        if (degree() <= 0) return out;
        Polynomial p = *this;
        // strip roots at zero
        std::size_t low = 0;
        while (low < p.c_.size() && sgn(p.c_[low]) == 0) ++low;
        if (low > 0) {
            out.push_back(0);
            p = Polynomial(std::vector<Rational>(p.c_.begin() + low, p.c_.end()));
        }
        if (p.degree() <= 0) return out;
        mpz_class lcm = 1;
        for (auto& x : p.c_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<mpz_class> ic;
        for (auto& x : p.c_) ic.push_back(mpz_class(x * lcm));
        auto divisors = [](mpz_class v) {
            v = abs(v);
            std::vector<mpz_class> d;
            for (mpz_class k = 1; k * k <= v; ++k)
                if (v % k == 0) {
                    d.push_back(k);
                    if (k * k != v) d.push_back(v / k);
                }
            return d;
        };
        std::set<Rational> found;
        for (auto& num : divisors(ic.front()))
            for (auto& den : divisors(ic.back()))
                for (int s : {1, -1}) {
                    Rational r(mpz_class(s * num), den);
                    r.canonicalize();
                    if (sgn(p(r)) == 0) found.insert(r);
                }
        out.insert(out.end(), found.begin(), found.end());
        return out;
    }

    std::string to_string(const std::string& var = "t") const {
        if (zero()) return "0";
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (sgn(c_[k]) == 0) continue;
            Rational a = abs(c_[k]);
            std::string sign = sgn(c_[k]) < 0 ? "-" : (s.empty() ? "" : "+");
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            std::string coef = (k > 0 && a == 1) ? "" : dmhs::to_string(a) + (k > 0 ? "*" : "");
            s += sign + coef + mono;
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Element of Q(t), kept as num/den with den monic and gcd 1.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
    RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RationalFunction(Polynomial n, Polynomial d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool zero() const { return num_.zero(); }

    RationalFunction operator-() const { return {-num_, den_}; }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.zero()) throw Error("division by zero in Q(t)");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    Rational operator()(const Rational& t) const {
        Rational d = den_(t);
        if (sgn(d) == 0) throw Error("pole");
        return num_(t) / d;
    }

    std::string to_string(const std::string& var = "t") const {
        if (den_.degree() == 0) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    void normalize() {
        if (den_.zero()) throw Error("zero denominator in Q(t)");
        if (num_.zero()) {
            den_ = Polynomial(1);
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        num_ = Polynomial::divmod(num_, g).first;
        den_ = Polynomial::divmod(den_, g).first;
        Rational l = den_.leading();
        num_ = num_ * Polynomial(Rational(1) / l);
        den_ = den_ * Polynomial(Rational(1) / l);
    }
    Polynomial num_;
    Polynomial den_;
};

inline bool is_zero(const RationalFunction& f) { return f.zero(); }
inline RationalFunction conj(const RationalFunction& f) { return f; }
inline std::string to_string(const RationalFunction& f) { return f.to_string(); }

// Recover f in Q(s) from exact values at the sample points, trying
// numerator and denominator degree d = 0, 1, ... up to max_degree. Needs
// at least 2 max_degree + 4 points; the fit is checked on all of them.
inline std::optional<RationalFunction> reconstruct_rational(const std::vector<Rational>& s, const std::vector<Rational>& v,
                                                            int max_degree) {
    if (s.size() != v.size()) throw Error("sample size mismatch");
    for (int d = 0; d <= max_degree; ++d) {
        std::size_t need = 2 * d + 4;
        if (s.size() < need) break;
        std::size_t m = 2 * d + 2;
        // num(s_k) - v_k den(s_k) = 0
        Matrix<Rational> a(s.size(), m);
        for (std::size_t k = 0; k < s.size(); ++k) {
            Rational pw = 1;
            for (int e = 0; e <= d; ++e) {
                a(k, e) = pw;
                a(k, d + 1 + e) = -v[k] * pw;
                pw *= s[k];
            }
        }
        Matrix<Rational> ker = kernel(a);
        if (ker.cols() == 0) continue;
        std::vector<Rational> nc(d + 1), dc(d + 1);
        for (int e = 0; e <= d; ++e) {
            nc[e] = ker(e, 0);
            dc[e] = ker(d + 1 + e, 0);
        }
        Polynomial den(dc);
        if (den.zero()) continue;
        bool ok = true;
        for (auto& x : s)
            if (sgn(den(x)) == 0) ok = false;
        if (ok) return RationalFunction(Polynomial(nc), den);
    }
    return std::nullopt;
}

// Limit of f(s) as s -> +infinity; nullopt when it is infinite.
inline std::optional<Rational> limit_at_infinity(const RationalFunction& f) {
    int dn = f.num().degree(), dd = f.den().degree();
    if (f.zero() || dn < dd) return Rational(0);
    if (dn > dd) return std::nullopt;
    return f.num().leading() / f.den().leading();
}

}  // namespace dmhs

#endif
