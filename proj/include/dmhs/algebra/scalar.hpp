#ifndef DMHS_ALGEBRA_SCALAR_HPP
#define DMHS_ALGEBRA_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dmhs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input that violates a documented precondition or axiom.
struct ValidationError : Error {
    using Error::Error;
};

// Weight span beyond what the closed formulas cover.
struct UnsupportedDepthError : Error {
    using Error::Error;
};

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ValidationError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline Rational conj(const Rational& r) { return r; }
inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "a", "a/b", with optional sign.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ValidationError("empty rational literal");
    for (char c : s)
        if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
            throw ValidationError("malformed rational literal: " + s);
    std::string t = s[0] == '+' ? s.substr(1) : s;
    auto slash = t.find('/');
    if (slash != std::string::npos && t.substr(slash + 1) == "0")
        throw ValidationError("zero denominator: " + s);
    Rational r;
    if (r.set_str(t, 10) != 0) throw ValidationError("malformed rational literal: " + s);
    if (r.get_den() == 0) throw ValidationError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Element of Q(i).
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(const Rational& re) : re_(re) {}  // NOLINT
    Gaussian(const Rational& re, const Rational& im) : re_(re), im_(im) {}
    Gaussian(long re) : re_(re) {}  // NOLINT

    static Gaussian i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    Gaussian operator-() const { return {Rational(-re_), Rational(-im_)}; }
    Gaussian& operator+=(const Gaussian& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Gaussian& operator*=(const Gaussian& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = m;
        return *this;
    }
    Gaussian& operator/=(const Gaussian& o) {
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        if (sgn(n) == 0) throw Error("division by zero in Q(i)");
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational m = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = r;
        im_ = m;
        return *this;
    }
    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    bool is_real() const { return sgn(im_) == 0; }

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_zero(const Gaussian& z) { return sgn(z.re()) == 0 && sgn(z.im()) == 0; }
inline Gaussian conj(const Gaussian& z) { return {z.re(), Rational(-z.im())}; }
inline Rational norm2(const Gaussian& z) { return z.re() * z.re() + z.im() * z.im(); }

// "a/b+c/d*i"; a bare "i" or "-i" means unit imaginary.
inline std::string to_string(const Gaussian& z) {
    if (z.is_real()) return to_string(z.re());
    std::string im = to_string(z.im());
    if (sgn(z.re()) == 0) return im + "*i";
    return to_string(z.re()) + (sgn(z.im()) > 0 ? "+" : "") + im + "*i";
}

inline Gaussian parse_gaussian(const std::string& s) {
    if (s.empty()) throw ValidationError("empty scalar literal");
    if (s.find(' ') != std::string::npos) throw ValidationError("whitespace in scalar literal: " + s);
    if (s.back() != 'i') return Gaussian(parse_rational(s));
    std::string body = s.substr(0, s.size() - 1);
    // split real and imaginary parts at the last sign not in leading position
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_part = split == std::string::npos ? body : body.substr(split);
    if (!im_part.empty() && im_part.back() == '*') im_part.pop_back();
    else if (!im_part.empty() && im_part != "+" && im_part != "-")
        throw ValidationError("malformed complex literal: " + s);
    Rational im;
    if (im_part.empty() || im_part == "+") im = 1;
    else if (im_part == "-") im = -1;
    else im = parse_rational(im_part);
    Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
    return {re, im};
}

inline std::ostream& operator<<(std::ostream& os, const Gaussian& z) { return os << to_string(z); }

// Prime field, used by the brute-force filtration search in tests.
template <int P>
class ModP {
public:
    ModP() = default;
    ModP(long v) : v_(static_cast<int>(((v % P) + P) % P)) {}  // NOLINT
    int value() const { return v_; }
    ModP operator-() const { return ModP(-v_); }
    ModP& operator+=(ModP o) { v_ = (v_ + o.v_) % P; return *this; }
    ModP& operator-=(ModP o) { v_ = (v_ - o.v_ + P) % P; return *this; }
    ModP& operator*=(ModP o) { v_ = (v_ * o.v_) % P; return *this; }
    ModP& operator/=(ModP o) { return *this *= o.inverse(); }
    ModP inverse() const {
        if (v_ == 0) throw Error("division by zero mod p");
        for (int k = 1; k < P; ++k)
            if ((v_ * k) % P == 1) return ModP(k);
        throw Error("no inverse mod p");
    }
    friend ModP operator+(ModP a, ModP b) { return a += b; }
    friend ModP operator-(ModP a, ModP b) { return a -= b; }
    friend ModP operator*(ModP a, ModP b) { return a *= b; }
    friend ModP operator/(ModP a, ModP b) { return a /= b; }
    friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
    friend bool operator!=(ModP a, ModP b) { return a.v_ != b.v_; }

private:
    int v_ = 0;
};

template <int P>
bool is_zero(ModP<P> x) { return x.value() == 0; }
template <int P>
ModP<P> conj(ModP<P> x) { return x; }
template <int P>
std::string to_string(ModP<P> x) { return std::to_string(x.value()); }

inline Rational real_part(const Gaussian& z) { return z.re(); }

}  // namespace dmhs

#endif
