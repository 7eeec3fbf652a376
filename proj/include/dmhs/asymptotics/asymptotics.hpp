#ifndef DMHS_ASYMPTOTICS_ASYMPTOTICS_HPP
#define DMHS_ASYMPTOTICS_ASYMPTOTICS_HPP

#include <dmhs/algebra/scalar.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

namespace dmhs {

inline Rational bernoulli_B2(const Rational& x) { return x * x - x + Rational(1, 6); }
inline Rational bernoulli_B3(const Rational& x) { return x * x * x - Rational(3, 2) * x * x + Rational(1, 2) * x; }

// {x} in [0, 1)
inline Rational fractional_part(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rational(q);
}

namespace detail {

// B_0..B_n as doubles, from the exact recursion sum_{k<=m} C(m+1,k) B_k = 0.
inline const std::vector<double>& bernoulli_numbers() {
    static const std::vector<double> table = [] {
        const int n = 60;
        std::vector<Rational> b(n + 1);
        b[0] = 1;
        for (int m = 1; m <= n; ++m) {
            Rational s = 0;
            mpz_class c = 1;  // C(m+1, k)
            for (int k = 0; k < m; ++k) {
                s += Rational(c) * b[k];
                c = c * (m + 1 - k) / (k + 1);
            }
            b[m] = -s / Rational(m + 1);
        }
        std::vector<double> out;
        for (auto& x : b) out.push_back(x.get_d());
        return out;
    }();
    return table;
}

// Li2(z) for |z| <= 1, Re z <= 1/2 via sum B_n u^(n+1)/(n+1)!, u = -log(1-z).
inline std::complex<double> li2_reduced(std::complex<double> z) {
    const auto& b = bernoulli_numbers();
    std::complex<double> u = -std::log(1.0 - z), pw = u, sum = 0;
    double fact = 1;
    for (std::size_t n = 0; n + 1 < b.size(); ++n) {
        fact *= static_cast<double>(n + 1);
        std::complex<double> term = b[n] * pw / fact;
        sum += term;
        if (n > 2 && n % 2 == 0 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;  // odd B_n vanish
        pw *= u;
    }
    return sum;
}

inline double bloch_wigner_raw(std::complex<double> z) {
    return std::imag(li2_reduced(z)) + std::arg(1.0 - z) * std::log(std::abs(z));
}

}  // namespace detail

// D(z) = Im Li2(z) + arg(1 - z) log|z|.
inline double bloch_wigner_D(std::complex<double> z) {
    if (std::abs(z) == 0.0 || z == std::complex<double>(1.0, 0.0)) throw ValidationError("D is evaluated at z = 0 or 1");
    double sign = 1;
    if (std::abs(z) > 1) {
        z = 1.0 / z;
        sign = -sign;
    }
    if (z.real() > 0.5) {
        z = 1.0 - z;
        sign = -sign;
    }
    return sign * detail::bloch_wigner_raw(z);
}

// Continuous extension with D(0) = D(1) = 0.
inline double bloch_wigner_extended(std::complex<double> z) {
    if (std::abs(z) < 1e-300 || std::abs(z - 1.0) < 1e-15) return 0.0;
    return bloch_wigner_D(z);
}

struct TorsionSection {
    Rational root_angle;  // s = exp(2 pi i root_angle)
    Rational q_exponent;  // r in Q/Z
    long multiplicity = 0;
};

struct AsymptoticPair {
    Rational a;
    std::optional<double> b;  // only when every q exponent is 0
};

inline void require_degree_zero(const std::vector<TorsionSection>& d, const char* what) {
    long s = 0;
    for (auto& x : d) s += x.multiplicity;
    if (s != 0) throw ValidationError(std::string(what) + " does not have degree 0");
}

inline bool all_untwisted(const std::vector<TorsionSection>& d) {
    for (auto& x : d)
        if (sgn(fractional_part(x.q_exponent)) != 0) return false;
    return true;
}

inline std::complex<double> section_ratio(const TorsionSection& x, const TorsionSection& y) {
    double th = 2 * std::numbers::pi * to_double(fractional_part(x.root_angle - y.root_angle));
    return {std::cos(th), std::sin(th)};
}

// e2-coefficient of the K2 regulator term a (exact) and b e1 when all r = 0.
inline AsymptoticPair k2_regulator_asymptotics(const std::vector<TorsionSection>& alpha, const std::vector<TorsionSection>& beta,
                                               bool want_b = false) {
    require_degree_zero(alpha, "alpha");
    require_degree_zero(beta, "beta");
    AsymptoticPair out;
    for (auto& x : alpha)
        for (auto& y : beta) out.a += Rational(x.multiplicity * y.multiplicity) * bernoulli_B3(fractional_part(x.q_exponent - y.q_exponent));
    bool untwisted = all_untwisted(alpha) && all_untwisted(beta);
    if (want_b && !untwisted) throw ValidationError("b formula out of scope: nonzero q exponents");
    if (untwisted) {
        double b = 0;
        for (auto& x : alpha)
            for (auto& y : beta) b += static_cast<double>(x.multiplicity * y.multiplicity) * bloch_wigner_extended(section_ratio(x, y));
        out.b = b;
    }
    return out;
}

inline bool same_point(const TorsionSection& x, const TorsionSection& y) {
    return sgn(fractional_part(x.root_angle - y.root_angle)) == 0 && sgn(fractional_part(x.q_exponent - y.q_exponent)) == 0;
}

// Local height pairing <Y, Z> = a y + b + O(1/y).
inline AsymptoticPair height_asymptotics(const std::vector<TorsionSection>& ys, const std::vector<TorsionSection>& zs) {
    require_degree_zero(ys, "Y");
    require_degree_zero(zs, "Z");
    for (auto& x : ys)
        for (auto& y : zs)
            if (x.multiplicity != 0 && y.multiplicity != 0 && same_point(x, y))
                throw ValidationError("supports of Y and Z meet; pairing undefined");
    AsymptoticPair out;
    for (auto& x : ys)
        for (auto& y : zs) out.a += Rational(x.multiplicity * y.multiplicity) * bernoulli_B2(fractional_part(x.q_exponent - y.q_exponent));
    if (all_untwisted(ys) && all_untwisted(zs)) {
        double b = 0;
        for (auto& x : ys)
            for (auto& y : zs) {
                if (x.multiplicity == 0 || y.multiplicity == 0) continue;
                b += static_cast<double>(x.multiplicity * y.multiplicity) * std::log(std::abs(1.0 - section_ratio(x, y)));
            }
        out.b = b;
    }
    return out;
}

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // rms over the fitted tail
};

// Least squares value ~ slope*y + intercept over the upper half of the samples.
inline LinearFit fit_linear_asymptotic(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4) throw ValidationError("need at least 4 samples");
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (!(samples[k].first > samples[k - 1].first)) throw ValidationError("sample y values must increase");
    std::size_t start = samples.size() / 2;
    if (samples.size() - start < 2) start = samples.size() - 2;
    double n = 0, my = 0, mv = 0;
    for (std::size_t k = start; k < samples.size(); ++k) {
        my += samples[k].first;
        mv += samples[k].second;
        n += 1;
    }
    my /= n;
    mv /= n;
    double sxx = 0, sxv = 0;
    for (std::size_t k = start; k < samples.size(); ++k) {
        double dx = samples[k].first - my;
        sxx += dx * dx;
        sxv += dx * (samples[k].second - mv);
    }
    if (sxx == 0) throw ValidationError("degenerate samples");
    LinearFit f;
    f.slope = sxv / sxx;
    f.intercept = mv - f.slope * my;
    double r = 0;
    for (std::size_t k = start; k < samples.size(); ++k) {
        double e = samples[k].second - (f.slope * samples[k].first + f.intercept);
        r += e * e;
    }
    f.residual = std::sqrt(r / n);
    return f;
}

}  // namespace dmhs

#endif
