#ifndef DMHS_MONOID_MONOID_HPP
#define DMHS_MONOID_MONOID_HPP

#include <dmhs/algebra/subspace.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace dmhs {

using IntVec = std::vector<long>;

inline std::vector<Rational> to_rational(const IntVec& v) { return {v.begin(), v.end()}; }

inline Rational dot(const std::vector<Rational>& h, const IntVec& v) {
    Rational s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) s += h[k] * v[k];
    return s;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
    IntVec c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
    return c;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
    IntVec c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] - b[k];
    return c;
}

inline IntVec scaled(const IntVec& a, long s) {
    IntVec c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] * s;
    return c;
}

inline bool is_origin(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

// A face, as the set of generators it contains. `facets` are the facet
// functionals vanishing on it; membership is vanishing of all of them.
struct Face {
    std::vector<std::size_t> gens;
    std::vector<std::size_t> facets;
    friend bool operator==(const Face& a, const Face& b) { return a.gens == b.gens; }
};

// Monoid generated by integer vectors in Z^m. Must be saturated in its group.
class FsMonoid {
public:
    FsMonoid(std::size_t m, std::vector<IntVec> generators) : m_(m) {
        for (auto& g : generators) {
            if (g.size() != m) throw ValidationError("generator has wrong length");
            if (!is_origin(g) && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
        }
        std::vector<std::size_t> all(gens_.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        span_ = span(all);
        lattice_reduce();
        compute_facets();
        if (!saturated()) throw ValidationError("monoid is not saturated");
        if (sharp_) faces_ = enumerate_faces();
    }

    static FsMonoid free(std::size_t n) {
        std::vector<IntVec> g;
        for (std::size_t k = 0; k < n; ++k) {
            IntVec v(n, 0);
            v[k] = 1;
            g.push_back(v);
        }
        return FsMonoid(n, g);
    }

    std::size_t ambient_rank() const { return m_; }
    const std::vector<IntVec>& generators() const { return gens_; }
    const std::vector<std::vector<Rational>>& facets() const { return facets_; }
    bool sharp() const { return sharp_; }
    std::size_t rank() const { return span().dim(); }

    QSubspace span(const std::vector<std::size_t>& idx) const {
        std::vector<std::vector<Rational>> v;
        for (auto k : idx) v.push_back(to_rational(gens_[k]));
        return QSubspace::span(v, m_);
    }
    const QSubspace& span() const { return span_; }

    bool in_group(const IntVec& x) const {
        if (x.size() != m_) return false;
        // reduce against the integer echelon rows
        IntVec r = x;
        for (auto& [col, row] : hnf_) {
            if (r[col] % row[col] != 0) return false;
            long q = r[col] / row[col];
            for (std::size_t k = 0; k < m_; ++k) r[k] -= q * row[k];
        }
        return is_origin(r);
    }

    bool in_cone(const IntVec& x) const {
        if (!span().contains(to_rational(x))) return false;
        for (auto& h : facets_)
            if (sgn(dot(h, x)) < 0) return false;
        return true;
    }

    bool contains(const IntVec& x) const { return x.size() == m_ && in_group(x) && in_cone(x); }

    void require(const IntVec& x, const char* what = "element") const {
        if (!contains(x)) throw ValidationError(std::string(what) + " is not in the monoid");
    }

    bool face_contains(const Face& f, const IntVec& x) const {
        if (!contains(x)) return false;
        for (auto k : f.facets)
            if (sgn(dot(facets_[k], x)) != 0) return false;
        // the whole monoid is the empty intersection; facets otherwise pin the face down
        return true;
    }

    Face whole() const {
        Face f;
        for (std::size_t k = 0; k < gens_.size(); ++k) f.gens.push_back(k);
        return f;
    }

    // All faces, largest first; needs sharpness.
    const std::vector<Face>& faces() const {
        if (!sharp_) throw ValidationError("monoid is not sharp; face enumeration needs units = {0}");
        return faces_;
    }

private:
    std::vector<Face> enumerate_faces() const {
        std::map<std::vector<std::size_t>, std::vector<std::size_t>> found;
        std::function<void(std::vector<std::size_t>, std::size_t)> walk = [&](std::vector<std::size_t> fs, std::size_t next) {
            std::vector<std::size_t> g;
            for (std::size_t k = 0; k < gens_.size(); ++k) {
                bool in = true;
                for (auto f : fs)
                    if (sgn(dot(facets_[f], gens_[k])) != 0) in = false;
                if (in) g.push_back(k);
            }
            if (found.count(g)) return;
            // all facets vanishing on g
            std::vector<std::size_t> all;
            for (std::size_t f = 0; f < facets_.size(); ++f) {
                bool z = true;
                for (auto k : g)
                    if (sgn(dot(facets_[f], gens_[k])) != 0) z = false;
                if (z) all.push_back(f);
            }
            found[g] = all;
            for (std::size_t f = next; f < facets_.size(); ++f) {
                auto h = fs;
                h.push_back(f);
                walk(h, f + 1);
            }
        };
        walk({}, 0);
        std::vector<Face> out;
        for (auto& [g, f] : found) out.push_back({g, f});
        std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
            return a.gens.size() != b.gens.size() ? a.gens.size() > b.gens.size() : a.gens < b.gens;
        });
        return out;
    }

public:
    // Smallest face containing x.
    Face face_of(const IntVec& x) const {
        require(x);
        Face best = whole();
        for (auto& f : faces())
            if (face_contains(f, x) && f.gens.size() < best.gens.size()) best = f;
        if (best.gens.size() == gens_.size()) best.facets.clear();
        return best;
    }

    Face face_from_generators(const std::vector<std::size_t>& g) const {
        for (auto& f : faces())
            if (f.gens == g) return f;
        std::string s;
        for (auto k : g) s += std::to_string(k) + " ";
        throw ValidationError("generators { " + s + "} do not form a face");
    }

    // Functional positive on every nonzero generator (sum of facet normals).
    std::vector<Rational> positive_functional() const {
        std::vector<Rational> h(m_, Rational(0));
        for (auto& f : facets_)
            for (std::size_t k = 0; k < m_; ++k) h[k] += f[k];
        return h;
    }

private:
    void lattice_reduce() {
        // integer row echelon form of the generators
        std::vector<IntVec> rows = gens_;
        std::size_t r = 0;
        for (std::size_t c = 0; c < m_ && r < rows.size(); ++c) {
            while (true) {
                std::size_t piv = rows.size();
                for (std::size_t i = r; i < rows.size(); ++i)
                    if (rows[i][c] != 0 && (piv == rows.size() || std::labs(rows[i][c]) < std::labs(rows[piv][c]))) piv = i;
                if (piv == rows.size()) break;
                std::swap(rows[r], rows[piv]);
                bool done = true;
                for (std::size_t i = r + 1; i < rows.size(); ++i) {
                    long q = rows[i][c] / rows[r][c];
                    for (std::size_t k = 0; k < m_; ++k) rows[i][k] -= q * rows[r][k];
                    if (rows[i][c] != 0) done = false;
                }
                if (done) {
                    hnf_.emplace_back(c, rows[r]);
                    ++r;
                    break;
                }
            }
        }
    }

    void compute_facets() {
        std::size_t d = rank();
        sharp_ = true;
        if (d == 0) return;
        // candidate hyperplanes through d-1 independent generators
        std::set<std::vector<Rational>> seen;
        std::vector<std::size_t> pick;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (pick.size() == d - 1) {
                QMatrix a(d - 1, m_);
                for (std::size_t i = 0; i < pick.size(); ++i)
                    for (std::size_t k = 0; k < m_; ++k) a(i, k) = gens_[pick[i]][k];
                if (dmhs::rank(a) != d - 1) return;
                QMatrix ker = kernel(a);
                for (std::size_t c = 0; c < ker.cols(); ++c) {
                    std::vector<Rational> h = ker.column(c);
                    int pos = 0, neg = 0;
                    for (auto& g : gens_) {
                        int s = sgn(dot(h, g));
                        pos += s > 0;
                        neg += s < 0;
                    }
                    if (pos == 0 && neg == 0) continue;
                    if (pos && neg) return;
                    if (neg)
                        for (auto& x : h) x = -x;
                    h = normalize(h);
                    if (seen.insert(h).second) facets_.push_back(h);
                    return;
                }
                return;
            }
            for (std::size_t k = start; k < gens_.size(); ++k) {
                pick.push_back(k);
                rec(k + 1);
                pick.pop_back();
            }
        };
        rec(0);
        auto h = positive_functional();
        for (auto& g : gens_)
            if (sgn(dot(h, g)) <= 0) sharp_ = false;
    }

    // Canonical representative modulo functionals vanishing on the span,
    // scaled to integers with content 1.
    std::vector<Rational> normalize(std::vector<Rational> h) const {
        QSubspace sp = span();
        QMatrix b = sp.columns();
        // orthogonal projection onto the span
        QMatrix hb(m_, 1);
        for (std::size_t k = 0; k < m_; ++k) hb(k, 0) = h[k];
        QMatrix bt = b.transpose();
        QMatrix coef = *solve(bt * b, bt * hb);
        QMatrix p = b * coef;
        mpz_class den = 1, num = 0;
        for (std::size_t k = 0; k < m_; ++k) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p(k, 0).get_den().get_mpz_t());
        for (std::size_t k = 0; k < m_; ++k) {
            mpz_class v = p(k, 0).get_num() * (den / p(k, 0).get_den());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
        }
        std::vector<Rational> out(m_);
        for (std::size_t k = 0; k < m_; ++k) out[k] = p(k, 0) * Rational(den) / Rational(num);
        return out;
    }

    // Every lattice point of the zonotope sum [0,1] g_i in the cone must be
    // a nonnegative integer combination of the generators.
    bool saturated() const {
        if (!sharp_ || gens_.empty()) return true;  // checked only for sharp monoids
        IntVec lo(m_, 0), hi(m_, 0);
        for (auto& g : gens_)
            for (std::size_t k = 0; k < m_; ++k) (g[k] > 0 ? hi[k] : lo[k]) += g[k];
        double box = 1;
        for (std::size_t k = 0; k < m_; ++k) box *= static_cast<double>(hi[k] - lo[k] + 1);
        if (box > 2e6) throw ValidationError("monoid too large for the saturation check");
        auto h = positive_functional();
        std::map<IntVec, bool> memo;
        std::function<bool(const IntVec&)> member = [&](const IntVec& x) -> bool {
            if (is_origin(x)) return true;
            if (sgn(dot(h, x)) <= 0) return false;
            auto it = memo.find(x);
            if (it != memo.end()) return it->second;
            bool ok = false;
            for (auto& g : gens_)
                if (member(x - g)) {
                    ok = true;
                    break;
                }
            memo[x] = ok;
            return ok;
        };
        IntVec x = lo;
        while (true) {
            if (in_group(x) && in_cone(x) && !member(x)) return false;
            std::size_t k = 0;
            while (k < m_ && x[k] == hi[k]) x[k] = lo[k], ++k;
            if (k == m_) break;
            ++x[k];
        }
        return true;
    }

    std::size_t m_;
    std::vector<IntVec> gens_;
    QSubspace span_{0};
    std::vector<Face> faces_;
    std::vector<std::pair<std::size_t, IntVec>> hnf_;
    std::vector<std::vector<Rational>> facets_;
    bool sharp_ = true;
};

}  // namespace dmhs

#endif
