#ifndef DMHS_ALGEBRA_FILTRATION_HPP
#define DMHS_ALGEBRA_FILTRATION_HPP

#include <dmhs/algebra/subspace.hpp>

#include <map>

namespace dmhs {

// Increasing filtration: W_k is the stored step at the largest key <= k,
// zero below the first key. The last step must be the whole space.
template <class T>
class IncreasingFiltration {
public:
    IncreasingFiltration() = default;
    IncreasingFiltration(std::size_t ambient, std::map<int, Subspace<T>> steps)
        : ambient_(ambient), steps_(std::move(steps)) {
        validate();
        normalize();
    }

    std::size_t ambient() const { return ambient_; }
    const std::map<int, Subspace<T>>& steps() const { return steps_; }

    Subspace<T> operator[](int k) const {
        auto it = steps_.upper_bound(k);
        if (it == steps_.begin()) return Subspace<T>(ambient_);
        return std::prev(it)->second;
    }
    // Indices k where W_k != W_{k-1}.
    std::vector<int> jumps() const {
        std::vector<int> j;
        for (auto& [k, s] : steps_)
            if ((*this)[k - 1] != s) j.push_back(k);
        return j;
    }
    int lowest() const { return jumps().front(); }
    int highest() const { return jumps().back(); }
    std::size_t graded_dim(int k) const { return (*this)[k].dim() - (*this)[k - 1].dim(); }

    friend bool operator==(const IncreasingFiltration& a, const IncreasingFiltration& b) {
        return a.ambient_ == b.ambient_ && a.steps_ == b.steps_;
    }
    friend bool operator!=(const IncreasingFiltration& a, const IncreasingFiltration& b) { return !(a == b); }

private:
    void validate() const {
        if (steps_.empty()) throw ValidationError("empty filtration");
        const Subspace<T>* prev = nullptr;
        for (auto& [k, s] : steps_) {
            if (s.ambient() != ambient_) throw ValidationError("ambient mismatch in filtration step " + std::to_string(k));
            if (prev && !s.contains(*prev)) throw ValidationError("filtration not increasing at " + std::to_string(k));
            prev = &s;
        }
        if (prev->dim() != ambient_) throw ValidationError("filtration does not exhaust the space");
    }
    // Drop redundant keys so that equal filtrations compare equal.
    void normalize() {
        std::map<int, Subspace<T>> out;
        Subspace<T> prev(ambient_);
        for (auto& [k, s] : steps_) {
            if (s != prev) out.emplace(k, s);
            prev = s;
        }
        steps_ = std::move(out);
    }

    std::size_t ambient_ = 0;
    std::map<int, Subspace<T>> steps_;
};

// Decreasing filtration: F^p is the stored step at the smallest key >= p,
// zero above the last key. The first step must be the whole space.
template <class T>
class DecreasingFiltration {
public:
    DecreasingFiltration() = default;
    DecreasingFiltration(std::size_t ambient, std::map<int, Subspace<T>> steps)
        : ambient_(ambient), steps_(std::move(steps)) {
        validate();
        normalize();
    }

    std::size_t ambient() const { return ambient_; }
    const std::map<int, Subspace<T>>& steps() const { return steps_; }

    Subspace<T> operator[](int p) const {
        auto it = steps_.lower_bound(p);
        if (it == steps_.end()) return Subspace<T>(ambient_);
        return it->second;
    }
    int lowest() const { return steps_.begin()->first; }
    int highest() const { return steps_.rbegin()->first; }

    DecreasingFiltration transform(const Matrix<T>& g) const {
        std::map<int, Subspace<T>> st;
        for (auto& [p, s] : steps_) st.emplace(p, s.image(g));
        return {g.rows(), st};
    }
    friend DecreasingFiltration conj(const DecreasingFiltration& f) {
        std::map<int, Subspace<T>> st;
        for (auto& [p, s] : f.steps_) st.emplace(p, conj(s));
        return {f.ambient_, st};
    }

    friend bool operator==(const DecreasingFiltration& a, const DecreasingFiltration& b) {
        return a.ambient_ == b.ambient_ && a.steps_ == b.steps_;
    }
    friend bool operator!=(const DecreasingFiltration& a, const DecreasingFiltration& b) { return !(a == b); }

private:
    void validate() const {
        if (steps_.empty()) throw ValidationError("empty filtration");
        const Subspace<T>* prev = nullptr;
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            if (it->second.ambient() != ambient_) throw ValidationError("ambient mismatch in filtration step");
            if (prev && !it->second.contains(*prev)) throw ValidationError("filtration not decreasing at " + std::to_string(it->first));
            prev = &it->second;
        }
        if (steps_.begin()->second.dim() != ambient_) throw ValidationError("filtration does not exhaust the space");
    }
    void normalize() {
        std::map<int, Subspace<T>> out;
        Subspace<T> prev(ambient_);
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            if (it->second != prev) out.emplace(it->first, it->second);
            prev = it->second;
        }
        // keep the full step so that lowest() is meaningful
        if (out.empty() || out.begin()->second.dim() != ambient_) out.emplace(steps_.begin()->first, steps_.begin()->second);
        steps_ = std::move(out);
    }

    std::size_t ambient_ = 0;
    std::map<int, Subspace<T>> steps_;
};

using QFiltration = IncreasingFiltration<Rational>;
using HodgeFiltration = DecreasingFiltration<Gaussian>;

// Basis adapted to a rational increasing filtration: columns sorted by weight,
// W_k spanned by the columns of weight <= k. The complement chosen in each
// step is the echelon basis of W_k reduced modulo W_{k-1}.
struct AdaptedBasis {
    QMatrix basis;
    std::vector<int> weights;

    std::size_t size() const { return weights.size(); }
    std::vector<std::size_t> indices(int w) const {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < weights.size(); ++k)
            if (weights[k] == w) idx.push_back(k);
        return idx;
    }
    std::vector<int> distinct_weights() const {
        std::vector<int> w;
        for (int x : weights)
            if (w.empty() || w.back() != x) w.push_back(x);
        return w;
    }
};

inline AdaptedBasis adapted_basis(const QFiltration& w) {
    std::size_t n = w.ambient();
    AdaptedBasis out{QMatrix(n, n), {}};
    QSubspace prev(n);
    std::size_t col = 0;
    for (int k : w.jumps()) {
        QSubspace cur = w[k];
        QMatrix reduced = cur.rows();
        auto prev_piv = row_reduce(prev.rows()).pivots;
        for (std::size_t r = 0; r < reduced.rows(); ++r)
            for (std::size_t q = 0; q < prev.dim(); ++q) {
                std::size_t pc = prev_piv[q];
                Rational f = reduced(r, pc);
                if (is_zero(f)) continue;
                for (std::size_t j = 0; j < n; ++j) reduced(r, j) -= f * prev.rows()(q, j);
            }
        QMatrix comp = row_reduce(reduced).rref;
        if (comp.rows() != cur.dim() - prev.dim()) throw Error("adapted basis construction failed");
        for (std::size_t r = 0; r < comp.rows(); ++r) {
            for (std::size_t j = 0; j < n; ++j) out.basis(j, col) = comp(r, j);
            out.weights.push_back(k);
            ++col;
        }
        prev = cur;
    }
    return out;
}

// In adapted coordinates W is the standard flag.
inline QFiltration standard_flag(const std::vector<int>& weights) {
    std::map<int, QSubspace> st;
    std::size_t n = weights.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n; ++j)
            if (weights[j] <= weights[k]) idx.push_back(j);
        st[weights[k]] = QSubspace::coordinate(n, idx);
    }
    return {n, st};
}

template <class T>
IncreasingFiltration<T> transform(const IncreasingFiltration<T>& f, const Matrix<T>& g) {
    std::map<int, Subspace<T>> st;
    for (auto& [k, s] : f.steps()) st.emplace(k, s.image(g));
    return {g.rows(), st};
}

inline IncreasingFiltration<Gaussian> to_complex(const QFiltration& f) {
    std::map<int, CSubspace> st;
    for (auto& [k, s] : f.steps()) st.emplace(k, to_complex(s));
    return {f.ambient(), st};
}

}  // namespace dmhs

#endif
