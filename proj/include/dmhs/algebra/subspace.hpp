#ifndef DMHS_ALGEBRA_SUBSPACE_HPP
#define DMHS_ALGEBRA_SUBSPACE_HPP

#include <dmhs/algebra/matrix.hpp>

namespace dmhs {

// Linear subspace of T^n, stored as its reduced row echelon basis (rows).
// Two subspaces are equal iff their stored bases are equal.
template <class T>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Subspace zero(std::size_t n) { return Subspace(n); }
    static Subspace full(std::size_t n) { return from_rows(Matrix<T>::identity(n)); }
    static Subspace from_rows(const Matrix<T>& rows) {
        Subspace s(rows.cols());
        if (rows.rows() == 0) return s;
        s.basis_ = row_reduce(rows).rref;
        return s;
    }
    static Subspace span(const Matrix<T>& columns) {
        Subspace s = from_rows(columns.transpose());
        s.ambient_ = columns.rows();
        if (s.basis_.rows() == 0) s.basis_ = Matrix<T>(0, columns.rows());
        return s;
    }
    static Subspace span(const std::vector<std::vector<T>>& vectors, std::size_t n) {
        if (vectors.empty()) return Subspace(n);
        return span(Matrix<T>::from_columns(vectors, n));
    }
    static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& idx) {
        Matrix<T> m(idx.size(), n);
        for (std::size_t k = 0; k < idx.size(); ++k) m(k, idx[k]) = T(1);
        return from_rows(m);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<T>& rows() const { return basis_; }
    Matrix<T> columns() const {
        if (basis_.rows() == 0) return Matrix<T>(ambient_, 0);
        return basis_.transpose();
    }
    std::vector<T> vector(std::size_t k) const { return basis_.row(k); }

    bool contains(const std::vector<T>& v) const {
        if (v.size() != ambient_) throw ValidationError("ambient mismatch");
        if (dim() == 0) return std::all_of(v.begin(), v.end(), [](const T& x) { return is_zero(x); });
        Matrix<T> m = Matrix<T>::vstack(basis_, Matrix<T>::from_rows({v}));
        return rank(m) == dim();
    }
    bool contains(const Subspace& o) const {
        check(o);
        if (o.dim() == 0) return true;
        if (dim() == 0) return false;
        return rank(Matrix<T>::vstack(basis_, o.basis_)) == dim();
    }

    Subspace operator+(const Subspace& o) const {
        check(o);
        if (dim() == 0) return o;
        if (o.dim() == 0) return *this;
        return from_rows(Matrix<T>::vstack(basis_, o.basis_));
    }

    Subspace intersect(const Subspace& o) const {
        check(o);
        if (dim() == 0 || o.dim() == 0) return Subspace(ambient_);
        // x = U^T a = V^T b
        Matrix<T> a = Matrix<T>::hstack(columns(), -o.columns());
        Matrix<T> k = kernel(a);
        if (k.cols() == 0) return Subspace(ambient_);
        Matrix<T> coeffs = k.block(0, 0, dim(), k.cols());
        return span(columns() * coeffs);
    }

    // Vectors annihilated by every basis vector (rows span the annihilator).
    Matrix<T> annihilator() const {
        if (dim() == 0) return Matrix<T>::identity(ambient_);
        Matrix<T> k = kernel(basis_);
        return k.transpose();
    }

    Subspace image(const Matrix<T>& m) const {
        if (m.cols() != ambient_) throw ValidationError("ambient mismatch in image");
        if (dim() == 0) return Subspace(m.rows());
        return span(m * columns());
    }

    // { x : m x in this }
    Subspace preimage(const Matrix<T>& m) const {
        if (m.rows() != ambient_) throw ValidationError("ambient mismatch in preimage");
        Matrix<T> ann = annihilator();
        if (ann.rows() == 0) return full(m.cols());
        return span(kernel(ann * m));
    }

    friend Subspace conj(const Subspace& s) {
        Subspace c(s.ambient_);
        if (s.dim() == 0) return c;
        return from_rows(conj(s.basis_));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    void check(const Subspace& o) const {
        if (o.ambient_ != ambient_) throw ValidationError("ambient mismatch");
    }

    std::size_t ambient_ = 0;
    Matrix<T> basis_;
};

using QSubspace = Subspace<Rational>;
using CSubspace = Subspace<Gaussian>;

inline CSubspace to_complex(const QSubspace& s) {
    if (s.dim() == 0) return CSubspace(s.ambient());
    return CSubspace::from_rows(to_complex(s.rows()));
}

// Real subspace iff stable under conjugation.
inline bool is_defined_over_q(const CSubspace& s) { return conj(s) == s; }

inline QSubspace rational_part(const CSubspace& s) {
    if (!is_defined_over_q(s)) throw Error("subspace is not defined over Q");
    if (s.dim() == 0) return QSubspace(s.ambient());
    return QSubspace::from_rows(real_matrix(s.rows()));
}

}  // namespace dmhs

#endif
