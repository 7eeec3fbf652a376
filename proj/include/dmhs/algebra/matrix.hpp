#ifndef DMHS_ALGEBRA_MATRIX_HPP
#define DMHS_ALGEBRA_MATRIX_HPP

#include <dmhs/algebra/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dmhs {

// Found by argument-dependent lookup, so scalar types declared later work.
template <class T>
bool scalar_zero(const T& x) {
    return is_zero(x);
}

// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw ValidationError("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t n) {
        Matrix m(n, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != n) throw ValidationError("column length mismatch");
            for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    void set_column(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return scalar_zero(x); });
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    Matrix operator-() const {
        Matrix m(*this);
        for (auto& x : m.data_) x = -x;
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (scalar_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw ValidationError("dimension mismatch in apply");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!scalar_zero(v[j])) out[i] += (*this)(i, j) * v[j];
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
        return m;
    }
    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
        return m;
    }
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ == 0) return b;
        if (b.cols_ == 0) return a;
        if (a.rows_ != b.rows_) throw ValidationError("dimension mismatch in hstack");
        Matrix m(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ == 0) return b;
        if (b.rows_ == 0) return a;
        if (a.cols_ != b.cols_) throw ValidationError("dimension mismatch in vstack");
        Matrix m(a.rows_ + b.rows_, a.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m(a.rows_ + i, j) = b(i, j);
        return m;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<Gaussian>;

template <class T>
Matrix<T> conj(const Matrix<T>& m) {
    Matrix<T> c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = conj(m(i, j));
    return c;
}

inline CMatrix to_complex(const QMatrix& m) {
    CMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Gaussian(m(i, j));
    return c;
}

inline bool is_real(const CMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_real()) return false;
    return true;
}

// Throws unless every entry is real.
inline QMatrix real_matrix(const CMatrix& m, const std::string& what = "matrix") {
    QMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_real()) throw Error(what + " is not real");
            r(i, j) = m(i, j).re();
        }
    return r;
}

template <class T>
struct Echelon {
    Matrix<T> rref;
    std::vector<std::size_t> pivots;
};

template <class T>
Echelon<T> row_reduce(Matrix<T> m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {m.block(0, 0, r, m.cols()), pivots};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return row_reduce(m).pivots.size();
}

// Columns form a basis of the null space.
template <class T>
Matrix<T> kernel(const Matrix<T>& a) {
    auto e = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix<T> k(a.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = T(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.rref(r, free[f]);
    }
    return k;
}

// Particular solution of A X = B, or nothing if inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw ValidationError("dimension mismatch in solve");
    auto e = row_reduce(Matrix<T>::hstack(a, b));
    Matrix<T> x(a.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        std::size_t c = e.pivots[r];
        if (c >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.rref(r, a.cols() + j);
    }
    return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (!a.square()) throw ValidationError("inverse of non-square matrix");
    if (rank(a) != a.rows()) return std::nullopt;
    return solve(a, Matrix<T>::identity(a.rows()));
}

template <class T>
Matrix<T> inverse_or_throw(const Matrix<T>& a, const std::string& what = "matrix") {
    auto inv = inverse(a);
    if (!inv) throw Error(what + " is singular");
    return *inv;
}

template <class T>
T determinant(Matrix<T> m) {
    if (!m.square()) throw ValidationError("determinant of non-square matrix");
    T det(1);
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c))) ++p;
        if (p == n) return T(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            T f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

template <class T>
bool is_nilpotent(const Matrix<T>& m) {
    Matrix<T> p = m;
    for (std::size_t k = 0; k < m.rows(); ++k) {
        if (p.is_zero()) return true;
        p = p * m;
    }
    return p.is_zero();
}

// exp of a nilpotent matrix.
template <class T>
Matrix<T> exp_nilpotent(const Matrix<T>& x) {
    if (!x.square()) throw ValidationError("exp of non-square matrix");
    Matrix<T> result = Matrix<T>::identity(x.rows());
    Matrix<T> term = result;
    for (std::size_t k = 1; k <= x.rows(); ++k) {
        term = term * x;
        term *= T(1) / T(static_cast<long>(k));
        if (term.is_zero()) return result;
        result += term;
    }
    if (!(term * x).is_zero()) throw ValidationError("exp of a non-nilpotent matrix");
    return result;
}

// log of a unipotent matrix.
template <class T>
Matrix<T> log_unipotent(const Matrix<T>& g) {
    Matrix<T> x = g - Matrix<T>::identity(g.rows());
    Matrix<T> result(g.rows(), g.cols());
    Matrix<T> term = Matrix<T>::identity(g.rows());
    for (std::size_t k = 1; k <= g.rows(); ++k) {
        term = term * x;
        if (term.is_zero()) return result;
        T c = T(1) / T(static_cast<long>(k));
        if (k % 2 == 0) c = -c;
        result += term * c;
    }
    if (!(term * x).is_zero()) throw ValidationError("log of a non-unipotent matrix");
    return result;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, std::size_t k) {
    Matrix<T> r = Matrix<T>::identity(m.rows());
    for (std::size_t j = 0; j < k; ++j) r = r * m;
    return r;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace dmhs

#endif
