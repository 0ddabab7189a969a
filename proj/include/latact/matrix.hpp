#pragma once

#include "latact/errors.hpp"
#include "latact/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace latact {

/// Dense row-major matrix over an exact scalar. Sizes stay at desk scale
/// (well under 100x100), so no attention is paid to cache behaviour.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()), cols_(0) {
        for (const auto& row : init) {
            if (cols_ == 0) cols_ = row.size();
            if (row.size() != cols_) throw MathError("ragged matrix initializer");
            for (const auto& x : row) data_.push_back(x);
        }
        if (rows_ == 0) cols_ = 0;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw MathError("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix sum shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix difference shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<T>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw MathError("matrix-vector shape mismatch");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? T(1) : T(0))) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += latact::to_string((*this)(i, j));
            }
            s += "]";
        }
        s += "]";
        return s;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntegerMatrix  = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntegerMatrix& a) {
    RationalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
    return r;
}

/// Exact determinant by cofactor expansion with memo-free recursion; matrices
/// here are tiny. Fraction-free larger cases go through smith.hpp instead.
inline Integer determinant(const IntegerMatrix& a) {
    if (a.rows() != a.cols()) throw MathError("determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    // Bareiss fraction-free elimination.
    IntegerMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Integer(-m(n - 1, n - 1));
}

inline Integer det2(const std::vector<Integer>& u, const std::vector<Integer>& v) {
    if (u.size() != 2 || v.size() != 2) throw MathError("det2 wants rank-2 column vectors");
    return u[0] * v[1] - u[1] * v[0];
}

/// Rational Gaussian inverse; throws on singular input.
inline RationalMatrix inverse(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw MathError("inverse of non-square matrix");
    std::size_t n = a.rows();
    RationalMatrix m = a;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) throw MathError("matrix not invertible");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        Rational piv = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Inverse of a GL_n(Z) matrix, staying integral. Rejects det != +-1.
inline IntegerMatrix inverse_unimodular(const IntegerMatrix& a) {
    Integer d = determinant(a);
    if (d != 1 && d != -1) throw MathError("matrix not in GL_n(Z), det = " + d.str());
    RationalMatrix ri = inverse(to_rational(a));
    IntegerMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (boost::multiprecision::denominator(ri(i, j)) != 1)
                throw MathError("unimodular inverse produced a fraction");
            r(i, j) = boost::multiprecision::numerator(ri(i, j));
        }
    return r;
}

inline IntegerMatrix inverse_transpose(const IntegerMatrix& a) { return inverse_unimodular(a).transpose(); }

inline bool is_gl(const IntegerMatrix& a) {
    if (a.rows() != a.cols()) return false;
    Integer d = determinant(a);
    return d == 1 || d == -1;
}

} // namespace latact
