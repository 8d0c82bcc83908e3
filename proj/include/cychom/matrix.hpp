#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace cychom {

using Int = boost::multiprecision::cpp_int;

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

// Dense integer matrix with exact arbitrary-precision entries.
// Zero-row and zero-column matrices are first-class citizens: they carry
// their shape and compose like any other matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix scalar(std::size_t n, const Int& c) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }
    static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw ShapeError("ragged row list");
            std::size_t j = 0;
            for (long long v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }
    static Matrix column(const std::vector<Int>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const = default;

    bool is_zero() const {
        for (const Int& x : a_)
            if (x != 0) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o, "+");
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o, "-");
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }
    Matrix operator*(const Int& c) const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
        return r;
    }

    // Zero entries are skipped; most matrices in this library are sparse in practice.
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw ShapeError("matrix product shape mismatch: " + shape_str() + " * " + o.shape_str());
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Int& bkj = o(k, j);
                    if (bkj == 0) continue;
                    r(i, j) += aik * bkj;
                }
            }
        }
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != cols_) throw ShapeError("matrix-vector shape mismatch");
        std::vector<Int> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<Int> col_vector(std::size_t j) const {
        std::vector<Int> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
        if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_) throw ShapeError("block out of range");
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }
    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        if (i0 + r > rows_ || j0 + c > cols_) throw ShapeError("block out of range");
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    Matrix columns(std::size_t j0, std::size_t c) const { return block(0, j0, rows_, c); }
    Matrix top_rows(std::size_t r) const { return block(0, 0, r, cols_); }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw ShapeError("hstack row mismatch");
        Matrix m(a.rows_, a.cols_ + b.cols_);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols_, b);
        return m;
    }
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw ShapeError("vstack column mismatch");
        Matrix m(a.rows_ + b.rows_, a.cols_);
        m.set_block(0, 0, a);
        m.set_block(a.rows_, 0, b);
        return m;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    std::string to_string() const {
        if (rows_ == 0 || cols_ == 0) return "[]";
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << ", ";
                os << (*this)(i, j);
            }
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    void check_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeError(std::string("shape mismatch for ") + op + ": " + shape_str() +
                             " vs " + o.shape_str());
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

} // namespace cychom
