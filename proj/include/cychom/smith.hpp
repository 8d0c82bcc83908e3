#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "abelian_group.hpp"
#include "matrix.hpp"

namespace cychom {

// U * source * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...,
// every diagonal entry nonnegative. uinv and vinv are the exact inverses,
// accumulated alongside the reduction.
struct SmithDecomposition {
    Matrix source;
    Matrix u, uinv;
    Matrix v, vinv;
    Matrix d;
    std::size_t rank = 0;

    std::vector<Int> invariant_factors() const {
        std::vector<Int> f;
        for (std::size_t i = 0; i < rank; ++i) f.push_back(d(i, i));
        return f;
    }
};

namespace detail {

struct SnfWork {
    Matrix a, u, uinv, v, vinv;

    explicit SnfWork(const Matrix& m)
        : a(m),
          u(Matrix::identity(m.rows())),
          uinv(Matrix::identity(m.rows())),
          v(Matrix::identity(m.cols())),
          vinv(Matrix::identity(m.cols())) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
        for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv(r, i), uinv(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
        for (std::size_t c = 0; c < vinv.cols(); ++c) std::swap(vinv(i, c), vinv(j, c));
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
    }
    // row[dst] += q * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) += q * a(src, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(dst, c) += q * u(src, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, src) -= q * uinv(r, dst);
    }
    // col[dst] += q * col[src]
    void add_col(std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, dst) += q * a(r, src);
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, dst) += q * v(r, src);
        for (std::size_t c = 0; c < vinv.cols(); ++c) vinv(src, c) -= q * vinv(dst, c);
    }
};

} // namespace detail

// Deterministic Smith normal form. Pivot choice: minimal nonzero absolute
// value in the remaining submatrix, ties broken by lowest row index, then
// lowest column index.
inline SmithDecomposition smith_normal_form(const Matrix& m) {
    detail::SnfWork w(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t k = 0;
    while (k < rows && k < cols) {
        // locate pivot
        bool found = false;
        std::size_t pi = k, pj = k;
        Int best;
        for (std::size_t i = k; i < rows; ++i) {
            for (std::size_t j = k; j < cols; ++j) {
                const Int& x = w.a(i, j);
                if (x == 0) continue;
                Int ax = int_abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (!found) break; // remaining submatrix is zero
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        if (w.a(k, k) < 0) w.negate_row(k);

        // clear column k below the pivot
        bool clean = true;
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (w.a(i, k) == 0) continue;
            Int q = w.a(i, k) / w.a(k, k);
            w.add_row(i, k, -q);
            if (w.a(i, k) != 0) clean = false; // smaller residue appeared
        }
        if (!clean) continue;
        // clear row k right of the pivot
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (w.a(k, j) == 0) continue;
            Int q = w.a(k, j) / w.a(k, k);
            w.add_col(j, k, -q);
            if (w.a(k, j) != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility of the rest of the submatrix by the pivot
        bool divides = true;
        for (std::size_t i = k + 1; i < rows && divides; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (w.a(i, j) % w.a(k, k) != 0) {
                    w.add_row(k, i, 1); // pull the offending row up and retry
                    divides = false;
                    break;
                }
            }
        }
        if (!divides) continue;
        ++k;
    }

    SmithDecomposition s;
    s.source = m;
    s.u = std::move(w.u);
    s.uinv = std::move(w.uinv);
    s.v = std::move(w.v);
    s.vinv = std::move(w.vinv);
    s.d = std::move(w.a);
    s.rank = k;
    return s;
}

inline std::size_t snf_rank(const Matrix& m) { return smith_normal_form(m).rank; }

// Columns form a basis of the full integer kernel lattice {x : m x = 0}.
inline Matrix kernel_basis(const Matrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    return s.v.columns(s.rank, m.cols() - s.rank);
}

// Structure of Z^rows / column-span(m).
inline AbelianGroupStructure cokernel_structure(const Matrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    AbelianGroupStructure g;
    g.free_rank = m.rows() - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.d(i, i) > 1) g.torsion.push_back(s.d(i, i));
    return g;
}

namespace detail {

inline std::optional<std::vector<Int>> solve_with(const SmithDecomposition& s,
                                                  const std::vector<Int>& b) {
    if (b.size() != s.source.rows()) throw ShapeError("solve: rhs length mismatch");
    std::vector<Int> c = s.u.apply(b);
    std::vector<Int> y(s.source.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.d(i, i) != 0) return std::nullopt;
            if (i < y.size()) y[i] = c[i] / s.d(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

} // namespace detail

// One integer solution x of m x = b, or nullopt when none exists.
inline std::optional<std::vector<Int>> solve(const Matrix& m, const std::vector<Int>& b) {
    return detail::solve_with(smith_normal_form(m), b);
}

// Columnwise solve of m X = B; the Smith form of m is computed once.
inline std::optional<Matrix> solve_matrix(const Matrix& m, const Matrix& rhs) {
    if (rhs.rows() != m.rows()) throw ShapeError("solve_matrix: rhs rows mismatch");
    SmithDecomposition s = smith_normal_form(m);
    Matrix x(m.cols(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        auto xj = detail::solve_with(s, rhs.col_vector(j));
        if (!xj) return std::nullopt;
        for (std::size_t i = 0; i < m.cols(); ++i) x(i, j) = (*xj)[i];
    }
    return x;
}

// Basis (as columns) of the lattice spanned by the columns of m.
inline Matrix image_lattice_basis(const Matrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    Matrix b(m.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = s.uinv(i, j) * s.d(j, j);
    return b;
}

inline bool is_unimodular(const Matrix& m) {
    if (!m.is_square()) return false;
    SmithDecomposition s = smith_normal_form(m);
    if (s.rank != m.rows()) return false;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.d(i, i) != 1) return false;
    return true;
}

// Membership of x in the lattice generated by the columns of gens.
inline bool lattice_member(const Matrix& gens, const std::vector<Int>& x) {
    return solve(gens, x).has_value();
}

} // namespace cychom
