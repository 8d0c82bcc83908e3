#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "precyclic.hpp"

namespace cychom {

// Finite free algebra over the integers, given by structure constants:
// e_i * e_j = sum_k c(i, j, k) e_k, with a distinguished unit vector.
struct AlgebraPresentation {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> labels; // one per basis element
    std::vector<Int> structure; // flattened (i * dim + j) * dim + k
    std::vector<Int> unit; // coordinates of the identity element

    const Int& c(std::size_t i, std::size_t j, std::size_t k) const {
        return structure[(i * dim + j) * dim + k];
    }
    Int& c(std::size_t i, std::size_t j, std::size_t k) {
        return structure[(i * dim + j) * dim + k];
    }

    // product of basis elements i and j, as a coordinate vector
    std::vector<Int> basis_product(std::size_t i, std::size_t j) const {
        std::vector<Int> out(dim);
        for (std::size_t k = 0; k < dim; ++k) out[k] = c(i, j, k);
        return out;
    }
};

inline void validate_algebra(const AlgebraPresentation& a) {
    if (a.dim == 0 || a.structure.size() != a.dim * a.dim * a.dim || a.unit.size() != a.dim ||
        a.labels.size() != a.dim)
        throw ShapeError("algebra presentation has inconsistent sizes");
    // (e_i e_j) e_k = e_i (e_j e_k), coefficient of e_m
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < a.dim; ++k)
                for (std::size_t m = 0; m < a.dim; ++m) {
                    Int lhs = 0, rhs = 0;
                    for (std::size_t p = 0; p < a.dim; ++p) {
                        lhs += a.c(i, j, p) * a.c(p, k, m);
                        rhs += a.c(j, k, p) * a.c(i, p, m);
                    }
                    if (lhs != rhs)
                        throw NonAssociative("associativity fails on basis triple (" +
                                             a.labels[i] + ", " + a.labels[j] + ", " + a.labels[k] +
                                             ")");
                }
    for (std::size_t j = 0; j < a.dim; ++j)
        for (std::size_t m = 0; m < a.dim; ++m) {
            Int left = 0, right = 0;
            for (std::size_t i = 0; i < a.dim; ++i) {
                left += a.unit[i] * a.c(i, j, m);
                right += a.unit[i] * a.c(j, i, m);
            }
            Int expect = m == j ? 1 : 0;
            if (left != expect || right != expect)
                throw NonAssociative("unit law fails on basis element " + a.labels[j]);
        }
}

inline AlgebraPresentation ground_ring_algebra() {
    AlgebraPresentation a;
    a.name = "ground";
    a.dim = 1;
    a.labels = {"1"};
    a.structure = {Int(1)};
    a.unit = {Int(1)};
    return a;
}

// 1 and x with x^2 = 0.
inline AlgebraPresentation dual_numbers_algebra() {
    AlgebraPresentation a;
    a.name = "dual-numbers";
    a.dim = 2;
    a.labels = {"1", "x"};
    a.structure.assign(8, Int(0));
    a.c(0, 0, 0) = 1;
    a.c(0, 1, 1) = 1;
    a.c(1, 0, 1) = 1;
    a.unit = {Int(1), Int(0)};
    return a;
}

// Upper triangular 2x2 matrices: basis E11, E12, E22; unit E11 + E22.
inline AlgebraPresentation upper_triangular2_algebra() {
    AlgebraPresentation a;
    a.name = "upper-triangular";
    a.dim = 3;
    a.labels = {"E11", "E12", "E22"};
    a.structure.assign(27, Int(0));
    a.c(0, 0, 0) = 1; // E11 E11 = E11
    a.c(0, 1, 1) = 1; // E11 E12 = E12
    a.c(1, 2, 1) = 1; // E12 E22 = E12
    a.c(2, 2, 2) = 1; // E22 E22 = E22
    a.unit = {Int(1), Int(0), Int(1)};
    return a;
}

// ---- tensor power bookkeeping ---------------------------------------------------

// Basis of A^{(slots)} as base-dim digit strings, slot 0 first.
struct TensorIndexer {
    std::size_t dim = 0, slots = 0;

    std::size_t size() const {
        std::size_t s = 1;
        for (std::size_t k = 0; k < slots; ++k) s *= dim;
        return s;
    }
    std::size_t index(const std::vector<std::size_t>& digits) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < slots; ++k) idx = idx * dim + digits[k];
        return idx;
    }
    std::vector<std::size_t> digits(std::size_t idx) const {
        std::vector<std::size_t> d(slots);
        for (std::size_t k = slots; k-- > 0;) {
            d[k] = idx % dim;
            idx /= dim;
        }
        return d;
    }
};

// ---- standard precyclic modules -------------------------------------------------

// C_n = A^{(n+1)}. Inner faces multiply adjacent slots, the last face wraps
// the final slot around to the front, the cyclic operator rotates the last
// slot to the front, and the last degeneracy appends the unit.
inline PrecyclicModule hochschild_module(const AlgebraPresentation& a, std::size_t top,
                                         std::size_t size_guard = 4096) {
    validate_algebra(a);
    PrecyclicModule m;
    m.ranks.resize(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        TensorIndexer ti{a.dim, n + 1};
        m.ranks[n] = ti.size();
        if (m.ranks[n] > size_guard)
            throw SizeGuardExceeded("degree " + std::to_string(n) + " needs rank " +
                                    std::to_string(m.ranks[n]) + ", over the guard of " +
                                    std::to_string(size_guard));
    }
    m.faces.resize(top + 1);
    m.cyclic.resize(top + 1);

    for (std::size_t n = 0; n <= top; ++n) {
        TensorIndexer src{a.dim, n + 1};
        if (n >= 1) {
            TensorIndexer dst{a.dim, n};
            for (std::size_t i = 0; i <= n; ++i) m.faces[n].emplace_back(dst.size(), src.size());
            for (std::size_t col = 0; col < src.size(); ++col) {
                std::vector<std::size_t> d = src.digits(col);
                for (std::size_t i = 0; i < n; ++i) { // merge slots i, i+1
                    std::vector<std::size_t> e(n);
                    for (std::size_t k = 0, w = 0; k < n + 1; ++k)
                        if (k != i + 1) e[w++] = d[k];
                    for (std::size_t k = 0; k < a.dim; ++k) {
                        const Int& coef = a.c(d[i], d[i + 1], k);
                        if (coef == 0) continue;
                        e[i] = k;
                        m.faces[n][i](dst.index(e), col) += coef;
                    }
                }
                { // wrap: multiply the last slot onto the first
                    std::vector<std::size_t> e(n);
                    for (std::size_t k = 1; k < n; ++k) e[k] = d[k];
                    for (std::size_t k = 0; k < a.dim; ++k) {
                        const Int& coef = a.c(d[n], d[0], k);
                        if (coef == 0) continue;
                        e[0] = k;
                        m.faces[n][n](dst.index(e), col) += coef;
                    }
                }
            }
        }
        Matrix rot(src.size(), src.size());
        for (std::size_t col = 0; col < src.size(); ++col) {
            std::vector<std::size_t> d = src.digits(col);
            std::vector<std::size_t> e(n + 1);
            e[0] = d[n];
            for (std::size_t k = 0; k < n; ++k) e[k + 1] = d[k];
            rot(src.index(e), col) = 1;
        }
        m.cyclic[n] = std::move(rot);
    }

    for (std::size_t n = 0; n < top; ++n) {
        TensorIndexer src{a.dim, n + 1}, dst{a.dim, n + 2};
        Matrix s(dst.size(), src.size());
        for (std::size_t col = 0; col < src.size(); ++col) {
            std::vector<std::size_t> d = src.digits(col);
            std::vector<std::size_t> e(n + 2);
            for (std::size_t k = 0; k <= n; ++k) e[k] = d[k];
            for (std::size_t u = 0; u < a.dim; ++u) {
                if (a.unit[u] == 0) continue;
                e[n + 1] = u;
                s(dst.index(e), col) += a.unit[u];
            }
        }
        m.last_degeneracy.push_back(std::move(s));
    }
    return m;
}

// Rank one in every degree, all operators the identity.
inline PrecyclicModule point_module(std::size_t top) {
    PrecyclicModule m;
    m.ranks.assign(top + 1, 1);
    m.faces.resize(top + 1);
    m.cyclic.assign(top + 1, Matrix::identity(1));
    for (std::size_t n = 1; n <= top; ++n)
        m.faces[n].assign(n + 1, Matrix::identity(1));
    if (top >= 1) m.last_degeneracy.assign(top, Matrix::identity(1));
    return m;
}

// Rank one with all faces at degree n scaled by a sign b_n. Any sign pattern
// satisfies every relation, so these make a cheap randomized family; the
// homology never changes. signs[n-1] is the degree-n face scalar, and the last
// degeneracy at degree n is forced to be b_{n+1}.
inline PrecyclicModule twisted_point_module(const std::vector<int>& signs) {
    const std::size_t top = signs.size();
    for (int s : signs)
        if (s != 1 && s != -1) throw ShapeError("twisted point module needs unit scalars");
    PrecyclicModule m;
    m.ranks.assign(top + 1, 1);
    m.faces.resize(top + 1);
    m.cyclic.assign(top + 1, Matrix::identity(1));
    for (std::size_t n = 1; n <= top; ++n)
        m.faces[n].assign(n + 1, Matrix::scalar(1, signs[n - 1]));
    for (std::size_t n = 0; n + 1 <= top; ++n)
        m.last_degeneracy.push_back(Matrix::scalar(1, signs[n]));
    return m;
}

inline std::vector<AbelianGroupStructure> hochschild_homology(const AlgebraPresentation& a,
                                                              std::size_t up_to,
                                                              std::size_t size_guard = 4096) {
    PrecyclicModule m = hochschild_module(a, up_to + 1, size_guard);
    ChainComplex c = underlying_complex(m);
    std::vector<AbelianGroupStructure> out;
    for (std::size_t n = 0; n <= up_to; ++n) out.push_back(homology(c, n).structure);
    return out;
}

} // namespace cychom
