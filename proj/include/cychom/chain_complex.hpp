#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelian_group.hpp"
#include "matrix.hpp"
#include "smith.hpp"

namespace cychom {

struct NotACycle : Error {
    using Error::Error;
};

// Nonnegatively graded complex of finitely generated free abelian groups.
// differentials[n] maps degree n to degree n-1 for n >= 1; slot 0 holds the
// zero map out of degree 0 so that every degree has an outgoing differential.
struct ChainComplex {
    std::vector<std::size_t> ranks;
    std::vector<Matrix> differentials;

    std::size_t max_degree() const { return ranks.size() - 1; }
    std::size_t rank(std::size_t n) const { return n < ranks.size() ? ranks[n] : 0; }
    const Matrix& differential(std::size_t n) const { return differentials[n]; }
};

// diffs[k] is the differential out of degree k+1.
inline ChainComplex make_complex(std::vector<std::size_t> ranks, std::vector<Matrix> diffs) {
    if (ranks.empty()) throw ShapeError("complex needs at least degree 0");
    if (diffs.size() + 1 != ranks.size())
        throw ShapeError("expected one differential per degree above 0");
    ChainComplex c;
    c.ranks = std::move(ranks);
    c.differentials.reserve(c.ranks.size());
    c.differentials.push_back(Matrix::zero(0, c.ranks[0]));
    for (std::size_t n = 1; n < c.ranks.size(); ++n) {
        Matrix& d = diffs[n - 1];
        if (d.rows() != c.ranks[n - 1] || d.cols() != c.ranks[n])
            throw ShapeError("differential(" + std::to_string(n) + ") has shape " + d.shape_str() +
                             ", expected " + std::to_string(c.ranks[n - 1]) + "x" +
                             std::to_string(c.ranks[n]));
        c.differentials.push_back(std::move(d));
    }
    return c;
}

struct ComplexReport {
    bool ok = true;
    std::size_t first_failing_degree = 0; // degree n with d(n-1) * d(n) != 0
    Matrix nonzero_product;
};

inline ComplexReport validate_complex(const ChainComplex& c) {
    ComplexReport r;
    for (std::size_t n = 2; n <= c.max_degree(); ++n) {
        Matrix p = c.differential(n - 1) * c.differential(n);
        if (!p.is_zero()) {
            r.ok = false;
            r.first_failing_degree = n;
            r.nonzero_product = std::move(p);
            return r;
        }
    }
    return r;
}

// A subquotient Z/B of an ambient free group, together with enough data to
// classify arbitrary elements of Z in the computed presentation. Generators
// are ordered free part first, then torsion in invariant-factor order.
struct HomologyGroup {
    AbelianGroupStructure structure;
    std::size_t ambient_rank = 0;
    Matrix representatives; // ambient_rank x generator_count

    Matrix zbasis;  // ambient_rank x k, basis of the cycle lattice
    Matrix u;       // k x k change of basis diagonalizing the boundary coordinates
    std::vector<Int> diag; // k entries; entry i divides entry i+1 where nonzero
    std::vector<std::size_t> free_pos, torsion_pos;

    std::size_t generator_count() const { return structure.generator_count(); }

    // Reduce torsion coordinates into [0, d); free coordinates pass through.
    std::vector<Int> normalize(std::vector<Int> coords) const {
        if (coords.size() != generator_count()) throw ShapeError("coordinate length mismatch");
        for (std::size_t t = 0; t < torsion_pos.size(); ++t) {
            Int& x = coords[structure.free_rank + t];
            const Int& d = structure.torsion[t];
            x %= d;
            if (x < 0) x += d;
        }
        return coords;
    }

    // Coordinates of the class of z, a vector in the ambient group lying in Z.
    std::vector<Int> classify(const std::vector<Int>& z) const {
        if (z.size() != ambient_rank) throw ShapeError("classify: ambient length mismatch");
        auto w = solve(zbasis, z);
        if (!w) throw NotACycle("classify: element is not a cycle");
        std::vector<Int> uw = u.apply(*w);
        std::vector<Int> out;
        out.reserve(generator_count());
        for (std::size_t p : free_pos) out.push_back(uw[p]);
        for (std::size_t p : torsion_pos) out.push_back(uw[p]);
        return normalize(std::move(out));
    }

    bool coords_equal(const std::vector<Int>& a, const std::vector<Int>& b) const {
        std::vector<Int> x = a, y = b;
        return normalize(std::move(x)) == normalize(std::move(y));
    }

    bool is_zero_class(const std::vector<Int>& coords) const {
        std::vector<Int> n = normalize(coords);
        for (const Int& x : n)
            if (x != 0) return false;
        return true;
    }

    // Relation lattice of the presentation inside Z^generator_count:
    // d_i * e_(free_rank + i) for each torsion generator.
    Matrix relation_lattice() const {
        Matrix r(generator_count(), torsion_pos.size());
        for (std::size_t t = 0; t < torsion_pos.size(); ++t)
            r(structure.free_rank + t, t) = structure.torsion[t];
        return r;
    }
};

// Z/B where the columns of zbasis form a basis of the lattice Z and the
// columns of bgens generate the sublattice B.
inline HomologyGroup subquotient(const Matrix& zbasis, const Matrix& bgens) {
    if (zbasis.rows() != bgens.rows()) throw ShapeError("subquotient: ambient rank mismatch");
    auto y = solve_matrix(zbasis, bgens);
    if (!y) throw Error("subquotient: generators of B do not lie in Z");
    SmithDecomposition s = smith_normal_form(*y);
    const std::size_t k = zbasis.cols();

    HomologyGroup h;
    h.ambient_rank = zbasis.rows();
    h.zbasis = zbasis;
    h.u = s.u;
    h.diag.resize(k);
    for (std::size_t i = 0; i < k; ++i) h.diag[i] = i < s.rank ? s.d(i, i) : Int(0);
    for (std::size_t i = 0; i < k; ++i) {
        if (h.diag[i] == 0)
            h.free_pos.push_back(i);
        else if (h.diag[i] > 1)
            h.torsion_pos.push_back(i);
    }
    h.structure.free_rank = h.free_pos.size();
    for (std::size_t p : h.torsion_pos) h.structure.torsion.push_back(h.diag[p]);

    h.representatives = Matrix(h.ambient_rank, h.generator_count());
    std::size_t g = 0;
    auto emit = [&](std::size_t pos) {
        for (std::size_t i = 0; i < h.ambient_rank; ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < k; ++j)
                if (s.uinv(j, pos) != 0) acc += zbasis(i, j) * s.uinv(j, pos);
            h.representatives(i, g) = acc;
        }
        ++g;
    };
    for (std::size_t p : h.free_pos) emit(p);
    for (std::size_t p : h.torsion_pos) emit(p);
    return h;
}

// ker differential(n) / im differential(n+1).
inline HomologyGroup homology(const ChainComplex& c, std::size_t n) {
    if (n > c.max_degree())
        throw IncompleteData("homology: degree " + std::to_string(n) + " beyond stored range");
    if (n + 1 > c.max_degree())
        throw IncompleteData("homology at degree " + std::to_string(n) + " needs differential(" +
                             std::to_string(n + 1) + "), which is outside the stored range");
    return subquotient(kernel_basis(c.differential(n)), c.differential(n + 1));
}

// Complex of presented modules: degree n is Z^cover_ranks[n] / im(relations[n]),
// with differentials given on the free covers.
struct PresentedComplex {
    std::vector<std::size_t> cover_ranks;
    std::vector<Matrix> relations;
    std::vector<Matrix> differentials; // slot 0 is the zero map out of degree 0

    std::size_t max_degree() const { return cover_ranks.size() - 1; }
    std::size_t cover_rank(std::size_t n) const { return cover_ranks[n]; }
    const Matrix& relation(std::size_t n) const { return relations[n]; }
    const Matrix& differential(std::size_t n) const { return differentials[n]; }

    // Isomorphism type of the degree-n module itself.
    AbelianGroupStructure module_structure(std::size_t n) const {
        return cokernel_structure(relations[n]);
    }
};

struct PresentedComplexReport {
    bool ok = true;
    std::string failure;
};

inline PresentedComplexReport validate_presented_complex(const PresentedComplex& pc) {
    PresentedComplexReport r;
    for (std::size_t n = 1; n <= pc.max_degree(); ++n) {
        const Matrix& d = pc.differential(n);
        if (d.rows() != pc.cover_rank(n - 1) || d.cols() != pc.cover_rank(n)) {
            throw ShapeError("presented complex: differential(" + std::to_string(n) +
                             ") shape mismatch");
        }
        // the differential must send relations into relations
        if (!solve_matrix(pc.relation(n - 1), d * pc.relation(n))) {
            r.ok = false;
            r.failure = "differential(" + std::to_string(n) + ") does not descend to the quotient";
            return r;
        }
        if (n >= 2) {
            Matrix sq = pc.differential(n - 1) * d;
            if (!solve_matrix(pc.relation(n - 2), sq)) {
                r.ok = false;
                r.failure = "square of differentials at degree " + std::to_string(n) +
                            " is nonzero in the quotient";
                return r;
            }
        }
    }
    return r;
}

// Homology of a presented complex at degree n. Cycles are cover elements whose
// differential lands in the relation lattice; boundaries are generated by
// differentials of degree-(n+1) covers together with the degree-n relations.
inline HomologyGroup presented_homology(const PresentedComplex& pc, std::size_t n) {
    if (n > pc.max_degree())
        throw IncompleteData("presented homology: degree beyond stored range");
    if (n + 1 > pc.max_degree())
        throw IncompleteData("presented homology at degree " + std::to_string(n) +
                             " needs degree " + std::to_string(n + 1) + " data");
    const Matrix& d = pc.differential(n);
    Matrix rel_prev = n == 0 ? Matrix::zero(0, 0) : pc.relation(n - 1);
    Matrix stacked = Matrix::hstack(d, -rel_prev);
    Matrix zgens = kernel_basis(stacked).top_rows(pc.cover_rank(n));
    Matrix zbasis = image_lattice_basis(zgens);
    Matrix bgens = Matrix::hstack(pc.differential(n + 1), pc.relation(n));
    return subquotient(zbasis, bgens);
}

} // namespace cychom
