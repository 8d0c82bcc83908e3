#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chain_complex.hpp"

namespace cychom {

// ---- maps between presented groups ----------------------------------------
//
// A homomorphism G -> H between computed homology groups is stored as an
// integer matrix in the generator coordinates (free generators first, torsion
// after). Torsion rows are only meaningful modulo their invariant factor, so
// comparisons go through normalization.

inline Matrix relation_columns(const AbelianGroupStructure& s) {
    Matrix r(s.generator_count(), s.torsion.size());
    for (std::size_t t = 0; t < s.torsion.size(); ++t) r(s.free_rank + t, t) = s.torsion[t];
    return r;
}

inline Matrix normalize_map(Matrix m, const AbelianGroupStructure& target) {
    if (m.rows() != target.generator_count())
        throw ShapeError("normalize_map: row count does not match target presentation");
    for (std::size_t t = 0; t < target.torsion.size(); ++t) {
        const Int& d = target.torsion[t];
        std::size_t i = target.free_rank + t;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int& x = m(i, j);
            x %= d;
            if (x < 0) x += d;
        }
    }
    return m;
}

inline bool maps_congruent(const Matrix& a, const Matrix& b, const AbelianGroupStructure& target) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return normalize_map(a, target) == normalize_map(b, target);
}

// ---- chain maps and induced maps -------------------------------------------

inline void require_chain_map(const ChainComplex& src, const ChainComplex& dst,
                              const std::vector<Matrix>& f, std::size_t up_to,
                              const std::string& name = "chain map") {
    if (f.size() < up_to + 1) throw ShapeError(name + ": too few degree components");
    for (std::size_t n = 0; n <= up_to; ++n)
        if (f[n].rows() != dst.rank(n) || f[n].cols() != src.rank(n))
            throw ShapeError(name + ": component " + std::to_string(n) + " has shape " +
                             f[n].shape_str());
    for (std::size_t n = 1; n <= up_to; ++n)
        if (f[n - 1] * src.differential(n) != dst.differential(n) * f[n])
            throw NotAChainMap(name + ": does not commute with differentials at degree " +
                               std::to_string(n));
}

// Matrix of the induced map H(src) -> H(dst) for a degree component f_n of a
// chain map. Columns are classifications of the images of the representatives.
inline Matrix induced_on_groups(const HomologyGroup& hsrc, const HomologyGroup& hdst,
                                const Matrix& f_n) {
    if (f_n.rows() != hdst.ambient_rank || f_n.cols() != hsrc.ambient_rank)
        throw ShapeError("induced_on_groups: component shape mismatch");
    Matrix m(hdst.generator_count(), hsrc.generator_count());
    for (std::size_t j = 0; j < hsrc.generator_count(); ++j) {
        std::vector<Int> c = hdst.classify(f_n.apply(hsrc.representatives.col_vector(j)));
        for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
    }
    return m;
}

// Checks the chain-map property through degree n+1, then computes the induced
// map on degree-n homology.
inline Matrix induced_map_on_homology(const ChainComplex& src, const ChainComplex& dst,
                                      const std::vector<Matrix>& f, std::size_t n) {
    std::size_t top = std::min(std::min(src.max_degree(), dst.max_degree()), n + 1);
    require_chain_map(src, dst, f, top);
    return induced_on_groups(homology(src, n), homology(dst, n), f[n]);
}

// Two-sided inverse of an isomorphism of presented groups, or nullopt when f
// is not an isomorphism.
inline std::optional<Matrix> invert_presented_iso(const Matrix& f, const AbelianGroupStructure& a,
                                                  const AbelianGroupStructure& b) {
    if (!(a == b)) return std::nullopt;
    const std::size_t ma = a.generator_count(), mb = b.generator_count();
    if (f.rows() != mb || f.cols() != ma) throw ShapeError("invert_presented_iso: shape mismatch");
    auto sol = solve_matrix(Matrix::hstack(f, relation_columns(b)), Matrix::identity(mb));
    if (!sol) return std::nullopt; // not surjective
    Matrix x = sol->top_rows(ma);
    if (!maps_congruent(x * f, Matrix::identity(ma), a)) return std::nullopt;
    if (!maps_congruent(f * x, Matrix::identity(mb), b)) return std::nullopt;
    return normalize_map(x, a);
}

// ---- exactness at a node ----------------------------------------------------

struct ExactnessVerdict {
    bool exact = false;
    std::string detail;
};

// Exactness of  * --f--> B --g--> C  at B, for presented groups. Both the
// image of f and the kernel of g are handled as lattices in the free cover of
// B that contain B's relation lattice; equality is tested by mutual
// membership, which is complete over the integers.
inline ExactnessVerdict exact_at(const Matrix& f, const AbelianGroupStructure& b, const Matrix& g,
                                 const AbelianGroupStructure& c) {
    const std::size_t mb = b.generator_count();
    if (f.rows() != mb || g.cols() != mb) throw ShapeError("exact_at: shape mismatch");
    Matrix image = Matrix::hstack(f, relation_columns(b));
    Matrix kernel;
    if (c.generator_count() == 0) {
        kernel = Matrix::identity(mb);
    } else {
        kernel = kernel_basis(Matrix::hstack(g, -relation_columns(c))).top_rows(mb);
    }
    ExactnessVerdict v;
    if (!solve_matrix(kernel, image)) {
        v.detail = "image is not contained in the kernel";
        return v;
    }
    if (!solve_matrix(image, kernel)) {
        v.detail = "kernel is not contained in the image";
        return v;
    }
    v.exact = true;
    return v;
}

// ---- degreewise split short exact sequences ---------------------------------

// 0 -> sub -> total -> quotient -> 0, split in every degree as graded groups
// (the splitting need not be a chain map). All three complexes share a top
// degree.
struct DegreewiseSplitSES {
    ChainComplex sub, total, quotient;
    std::vector<Matrix> inclusion; // sub_n -> total_n
    std::vector<Matrix> projection; // total_n -> quotient_n
    std::vector<Matrix> splitting; // quotient_n -> total_n, projection * splitting = id
};

inline void validate_ses(const DegreewiseSplitSES& s) {
    std::size_t top = s.total.max_degree();
    if (s.sub.max_degree() != top || s.quotient.max_degree() != top)
        throw ShapeError("ses: complexes must share a top degree");
    require_chain_map(s.sub, s.total, s.inclusion, top, "inclusion");
    require_chain_map(s.total, s.quotient, s.projection, top, "projection");
    for (std::size_t n = 0; n <= top; ++n) {
        if (s.splitting[n].rows() != s.total.rank(n) || s.splitting[n].cols() != s.quotient.rank(n))
            throw ShapeError("ses: splitting shape at degree " + std::to_string(n));
        if (s.sub.rank(n) + s.quotient.rank(n) != s.total.rank(n))
            throw ShapeError("ses: ranks are not additive at degree " + std::to_string(n));
        if (!(s.projection[n] * s.inclusion[n]).is_zero())
            throw Error("ses: projection of the subcomplex is nonzero at degree " +
                        std::to_string(n));
        if (s.projection[n] * s.splitting[n] != Matrix::identity(s.quotient.rank(n)))
            throw Error("ses: splitting is not a section at degree " + std::to_string(n));
        if (!is_unimodular(Matrix::hstack(s.inclusion[n], s.splitting[n])))
            throw Error("ses: inclusion and splitting do not decompose the total term at degree " +
                        std::to_string(n));
    }
}

// Connecting homomorphism H_n(quotient) -> H_{n-1}(sub): lift a cycle through
// the splitting, apply the total differential, pull back along the inclusion.
inline Matrix connecting_homomorphism(const DegreewiseSplitSES& s, std::size_t n,
                                      const HomologyGroup& hq, const HomologyGroup& ha_prev) {
    if (n == 0) return Matrix(0, hq.generator_count());
    Matrix delta(ha_prev.generator_count(), hq.generator_count());
    for (std::size_t j = 0; j < hq.generator_count(); ++j) {
        std::vector<Int> lifted = s.splitting[n].apply(hq.representatives.col_vector(j));
        std::vector<Int> boundary = s.total.differential(n).apply(lifted);
        auto a = solve(s.inclusion[n - 1], boundary);
        if (!a)
            throw LiftNotInSubcomplex(
                "connecting homomorphism: boundary of a lifted cycle misses the subcomplex at "
                "degree " +
                std::to_string(n));
        std::vector<Int> c = ha_prev.classify(*a);
        for (std::size_t i = 0; i < c.size(); ++i) delta(i, j) = c[i];
    }
    return delta;
}

inline Matrix connecting_homomorphism(const DegreewiseSplitSES& s, std::size_t n) {
    if (n == 0) return Matrix(0, homology(s.quotient, 0).generator_count());
    return connecting_homomorphism(s, n, homology(s.quotient, n), homology(s.sub, n - 1));
}

// ---- long exact sequence -----------------------------------------------------

struct LESNode {
    std::string label;
    AbelianGroupStructure group;
    std::optional<bool> exact; // empty: incoming map lies outside the window
    std::string detail;
};

struct LESReport {
    std::size_t n_max = 0;
    std::vector<HomologyGroup> sub_h, total_h, quotient_h; // degrees 0..n_max
    std::vector<Matrix> i_star, p_star; // degree n entries, 0..n_max
    std::vector<Matrix> delta; // delta[n]: H_n(quotient) -> H_{n-1}(sub); delta[0] is 0 x g
    std::optional<Matrix> delta_top; // H_{n_max+1}(quotient) -> H_{n_max}(sub), if in range
    std::vector<LESNode> nodes;

    bool all_verified_exact() const {
        for (const LESNode& n : nodes)
            if (n.exact.has_value() && !*n.exact) return false;
        return true;
    }
    std::size_t unverified_count() const {
        std::size_t k = 0;
        for (const LESNode& n : nodes)
            if (!n.exact.has_value()) ++k;
        return k;
    }
};

// ... -> H_n(sub) -> H_n(total) -> H_n(quotient) -> H_{n-1}(sub) -> ... -> H_0(quotient) -> 0
// with an exactness verdict at every node whose incoming map is inside the
// window. Requires homology through degree n_max for all three complexes.
inline LESReport assemble_les(const DegreewiseSplitSES& s, std::size_t n_max) {
    validate_ses(s);
    if (n_max + 1 > s.total.max_degree())
        throw IncompleteData("assemble_les: window requires degrees up to " +
                             std::to_string(n_max + 1));
    LESReport r;
    r.n_max = n_max;
    for (std::size_t n = 0; n <= n_max; ++n) {
        r.sub_h.push_back(homology(s.sub, n));
        r.total_h.push_back(homology(s.total, n));
        r.quotient_h.push_back(homology(s.quotient, n));
    }
    for (std::size_t n = 0; n <= n_max; ++n) {
        r.i_star.push_back(induced_on_groups(r.sub_h[n], r.total_h[n], s.inclusion[n]));
        r.p_star.push_back(induced_on_groups(r.total_h[n], r.quotient_h[n], s.projection[n]));
        r.delta.push_back(n == 0 ? Matrix(0, r.quotient_h[0].generator_count())
                                 : connecting_homomorphism(s, n, r.quotient_h[n], r.sub_h[n - 1]));
    }
    std::optional<HomologyGroup> quotient_top;
    if (n_max + 2 <= s.quotient.max_degree()) {
        quotient_top = homology(s.quotient, n_max + 1);
        r.delta_top = connecting_homomorphism(s, n_max + 1, *quotient_top, r.sub_h[n_max]);
    }

    const AbelianGroupStructure trivial{};
    for (std::size_t k = 0; k <= n_max; ++k) {
        std::size_t n = n_max - k;
        LESNode sub_node;
        sub_node.label = "H_" + std::to_string(n) + "(sub)";
        sub_node.group = r.sub_h[n].structure;
        if (n < n_max) {
            ExactnessVerdict v =
                exact_at(r.delta[n + 1], sub_node.group, r.i_star[n], r.total_h[n].structure);
            sub_node.exact = v.exact;
            sub_node.detail = v.detail;
        } else if (r.delta_top) {
            ExactnessVerdict v =
                exact_at(*r.delta_top, sub_node.group, r.i_star[n], r.total_h[n].structure);
            sub_node.exact = v.exact;
            sub_node.detail = v.detail;
        } else {
            sub_node.detail = "incoming connecting map is outside the stored window";
        }
        r.nodes.push_back(sub_node);

        LESNode total_node;
        total_node.label = "H_" + std::to_string(n) + "(total)";
        total_node.group = r.total_h[n].structure;
        {
            ExactnessVerdict v =
                exact_at(r.i_star[n], total_node.group, r.p_star[n], r.quotient_h[n].structure);
            total_node.exact = v.exact;
            total_node.detail = v.detail;
        }
        r.nodes.push_back(total_node);

        LESNode q_node;
        q_node.label = "H_" + std::to_string(n) + "(quotient)";
        q_node.group = r.quotient_h[n].structure;
        {
            Matrix outgoing = n == 0 ? Matrix(0, r.quotient_h[0].generator_count()) : r.delta[n];
            const AbelianGroupStructure& next =
                n == 0 ? trivial : r.sub_h[n - 1].structure;
            ExactnessVerdict v = exact_at(r.p_star[n], q_node.group, outgoing, next);
            q_node.exact = v.exact;
            q_node.detail = v.detail;
        }
        r.nodes.push_back(q_node);
    }
    return r;
}

} // namespace cychom
