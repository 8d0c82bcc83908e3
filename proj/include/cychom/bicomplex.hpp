#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chain_complex.hpp"

namespace cychom {

// First-quadrant double complex on a width x height grid of free modules.
// Position (p, q) is column p, row q. vertical[p][q] maps (p, q) -> (p, q-1)
// and horizontal[p][q] maps (p, q) -> (p-1, q); the maps out of the bottom row
// and the leftmost column are stored as matrices with zero rows so that every
// grid slot is filled. Squares are expected to anticommute, so totalization
// needs no further signs.
struct Bicomplex {
    std::size_t width = 0, height = 0;
    std::vector<std::vector<std::size_t>> ranks; // ranks[p][q]
    std::vector<std::vector<Matrix>> vertical;
    std::vector<std::vector<Matrix>> horizontal;

    std::size_t rank(std::size_t p, std::size_t q) const {
        return p < width && q < height ? ranks[p][q] : 0;
    }
};

// Grid of the requested size with every map a correctly shaped zero matrix;
// builders overwrite the interior entries they need.
template <typename RankFn>
Bicomplex bicomplex_frame(std::size_t width, std::size_t height, RankFn rank_at) {
    Bicomplex b;
    b.width = width;
    b.height = height;
    b.ranks.resize(width);
    b.vertical.resize(width);
    b.horizontal.resize(width);
    for (std::size_t p = 0; p < width; ++p) {
        b.ranks[p].resize(height);
        for (std::size_t q = 0; q < height; ++q) b.ranks[p][q] = rank_at(p, q);
        for (std::size_t q = 0; q < height; ++q) {
            b.vertical[p].emplace_back(q == 0 ? 0 : b.ranks[p][q - 1], b.ranks[p][q]);
            b.horizontal[p].emplace_back(p == 0 ? 0 : b.ranks[p - 1][q], b.ranks[p][q]);
        }
    }
    return b;
}

struct BicomplexReport {
    bool ok = true;
    std::string failure;
};

inline BicomplexReport validate_bicomplex(const Bicomplex& b) {
    auto at = [](std::size_t p, std::size_t q) {
        return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    };
    for (std::size_t p = 0; p < b.width; ++p)
        for (std::size_t q = 0; q < b.height; ++q) {
            const Matrix& v = b.vertical[p][q];
            if (v.rows() != (q == 0 ? 0 : b.ranks[p][q - 1]) || v.cols() != b.ranks[p][q])
                throw ShapeError("bicomplex: vertical map at " + at(p, q) + " has shape " +
                                 v.shape_str());
            const Matrix& h = b.horizontal[p][q];
            if (h.rows() != (p == 0 ? 0 : b.ranks[p - 1][q]) || h.cols() != b.ranks[p][q])
                throw ShapeError("bicomplex: horizontal map at " + at(p, q) + " has shape " +
                                 h.shape_str());
        }
    BicomplexReport r;
    for (std::size_t p = 0; p < b.width && r.ok; ++p)
        for (std::size_t q = 2; q < b.height && r.ok; ++q)
            if (!(b.vertical[p][q - 1] * b.vertical[p][q]).is_zero()) {
                r.ok = false;
                r.failure = "vertical square is nonzero at " + at(p, q);
            }
    for (std::size_t p = 2; p < b.width && r.ok; ++p)
        for (std::size_t q = 0; q < b.height && r.ok; ++q)
            if (!(b.horizontal[p - 1][q] * b.horizontal[p][q]).is_zero()) {
                r.ok = false;
                r.failure = "horizontal square is nonzero at " + at(p, q);
            }
    for (std::size_t p = 1; p < b.width && r.ok; ++p)
        for (std::size_t q = 1; q < b.height && r.ok; ++q)
            if (!(b.vertical[p - 1][q] * b.horizontal[p][q] +
                  b.horizontal[p][q - 1] * b.vertical[p][q])
                     .is_zero()) {
                r.ok = false;
                r.failure = "square at " + at(p, q) + " does not anticommute";
            }
    return r;
}

// Columns p contributing to total degree m, in increasing order of p.
inline std::size_t tot_p_min(const Bicomplex& b, std::size_t m) {
    return m + 1 >= b.height ? m + 1 - b.height : 0;
}
inline std::size_t tot_p_max(const Bicomplex& b, std::size_t m) {
    return std::min(m, b.width == 0 ? 0 : b.width - 1);
}

inline std::size_t tot_rank(const Bicomplex& b, std::size_t m) {
    std::size_t r = 0;
    if (b.width == 0) return 0;
    for (std::size_t p = tot_p_min(b, m); p <= tot_p_max(b, m); ++p) r += b.rank(p, m - p);
    return r;
}

// Column offset of the (p, m-p) summand inside the degree-m total term.
inline std::size_t tot_block_offset(const Bicomplex& b, std::size_t m, std::size_t p) {
    std::size_t off = 0;
    for (std::size_t k = tot_p_min(b, m); k < p; ++k) off += b.rank(k, m - k);
    return off;
}

// Columns first .. first+count-1 as a bicomplex of their own, reindexed to
// start at column 0. The maps out of the new leftmost column are dropped.
inline Bicomplex column_window(const Bicomplex& b, std::size_t first, std::size_t count) {
    if (first + count > b.width) throw ShapeError("column window reaches past the grid");
    Bicomplex w;
    w.width = count;
    w.height = b.height;
    w.ranks.assign(b.ranks.begin() + first, b.ranks.begin() + first + count);
    w.vertical.assign(b.vertical.begin() + first, b.vertical.begin() + first + count);
    w.horizontal.assign(b.horizontal.begin() + first, b.horizontal.begin() + first + count);
    if (count > 0)
        for (std::size_t q = 0; q < w.height; ++q)
            w.horizontal[0][q] = Matrix(0, w.ranks[0][q]);
    return w;
}

// Total complex, truncated at degree = height. That keeps every term needed to
// compute homology through degree height-1, and all bicomplexes built here are
// tall enough that the truncation discards nothing a caller may rely on.
inline ChainComplex totalize(const Bicomplex& b) {
    std::size_t top = b.height;
    std::vector<std::size_t> ranks;
    for (std::size_t m = 0; m <= top; ++m) ranks.push_back(tot_rank(b, m));
    std::vector<Matrix> diffs;
    for (std::size_t m = 1; m <= top; ++m) {
        Matrix d(tot_rank(b, m - 1), tot_rank(b, m));
        if (b.width != 0)
            for (std::size_t p = tot_p_min(b, m); p <= tot_p_max(b, m); ++p) {
                std::size_t q = m - p;
                std::size_t col = tot_block_offset(b, m, p);
                if (q >= 1)
                    d.set_block(tot_block_offset(b, m - 1, p), col, b.vertical[p][q]);
                if (p >= 1)
                    d.set_block(tot_block_offset(b, m - 1, p - 1), col, b.horizontal[p][q]);
            }
        diffs.push_back(std::move(d));
    }
    return make_complex(std::move(ranks), std::move(diffs));
}

} // namespace cychom
