#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include <cychom/smith.hpp>

#include "support/oracles.hpp"

using namespace cychom;

namespace {

void check_decomposition(const Matrix& m, const SmithDecomposition& s) {
    REQUIRE(s.u * m * s.v == s.d);
    REQUIRE(s.u * s.uinv == Matrix::identity(m.rows()));
    REQUIRE(s.uinv * s.u == Matrix::identity(m.rows()));
    REQUIRE(s.v * s.vinv == Matrix::identity(m.cols()));
    REQUIRE(s.vinv * s.v == Matrix::identity(m.cols()));
    // diagonal, nonnegative, divisibility chain
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
    for (std::size_t i = 0; i < s.rank; ++i) {
        REQUIRE(s.d(i, i) > 0);
        if (i + 1 < s.rank) REQUIRE(s.d(i + 1, i + 1) % s.d(i, i) == 0);
    }
    for (std::size_t i = s.rank; i < std::min(s.d.rows(), s.d.cols()); ++i)
        REQUIRE(s.d(i, i) == 0);
}

} // namespace

TEST_CASE("smith normal form of a worked 2x2 example") {
    Matrix m = Matrix::from_rows({{2, 4}, {6, 8}});
    SmithDecomposition s = smith_normal_form(m);
    check_decomposition(m, s);
    REQUIRE(s.rank == 2);
    REQUIRE(s.invariant_factors() == std::vector<Int>{2, 4});
    // cross-checks: gcd of entries is d_1, |det| is d_1 * d_2
    REQUIRE(int_abs(oracles::det_by_elimination(m)) == 8);
    Int g = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g = boost::multiprecision::gcd(g, m(i, j));
    REQUIRE(g == 2);
}

TEST_CASE("smith normal form handles empty and zero matrices") {
    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 5}, {3, 0}}) {
        Matrix m(r, c);
        SmithDecomposition s = smith_normal_form(m);
        check_decomposition(m, s);
        REQUIRE(s.rank == 0);
    }
    Matrix z(4, 3);
    SmithDecomposition s = smith_normal_form(z);
    REQUIRE(s.rank == 0);
    REQUIRE(s.d.is_zero());
    REQUIRE(kernel_basis(z) == Matrix::identity(3));
    AbelianGroupStructure g = cokernel_structure(z);
    REQUIRE(g.free_rank == 4);
    REQUIRE(g.torsion.empty());
}

TEST_CASE("kernel basis of [[1,1]]") {
    Matrix m = Matrix::from_rows({{1, 1}});
    Matrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    REQUIRE((m * k).is_zero());
    REQUIRE(int_abs(k(0, 0)) == 1);
    REQUIRE(k(0, 0) + k(1, 0) == 0);
}

TEST_CASE("cokernel structures") {
    AbelianGroupStructure g = cokernel_structure(Matrix::from_rows({{2, 4}, {6, 8}}));
    REQUIRE(g.free_rank == 0);
    REQUIRE(g.torsion == std::vector<Int>{2, 4});

    // diag(2,3) has cyclic cokernel Z/6
    g = cokernel_structure(Matrix::from_rows({{2, 0}, {0, 3}}));
    REQUIRE(g.free_rank == 0);
    REQUIRE(g.torsion == std::vector<Int>{6});

    g = cokernel_structure(Matrix::from_rows({{1, 0}, {0, 1}}));
    REQUIRE(g.trivial());
    REQUIRE(g.format() == "0");

    g = cokernel_structure(Matrix(2, 0));
    REQUIRE(g.free_rank == 2);
}

TEST_CASE("solve on the worked example and unsolvable cases") {
    Matrix m = Matrix::from_rows({{2, 4}, {6, 8}});
    auto x = solve(m, {2, 6});
    REQUIRE(x.has_value());
    REQUIRE(*x == std::vector<Int>{1, 0});

    REQUIRE_FALSE(solve(m, {1, 0}).has_value());
    REQUIRE_FALSE(solve(Matrix::from_rows({{2}}), {1}).has_value());
    REQUIRE(solve(Matrix::from_rows({{2}}), {-6}) == std::vector<Int>{-3});

    // underdetermined: any returned solution must satisfy the system
    Matrix u = Matrix::from_rows({{1, 2, 3}});
    auto y = solve(u, {5});
    REQUIRE(y.has_value());
    REQUIRE(u.apply(*y) == std::vector<Int>{5});
}

TEST_CASE("image lattice basis") {
    Matrix m = Matrix::from_rows({{2, 4}, {6, 8}});
    Matrix b = image_lattice_basis(m);
    REQUIRE(b.cols() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
        REQUIRE(lattice_member(m, b.col_vector(j)));
        REQUIRE(lattice_member(b, m.col_vector(j)));
    }
    // saturated-rank sanity: a singular matrix yields fewer basis vectors
    Matrix s = Matrix::from_rows({{1, 2}, {2, 4}});
    REQUIRE(image_lattice_basis(s).cols() == 1);
}

TEST_CASE("smith normal form is deterministic") {
    std::mt19937_64 rng(7);
    Matrix m = oracles::random_matrix(rng, 6, 7);
    SmithDecomposition a = smith_normal_form(m);
    SmithDecomposition b = smith_normal_form(m);
    REQUIRE(a.u == b.u);
    REQUIRE(a.v == b.v);
    REQUIRE(a.d == b.d);
}

TEST_CASE("randomized smith property suite, 1000 trials") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<std::size_t> dim(0, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        Matrix m = oracles::random_matrix(rng, r, c);
        SmithDecomposition s = smith_normal_form(m);
        check_decomposition(m, s);
        REQUIRE(s.rank == oracles::rank_by_elimination(m));
        if (trial % 10 == 0) {
            REQUIRE(int_abs(oracles::det_by_elimination(s.u)) == 1);
            REQUIRE(int_abs(oracles::det_by_elimination(s.v)) == 1);
        }

        Matrix k = kernel_basis(m);
        REQUIRE(k.cols() == c - s.rank);
        REQUIRE((m * k).is_zero());

        // solve(M, M x) must return a preimage of M x
        if (c > 0) {
            std::vector<Int> x(c);
            std::uniform_int_distribution<int> e(-4, 4);
            for (auto& xi : x) xi = e(rng);
            std::vector<Int> b = m.apply(x);
            auto y = solve(m, b);
            REQUIRE(y.has_value());
            REQUIRE(m.apply(*y) == b);
        }
    }
}

TEST_CASE("cokernel invariant under permutations and sign flips") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        std::size_t r = dim(rng), c = dim(rng);
        Matrix m = oracles::random_matrix(rng, r, c);
        Matrix p = oracles::random_permutation_signed(rng, r);
        Matrix q = oracles::random_permutation_signed(rng, c);
        REQUIRE(cokernel_structure(m) == cokernel_structure(p * m * q));
        // more generally, any unimodular change of coordinates
        Matrix g = oracles::random_unimodular(rng, r);
        REQUIRE(cokernel_structure(m) == cokernel_structure(g * m));
    }
}
